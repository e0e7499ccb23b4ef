"""sl_2-triples, centralizers and Slodowy slices of sl_3, intersected with a sheet.

The target family is A_mu = mu (h1 - h2) + f_theta = diag(mu, -2 mu, mu) + E_31.
Intersecting a slice with the closure of the G-saturation of this family
amounts to matching characteristic polynomials, and the resulting
equations are solved for parameters that occur linearly.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lie import LieElement, MatrixRep, bracket, char_poly, param_matrix, sl
from .linalg import nullspace, rank
from .poly import ParamPoly, PolyRing


@dataclass(frozen=True)
class Sl2Triple:
    e: LieElement
    h: LieElement
    f: LieElement

    def __post_init__(self):
        if bracket(self.h, self.e) != self.e * 2:
            raise ValueError("[h, e] != 2e")
        if bracket(self.h, self.f) != self.f * -2:
            raise ValueError("[h, f] != -2f")
        if bracket(self.e, self.f) != self.h:
            raise ValueError("[e, f] != h")


def minimal_triple() -> Sl2Triple:
    alg = sl(3)
    return Sl2Triple(alg.e(1, 3), alg.h(1) + alg.h(2), alg.f(1, 3))


def regular_triple() -> Sl2Triple:
    """e = E12 + E23, h = diag(2, 0, -2), f = 2 E21 + 2 E32."""
    alg = sl(3)
    return Sl2Triple(alg.e(1, 2) + alg.e(2, 3), (alg.h(1) + alg.h(2)) * 2, (alg.f(1, 2) + alg.f(2, 3)) * 2)


def centralizer(e: LieElement) -> list[LieElement]:
    """Kernel of ad e, as a canonical basis."""
    alg = e.alg
    rows: dict[int, dict[int, Fraction]] = {}
    for j in range(alg.dim):
        for r, c in bracket(e, alg.basis_element(j)).indices().items():
            rows.setdefault(r, {})[j] = c
    kernel = nullspace([rows[r] for r in sorted(rows)], alg.dim)
    return [LieElement.from_indices(alg, v) for v in kernel]


def in_span(vectors: Sequence[LieElement], x: LieElement) -> bool:
    base = rank(v.indices() for v in vectors)
    return rank([v.indices() for v in vectors] + [x.indices()]) == base


@dataclass
class SliceFamily:
    triple: Sl2Triple
    params: tuple[str, ...]
    directions: tuple[LieElement, ...]
    matrix: MatrixRep

    @property
    def ring(self) -> PolyRing:
        return self.matrix.ring


def slice_family(triple: Sl2Triple, directions: Sequence[LieElement] | None = None, names: Sequence[str] | None = None, extra: Sequence[str] = ("mu",)) -> SliceFamily:
    """f + span(directions); the directions must form a basis of the centralizer of e."""
    cent = centralizer(triple.e)
    if directions is None:
        directions = cent
    directions = tuple(directions)
    if len(directions) != len(cent) or rank(d.indices() for d in directions) != len(cent):
        raise ValueError("directions do not form a basis of the centralizer")
    if not all(not bracket(triple.e, d) for d in directions):
        raise ValueError("a direction does not commute with e")
    if names is None:
        names = tuple(f"x{i}" for i in range(1, len(directions) + 1))
    ring = PolyRing(tuple(names) + tuple(extra))
    terms = [(1, triple.f)] + [(ring.var(nm), d) for nm, d in zip(names, directions)]
    return SliceFamily(triple, tuple(names), directions, param_matrix(triple.f.alg, ring, terms))


def minimal_slice() -> SliceFamily:
    """[[a, b, d], [0, -2a, c], [1, 0, a]]."""
    alg = sl(3)
    dirs = [alg.h(1) - alg.h(2), alg.e(1, 2), alg.e(2, 3), alg.e(1, 3)]
    return slice_family(minimal_triple(), dirs, ("a", "b", "c", "d"))


def regular_slice() -> SliceFamily:
    """[[0, a, b], [2, 0, a], [0, 2, 0]]."""
    alg = sl(3)
    dirs = [alg.e(1, 2) + alg.e(2, 3), alg.e(1, 3)]
    return slice_family(regular_triple(), dirs, ("a", "b"))


def target_family(ring: PolyRing, orientation: int = 1) -> MatrixRep:
    """A_mu = s mu (h1 - h2) + f_theta with s = orientation."""
    alg = sl(3)
    mu = ring.var("mu") * orientation
    return param_matrix(alg, ring, [(mu, alg.h(1) - alg.h(2)), (1, alg.f(1, 3))])


# -- elimination ----------------------------------------------------------------


def _solvable(eq: ParamPoly, var: str) -> bool:
    """eq is linear in ``var`` with a nonzero constant coefficient."""
    if eq.degree(var) != 1:
        return False
    coeff = eq.coefficient(var, 1)
    return coeff.is_constant() and bool(coeff)


def _normalize(p: ParamPoly) -> ParamPoly:
    if not p:
        return p
    return p / p.leading_coefficient()


def eliminate(equations: Sequence[ParamPoly], order: Sequence[str]) -> list[ParamPoly]:
    """Solve for variables (in ``order``) that occur linearly with constant coefficient.

    Returns the solved constraints ``v - expr`` followed by the remaining
    reduced equations, each scaled to leading coefficient 1.
    """
    eqs = [e for e in equations if e]
    solved: list[ParamPoly] = []
    progress = True
    while progress:
        progress = False
        for var in order:
            hit = next((i for i, e in enumerate(eqs) if _solvable(e, var)), None)
            if hit is None:
                continue
            eq = eqs.pop(hit)
            coeff = eq.coefficient(var, 1).constant_value()
            expr = -(eq - eq.ring.var(var) * coeff) / coeff  # var = expr
            solved = [s.subs({var: expr}) for s in solved]
            solved.append(eq.ring.var(var) - expr)
            eqs = [e.subs({var: expr}) for e in eqs]
            eqs = [e for e in eqs if e]
            progress = True
            break
    return [_normalize(p) for p in solved + eqs]


def intersect_with_class(S: SliceFamily, orientation: int = 1, order: Sequence[str] | None = None) -> list[ParamPoly]:
    """Constraints on (slice parameters, mu) for S(params) to be similar to A_mu.

    Both matrices have a single characteristic polynomial per parameter
    value; equal characteristic polynomials with a repeated root put S in
    the closure of the sheet, which is the membership predicate used here.
    """
    if S.matrix.n != 3:
        raise ValueError("slice intersections are implemented for sl_3")
    ring = S.ring
    cs = char_poly(S.matrix)
    ct = char_poly(target_family(ring, orientation))
    if cs.ring != ct.ring:
        raise ValueError("ring mismatch between slice and target")
    diff = cs - ct
    eqs = [diff.coefficient("lam", i).to_ring(ring) for i in range(3)]
    order = order or tuple(reversed(S.params))
    return eliminate(eqs, order)


# -- sampling and dimension ------------------------------------------------------


def sample_solution(constraints: Sequence[ParamPoly], rng: random.Random, tries: int = 50) -> dict[str, Fraction] | None:
    """A random rational point on the constraint set, or None if none was found.

    Each constraint gets a pivot variable of degree one; the others are
    drawn at random and the pivots solved in turn.
    """
    if not constraints:
        return {}
    ring = constraints[0].ring
    used: list[str] = []
    pivots = []
    for c in constraints:
        pv = next((v for v in reversed(ring.names) if v not in used and c.degree(v) == 1), None)
        if pv is None:
            return None
        used.append(pv)
        pivots.append(pv)
    for _ in range(tries):
        point = {v: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for v in ring.names if v not in used}
        pending = list(zip(constraints, pivots))
        ok = True
        while pending and ok:
            progress = False
            for idx, (c, pv) in enumerate(pending):
                part = c.subs(point)
                if set(part.variables()) - {pv}:
                    continue
                a = part.coefficient(pv, 1).constant_value()
                if not a:
                    ok = False
                    break
                b = part.coefficient(pv, 0).constant_value()
                point[pv] = -b / a
                pending.pop(idx)
                progress = True
                break
            if not progress:
                ok = False
        if ok and all(c.evaluate(point) == 0 for c in constraints):
            return point
    return None


def variety_dimension(S: SliceFamily, constraints: Sequence[ParamPoly], seeds: Sequence[int] = (0, 1, 2, 3, 4)) -> int:
    """Number of variables minus the Jacobian rank at random smooth points (majority over seeds)."""
    variables = list(S.params)
    if any(c.degree("mu") > 0 for c in constraints):
        variables.append("mu")
    if not constraints:
        return len(variables)
    votes = Counter()
    for seed in seeds:
        rng = random.Random(seed)
        point = sample_solution(constraints, rng)
        if point is None:
            continue
        jac = [{j: c.diff(v).evaluate(point) for j, v in enumerate(variables)} for c in constraints]
        r = rank(jac)
        if r < len(constraints):
            continue  # singular point
        votes[len(variables) - r] += 1
    if not votes:
        raise RuntimeError("every sampled point was singular; choose different seeds")
    return votes.most_common(1)[0][0]


def same_variety(a: Sequence[ParamPoly], b: Sequence[ParamPoly], points: int = 50, seed: int = 0) -> bool:
    """Mutual vanishing at random points of each constraint set."""
    rng = random.Random(seed)
    for src, dst in ((a, b), (b, a)):
        for _ in range(points):
            pt = sample_solution(src, rng)
            if pt is None:
                return False
            if any(c.evaluate(pt) for c in dst):
                return False
    return True


def slice_point(S: SliceFamily, point: dict) -> MatrixRep:
    ring = PolyRing(())
    rows = S.matrix.evaluate({**{"mu": 0}, **point})
    return MatrixRep(ring, rows)
