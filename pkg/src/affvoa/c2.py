"""C_2-symbols, the Kirillov-Kostant bracket and evaluation on sl_3 classes.

Symbols live in the polynomial ring whose variables are named after the
Chevalley basis (``e12``, ``e23``, ``e13``, ``f12``, ``f23``, ``f13``,
``h1``, ``h2`` for sl_3).  The variable named after ``b`` is evaluated at
``x`` as the form value ``(x|b)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .lie import (
    LieElement,
    MatrixRep,
    SLn,
    adjoint_orbit_sample,
    bracket,
    char_poly,
    matrix_form,
    param_matrix,
    rank_at,
    sl,
    to_matrix,
)
from .linalg import Echelon, rank
from .pbw import PBWVector
from .poly import ParamPoly, PolyRing, as_fraction


@lru_cache(maxsize=None)
def symbol_ring(n: int) -> PolyRing:
    return PolyRing(b.varname for b in sl(n).basis)


def symbol(v: PBWVector) -> ParamPoly:
    """Image in the C_2-quotient: drop monomials with a mode of depth >= 2."""
    alg = v.module.alg
    ring = symbol_ring(alg.n)
    terms: dict[tuple, Fraction] = {}
    for mono, c in v.terms.items():
        if any(d > 1 for _, d in mono):
            continue
        exp = [0] * ring.nvars
        for g, _ in mono:
            exp[g] += 1
        exp = tuple(exp)
        terms[exp] = terms.get(exp, 0) + c
    return ParamPoly(ring, terms)


def linear_symbol(x: LieElement) -> ParamPoly:
    ring = symbol_ring(x.alg.n)
    out = ring.zero()
    for b, c in x.coeffs.items():
        out = out + ring.var(b.varname) * c
    return out


def _as_lie(p: ParamPoly, alg: SLn) -> LieElement:
    if p.degree() > 1 or p.terms.get(p.ring._zero_exp):
        raise ValueError("first argument of the bracket must be linear and homogeneous")
    coeffs = {}
    for e, c in p.terms.items():
        coeffs[alg.basis[e.index(1)]] = c
    return alg.element(coeffs)


def poisson_bracket(a: ParamPoly, b: ParamPoly, n: int | None = None) -> ParamPoly:
    """{a, b} for linear ``a``: the derivation sum_y [a, y] d/dy applied to ``b``."""
    alg = sl(n or _rank_of(a.ring))
    x = _as_lie(a, alg)
    ring = b.ring
    out = ring.zero()
    for gi in range(alg.dim):
        name = alg.basis[gi].varname
        if b.degree(name) <= 0:
            continue
        d = b.diff(name)
        img = ring.zero()
        for xi, cx in x.indices().items():
            for z, c in alg.bracket_table[xi][gi].items():
                img = img + ring.var(alg.basis[z].varname) * (cx * c)
        if img:
            out = out + d * img
    return out


def _rank_of(ring: PolyRing) -> int:
    for n in range(2, 12):
        if n * n - 1 == ring.nvars:
            return n
    raise ValueError("not a symbol ring")


# -- the four sl_3 polynomials ------------------------------------------------


def standard_polynomials() -> dict[str, ParamPoly]:
    ring = symbol_ring(3)
    e1, e2, et, f1, f2, ft, h1, h2 = ring.vars("e12", "e23", "e13", "f12", "f23", "f13", "h1", "h2")
    return {
        "p1": -e1**2 * e2 + e1 * et * h2 + et**2 * f2,
        "p2": e1 * e2**2 + e2 * et * h1 - et**2 * f1,
        "p3": -et * h1 * h2 - e1 * et * f1 - et**2 * ft + e1 * e2 * (2 * h1 + h2) + 2 * e2 * et * f2,
        "p4": h1 * h2 * (h1 + h2) + 3 * e1 * e2 * ft - 3 * et * f1 * f2 - e1 * f1 * h1 + et * ft * (h1 + h2) - e2 * f2 * h2,
    }


# -- classes ----------------------------------------------------------------------


CLASS_TAGS = ("zero", "min_nilpotent", "regular_nilpotent", "semisimple_sheet", "mixed_sheet", "generic_cartan")


@dataclass
class ClassRep:
    tag: str
    matrix: MatrixRep
    params: tuple[str, ...]

    @property
    def ring(self) -> PolyRing:
        return self.matrix.ring


def class_rep(tag: str) -> ClassRep:
    """Representative family of a Jordan class of sl_3; lambda = h1 - h2."""
    alg = sl(3)
    lam = alg.h(1) - alg.h(2)
    if tag in ("semisimple_sheet", "mixed_sheet"):
        ring = PolyRing(("t",))
        t = ring.var("t")
        terms = [(t, lam)]
        if tag == "mixed_sheet":
            terms.append((1, alg.f(1, 3)))
        return ClassRep(tag, param_matrix(alg, ring, terms), ("t",))
    if tag == "generic_cartan":
        ring = PolyRing(("s", "u"))
        s, u = ring.vars("s", "u")
        return ClassRep(tag, param_matrix(alg, ring, [(s, alg.h(1)), (u, alg.h(2))]), ("s", "u"))
    ring = PolyRing(())
    if tag == "zero":
        return ClassRep(tag, MatrixRep.zeros(ring, 3), ())
    if tag == "min_nilpotent":
        return ClassRep(tag, to_matrix(alg.f(1, 3), ring), ())
    if tag == "regular_nilpotent":
        return ClassRep(tag, to_matrix(alg.f(1, 2) + alg.f(2, 3), ring), ())
    raise ValueError(f"unknown class tag {tag!r}")


def _coordinate_values(matrix: MatrixRep, n: int) -> dict[str, ParamPoly]:
    alg = sl(n)
    out = {}
    for gi, b in enumerate(alg.basis):
        out[b.varname] = matrix_form(matrix, to_matrix(alg.basis_element(gi), matrix.ring))
    return out


def evaluate(p: ParamPoly, x: ClassRep | MatrixRep) -> ParamPoly:
    """p evaluated at x with b -> (x|b); a polynomial in the class parameters."""
    m = x.matrix if isinstance(x, ClassRep) else x
    n = _rank_of(p.ring)
    return p.compose(m.ring, _coordinate_values(m, n))


def evaluate_at(p: ParamPoly, x: ClassRep | MatrixRep, point: Mapping[str, object]) -> Fraction:
    """Exact value at one parameter point; much cheaper than :func:`evaluate`."""
    m = x.matrix if isinstance(x, ClassRep) else x
    n = _rank_of(p.ring)
    rows = m.evaluate(point) if m.ring.nvars else m.constant_rows()
    vals = _numeric_coordinates(rows, n)
    return p.evaluate(vals)


def _numeric_coordinates(rows, n: int) -> dict[str, Fraction]:
    alg = sl(n)
    out = {}
    for gi, b in enumerate(alg.basis):
        total = Fraction(0)
        for (r, s), v in alg.mats[gi].items():
            # tr(X B) with B = sum v E_rs picks X_sr
            total += rows[s - 1][r - 1] * v
        out[b.varname] = total
    return out


def vanishes_identically(p: ParamPoly, x: ClassRep | MatrixRep) -> tuple[bool, dict | None]:
    """Decide whether p(x) is the zero polynomial in the class parameters.

    Evaluates on a grid of deg+1 points per parameter, which is exact for a
    polynomial of that degree in each variable.  Returns a witness point
    when the value is nonzero.
    """
    m = x.matrix if isinstance(x, ClassRep) else x
    names = m.ring.names
    entry_deg = max((a.degree() for row in m.rows for a in row), default=0)
    bound = max(p.degree(), 0) * max(entry_deg, 1)
    from itertools import product

    grid = [range(1, bound + 2)] * len(names)
    for pt in product(*grid):
        point = dict(zip(names, pt))
        val = evaluate_at(p, m, point)
        if val:
            return False, {"point": {k: str(v) for k, v in point.items()}, "value": str(val)}
    return True, None


# -- membership -----------------------------------------------------------------


VARIETIES = ("nilpotent_cone", "min_orbit_closure", "dixmier_sheet_closure", "mixed_sheet_closure")


def _constant_membership(rows: list[list[Fraction]], target: str) -> tuple[bool, dict]:
    ring = PolyRing(())
    mat = MatrixRep(ring, rows)
    cp = char_poly(mat)
    coeff = [cp.coefficient("lam", i).constant_value() for i in range(4)]
    p_, q_ = coeff[1], coeff[0]  # lam^3 + p lam + q (trace is zero)
    witness = {"char_poly": str(cp)}
    if target == "nilpotent_cone":
        return p_ == 0 and q_ == 0, witness
    if target == "min_orbit_closure":
        sq = mat @ mat
        return all(not a for row in sq.rows for a in row), witness
    disc = -4 * p_**3 - 27 * q_**2
    witness["discriminant"] = str(disc)
    if target == "mixed_sheet_closure":
        return disc == 0, witness
    if target == "dixmier_sheet_closure":
        if disc != 0:
            return False, witness
        t = Fraction(0) if p_ == 0 else -3 * q_ / (2 * p_)
        shifted = [[rows[i][j] - (t if i == j else 0) for j in range(3)] for i in range(3)]
        r = rank_at(shifted)
        witness.update({"t": str(t), "rank": r})
        return r <= 1, witness
    raise ValueError(f"unknown variety {target!r}")


def membership(x: ClassRep | MatrixRep, target: str, seed: int = 0, samples: int = 5) -> tuple[bool, dict]:
    """Closure-membership predicate for sl_3 via characteristic polynomial and rank.

    Parametrized inputs are tested at ``samples`` seeded rational points.
    """
    m = x.matrix if isinstance(x, ClassRep) else x
    if m.n != 3:
        raise ValueError("membership predicates are implemented for sl_3 only")
    if target not in VARIETIES:
        raise ValueError(f"unknown variety {target!r}")
    if not m.ring.nvars:
        return _constant_membership(m.constant_rows(), target)
    rng = random.Random(seed)
    for _ in range(samples):
        point = {name: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for name in m.ring.names}
        ok, wit = _constant_membership(m.evaluate(point), target)
        if not ok:
            wit["point"] = {k: str(v) for k, v in point.items()}
            return False, wit
    return True, {"samples": samples, "seed": seed}


# -- certificates ----------------------------------------------------------------


def adjoint_closure(polys: Sequence[ParamPoly], n: int) -> list[ParamPoly]:
    """Basis of the span of ``polys`` closed under brackets with linear generators."""
    ring = symbol_ring(n)
    alg = sl(n)
    linear = [ring.var(b.varname) for b in alg.basis]
    monos: dict[tuple, int] = {}
    ech = Echelon(reduced=False)
    basis: list[ParamPoly] = []

    def offer(p: ParamPoly) -> bool:
        row = {}
        for e, c in p.terms.items():
            if e not in monos:
                monos[e] = len(monos)
            row[monos[e]] = c
        if row and ech.add(row):
            basis.append(p)
            return True
        return False

    queue = [p for p in polys if offer(p)]
    while queue:
        p = queue.pop()
        for x in linear:
            q = poisson_bracket(x, p, n)
            if q and offer(q):
                queue.append(q)
    return basis


@dataclass
class ClassVerdict:
    tag: str
    vanishes: bool
    witness_index: int | None
    witness_polynomial: str | None
    witness_point: dict | None
    sample_seeds: list[int]
    samples_vanish: bool | None

    def to_dict(self) -> dict:
        return {
            "class": self.tag,
            "verdict": "vanishes" if self.vanishes else "nonvanishing",
            "witness_index": self.witness_index,
            "witness_polynomial": self.witness_polynomial,
            "witness_point": self.witness_point,
            "sample_seeds": self.sample_seeds,
            "samples_vanish": self.samples_vanish,
        }


def variety_certificate(gens: Sequence[PBWVector], k, seed: int = 0, samples: int = 20) -> dict:
    """Evaluate the adjoint closure of the generator symbols on every class."""
    n = gens[0].module.n if gens else 3
    symbols = [symbol(g) for g in gens]
    closure = adjoint_closure([s for s in symbols if s], n)
    verdicts = []
    for tag in CLASS_TAGS:
        rep = class_rep(tag)
        witness = None
        for i, p in enumerate(closure):
            ok, wit = vanishes_identically(p, rep)
            if not ok:
                witness = (i, p, wit)
                break
        if witness is None:
            seeds = [seed * 1000 + j for j in range(samples)]
            all_zero = True
            for s in seeds:
                conj = adjoint_orbit_sample(rep.matrix, s)
                for p in closure:
                    if not vanishes_identically(p, conj)[0]:
                        all_zero = False
                        break
                if not all_zero:
                    break
            verdicts.append(ClassVerdict(tag, True, None, None, None, seeds, all_zero))
        else:
            i, p, wit = witness
            verdicts.append(ClassVerdict(tag, False, i, str(p), wit["point"], [], None))
    return {
        "k": str(as_fraction(k)),
        "closure_size": len(closure),
        "closure_degrees": sorted({p.degree() for p in closure}),
        "classes": [v.to_dict() for v in verdicts],
    }


def class_dimension(x: ClassRep, seed: int = 0) -> int:
    """dim of the union of orbits through the family: orbit dim plus free parameters."""
    n = x.matrix.n
    alg = sl(n)
    rng = random.Random(seed)
    point = {name: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for name in x.params}
    rows = x.matrix.evaluate(point) if x.params else x.matrix.constant_rows()
    xe = alg.from_matrix({(i + 1, j + 1): rows[i][j] for i in range(n) for j in range(n)})
    # rank of ad x = rank of the images of the basis vectors
    ad_rows = [bracket(xe, alg.basis_element(gi)).indices() for gi in range(alg.dim)]
    return rank(ad_rows) + len(x.params)
