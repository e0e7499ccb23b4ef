"""Truncated characters of the simple quotient L_k(sl_n).

The numerator is a signed sum of exponentials e^{w t_{q gamma}(k Lambda_0 + rho) - rho};
dividing by the affine denominator amounts to convolving with the
character of V^k (imaginary and real negative roots) and with the
Kostant partition function of the finite positive roots.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .affine import (
    AffineWeylElement,
    cartan_matrix,
    finite_pair,
    finite_rho,
    finite_roots,
    finite_weyl_group,
    fundamental_weight,
    k_lambda0,
    twisted_action,
)
from .lie import sl
from .poly import as_fraction

Weight = tuple  # tuple[int, ...] in simple-root coordinates


@dataclass
class CharacterTable:
    k: Fraction
    n: int
    depth: int
    entries: dict = field(default_factory=dict)  # (d, weight) -> multiplicity

    def get(self, d: int, mu: Sequence[int]) -> int:
        return self.entries.get((d, tuple(mu)), 0)

    def depth_row(self, d: int) -> dict:
        return {mu: v for (dd, mu), v in self.entries.items() if dd == d}

    def rows(self) -> list[tuple[int, tuple[int, ...], int]]:
        return [(d, mu, v) for (d, mu), v in sorted(self.entries.items()) if v]

    def to_text(self) -> str:
        """Columnar text: depth, weight coordinates, multiplicity."""
        lines = ["# depth " + " ".join(f"a{i}" for i in range(1, self.n)) + " mult"]
        for d, mu, v in self.rows():
            lines.append(" ".join(str(x) for x in (d, *mu, v)))
        return "\n".join(lines) + "\n"


# -- helpers --------------------------------------------------------------


def parse_level(n: int, k) -> int:
    """Return q with k = -n + (n-1)/q, or raise for levels outside the family."""
    k = as_fraction(k)
    shifted = k + n
    if shifted <= 0:
        raise ValueError(f"level {k} is not of the form -n + (n-1)/q")
    q = Fraction(n - 1) / shifted
    if q.denominator != 1 or q < 1:
        raise ValueError(f"level {k} is not of the form -n + (n-1)/q")
    return int(q)


def positive_roots(n: int) -> list[Weight]:
    return finite_roots(n, positive_only=True)


@lru_cache(maxsize=None)
def _kostant(n: int, nu: Weight, start: int) -> int:
    if not any(nu):
        return 1
    if any(x < 0 for x in nu):
        return 0
    roots = positive_roots(n)
    total = 0
    for i in range(start, len(roots)):
        r = roots[i]
        rest = tuple(a - b for a, b in zip(nu, r))
        if all(x >= 0 for x in rest):
            total += _kostant(n, rest, i)
    return total


def kostant_partition(n: int, nu: Sequence[int]) -> int:
    """Number of ways to write ``nu`` as an unordered sum of positive roots."""
    return _kostant(n, tuple(nu), 0)


@lru_cache(maxsize=None)
def vacuum_character(n: int, depth: int) -> dict:
    """Character of V^k(sl_n) through ``depth``: (d, weight) -> dimension.

    Expands prod_{j>=1} prod_x 1/(1 - q^j e^{wt x}) over a basis x of sl_n.
    """
    alg = sl(n)
    layers: list[dict] = [defaultdict(int) for _ in range(depth + 1)]
    layers[0][(0,) * (n - 1)] = 1
    for j in range(1, depth + 1):
        for w in alg.weights:
            # multiply by 1/(1 - q^j e^w), i.e. new[d] = old[d] + new[d - j] shifted by w
            for d in range(j, depth + 1):
                for mu, c in list(layers[d - j].items()):
                    layers[d][tuple(a + b for a, b in zip(mu, w))] += c
    series = {}
    for d, layer in enumerate(layers):
        for mu, c in layer.items():
            if c:
                series[(d, mu)] = c
    return series


def weyl_character(n: int, hw: Sequence[int]) -> dict:
    """Weight multiplicities of the irreducible sl_n-module of highest weight ``hw``.

    Kostant's multiplicity formula: sum over w of sign(w) P(w(hw + rho) - (mu + rho)).
    """
    hw = tuple(hw)
    rho = finite_rho(n)
    top = tuple(Fraction(a) + r for a, r in zip(hw, rho))
    from .affine import AffineWeight

    images = []
    for _, w in finite_weyl_group(n):
        img = w(AffineWeight.make(n, alpha=top)).finite
        images.append((w.sign(), img))
    out = {}
    for nu in _lattice_below(n, hw):
        mu = tuple(a - b for a, b in zip(hw, nu))
        total = 0
        for sign, img in images:
            diff = tuple(x - (m + r) for x, m, r in zip(img, mu, rho))
            if all(x.denominator == 1 and x >= 0 for x in diff):
                total += sign * kostant_partition(n, tuple(int(x) for x in diff))
        if total:
            out[mu] = total
    return out


def _lattice_below(n: int, hw: Sequence[int]):
    """Non-negative root-lattice vectors nu with hw - nu possibly a weight.

    Every weight of the module lies in the convex hull of W.hw, so its
    distance below hw in each simple-root coordinate is at most twice the
    largest absolute coordinate of the orbit.
    """
    from .affine import AffineWeight

    bound = 0
    for _, w in finite_weyl_group(n):
        img = w(AffineWeight.make(n, alpha=hw)).finite
        bound = max(bound, max(int(abs(x)) + 1 for x in img))
    for nu in product(range(0, 2 * bound + 1), repeat=n - 1):
        yield nu


def is_dominant(n: int, mu: Sequence[int]) -> bool:
    c = cartan_matrix(n)
    return all(sum(c[i][j] * mu[j] for j in range(n - 1)) >= 0 for i in range(n - 1))


def decompose(n: int, char: Mapping[Weight, int]) -> list[tuple[Weight, int]]:
    """Write a finite character as a combination of irreducible characters."""
    rest = {mu: v for mu, v in char.items() if v}
    out = []
    while rest:
        hw = max(rest, key=lambda mu: (sum(mu), mu))
        if not is_dominant(n, hw):
            raise ValueError(f"top weight {hw} is not dominant; not a character")
        mult = rest[hw]
        for mu, v in weyl_character(n, hw).items():
            nv = rest.get(mu, 0) - mult * v
            if nv:
                rest[mu] = nv
            else:
                rest.pop(mu, None)
        out.append((hw, mult))
    return sorted(out)


# -- the formula -----------------------------------------------------------


@dataclass(frozen=True)
class NumeratorTerm:
    sign: int
    depth: int
    weight: Weight  # finite part, simple-root coordinates
    w_word: str
    gamma: Weight


def gamma_bound(n: int, q: int, depth: int) -> int:
    """Coordinate bound on gamma for terms of depth at most ``depth``.

    The term depth is q((rho|gamma) + (n-1)/2 (gamma|gamma)) >= q((n-1)/2 x^2 - |rho| x)
    with x = |gamma|, so x <= x_max; each coordinate is (gamma | fundamental weight).
    """
    rho2 = Fraction(n * (n * n - 1), 12)
    a = Fraction(n - 1, 2)
    # a x^2 - |rho| x - depth/q <= 0
    rho_norm = math.sqrt(rho2)
    x_max = (rho_norm + math.sqrt(rho2 + 4 * a * Fraction(depth, q))) / (2 * a)
    lam_norm = max(math.sqrt(finite_pair(n, fundamental_weight(n, i), fundamental_weight(n, i))) for i in range(1, n))
    return int(math.floor(x_max * lam_norm + 1e-9)) + 1


def numerator_terms(k, q: int, n: int, depth: int) -> list[NumeratorTerm]:
    k = as_fraction(k)
    if k != Fraction(-n) + Fraction(n - 1, q):
        raise ValueError(f"k = {k} is not -n + (n-1)/q for q = {q}")
    bound = gamma_bound(n, q, depth)
    base = k_lambda0(n, k)
    rho = finite_rho(n)
    group = finite_weyl_group(n)
    terms = []
    for gamma in product(range(-bound, bound + 1), repeat=n - 1):
        if gamma[0] < 0 or gamma[-1] < 0:
            continue
        g2 = finite_pair(n, gamma, gamma)
        dep = q * (finite_pair(n, rho, gamma) + Fraction(n - 1, 2) * g2)
        if dep > depth:
            continue
        tq = AffineWeylElement.t(n, [q * x for x in gamma])
        for perm, w in group:
            lam = twisted_action(w * tq, base)
            assert lam.level == k and -lam.delta == dep
            fin = tuple(int(x) for x in lam.finite)
            terms.append(NumeratorTerm(w.sign(), int(dep), fin, _word(w), tuple(gamma)))
    terms.sort(key=lambda t: (t.depth, t.weight, t.sign, t.w_word, t.gamma))
    return terms


def _word(w: AffineWeylElement) -> str:
    out = []
    for kind, data in w.factors:
        idx = [i for i, x in enumerate(data.finite) if x][0] + 1
        out.append(f"s{idx}")
    return "".join(out) or "1"


def character_table(k, n: int, depth: int) -> CharacterTable:
    q = parse_level(n, k)
    terms = numerator_terms(k, q, n, depth)
    vchar = vacuum_character(n, depth)
    by_depth: dict[int, dict] = defaultdict(dict)
    for (d, mu), v in vchar.items():
        by_depth[d][mu] = v
    table = CharacterTable(as_fraction(k), n, depth)
    for d in range(depth + 1):
        for lam in sorted(by_depth[d]):
            total = 0
            for t in terms:
                if t.depth > d:
                    break
                for mu, v in by_depth[d - t.depth].items():
                    nu = tuple(a + b - c for a, b, c in zip(t.weight, mu, lam))
                    if all(x >= 0 for x in nu):
                        total += t.sign * v * kostant_partition(n, nu)
            if total < 0:
                raise ArithmeticError(f"negative multiplicity {total} at depth {d}, weight {lam}")
            if total:
                table.entries[(d, lam)] = total
    return table


def vacuum_table(k, n: int, depth: int) -> CharacterTable:
    table = CharacterTable(as_fraction(k), n, depth)
    table.entries = {key: v for key, v in vacuum_character(n, depth).items()}
    return table


def brute_force_character(module, gens, depth: int, window: Iterable | None = None) -> CharacterTable:
    """Quotient dimensions computed from explicit ideal weight spaces."""
    from .pbw import depth_weights, nonnegative_closure, ideal_weight_space, weight_space_basis

    gens = [g.terms if hasattr(g, "terms") else g for g in gens]
    closure = nonnegative_closure(module, gens)
    table = CharacterTable(module.k, module.n, depth)
    allowed = None if window is None else {tuple(w) for w in window}
    for d in range(depth + 1):
        for mu in depth_weights(module.n, d):
            if allowed is not None and mu not in allowed:
                continue
            full = len(weight_space_basis(module.n, d, mu))
            dim, _ = ideal_weight_space(module, gens, d, mu, closure)
            if full - dim:
                table.entries[(d, mu)] = full - dim
    return table


@dataclass
class DiffReport:
    differences: list  # (depth, weight, left, right)
    shared_depth: int

    @property
    def empty(self) -> bool:
        return not self.differences

    def first_depth(self) -> int | None:
        return min((d for d, _, _, _ in self.differences), default=None)

    def at_depth(self, d: int) -> dict:
        return {mu: a - b for dd, mu, a, b in self.differences if dd == d}

    def to_dict(self) -> dict:
        return {
            "shared_depth": self.shared_depth,
            "differences": [{"depth": d, "weight": list(mu), "left": a, "right": b} for d, mu, a, b in self.differences],
        }


def compare(a: CharacterTable, b: CharacterTable, window: Iterable | None = None) -> DiffReport:
    if a.n != b.n or a.k != b.k:
        raise ValueError("tables are for different algebras or levels")
    shared = min(a.depth, b.depth)
    allowed = None if window is None else {tuple(w) for w in window}
    keys = {key for key in set(a.entries) | set(b.entries) if key[0] <= shared}
    if allowed is not None:
        keys = {key for key in keys if key[1] in allowed}
    diffs = []
    for d, mu in sorted(keys):
        x, y = a.get(d, mu), b.get(d, mu)
        if x != y:
            diffs.append((d, mu, x, y))
    return DiffReport(diffs, shared)
