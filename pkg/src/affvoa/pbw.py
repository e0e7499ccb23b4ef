"""The vacuum module V^k(sl_n) in a PBW basis.

A monomial is a sorted tuple of ``(generator, depth)`` pairs with
``depth >= 1``; the pair stands for the mode ``x(-depth)`` of the basis
element ``x = alg.basis[generator]``.  Because the basis is ordered
E, F, H (each by height, then by left endpoint) the sorted tuple is the
normal form z+ z- z0 with modes of each generator listed by increasing
depth.  The empty tuple is the vacuum.

Coefficients are exact :class:`~fractions.Fraction` values; the level is
fixed per :class:`VacuumModule` instance.
"""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .lie import BasisElement, LieElement, SLn, dual_basis, sl
from .linalg import Echelon, exact_nullspace
from .poly import as_fraction, fraction_str

log = logging.getLogger(__name__)

Monomial = tuple  # tuple[tuple[int, int], ...]
Vec = dict  # dict[Monomial, Fraction]


def add_into(acc: dict, vec: Mapping, scale=1) -> None:
    for key, c in vec.items():
        v = acc.get(key, 0) + c * scale
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


class VacuumModule:
    """Mode action on V^k(sl_n) with a memo table shared by all vectors."""

    def __init__(self, n: int, k):
        self.alg: SLn = sl(n)
        self.n = n
        self.k = as_fraction(k)
        self._memo: dict[tuple[int, int, Monomial], Vec] = {}

    def __repr__(self):
        return f"VacuumModule(n={self.n}, k={fraction_str(self.k)})"

    # -- the core straightening routine --------------------------------
    def act(self, g: int, m: int, mono: Monomial) -> Vec:
        """g(m) applied to a normal-ordered monomial, re-normal-ordered."""
        key = (g, m, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._act(g, m, mono)
        self._memo[key] = res
        return res

    def _act(self, g: int, m: int, mono: Monomial) -> Vec:
        if not mono:
            return {} if m >= 0 else {((g, -m),): Fraction(1)}
        first, rest = mono[0], mono[1:]
        if m < 0 and (g, -m) <= first:
            return {((g, -m),) + mono: Fraction(1)}
        y, dy = first
        out: Vec = {}
        # y(-dy) g(m) rest
        inner = self.act(g, m, rest)
        for mono2, c in inner.items():
            add_into(out, self.act(y, -dy, mono2), c)
        # [g, y](m - dy) rest
        for z, c in self.alg.bracket_table[g][y].items():
            add_into(out, self.act(z, m - dy, rest), c)
        # central term m (g|y) k, present only when m == dy
        if m == dy:
            f = self.alg.form_table[g][y]
            if f:
                add_into(out, {rest: Fraction(1)}, m * f * self.k)
        return out

    def apply(self, g: int, m: int, vec: Mapping[Monomial, Fraction]) -> Vec:
        out: Vec = {}
        for mono, c in vec.items():
            add_into(out, self.act(g, m, mono), c)
        return out

    def apply_element(self, x: LieElement, m: int, vec: Mapping[Monomial, Fraction]) -> Vec:
        out: Vec = {}
        for g, c in x.indices().items():
            add_into(out, self.apply(g, m, vec), c)
        return out

    def clear_cache(self) -> None:
        self._memo.clear()

    # -- gradings -------------------------------------------------------
    def weight(self, mono: Monomial) -> tuple[int, ...]:
        w = [0] * self.alg.rank
        for g, _ in mono:
            for i, a in enumerate(self.alg.weights[g]):
                w[i] += a
        return tuple(w)

    @staticmethod
    def depth(mono: Monomial) -> int:
        return sum(d for _, d in mono)

    def grading(self, vec: Mapping[Monomial, Fraction]) -> set[tuple[int, tuple[int, ...]]]:
        return {(self.depth(m), self.weight(m)) for m in vec}

    # -- Sugawara -------------------------------------------------------
    def sugawara_L0(self, vec: Mapping[Monomial, Fraction]) -> Vec:
        """L_0 from the normal-ordered Sugawara field, truncated to the modes that act."""
        if self.k + self.n == 0:
            raise ValueError("Sugawara construction is undefined at the critical level")
        top = max((self.depth(m) for m in vec), default=0)
        out: Vec = {}
        for x, xd in dual_basis(self.alg):
            add_into(out, self.apply_element(x, 0, self.apply_element(xd, 0, vec)))
            for m in range(1, top + 1):
                add_into(out, self.apply_element(x, -m, self.apply_element(xd, m, vec)), 2)
        scale = 1 / (2 * (self.k + self.n))
        return {mono: c * scale for mono, c in out.items()}


def central_charge(k, n: int) -> Fraction:
    k = as_fraction(k)
    if k + n == 0:
        raise ValueError("central charge is undefined at the critical level")
    return k * (n * n - 1) / (k + n)


# ---------------------------------------------------------------------------
# weight spaces
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _depth_slices(n: int, d: int) -> dict[tuple[int, ...], tuple[Monomial, ...]]:
    """All monomials of conformal depth ``d`` grouped by weight."""
    alg = sl(n)
    colors = sorted((g, dep) for g in range(alg.dim) for dep in range(1, d + 1))
    groups: dict[tuple[int, ...], list[Monomial]] = defaultdict(list)
    rank_ = alg.rank
    weights = alg.weights

    def rec(start: int, remaining: int, prefix: list, wt: list):
        if remaining == 0:
            groups[tuple(wt)].append(tuple(prefix))
            return
        for ci in range(start, len(colors)):
            g, dep = colors[ci]
            if dep > remaining:
                continue
            prefix.append(colors[ci])
            for i in range(rank_):
                wt[i] += weights[g][i]
            rec(ci, remaining - dep, prefix, wt)
            for i in range(rank_):
                wt[i] -= weights[g][i]
            prefix.pop()

    rec(0, d, [], [0] * rank_)
    return {w: tuple(sorted(ms)) for w, ms in groups.items()}


def weight_space_basis(n: int, d: int, mu: Sequence[int]) -> tuple[Monomial, ...]:
    """Canonical monomials of depth ``d`` and root-lattice weight ``mu``.

    The level does not enter: the PBW basis is the same for every k.
    """
    if d < 0:
        raise ValueError("depth must be non-negative")
    mu = tuple(mu)
    if len(mu) != n - 1:
        raise ValueError(f"weight {mu} has the wrong length for sl({n})")
    if d == 0:
        return ((),) if not any(mu) else ()
    return _depth_slices(n, d).get(mu, ())


def depth_weights(n: int, d: int) -> list[tuple[int, ...]]:
    if d == 0:
        return [(0,) * (n - 1)]
    return sorted(_depth_slices(n, d))


def total_dimension(n: int, d: int) -> int:
    if d == 0:
        return 1
    return sum(len(v) for v in _depth_slices(n, d).values())


def generating_dimension(n: int, d: int) -> int:
    """Coefficient of x^d in prod_{j>=1} (1 - x^j)^-(n^2 - 1)."""
    dim = n * n - 1
    coeffs = [1] + [0] * d
    for j in range(1, d + 1):
        for _ in range(dim):
            for i in range(j, d + 1):
                coeffs[i] += coeffs[i - j]
    return coeffs[d]


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


class PBWVector:
    """Exact combination of PBW monomials in a fixed vacuum module."""

    __slots__ = ("module", "terms")

    def __init__(self, module: VacuumModule, terms: Mapping[Monomial, object]):
        self.module = module
        self.terms = {m: as_fraction(c) for m, c in terms.items() if c}

    @classmethod
    def vacuum(cls, module: VacuumModule) -> "PBWVector":
        return cls(module, {(): Fraction(1)})

    def __add__(self, other: "PBWVector") -> "PBWVector":
        out = dict(self.terms)
        add_into(out, other.terms)
        return PBWVector(self.module, out)

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        out = dict(self.terms)
        add_into(out, other.terms, -1)
        return PBWVector(self.module, out)

    def __neg__(self):
        return self * -1

    def __mul__(self, c) -> "PBWVector":
        c = as_fraction(c)
        return PBWVector(self.module, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PBWVector) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"PBWVector({format_vector(self.module.alg, self.terms)})"

    def grading(self):
        return self.module.grading(self.terms)

    def is_homogeneous(self) -> bool:
        return len(self.grading()) <= 1

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def leading_monomial(self) -> Monomial:
        return min(self.terms)

    def scaled_to(self, mono: Monomial, value=1) -> "PBWVector":
        c = self.terms.get(mono)
        if not c:
            raise ValueError(f"coefficient of {format_monomial(self.module.alg, mono)} is zero")
        return self * (as_fraction(value) / c)

    def serialize(self) -> list[tuple[str, str]]:
        alg = self.module.alg
        return [(format_monomial(alg, m), fraction_str(c)) for m, c in sorted(self.terms.items())]

    @classmethod
    def deserialize(cls, module: VacuumModule, pairs: Iterable[Sequence[str]]) -> "PBWVector":
        return cls(module, {parse_monomial(module.alg, m): Fraction(c) for m, c in pairs})


def apply_mode(b: BasisElement | LieElement, n: int, v: PBWVector) -> PBWVector:
    """Left action of ``b(n)`` on ``v``."""
    mod = v.module
    if isinstance(b, BasisElement):
        return PBWVector(mod, mod.apply(mod.alg.index[b], n, v.terms))
    return PBWVector(mod, mod.apply_element(b, n, v.terms))


def sugawara_L0(v: PBWVector) -> PBWVector:
    return PBWVector(v.module, v.module.sugawara_L0(v.terms))


def build_vector(module: VacuumModule, terms: Iterable[tuple[object, Sequence[tuple[LieElement | BasisElement, int]]]]) -> PBWVector:
    """Vector sum(c * x1(m1) ... xr(mr) 1), with factors applied right to left."""
    out: Vec = {}
    alg = module.alg
    for coeff, factors in terms:
        vec: Vec = {(): Fraction(1)}
        for x, m in reversed(list(factors)):
            if isinstance(x, BasisElement):
                vec = module.apply(alg.index[x], m, vec)
            else:
                vec = module.apply_element(x, m, vec)
        add_into(out, vec, as_fraction(coeff))
    return PBWVector(module, out)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_monomial(alg: SLn, mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        g, d = mono[i]
        s = f"{alg.basis[g]}({-d})"
        if j - i > 1:
            s += f"^{j - i}"
        parts.append(s)
        i = j
    return " ".join(parts)


_FACTOR = re.compile(r"([EFH])\[(\d+)(?:,(\d+))?\]\((-\d+)\)(?:\^(\d+))?")


def parse_monomial(alg: SLn, text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ()
    out = []
    for tok in text.split():
        mt = _FACTOR.fullmatch(tok)
        if not mt:
            raise ValueError(f"cannot parse factor {tok!r}")
        kind, i, j, mode, power = mt.groups()
        i = int(i)
        j = int(j) if j else i + 1
        mode = int(mode)
        if mode >= 0:
            raise ValueError("PBW monomials only contain negative modes")
        g = alg.index[BasisElement(kind, i, j)]
        out.extend([(g, -mode)] * int(power or 1))
    return tuple(sorted(out))


def format_vector(alg: SLn, terms: Mapping[Monomial, Fraction]) -> str:
    if not terms:
        return "0"
    return " + ".join(f"({fraction_str(c)}) {format_monomial(alg, m)}" for m, c in sorted(terms.items()))


# ---------------------------------------------------------------------------
# singular vectors
# ---------------------------------------------------------------------------


def _operator_rows(module: VacuumModule, ops: Sequence[tuple[int, int]], basis: Sequence[Monomial]):
    """Rows of the stacked matrix of ``ops`` on span(basis), one per target monomial."""
    rows: dict[tuple[int, Monomial], dict[int, Fraction]] = {}
    for col, mono in enumerate(basis):
        for oi, (g, m) in enumerate(ops):
            for tgt, c in module.act(g, m, mono).items():
                rows.setdefault((oi, tgt), {})[col] = c
    return [rows[key] for key in sorted(rows)]


def raising_operators(alg: SLn) -> list[tuple[int, int]]:
    """e_{alpha_i}(0) for the simple roots together with f_theta(1)."""
    ops = [(alg.index[BasisElement("E", i, i + 1)], 0) for i in range(1, alg.n)]
    ops.append((alg.index[BasisElement("F", 1, alg.n)], 1))
    return ops


def annihilates(module: VacuumModule, vec: Mapping[Monomial, Fraction], depth: int) -> bool:
    """True if every x(m), 1 <= m <= depth, and every e_alpha(0) kills ``vec``."""
    alg = module.alg
    for g in range(alg.dim):
        for m in range(1, depth + 1):
            if module.apply(g, m, vec):
                return False
    for g in alg.positive:
        if module.apply(g, 0, vec):
            return False
    return True


def singular_vectors(k, n: int, d: int, mu: Sequence[int], module: VacuumModule | None = None, verify: bool = True) -> list[PBWVector]:
    """Basis of the singular vectors of weight ``mu`` at depth ``d``."""
    module = module or VacuumModule(n, k)
    basis = weight_space_basis(n, d, mu)
    if not basis:
        return []
    rows = _operator_rows(module, raising_operators(module.alg), basis)
    log.info("singular solve n=%d d=%d mu=%s: %d columns, %d rows", n, d, mu, len(basis), len(rows))
    kernel = exact_nullspace(rows, len(basis))
    out = []
    for vec in kernel:
        v = PBWVector(module, {basis[c]: x for c, x in vec.items()})
        if verify and not annihilates(module, v.terms, d):
            raise RuntimeError("solved vector is not annihilated by all positive modes")
        out.append(v)
    return out


def estimate_size(n: int, d: int, mu: Sequence[int]) -> int:
    """Dimension of the weight space, counted from the generating function without enumerating it."""
    from .characters import vacuum_character

    return vacuum_character(n, d).get((d, tuple(mu)), 0)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


def nonnegative_closure(module: VacuumModule, gens: Sequence[Mapping[Monomial, Fraction]]) -> dict[tuple[int, tuple[int, ...]], list[Vec]]:
    """Spanning sets, per (depth, weight), of U(g[t]) applied to ``gens``.

    Uses modes x(m) with m >= 0; the result is finite because positive
    modes lower the depth and zero modes stay in a finite-dimensional slice.
    """
    slices: dict[tuple[int, tuple[int, ...]], Echelon] = {}
    vectors: dict[tuple[int, tuple[int, ...]], list[Vec]] = defaultdict(list)
    index_maps: dict[tuple[int, tuple[int, ...]], dict[Monomial, int]] = {}
    queue: list[Vec] = []

    def offer(vec: Vec):
        if not vec:
            return
        grades = module.grading(vec)
        if len(grades) != 1:
            raise ValueError("generators must be homogeneous")
        key = grades.pop()
        d, mu = key
        if key not in slices:
            slices[key] = Echelon(reduced=False)
            index_maps[key] = {m: i for i, m in enumerate(weight_space_basis(module.n, d, mu))}
        idx = index_maps[key]
        if slices[key].add({idx[m]: c for m, c in vec.items()}):
            vectors[key].append(vec)
            queue.append(vec)

    for g in gens:
        offer(dict(g))
    alg = module.alg
    while queue:
        vec = queue.pop()
        depth = max(module.depth(m) for m in vec)
        for g in range(alg.dim):
            for m in range(0, depth + 1):
                offer(module.apply(g, m, vec))
    return dict(vectors)


def _negative_monomials(n: int, depth: int) -> list[Monomial]:
    out: list[Monomial] = [()]
    for d in range(1, depth + 1):
        for ms in _depth_slices(n, d).values():
            out.extend(ms)
    return out


def ideal_weight_space(module: VacuumModule, gens: Sequence[PBWVector | Mapping], d: int, mu: Sequence[int], closure=None) -> tuple[int, list[Vec]]:
    """Dimension and a basis of the ideal generated by ``gens`` in slice (d, mu)."""
    mu = tuple(mu)
    gens = [g.terms if isinstance(g, PBWVector) else g for g in gens]
    if closure is None:
        closure = nonnegative_closure(module, gens)
    basis = weight_space_basis(module.n, d, mu)
    idx = {m: i for i, m in enumerate(basis)}
    ech = Echelon(reduced=False)
    kept: list[Vec] = []
    for (d0, mu0), vecs in sorted(closure.items()):
        if d0 > d:
            continue
        need = tuple(a - b for a, b in zip(mu, mu0))
        for z in weight_space_basis_any(module.n, d - d0, need):
            for vec in vecs:
                out = dict(vec)
                for g, dep in reversed(z):
                    out = module.apply(g, -dep, out)
                if out and ech.add({idx[m]: c for m, c in out.items()}):
                    kept.append(out)
    return ech.rank, kept


def weight_space_basis_any(n: int, d: int, mu: Sequence[int]) -> tuple[Monomial, ...]:
    if d == 0:
        return ((),) if not any(mu) else ()
    return _depth_slices(n, d).get(tuple(mu), ())


def graded_dim_quotient(module: VacuumModule, gens, d: int, mu: Sequence[int], closure=None) -> int:
    dim, _ = ideal_weight_space(module, gens, d, mu, closure)
    return len(weight_space_basis(module.n, d, mu)) - dim


# ---------------------------------------------------------------------------
# coefficient report for the sl_3 vector of weight 2a1 + a2
# ---------------------------------------------------------------------------


def _named_shapes(m: int):
    """The named monomial shapes of the sl_3 ansatz at depth 3(2m+1).

    Each entry is (name, index range, non-Cartan factors, number of h
    factors as a function of i); factor tuples use (kind, i, j, depth).
    """
    e1, e2, et = ("E", 1, 2), ("E", 2, 3), ("E", 1, 3)
    f1, f2, ft = ("F", 1, 2), ("F", 2, 3), ("F", 1, 3)
    top = 6 * m
    shapes = [("a", top + 1, [(e1, 1), (et, 1)])]
    for name, fac in [
        ("x", [(e1, 1), (e1, 1), (e2, 1)]),
        ("y", [(et, 1), (et, 1), (f2, 1)]),
        ("b", [(e1, 2), (et, 1)]),
        ("c", [(e1, 1), (et, 2)]),
    ]:
        shapes.append((name, top, fac))
    for name, fac in [
        ("d", [(et, 1), (et, 2), (f2, 1)]),
        ("z", [(e1, 1), (e2, 1), (et, 1), (f2, 1)]),
        ("l", [(e1, 1), (e1, 1), (et, 1), (f1, 1)]),
        ("n", [(e1, 2), (et, 2)]),
        ("k", [(e1, 1), (e1, 1), (e2, 2)]),
        ("g", [(e1, 1), (e1, 2), (e2, 1)]),
        ("p", [(et, 1), (et, 1), (f2, 2)]),
        ("q", [(e1, 1), (et, 1), (et, 1), (ft, 1)]),
        ("m", [(e1, 1), (et, 3)]),
        ("r", [(e1, 3), (et, 1)]),
    ]:
        shapes.append((name, top - 1, fac))
    return shapes


def named_monomials(m: int) -> dict[str, list[Monomial]]:
    """Monomial for each coefficient symbol: name -> [mono_0, ..., mono_top].

    The i-th monomial carries h1(-1)^i h2(-1)^(top - i).
    """
    alg = sl(3)
    h1, h2 = alg.index[BasisElement("H", 1, 2)], alg.index[BasisElement("H", 2, 3)]
    out = {}
    for name, top, fac in _named_shapes(m):
        base = [(alg.index[BasisElement(kind, i, j)], dep) for (kind, i, j), dep in fac]
        out[name] = [tuple(sorted(base + [(h1, 1)] * i + [(h2, 1)] * (top - i))) for i in range(top + 1)]
    return out


class CoefficientReport:
    """Coefficients of a depth-3(2m+1), weight 2a1+a2 vector in the named ansatz."""

    def __init__(self, m: int, values: dict[str, list[Fraction]], residual: Vec, module: VacuumModule):
        self.m = m
        self.values = values
        self.residual = residual
        self.module = module

    def get(self, name: str, i: int) -> Fraction:
        seq = self.values[name]
        return seq[i] if 0 <= i < len(seq) else Fraction(0)

    def __getitem__(self, key: str) -> Fraction:
        mt = re.fullmatch(r"([a-z])_?(-?\d+)", key)
        if not mt:
            raise KeyError(key)
        return self.get(mt.group(1), int(mt.group(2)))

    def residual_in_V1(self) -> bool:
        """Every residual monomial has few or deep Cartan factors."""
        alg = self.module.alg
        cart = set(alg.cartan)
        for mono in self.residual:
            hs = [dep for g, dep in mono if g in cart]
            if not (len(hs) <= 6 * self.m - 2 or any(dep > 1 for dep in hs)):
                return False
        return True

    def relations(self) -> dict[str, list[Fraction]]:
        """Residuals of the linear relations among the ansatz coefficients.

        Every entry of every list is zero for a genuine singular vector.
        """
        m = self.m
        top = 6 * m
        kk = Fraction(-4) + Fraction(2, 2 * m + 1)
        a, x, y, b, c, z, l, q = (lambda i, s=s: self.get(s, i) for s in "axybczlq")
        rel: dict[str, list[Fraction]] = {}
        rel["a-y"] = [a(i) - y(i) for i in range(top + 1)] + [a(top + 1)]
        rel["e1-coefficient"] = [-2 * (i + 1) * a(i + 1) + (top + 1 - i) * a(i) + x(i) + l(i - 1) for i in range(top + 1)]
        rel["e2-coefficient"] = [(i + 1) * a(i + 1) - 2 * (top + 1 - i) * a(i) - 2 * x(i) + z(i) for i in range(top)]
        rel["e2-top"] = [(top + 1) * a(top + 1) - 2 * a(top) - 2 * x(top)]
        rel["f1-coefficient"] = [kk * a(i) + 2 * y(i) - b(i - 1) for i in range(top + 1)]
        rel["f1-ends"] = [kk * a(top + 1) - b(top), kk * a(0) + 2 * y(0)]
        rel["ftheta-coefficient"] = [kk * a(i) - 2 * x(i) - c(i - 1) - c(i) for i in range(top + 1)]
        if m >= 1:
            rel["a0-y0"] = [a(0), y(0)]
        rel["a+x"] = [a(i) + x(i) for i in range(top + 1)]
        rel["etheta-coefficient"] = [-(i + 1) * a(i + 1) - (top - i) * a(i) + q(i) + q(i - 1) for i in range(top + 1)]
        return rel

    def first_nonzero_a(self) -> int | None:
        for i, v in enumerate(self.values["a"]):
            if v:
                return i
        return None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "coefficients": {name: [fraction_str(v) for v in vals] for name, vals in self.values.items()},
            "residual_terms": len(self.residual),
            "residual_in_V1": self.residual_in_V1(),
        }


def coefficient_report(v: PBWVector, m: int) -> CoefficientReport:
    if v.module.n != 3:
        raise ValueError("the coefficient ansatz is defined for sl_3")
    want = (3 * (2 * m + 1), (2, 1))
    if v.grading() - {want}:
        raise ValueError(f"vector is not homogeneous of grading {want}")
    names = named_monomials(m)
    values = {}
    residual = dict(v.terms)
    for name, monos in names.items():
        values[name] = [v.coefficient(mono) for mono in monos]
        for mono in monos:
            residual.pop(mono, None)
    return CoefficientReport(m, values, residual, v.module)


def normalize(v: PBWVector, m: int) -> PBWVector:
    """Scale so that the coefficient a_{2m} equals 1."""
    mono = named_monomials(m)["a"][2 * m]
    if not v.coefficient(mono):
        raise ValueError("a_{2m} vanishes; the vector cannot be normalized")
    return v.scaled_to(mono, 1)


def cartan_part(v: PBWVector) -> Vec:
    """Terms made only of h_i(-1) factors."""
    cart = set(v.module.alg.cartan)
    return {mono: c for mono, c in v.terms.items() if all(g in cart and d == 1 for g, d in mono)}


def cartan_power_product(module: VacuumModule, factors: Sequence[tuple[LieElement, int]]) -> PBWVector:
    """prod x(-1)^e applied to the vacuum, for Cartan elements x."""
    seq = []
    for x, e in factors:
        seq.extend([(x, -1)] * e)
    return build_vector(module, [(1, seq)])
