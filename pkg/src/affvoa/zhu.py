"""Zhu-algebra images of vectors of V^k(sl_n) and the Harish-Chandra projection.

A(V^k) is identified with U(sl_n) through [x(-1)1] -> x.  For a weight-one
field x the relations x(-n-2)w + x(-n-1)w = 0 mod O(V) and
x(-1)w = x * w - x(0)w give the recursion

    [x(-n-1) w] = (-1)^n (x [w] - [x(0) w]),

which strictly lowers the depth.  Enveloping elements are kept in PBW
order n- h n+ so the Cartan part of a weight-zero element is read off
directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .lie import LieElement, SLn, sl
from .linalg import Echelon
from .pbw import PBWVector, VacuumModule, add_into
from .poly import ParamPoly, PolyRing, as_fraction, fraction_str

Word = tuple  # tuple[int, ...] of basis indices


def _key(alg: SLn, g: int) -> tuple[int, int]:
    if g in alg.negative:
        return (0, g)
    if g in alg.cartan:
        return (1, g)
    return (2, g)


@lru_cache(maxsize=None)
def _normal_form(n: int, word: Word) -> tuple[tuple[Word, Fraction], ...]:
    alg = sl(n)
    for i in range(len(word) - 1):
        x, y = word[i], word[i + 1]
        if _key(alg, x) > _key(alg, y):
            out: dict = {}
            swapped = word[:i] + (y, x) + word[i + 2 :]
            add_into(out, dict(_normal_form(n, swapped)))
            for z, c in alg.bracket_table[x][y].items():
                add_into(out, dict(_normal_form(n, word[:i] + (z,) + word[i + 2 :])), c)
            return tuple(sorted(out.items()))
    return ((word, Fraction(1)),)


class EnvelopingElement:
    """An element of U(sl_n) as a combination of PBW-ordered words."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: SLn, terms: Mapping[Word, object] | None = None, ordered: bool = False):
        self.alg = alg
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = as_fraction(c)
            if not c:
                continue
            if ordered:
                add_into(self.terms, {w: c})
            else:
                add_into(self.terms, dict(_normal_form(alg.n, tuple(w))), c)

    @classmethod
    def one(cls, alg: SLn) -> "EnvelopingElement":
        return cls(alg, {(): 1}, ordered=True)

    @classmethod
    def from_lie(cls, x: LieElement) -> "EnvelopingElement":
        return cls(x.alg, {(g,): c for g, c in x.indices().items()}, ordered=True)

    @classmethod
    def word(cls, alg: SLn, letters: Sequence[int], coeff=1) -> "EnvelopingElement":
        return cls(alg, {tuple(letters): coeff})

    def __add__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        out = dict(self.terms)
        add_into(out, other.terms)
        return EnvelopingElement(self.alg, out, ordered=True)

    def __sub__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        out = dict(self.terms)
        add_into(out, other.terms, -1)
        return EnvelopingElement(self.alg, out, ordered=True)

    def __neg__(self) -> "EnvelopingElement":
        return self.scale(-1)

    def scale(self, c) -> "EnvelopingElement":
        c = as_fraction(c)
        return EnvelopingElement(self.alg, {w: v * c for w, v in self.terms.items()}, ordered=True)

    def __mul__(self, other):
        if not isinstance(other, EnvelopingElement):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                add_into(out, dict(_normal_form(self.alg.n, w1 + w2)), c1 * c2)
        return EnvelopingElement(self.alg, out, ordered=True)

    def __eq__(self, other):
        return isinstance(other, EnvelopingElement) and self.alg is other.alg and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"EnvelopingElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (-len(kv[0]), kv[0])):
            letters = " ".join(str(self.alg.basis[g]) for g in w) or "1"
            parts.append(f"{fraction_str(c)}*{letters}")
        return " + ".join(parts)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def weights(self) -> set[tuple[int, ...]]:
        out = set()
        for w in self.terms:
            wt = [0] * self.alg.rank
            for g in w:
                for i, a in enumerate(self.alg.weights[g]):
                    wt[i] += a
            out.add(tuple(wt))
        return out

    def weight(self) -> tuple[int, ...] | None:
        ws = self.weights()
        return next(iter(ws)) if len(ws) == 1 else None

    def ad(self, x: LieElement) -> "EnvelopingElement":
        xe = EnvelopingElement.from_lie(x)
        return xe * self - self * xe

    def vector(self) -> dict[Word, Fraction]:
        return dict(self.terms)


# -- the Zhu map ---------------------------------------------------------------


class ZhuMap:
    """Memoized [.] : V^k(sl_n) -> U(sl_n); two reduction orders are available."""

    def __init__(self, module: VacuumModule):
        self.module = module
        self.alg = module.alg
        self._left: dict = {}
        self._right: dict = {}

    def _gen(self, g: int) -> EnvelopingElement:
        return EnvelopingElement(self.alg, {(g,): 1}, ordered=True)

    def monomial(self, mono) -> EnvelopingElement:
        """Peel the leftmost factor of the normal-ordered monomial."""
        hit = self._left.get(mono)
        if hit is not None:
            return hit
        if not mono:
            res = EnvelopingElement.one(self.alg)
        else:
            (g, d), rest = mono[0], mono[1:]
            res = self._peel(g, d, rest, self.monomial)
        self._left[mono] = res
        return res

    def _peel(self, g: int, d: int, rest, recurse) -> EnvelopingElement:
        # [x(-d) w] = (-1)^(d-1) (x [w] - [x(0) w])
        inner = self._gen(g) * recurse(rest)
        for mono2, c in self.module.act(g, 0, rest).items():
            inner = inner - recurse(mono2).scale(c)
        return inner.scale((-1) ** (d - 1))

    def monomial_right(self, mono) -> EnvelopingElement:
        """Alternative order: peel the rightmost factor, correcting for reordering."""
        hit = self._right.get(mono)
        if hit is not None:
            return hit
        if not mono:
            res = EnvelopingElement.one(self.alg)
        else:
            (g, d), rest = mono[-1], mono[:-1]
            # g(-d) rest = mono + (terms with fewer factors)
            moved = dict(self.module.act(g, -d, rest))
            c0 = moved.pop(mono)
            res = self._peel(g, d, rest, self.monomial_right)
            for mono2, c in moved.items():
                res = res - self.monomial_right(mono2).scale(c)
            res = res.scale(1 / c0)
        self._right[mono] = res
        return res

    def __call__(self, v: PBWVector | Mapping, order: str = "left") -> EnvelopingElement:
        terms = v.terms if isinstance(v, PBWVector) else v
        fn = self.monomial if order == "left" else self.monomial_right
        out = EnvelopingElement(self.alg)
        for mono, c in terms.items():
            out = out + fn(mono).scale(c)
        return out


def zhu_image(v: PBWVector, order: str = "left") -> EnvelopingElement:
    return ZhuMap(v.module)(v, order)


def field_mode_action(module: VacuumModule, g: int, m: int, j: int, vec: Mapping) -> dict:
    """a_j applied to vec, for a = x(-m-1)1 with x the basis element g.

    Y(a, z) = (1/m!) d^m/dz^m Y(x, z), so a_j = binom(m - j - 1, m) x(j - m).
    """
    c = _gbinom(m - j - 1, m)
    if not c:
        return {}
    return {mono: v * c for mono, v in module.apply(g, j - m, vec).items()}


def _gbinom(top: int, k: int) -> int:
    if top >= 0:
        return comb(top, k)
    # binom(-r, k) = (-1)^k binom(r + k - 1, k)
    return (-1) ** k * comb(-top + k - 1, k)


def star_product(module: VacuumModule, g: int, m: int, vec: Mapping) -> dict:
    """a * v = sum_j binom(wt a, j) a_{j-1} v with a = x(-m-1)1 of weight m + 1."""
    out: dict = {}
    for j in range(m + 2):
        add_into(out, field_mode_action(module, g, m, j - 1, vec), comb(m + 1, j))
    return out


# -- Harish-Chandra projection -------------------------------------------------


def cartan_ring(n: int) -> PolyRing:
    return PolyRing(tuple(f"l{i}" for i in range(1, n)))


def hc_projection(u: EnvelopingElement) -> ParamPoly:
    """Pure-Cartan part of a weight-zero element, as a polynomial in l_i = lambda(h_i)."""
    alg = u.alg
    zero = (0,) * alg.rank
    if u and u.weights() != {zero}:
        raise ValueError(f"hc_projection needs a weight-zero element, got weights {sorted(u.weights())}")
    ring = cartan_ring(alg.n)
    cart = {g: ring.var(f"l{i + 1}") for i, g in enumerate(alg.cartan)}
    out = ring.zero()
    for w, c in u.terms.items():
        if all(g in cart for g in w):
            term = ring.const(c)
            for g in w:
                term = term * cart[g]
            out = out + term
    return out


def _monomials_of_weight(alg: SLn, weight: Sequence[int], max_len: int) -> list[Word]:
    """PBW-ordered words of a given weight and length <= max_len."""
    order = sorted(range(alg.dim), key=lambda g: _key(alg, g))
    out = []

    def rec(start: int, word: list, wt: list):
        if tuple(wt) == tuple(weight):
            out.append(tuple(word))
        if len(word) == max_len:
            return
        for pos in range(start, len(order)):
            g = order[pos]
            word.append(g)
            rec(pos, word, [a + b for a, b in zip(wt, alg.weights[g])])
            word.pop()

    rec(0, [], [0] * alg.rank)
    return out


def adjoint_closure(seeds: Sequence[EnvelopingElement]) -> list[EnvelopingElement]:
    """A basis of the ad(sl_n)-module generated by the seeds."""
    if not seeds:
        return []
    alg = seeds[0].alg
    words: dict[Word, int] = {}
    ech = Echelon()
    basis: list[EnvelopingElement] = []

    def coords(u: EnvelopingElement) -> dict[int, Fraction]:
        return {words.setdefault(w, len(words)): c for w, c in u.terms.items()}

    queue = list(seeds)
    while queue:
        u = queue.pop(0)
        if not u or not ech.add(coords(u)):
            continue
        basis.append(u)
        for g in range(alg.dim):
            queue.append(u.ad(alg.basis_element(g)))
    return basis


def weight_zero_elements(seeds: Sequence[EnvelopingElement], cap: int = 6) -> list[EnvelopingElement]:
    """Weight-zero elements of the two-sided ideal generated by the seeds, up to degree ``cap``.

    The adjoint closure R of the seeds is spanned by weight vectors; each r
    in R is combined with PBW words a, b with wt(a) + wt(r) + wt(b) = 0 and
    total degree <= cap, giving a r b.  The result is a linearly
    independent list.
    """
    if not seeds:
        return []
    alg = seeds[0].alg
    closure = adjoint_closure(seeds)
    pieces: list[EnvelopingElement] = []
    for r in closure:
        for wt in sorted(r.weights()):
            part = EnvelopingElement(alg, {w: c for w, c in r.terms.items() if _word_weight(alg, w) == wt}, ordered=True)
            if part:
                pieces.append(part)
    pieces = _independent(pieces)
    out: list[EnvelopingElement] = []
    for r in pieces:
        wt = r.weight()
        room = cap - r.degree()
        if room < 0:
            continue
        target = tuple(-a for a in wt)
        for word in _monomials_of_weight(alg, target, room):
            out.append(EnvelopingElement.word(alg, word) * r)
            if word:
                out.append(r * EnvelopingElement.word(alg, word))
    return _independent(out)


def _word_weight(alg: SLn, w: Word) -> tuple[int, ...]:
    wt = [0] * alg.rank
    for g in w:
        for i, a in enumerate(alg.weights[g]):
            wt[i] += a
    return tuple(wt)


def _independent(elems: Iterable[EnvelopingElement]) -> list[EnvelopingElement]:
    words: dict[Word, int] = {}
    ech = Echelon()
    out = []
    for u in elems:
        if not u:
            continue
        if ech.add({words.setdefault(w, len(words)): c for w, c in u.terms.items()}):
            out.append(u)
    return out


# -- the conjectured families ---------------------------------------------------


@dataclass(frozen=True)
class Family:
    """lambda(t) = (a0 + a1 t) Lambda_1 + (b0 + b1 t) Lambda_2."""

    label: str
    a: tuple[Fraction, Fraction]
    b: tuple[Fraction, Fraction]

    def at(self, t) -> tuple[Fraction, Fraction]:
        t = as_fraction(t)
        return (self.a[0] + self.a[1] * t, self.b[0] + self.b[1] * t)

    def contains(self, lam: Sequence) -> bool:
        """Whether lam lies on the line."""
        x, y = (as_fraction(v) for v in lam)
        (a0, a1), (b0, b1) = self.a, self.b
        # (x - a0, y - b0) parallel to (a1, b1)
        return (x - a0) * b1 - (y - b0) * a1 == 0

    def restrict(self, p: ParamPoly) -> ParamPoly:
        ring = PolyRing(("t",))
        t = ring.var("t")
        return p.compose(ring, {"l1": t * self.a[1] + self.a[0], "l2": t * self.b[1] + self.b[0]})


def conjectured_families(m: int) -> list[Family]:
    out = []
    one, zero = Fraction(1), Fraction(0)
    for i in range(2 * m + 1):
        c = Fraction(2 * i, 2 * m + 1)
        out.append(Family(f"t*L1 - {fraction_str(c)}*L2", (zero, one), (-c, zero)))
        out.append(Family(f"t*L2 - {fraction_str(c)}*L1", (-c, zero), (zero, one)))
        out.append(Family(f"t*L1 - (t + {fraction_str(c)} + 1)*L2", (zero, one), (-c - 1, -one)))
    return out


@dataclass
class VarietyReport:
    m: int
    cap: int
    polynomials: list[ParamPoly]
    family_verdicts: list[tuple[str, bool]]
    witnesses: list[tuple[tuple[Fraction, Fraction], int | None]]

    @property
    def families_vanish(self) -> bool:
        return all(ok for _, ok in self.family_verdicts)

    @property
    def all_witnessed(self) -> bool:
        return all(idx is not None for _, idx in self.witnesses)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "degree_cap": self.cap,
            "polynomials": [str(p) for p in self.polynomials],
            "families": [{"family": lab, "vanishes": ok} for lab, ok in self.family_verdicts],
            "off_family_witnesses": [
                {"weight": [fraction_str(x) for x in lam], "polynomial_index": idx} for lam, idx in self.witnesses
            ],
        }


def canonical_polys(polys: Iterable[ParamPoly]) -> list[ParamPoly]:
    """Nonzero polynomials scaled to leading coefficient 1, deduplicated and sorted."""
    seen = {}
    for p in polys:
        if p:
            q = p / p.leading_coefficient()
            seen[str(q)] = q
    return [seen[k] for k in sorted(seen, key=lambda s: (len(s), s))]


def characteristic_variety_test(polys: Sequence[ParamPoly], m: int, seed: int = 0, samples: int = 50, cap: int = 6) -> VarietyReport:
    fams = conjectured_families(m)
    verdicts = [(f.label, all(not f.restrict(p) for p in polys)) for f in fams]
    rng = random.Random(seed)
    witnesses = []
    while len(witnesses) < samples:
        lam = (Fraction(rng.randint(-20, 20), rng.randint(1, 4)), Fraction(rng.randint(-20, 20), rng.randint(1, 4)))
        if any(f.contains(lam) for f in fams):
            continue
        point = {"l1": lam[0], "l2": lam[1]}
        idx = next((i for i, p in enumerate(polys) if p.evaluate(point)), None)
        witnesses.append((lam, idx))
    return VarietyReport(m, cap, list(polys), verdicts, witnesses)
