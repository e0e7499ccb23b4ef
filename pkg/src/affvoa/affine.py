"""Affine weights of sl_n^ and the action of the affine Weyl group.

Weights are coordinate vectors over (Lambda_0, delta, alpha_1, ..., alpha_{n-1}).
The scaling element is not modelled; every weight used here lies in this
span, which is stable under reflections in real roots and translations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .lie import _inverse
from .poly import as_fraction, fraction_str


@dataclass(frozen=True)
class AffineWeight:
    n: int
    coords: tuple[Fraction, ...]  # (Lambda_0, delta, alpha_1, ..., alpha_{n-1})

    def __post_init__(self):
        if len(self.coords) != self.n + 1:
            raise ValueError(f"sl({self.n}) weights have {self.n + 1} coordinates")
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in self.coords))

    @classmethod
    def make(cls, n: int, lam0=0, delta=0, alpha: Sequence = ()) -> "AffineWeight":
        alpha = list(alpha) + [0] * (n - 1 - len(alpha))
        return cls(n, (lam0, delta, *alpha))

    @property
    def level(self) -> Fraction:
        return self.coords[0]

    @property
    def delta(self) -> Fraction:
        return self.coords[1]

    @property
    def finite(self) -> tuple[Fraction, ...]:
        return self.coords[2:]

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        _same(self, other)
        return AffineWeight(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        _same(self, other)
        return AffineWeight(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(self.n, tuple(-a for a in self.coords))

    def __mul__(self, c) -> "AffineWeight":
        c = as_fraction(c)
        return AffineWeight(self.n, tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        parts = []
        names = ["Lambda0", "delta"] + [f"alpha{i}" for i in range(1, self.n)]
        for c, name in zip(self.coords, names):
            if c:
                parts.append(f"{fraction_str(c)}*{name}")
        return " + ".join(parts) if parts else "0"

    def to_list(self) -> list[str]:
        return [fraction_str(c) for c in self.coords]


def _same(a: AffineWeight, b: AffineWeight):
    if a.n != b.n:
        raise ValueError(f"rank mismatch: {a.n} vs {b.n}")


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    r = n - 1
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)) for i in range(r))


def finite_pair(n: int, a: Sequence, b: Sequence) -> Fraction:
    c = cartan_matrix(n)
    total = Fraction(0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y and c[i][j]:
                    total += as_fraction(x) * as_fraction(y) * c[i][j]
    return total


def pair(lam: AffineWeight, mu: AffineWeight) -> Fraction:
    _same(lam, mu)
    return (
        lam.coords[0] * mu.coords[1]
        + lam.coords[1] * mu.coords[0]
        + finite_pair(lam.n, lam.finite, mu.finite)
    )


# -- named weights -------------------------------------------------------


def Lambda0(n: int) -> AffineWeight:
    return AffineWeight.make(n, lam0=1)


def delta(n: int) -> AffineWeight:
    return AffineWeight.make(n, delta=1)


def alpha(n: int, i: int) -> AffineWeight:
    """Simple root alpha_i; i = 0 gives delta - theta."""
    if not 0 <= i < n:
        raise ValueError(f"simple root index {i} out of range for sl({n})")
    if i == 0:
        return AffineWeight.make(n, delta=1, alpha=[-1] * (n - 1))
    a = [0] * (n - 1)
    a[i - 1] = 1
    return AffineWeight.make(n, alpha=a)


def root(n: int, coeffs: Sequence, height: int = 0) -> AffineWeight:
    return AffineWeight.make(n, delta=height, alpha=coeffs)


def theta(n: int) -> tuple[int, ...]:
    return (1,) * (n - 1)


def interval_root(n: int, i: int, j: int) -> tuple[int, ...]:
    """alpha_i + ... + alpha_{j-1}."""
    return tuple(1 if i <= a < j else 0 for a in range(1, n))


def finite_rho(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i * (n - i), 2) for i in range(1, n))


def rho_hat(n: int) -> AffineWeight:
    return AffineWeight.make(n, lam0=n, alpha=finite_rho(n))


def fundamental_weight(n: int, i: int) -> tuple[Fraction, ...]:
    """Finite fundamental weight in simple-root coordinates."""
    return tuple(_inverse(cartan_matrix(n))[i - 1])


def level_for(n: int, q: int) -> Fraction:
    return Fraction(-n) + Fraction(n - 1, q)


def k_lambda0(n: int, k) -> AffineWeight:
    return Lambda0(n) * as_fraction(k)


# -- Weyl group ----------------------------------------------------------


def reflect(a: AffineWeight, lam: AffineWeight) -> AffineWeight:
    """s_a(lam) for a real root ``a`` (norm 2, so the coroot equals the root)."""
    norm = pair(a, a)
    if norm == 0:
        raise ValueError("cannot reflect in an imaginary root")
    return lam - a * (2 * pair(lam, a) / norm)


def translate(gamma: Sequence, lam: AffineWeight) -> AffineWeight:
    """t_gamma(lam) = lam + (lam|delta) gamma - ((lam|gamma) + (lam|delta)(gamma|gamma)/2) delta."""
    n = lam.n
    g = AffineWeight.make(n, alpha=gamma)
    ld = pair(lam, delta(n))
    shift = pair(lam, g) + ld * pair(g, g) / 2
    return lam + g * ld - delta(n) * shift


class AffineWeylElement:
    """A word in reflections and translations; acts by composition, rightmost first."""

    def __init__(self, n: int, factors: Iterable[tuple[str, object]] = ()):
        self.n = n
        self.factors: tuple = tuple(self._check(f) for f in factors)

    def _check(self, factor):
        kind, data = factor
        if kind == "s":
            if not isinstance(data, AffineWeight) or data.n != self.n:
                raise ValueError("reflection factor needs an AffineWeight root")
            return ("s", data)
        if kind == "t":
            data = tuple(as_fraction(x) for x in data)
            if len(data) != self.n - 1:
                raise ValueError("translation vector has the wrong length")
            return ("t", data)
        raise ValueError(f"unknown factor kind {kind!r}")

    @classmethod
    def identity(cls, n: int) -> "AffineWeylElement":
        return cls(n)

    @classmethod
    def s(cls, a: AffineWeight) -> "AffineWeylElement":
        return cls(a.n, [("s", a)])

    @classmethod
    def t(cls, n: int, gamma: Sequence) -> "AffineWeylElement":
        return cls(n, [("t", gamma)])

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return AffineWeylElement(self.n, self.factors + other.factors)

    def __pow__(self, e: int) -> "AffineWeylElement":
        return AffineWeylElement(self.n, self.factors * e)

    def inverse(self) -> "AffineWeylElement":
        out = []
        for kind, data in reversed(self.factors):
            out.append((kind, data) if kind == "s" else ("t", tuple(-x for x in data)))
        return AffineWeylElement(self.n, out)

    def __call__(self, lam: AffineWeight) -> AffineWeight:
        for kind, data in reversed(self.factors):
            lam = reflect(data, lam) if kind == "s" else translate(data, lam)
        return lam

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Images of the coordinate basis vectors, one row per basis vector."""
        rows = []
        for i in range(self.n + 1):
            e = [0] * (self.n + 1)
            e[i] = 1
            rows.append(self(AffineWeight(self.n, tuple(e))).coords)
        return tuple(rows)

    def __eq__(self, other):
        return isinstance(other, AffineWeylElement) and self.n == other.n and self.matrix() == other.matrix()

    def __hash__(self):
        return hash(self.matrix())

    def sign(self) -> int:
        """(-1)^length: reflections are odd, translations even."""
        return -1 if sum(1 for kind, _ in self.factors if kind == "s") % 2 else 1


def twisted_action(w: AffineWeylElement, lam: AffineWeight) -> AffineWeight:
    rh = rho_hat(lam.n)
    return w(lam + rh) - rh


def compose_check(word: AffineWeylElement, expected: AffineWeylElement | None = None) -> bool:
    """Extensional equality of two words (or of ``word`` with the identity)."""
    if expected is None:
        expected = AffineWeylElement.identity(word.n)
    return word == expected


def beta0(n: int, q: int) -> AffineWeight:
    return root(n, tuple(-x for x in theta(n)), q)


# -- finite Weyl group ---------------------------------------------------


def finite_weyl_group(n: int) -> list[tuple[tuple[int, ...], AffineWeylElement]]:
    """All elements of S_n as (permutation, reduced word), by breadth-first search.

    Each element is recorded with a reduced word in simple reflections so
    that its sign is (-1)^length.
    """
    simple = [alpha(n, i) for i in range(1, n)]
    start = tuple(range(n))
    seen = {start: AffineWeylElement.identity(n)}
    frontier = [start]
    while frontier:
        nxt = []
        for perm in frontier:
            for i in range(n - 1):
                p = list(perm)
                p[i], p[i + 1] = p[i + 1], p[i]
                p = tuple(p)
                if p not in seen:
                    seen[p] = AffineWeylElement.s(simple[i]) * seen[perm]
                    nxt.append(p)
        frontier = nxt
    return sorted(seen.items())


# -- integral root systems -----------------------------------------------


def finite_roots(n: int, positive_only: bool = False) -> list[tuple[int, ...]]:
    out = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            r = interval_root(n, i, j)
            out.append(r)
            if not positive_only:
                out.append(tuple(-x for x in r))
    return out


@dataclass
class IntegralSystem:
    weight: AffineWeight
    cutoff: int
    positive: list[AffineWeight]
    simple: list[AffineWeight]
    positive_zero: list[AffineWeight]
    simple_zero: list[AffineWeight]


def _is_positive(a: AffineWeight) -> bool:
    if a.delta > 0:
        return True
    return a.delta == 0 and all(x >= 0 for x in a.finite)


def integral_simple_roots(lam: AffineWeight, cutoff: int | None = None, q: int | None = None) -> IntegralSystem:
    """Integral positive real roots of ``lam`` up to delta-height ``cutoff`` and their simple roots.

    The default cutoff is 4q when ``q`` is given, else 4.  A positive root
    is simple when it is not the sum of two integral positive roots; any
    such decomposition has both summands of smaller height, so roots inside
    the window are decided correctly.
    """
    n = lam.n
    shifted = lam + rho_hat(n)
    if pair(shifted, delta(n)) == 0:
        raise ValueError("critical weight: (lambda + rho | delta) = 0")
    if cutoff is None:
        cutoff = 4 * (q or 1)
    pos = []
    for j in range(0, cutoff + 1):
        for r in finite_roots(n):
            a = root(n, r, j)
            if not _is_positive(a):
                continue
            val = 2 * pair(shifted, a) / pair(a, a)
            if val.denominator == 1:
                pos.append(a)
    pos_set = set(pos)
    simple = []
    for a in pos:
        if not any((a - b) in pos_set for b in pos if b != a and b.delta <= a.delta):
            simple.append(a)
    zero = [a for a in pos if pair(shifted, a) == 0]
    simple_zero = [a for a in simple if pair(shifted, a) == 0]
    return IntegralSystem(lam, cutoff, pos, simple, zero, simple_zero)


def reflection_permutes(system: IntegralSystem, a: AffineWeight) -> bool:
    """s_a maps the windowed positive system minus {a} into positive integral roots."""
    pos_set = set(system.positive)
    shifted = system.weight + rho_hat(system.weight.n)
    for b in system.positive:
        if b == a:
            continue
        img = reflect(a, b)
        if not _is_positive(img):
            return False
        if img.delta <= system.cutoff and img not in pos_set:
            return False
        if (2 * pair(shifted, img) / pair(img, img)).denominator != 1:
            return False
    return True
