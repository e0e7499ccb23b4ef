"""sl_n in its Chevalley basis.

Basis conventions follow elementary matrix units: the positive root
vector for the interval (i, j), i < j, is ``E[i,j] = E_ij``, its negative
partner is ``F[i,j] = E_ji`` and ``H[i] = E_ii - E_{i+1,i+1}``.  With this
choice [E[1,2], E[2,3]] = E[1,3], so c(alpha_1, alpha_2) = 1, and also
[E[2,3], F[1,3]] = F[1,2] and [F[1,3], E[1,2]] = F[2,3].

The invariant form is the trace form, which is the Killing form divided
by 2n, so (theta|theta) = 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .poly import ParamPoly, PolyRing, as_fraction


@dataclass(frozen=True, order=True)
class BasisElement:
    kind: str  # "E", "F" or "H"
    i: int
    j: int  # for H, j == i + 1

    def __post_init__(self):
        if self.kind not in ("E", "F", "H"):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if not 1 <= self.i < self.j:
            raise ValueError(f"bad interval ({self.i}, {self.j})")
        if self.kind == "H" and self.j != self.i + 1:
            raise ValueError("H basis elements are indexed by simple roots")

    @property
    def height(self) -> int:
        return self.j - self.i

    def __str__(self):
        if self.kind == "H":
            return f"H[{self.i}]"
        return f"{self.kind}[{self.i},{self.j}]"

    @property
    def varname(self) -> str:
        """Identifier-safe name, used as a polynomial variable."""
        if self.kind == "H":
            return f"h{self.i}"
        return f"{self.kind.lower()}{self.i}{self.j}" if self.j < 10 else f"{self.kind.lower()}{self.i}_{self.j}"

    @classmethod
    def parse(cls, text: str) -> "BasisElement":
        text = text.strip()
        kind, inner = text[0], text[2:-1]
        if kind == "H":
            i = int(inner)
            return cls("H", i, i + 1)
        i, j = (int(s) for s in inner.split(","))
        return cls(kind, i, j)


class SLn:
    """Structure tables of sl_n; one shared instance per n via :func:`sl`."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        roots = sorted(((j - i, i, j) for i in range(1, n) for j in range(i + 1, n + 1)))
        es = [BasisElement("E", i, j) for _, i, j in roots]
        fs = [BasisElement("F", i, j) for _, i, j in roots]
        hs = [BasisElement("H", i, i + 1) for i in range(1, n)]
        self.basis: tuple[BasisElement, ...] = tuple(es + fs + hs)
        self.dim = len(self.basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.positive = tuple(range(len(es)))
        self.negative = tuple(range(len(es), 2 * len(es)))
        self.cartan = tuple(range(2 * len(es), self.dim))
        self.rank = n - 1
        self.weights = tuple(self._weight(b) for b in self.basis)
        self.mats = tuple(self._matrix(b) for b in self.basis)
        self.bracket_table = tuple(
            tuple(self._decompose(_commutator(self.mats[a], self.mats[b], n)) for b in range(self.dim))
            for a in range(self.dim)
        )
        self.form_table = tuple(
            tuple(_trace_product(self.mats[a], self.mats[b]) for b in range(self.dim))
            for a in range(self.dim)
        )
        self.cartan_matrix = tuple(
            tuple(2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(self.rank))
            for a in range(self.rank)
        )

    def __repr__(self):
        return f"sl({self.n})"

    # -- constructors ---------------------------------------------------
    def e(self, i: int, j: int) -> "LieElement":
        return LieElement(self, {BasisElement("E", i, j): Fraction(1)})

    def f(self, i: int, j: int) -> "LieElement":
        return LieElement(self, {BasisElement("F", i, j): Fraction(1)})

    def h(self, i: int) -> "LieElement":
        return LieElement(self, {BasisElement("H", i, i + 1): Fraction(1)})

    def element(self, coeffs: Mapping[BasisElement, object]) -> "LieElement":
        return LieElement(self, {b: as_fraction(c) for b, c in coeffs.items()})

    def zero(self) -> "LieElement":
        return LieElement(self, {})

    def theta(self) -> tuple[int, int]:
        return (1, self.n)

    def basis_element(self, b: BasisElement | int) -> "LieElement":
        if isinstance(b, int):
            b = self.basis[b]
        return LieElement(self, {b: Fraction(1)})

    # -- internals ------------------------------------------------------
    def _weight(self, b: BasisElement) -> tuple[int, ...]:
        w = [0] * self.rank
        if b.kind == "H":
            return tuple(w)
        sign = 1 if b.kind == "E" else -1
        for a in range(b.i, b.j):
            w[a - 1] = sign
        return tuple(w)

    def _matrix(self, b: BasisElement) -> dict[tuple[int, int], int]:
        if b.kind == "E":
            return {(b.i, b.j): 1}
        if b.kind == "F":
            return {(b.j, b.i): 1}
        return {(b.i, b.i): 1, (b.j, b.j): -1}

    def _decompose(self, mat: Mapping[tuple[int, int], Fraction]) -> dict[int, Fraction]:
        """Coordinates of a traceless matrix in the Chevalley basis."""
        out: dict[int, Fraction] = {}
        diag = [Fraction(0)] * (self.n + 1)
        for (r, c), v in mat.items():
            if not v:
                continue
            if r < c:
                out[self.index[BasisElement("E", r, c)]] = Fraction(v)
            elif r > c:
                out[self.index[BasisElement("F", c, r)]] = Fraction(v)
            else:
                diag[r] += v
        if sum(diag):
            raise ValueError("matrix is not traceless")
        running = Fraction(0)
        for i in range(1, self.n):
            running += diag[i]
            if running:
                out[self.index[BasisElement("H", i, i + 1)]] = running
        return out

    def from_matrix(self, mat: Mapping[tuple[int, int], object]) -> "LieElement":
        coords = self._decompose({k: as_fraction(v) for k, v in mat.items()})
        return LieElement(self, {self.basis[k]: v for k, v in coords.items()})

    def root_vector_index(self, kind: str, i: int, j: int) -> int:
        return self.index[BasisElement(kind, i, j)]


def _commutator(a, b, n):
    out: dict[tuple[int, int], int] = {}
    for (r, s), x in a.items():
        for (t, u), y in b.items():
            if s == t:
                out[(r, u)] = out.get((r, u), 0) + x * y
            if u == r:
                out[(t, s)] = out.get((t, s), 0) - x * y
    return {k: v for k, v in out.items() if v}


def _trace_product(a, b) -> Fraction:
    total = 0
    for (r, s), x in a.items():
        for (t, u), y in b.items():
            if s == t and u == r:
                total += x * y
    return Fraction(total)


@lru_cache(maxsize=None)
def sl(n: int) -> SLn:
    return SLn(n)


class LieElement:
    """Sparse exact combination of Chevalley basis elements."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: SLn, coeffs: Mapping[BasisElement, Fraction]):
        self.alg = alg
        self.coeffs = {b: Fraction(c) for b, c in coeffs.items() if c}

    @classmethod
    def from_indices(cls, alg: SLn, coords: Mapping[int, Fraction]) -> "LieElement":
        return cls(alg, {alg.basis[k]: v for k, v in coords.items()})

    def indices(self) -> dict[int, Fraction]:
        return {self.alg.index[b]: c for b, c in self.coeffs.items()}

    def _check(self, other: "LieElement"):
        if not isinstance(other, LieElement):
            raise TypeError(f"expected a LieElement, got {type(other).__name__}")
        if other.alg.n != self.alg.n:
            raise ValueError(f"rank mismatch: sl({self.alg.n}) vs sl({other.alg.n})")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, 0) + c
        return LieElement(self.alg, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LieElement(self.alg, {b: -c for b, c in self.coeffs.items()})

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return LieElement(self.alg, {b: c * s for b, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.alg.n == other.alg.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.alg.n, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for b in sorted(self.coeffs, key=self.alg.index.__getitem__):
            parts.append(f"{self.coeffs[b]}*{b}")
        return " + ".join(parts)

    def weight(self) -> tuple[int, ...] | None:
        """Common root-lattice weight of all terms, or None if inhomogeneous."""
        ws = {self.alg.weights[self.alg.index[b]] for b in self.coeffs}
        return ws.pop() if len(ws) == 1 else None


def bracket(x: LieElement, y: LieElement) -> LieElement:
    x._check(y)
    alg = x.alg
    out: dict[int, Fraction] = {}
    for a, ca in x.indices().items():
        for b, cb in y.indices().items():
            for k, v in alg.bracket_table[a][b].items():
                out[k] = out.get(k, 0) + ca * cb * v
    return LieElement.from_indices(alg, out)


def normalized_form(x: LieElement, y: LieElement) -> Fraction:
    x._check(y)
    alg = x.alg
    total = Fraction(0)
    for a, ca in x.indices().items():
        for b, cb in y.indices().items():
            v = alg.form_table[a][b]
            if v:
                total += ca * cb * v
    return total


def dual_basis(alg: SLn) -> list[tuple[LieElement, LieElement]]:
    """Pairs (x_i, x^i) with (x_i | x^j) = delta_ij.

    Root vectors pair with their opposite root vector; the Cartan part
    uses the inverse Cartan matrix.
    """
    pairs = []
    for a in alg.positive:
        b = alg.basis[a]
        pairs.append((alg.basis_element(a), alg.basis_element(alg.index[BasisElement("F", b.i, b.j)])))
    for a in alg.negative:
        b = alg.basis[a]
        pairs.append((alg.basis_element(a), alg.basis_element(alg.index[BasisElement("E", b.i, b.j)])))
    inv = _inverse(alg.cartan_matrix)
    for r in range(alg.rank):
        dual = alg.zero()
        for s in range(alg.rank):
            if inv[r][s]:
                dual = dual + alg.h(s + 1) * inv[r][s]
        pairs.append((alg.h(r + 1), dual))
    return pairs


def _inverse(m: Sequence[Sequence[object]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


# ---------------------------------------------------------------------------
# matrices with polynomial entries
# ---------------------------------------------------------------------------


class MatrixRep:
    """n x n matrix whose entries are :class:`ParamPoly` over one ring."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[object]]):
        self.ring = ring
        self.n = len(rows)
        self.rows = tuple(tuple(ring.lift(v) for v in row) for row in rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def zeros(cls, ring: PolyRing, n: int) -> "MatrixRep":
        return cls(ring, [[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "MatrixRep":
        return cls(ring, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "MatrixRep":
        c = self.ring.lift(c)
        return MatrixRep(self.ring, [[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "MatrixRep") -> "MatrixRep":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                s = self.ring.zero()
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return MatrixRep(self.ring, out)

    def __eq__(self, other):
        return isinstance(other, MatrixRep) and self.rows == other.rows

    def trace(self) -> ParamPoly:
        s = self.ring.zero()
        for i in range(self.n):
            s = s + self.rows[i][i]
        return s

    def subs(self, values: Mapping[str, object]) -> "MatrixRep":
        return MatrixRep(self.ring, [[a.subs(values) for a in r] for r in self.rows])

    def to_ring(self, ring: PolyRing) -> "MatrixRep":
        return MatrixRep(ring, [[a.to_ring(ring) for a in r] for r in self.rows])

    def evaluate(self, values: Mapping[str, object]) -> list[list[Fraction]]:
        return [[a.evaluate(values) for a in r] for r in self.rows]

    def is_constant(self) -> bool:
        return all(a.is_constant() for r in self.rows for a in r)

    def constant_rows(self) -> list[list[Fraction]]:
        return [[a.constant_value() for a in r] for r in self.rows]

    def __repr__(self):
        return "MatrixRep([" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "])"


def to_matrix(x: LieElement, ring: PolyRing | None = None) -> MatrixRep:
    ring = ring or PolyRing(())
    n = x.alg.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for b, c in x.coeffs.items():
        for (r, s), v in x.alg.mats[x.alg.index[b]].items():
            rows[r - 1][s - 1] += c * v
    return MatrixRep(ring, rows)


def param_matrix(alg: SLn, ring: PolyRing, terms: Iterable[tuple[object, LieElement]]) -> MatrixRep:
    """Matrix of sum(coeff * x) for polynomial coefficients ``coeff``."""
    out = MatrixRep.zeros(ring, alg.n)
    for coeff, x in terms:
        out = out + to_matrix(x, ring).scale(coeff)
    return out


def matrix_to_lie(alg: SLn, m: MatrixRep) -> LieElement:
    return alg.from_matrix({(i + 1, j + 1): m.rows[i][j].constant_value() for i in range(m.n) for j in range(m.n)})


def _det(rows: Sequence[Sequence[ParamPoly]], ring: PolyRing) -> ParamPoly:
    n = len(rows)
    memo: dict[tuple[int, tuple[int, ...]], ParamPoly] = {}

    def minor(r: int, cols: tuple[int, ...]) -> ParamPoly:
        if r == n:
            return ring.one()
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = ring.zero()
        for pos, c in enumerate(cols):
            a = rows[r][c]
            if not a:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def char_poly(m: MatrixRep, var: str = "lam") -> ParamPoly:
    """det(var*I - m) in the ring of ``m`` extended by ``var``."""
    ring = m.ring.extend([var]) if var not in m.ring.index else m.ring
    lam = ring.var(var)
    rows = [
        [(lam if i == j else ring.zero()) - m.rows[i][j].to_ring(ring) for j in range(m.n)]
        for i in range(m.n)
    ]
    return _det(rows, ring)


def matrix_form(a: MatrixRep, b: MatrixRep) -> ParamPoly:
    """Trace form tr(ab), which is the normalized invariant form on sl_n."""
    return (a @ b).trace()


def rank_at(rows: Sequence[Sequence[Fraction]]) -> int:
    from .linalg import rank

    return rank([{j: v for j, v in enumerate(r) if v} for r in rows])


def adjoint_orbit_sample(x: MatrixRep, seed: int, rounds: int = 2, spread: int = 3) -> MatrixRep:
    """Conjugate ``x`` by a seeded product of unipotents exp(t E_ij), i != j.

    Each round runs over every off-diagonal position once in a shuffled
    order.  exp(t E_ij) = I + t E_ij exactly since E_ij is nilpotent, so the
    conjugate stays rational (and polynomial in the parameters of ``x``).
    """
    rng = random.Random(seed)
    n, ring = x.n, x.ring
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    result = x
    for _ in range(rounds):
        order = positions[:]
        rng.shuffle(order)
        for i, j in order:
            t = Fraction(rng.choice([-1, 1]) * rng.randint(1, spread), rng.randint(1, spread))
            g = [[ring.const(int(a == b)) for b in range(n)] for a in range(n)]
            ginv = [[ring.const(int(a == b)) for b in range(n)] for a in range(n)]
            g[i][j] = ring.const(t)
            ginv[i][j] = ring.const(-t)
            result = MatrixRep(ring, g) @ result @ MatrixRep(ring, ginv)
    return result
