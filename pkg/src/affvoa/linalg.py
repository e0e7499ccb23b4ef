"""Exact sparse linear algebra over Q.

Rows are dicts ``{column: value}``.  The default path is a fraction-free
integer elimination (each row kept primitive, i.e. with content 1) that
produces the reduced echelon form column by column in a fixed order, so
the kernel basis it returns is canonical: one vector per free column,
with an identity block on the free columns.

Large systems go through :func:`nullspace_multimodular`, which finds the
pivot structure modulo a prime, lifts the canonical kernel basis by CRT
and rational reconstruction, and certifies the lift by exact
multiplication.  Both paths return the same basis.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

log = logging.getLogger(__name__)

Row = Mapping[int, Fraction]


def _integer_row(row: Row) -> dict[int, int]:
    den = 1
    for v in row.values():
        if v:
            den = lcm(den, Fraction(v).denominator)
    out = {}
    for c, v in row.items():
        if v:
            v = Fraction(v) * den
            out[c] = v.numerator
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


class Echelon:
    """Incrementally maintained reduced row echelon form over Z.

    ``pivots`` maps pivot column to a primitive integer row whose pivot
    entry is positive; all other pivot columns are absent from each row.
    """

    def __init__(self, reduced: bool = True):
        self.pivots: dict[int, dict[int, int]] = {}
        self.reduced = reduced

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = dict(row)
        changed = True
        while changed:
            changed = False
            for c in sorted(row):
                prow = self.pivots.get(c)
                if prow is None:
                    continue
                a, p = row[c], prow[c]
                g = gcd(a, p)
                ma, mp = p // g, a // g
                new = {k: v * ma for k, v in row.items()}
                for k, v in prow.items():
                    nv = new.get(k, 0) - mp * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                row = _primitive(new) if new else new
                changed = True
                break
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; return True if it increased the rank."""
        irow = _integer_row(row)
        if not irow:
            return False
        irow = self.reduce(irow)
        if not irow:
            return False
        piv = min(irow)
        if irow[piv] < 0:
            irow = {k: -v for k, v in irow.items()}
        if self.reduced:
            for c, prow in list(self.pivots.items()):
                a = prow.get(piv)
                if a:
                    p = irow[piv]
                    g = gcd(a, p)
                    ma, mp = p // g, a // g
                    new = {k: v * ma for k, v in prow.items()}
                    for k, v in irow.items():
                        nv = new.get(k, 0) - mp * v
                        if nv:
                            new[k] = nv
                        else:
                            new.pop(k, None)
                    new = _primitive(new)
                    if new[c] < 0:
                        new = {k: -v for k, v in new.items()}
                    self.pivots[c] = new
        self.pivots[piv] = irow
        return True

    def contains(self, row: Row) -> bool:
        irow = _integer_row(row)
        return not irow or not self.reduce(irow)


def rank(rows: Iterable[Row]) -> int:
    ech = Echelon(reduced=False)
    for r in rows:
        ech.add(r)
    return ech.rank


def independent_subset(rows: Sequence[Row]) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    ech = Echelon(reduced=False)
    return [i for i, r in enumerate(rows) if ech.add(r)]


def nullspace(rows: Iterable[Row], ncols: int) -> list[dict[int, Fraction]]:
    """Canonical kernel basis of the matrix with the given rows.

    Vector ``j`` has entry 1 at the ``j``-th free column (in increasing
    order), 0 at the other free columns.
    """
    ech = Echelon(reduced=True)
    for r in rows:
        ech.add(r)
    return _kernel_from_rref(ech.pivots, ncols)


def _kernel_from_rref(pivots: Mapping[int, Mapping[int, int]], ncols: int):
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for pc, prow in pivots.items():
            v = prow.get(f)
            if v:
                vec[pc] = Fraction(-v, prow[pc])
        basis.append(vec)
    return basis


def matvec(rows: Sequence[Row], vec: Mapping[int, Fraction]) -> list[Fraction]:
    out = []
    for r in rows:
        s = Fraction(0)
        for c, v in r.items():
            x = vec.get(c)
            if x:
                s += v * x
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# multimodular path
# ---------------------------------------------------------------------------

# primes just below 2**62, fixed so that runs are reproducible
_PRIMES = (
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387733,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
)


def _more_primes():
    from sympy import prevprime

    p = _PRIMES[-1]
    yield from _PRIMES
    while True:
        p = prevprime(p)
        yield p


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Find n/d == a (mod m) with |n|, d <= sqrt(m/2), if one exists."""
    a %= m
    if a == 0:
        return Fraction(0)
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _kernel_mod_p(int_rows: Sequence[Mapping[int, int]], ncols: int, p: int):
    """Canonical kernel basis modulo ``p``: returns (free columns, vectors).

    Column ``c`` is free exactly when some kernel vector has its last
    non-zero entry at ``c``, so reducing the kernel to distinct trailing
    entries recovers the free columns of the reduced echelon form.
    """
    from flint import nmod_mat

    mat = nmod_mat(len(int_rows), ncols, p)
    for i, r in enumerate(int_rows):
        for c, v in r.items():
            mat[i, c] = v % p
    X, nullity = mat.nullspace()
    vecs = []
    for j in range(nullity):
        vecs.append({c: int(X[c, j]) for c in range(ncols) if int(X[c, j])})
    basis: dict[int, dict[int, int]] = {}
    for v in vecs:
        v = dict(v)
        while v:
            last = max(v)
            if last not in basis:
                inv = pow(v[last], -1, p)
                basis[last] = {c: x * inv % p for c, x in v.items()}
                break
            b = basis[last]
            a = v[last]
            for c, x in b.items():
                nv = (v.get(c, 0) - a * x) % p
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
    free = sorted(basis)
    # identity on the free columns; basis[f] has no entries beyond f
    for j, fj in enumerate(free):
        vec = basis[fj]
        for fi in free[:j]:
            a = vec.get(fi)
            if a:
                for c, x in basis[fi].items():
                    nv = (vec.get(c, 0) - a * x) % p
                    if nv:
                        vec[c] = nv
                    else:
                        vec.pop(c, None)
    return free, [basis[f] for f in free]


def nullspace_multimodular(rows: Sequence[Row], ncols: int, max_primes: int = 64):
    """Same result as :func:`nullspace`, computed modulo primes and certified.

    The rank modulo a prime never exceeds the rank over Q, so a certified
    exact kernel with as many vectors as the modular kernel is the whole
    kernel.
    """
    int_rows = [_integer_row(r) for r in rows]
    int_rows = [r for r in int_rows if r]
    if not int_rows:
        return [{c: Fraction(1)} for c in range(ncols)]
    primes = _more_primes()
    ref_free = None
    residues: list[dict[int, int]] = []
    modulus = 1
    for attempt in range(max_primes):
        p = next(primes)
        free, vecs = _kernel_mod_p(int_rows, ncols, p)
        if not free:
            return []
        if ref_free is None or len(free) < len(ref_free):
            ref_free = free
            residues = [{} for _ in free]
            modulus = 1
        elif free != ref_free:
            continue
        for acc, vec in zip(residues, vecs):
            keys = set(acc) | set(vec)
            if modulus == 1:
                acc.update(vec)
                continue
            inv = pow(modulus, -1, p)
            for c in keys:
                old = acc.get(c, 0)
                t = ((vec.get(c, 0) - old) * inv) % p
                acc[c] = old + modulus * t
        modulus *= p
        basis = []
        for acc in residues:
            vec = {}
            for c, a in acc.items():
                q = _rational_reconstruct(a, modulus)
                if q is None:
                    break
                if q:
                    vec[c] = q
            else:
                basis.append(vec)
                continue
            break
        if len(basis) != len(residues):
            continue
        if all(not any(matvec(rows, vec)) for vec in basis):
            log.debug("multimodular kernel certified after %d primes", attempt + 1)
            return basis
    raise RuntimeError("multimodular nullspace did not converge")


def flint_available() -> bool:
    try:
        import flint  # noqa: F401
    except ImportError:
        return False
    return True


def exact_nullspace(rows: Sequence[Row], ncols: int, threshold: int = 600):
    """Dispatch between the pure-Python and multimodular kernels by size."""
    if ncols > threshold and flint_available():
        return nullspace_multimodular(rows, ncols)
    return nullspace(rows, ncols)
