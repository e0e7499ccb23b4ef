"""Multivariate polynomials with exact rational coefficients.

A :class:`PolyRing` fixes an ordered tuple of variable names; every
:class:`ParamPoly` belongs to exactly one ring and arithmetic between
polynomials of different rings is refused.  Terms are stored as a dict
from exponent tuples to non-zero :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"-7/3"``; floats and
    complex numbers are rejected so that no inexact value sneaks in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if "j" in s or "i" in s.lower().replace("inf", ""):
            raise ValueError(f"complex scalars are not supported: {value!r}")
        return Fraction(s)
    raise TypeError(f"not an exact rational: {value!r}")


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class PolyRing:
    """Polynomial ring Q[v_1, ..., v_r] over a declared variable tuple."""

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}
        self.nvars = len(names)
        self._zero_exp = (0,) * self.nvars

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def zero(self) -> "ParamPoly":
        return ParamPoly(self, {})

    def one(self) -> "ParamPoly":
        return self.const(1)

    def const(self, c: Scalar) -> "ParamPoly":
        c = as_fraction(c)
        return ParamPoly(self, {self._zero_exp: c} if c else {})

    def var(self, name: str) -> "ParamPoly":
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return ParamPoly(self, {tuple(exp): Fraction(1)})

    def vars(self, *names: str):
        return tuple(self.var(name) for name in names)

    def monomial(self, powers: Mapping[str, int], coeff: Scalar = 1) -> "ParamPoly":
        exp = [0] * self.nvars
        for name, p in powers.items():
            exp[self.index[name]] += p
        c = as_fraction(coeff)
        return ParamPoly(self, {tuple(exp): c} if c else {})

    def lift(self, value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            if value.ring != self:
                raise ValueError(f"polynomial over {value.ring} used in {self}")
            return value
        return self.const(value)

    def extend(self, extra: Iterable[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(n for n in extra if n not in self.index))

    def parse(self, text: str) -> "ParamPoly":
        """Parse the canonical string form produced by ``str(ParamPoly)``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return self.zero()
        result = self.zero()
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            coeff = Fraction(1)
            powers: dict[str, int] = {}
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                name, _, p = factor.partition("^")
                powers[name] = powers.get(name, 0) + (int(p) if p else 1)
            if sign == "-":
                coeff = -coeff
            result = result + self.monomial(powers, coeff)
        return result


class ParamPoly:
    """Element of a :class:`PolyRing`; immutable once built."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, Fraction]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "ParamPoly | None":
        if isinstance(other, ParamPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return ParamPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ParamPoly(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return ParamPoly(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            return ParamPoly(self.ring, {e: c / other for e, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, ParamPoly) else other
        if other is None:
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection ---------------------------------------------------------
    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.index[name]
        return max(e[i] for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring._zero_exp, Fraction(0))

    def variables(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, p in enumerate(e) if p)
        return tuple(self.ring.names[i] for i in sorted(used))

    def coefficient(self, name: str, power: int) -> "ParamPoly":
        """Coefficient of ``name**power``, as a polynomial in the same ring."""
        i = self.ring.index[name]
        terms = {}
        for e, c in self.terms.items():
            if e[i] == power:
                terms[e[:i] + (0,) + e[i + 1:]] = c
        return ParamPoly(self.ring, terms)

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1]

    # -- evaluation and calculus -------------------------------------------
    def subs(self, values: Mapping[str, object]) -> "ParamPoly":
        """Substitute scalars or polynomials (of the same ring) for variables."""
        ring = self.ring
        idx = {ring.index[name]: ring.lift(v) for name, v in values.items()}
        result = ring.zero()
        cache: dict[tuple[int, int], ParamPoly] = {}
        for e, c in self.terms.items():
            keep = tuple(0 if i in idx else p for i, p in enumerate(e))
            term = ParamPoly(ring, {keep: c})
            for i, p in enumerate(e):
                if p and i in idx:
                    key = (i, p)
                    if key not in cache:
                        cache[key] = idx[i] ** p
                    term = term * cache[key]
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Evaluate at a full assignment of rational values."""
        vals = [as_fraction(values[name]) for name in self.ring.names if name in values]
        if len(vals) != self.ring.nvars:
            missing = [n for n in self.ring.names if n not in values]
            if any(self.degree(n) > 0 for n in missing):
                raise KeyError(f"no value for {missing}")
            vals = [as_fraction(values.get(n, 0)) for n in self.ring.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    term *= v**p
            total += term
        return total

    def compose(self, ring: PolyRing, values: Mapping[str, object]) -> "ParamPoly":
        """Substitute polynomials of another ring for every variable."""
        images = [ring.lift(values[name]) for name in self.ring.names]
        powers: dict[tuple[int, int], ParamPoly] = {}
        result = ring.zero()
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, p in enumerate(e):
                if p:
                    key = (i, p)
                    if key not in powers:
                        powers[key] = images[i] ** p
                    term = term * powers[key]
            result = result + term
        return result

    def diff(self, name: str) -> "ParamPoly":
        i = self.ring.index[name]
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return ParamPoly(self.ring, terms)

    def to_ring(self, ring: PolyRing) -> "ParamPoly":
        """Re-express in a ring whose variables include all used ones."""
        used = self.variables()
        for name in used:
            if name not in ring.index:
                raise ValueError(f"variable {name} not declared in {ring}")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, p in enumerate(e):
                if p:
                    ne[ring.index[self.ring.names[i]]] = p
            terms[tuple(ne)] = c
        return ParamPoly(ring, terms)

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, p in zip(self.ring.names, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            mag = abs(c)
            if not factors:
                body = fraction_str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = fraction_str(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamPoly({self})"
