"""Exact arithmetic in cyclotomic fields.

Values are stored in the Zumbroich basis of Q(zeta_n) with the smallest
possible conductor n, the same normal form GAP uses, so that two values are
equal exactly when their stored terms are equal.  ``E(n, e)`` denotes
``zeta_n ** e`` with ``zeta_n = exp(2*pi*i/n)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC

__all__ = [
    "Cyclotomic",
    "E",
    "NotRational",
    "as_rational",
    "conjugate",
    "parse_cyclotomic",
    "zumbroich_basis",
]


class NotRational(ValueError):
    """Raised when a rational value was required but the value is irrational."""


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _components(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Per prime power q = p**k exactly dividing n: (p, k, n // q, inverse of n // q mod q)."""
    res = []
    for p, k in _factor(n):
        q = p**k
        c = n // q
        res.append((p, k, c, pow(c, -1, q)))
    return tuple(res)


def _in_basis_component(j: int, p: int, k: int) -> bool:
    # j in [0, p**k); lower digits balanced (odd p) or binary (p = 2),
    # top digit nonzero for odd p and zero for p = 2
    top = _top_digit(j, p, k)
    return top == 0 if p == 2 else top != 0


def _top_digit(j: int, p: int, k: int) -> int:
    q = p**k
    if p == 2:
        return j // (q // 2)
    half = (p - 1) // 2
    r = j
    for _ in range(k - 1):
        d = r % p
        if d > half:
            d -= p
        r = (r - d) // p
    return r % p


@lru_cache(maxsize=None)
def zumbroich_basis(n: int) -> tuple[int, ...]:
    """Exponents e in [0, n) with E(n, e) in the Zumbroich basis of Q(zeta_n)."""
    comps = _components(n)
    out = []
    for e in range(n):
        if all(_in_basis_component((e * inv) % (p**k), p, k) for p, k, _, inv in comps):
            out.append(e)
    return tuple(out)


def _to_basis(n: int, terms: dict[int, Fraction]) -> dict[int, Fraction]:
    """Rewrite a dict exponent -> coefficient at conductor n into the Zumbroich basis."""
    for p, k, c, inv in _components(n):
        q = p**k
        step = (q // p) * c  # raising the top digit by one
        pending = terms
        terms = {}
        for e, coeff in pending.items():
            j = (e * inv) % q
            if p == 2:
                if _top_digit(j, 2, k) == 0:
                    terms[e] = terms.get(e, 0) + coeff
                else:
                    f = (e - step) % n
                    terms[f] = terms.get(f, 0) - coeff
            else:
                if _top_digit(j, p, k) != 0:
                    terms[e] = terms.get(e, 0) + coeff
                else:
                    for d in range(1, p):
                        f = (e + d * step) % n
                        terms[f] = terms.get(f, 0) - coeff
        terms = {e: v for e, v in terms.items() if v}
    return terms


def _reduce_conductor(n: int, terms: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Shrink n while the value lies in a proper cyclotomic subfield."""
    changed = True
    while changed and n > 1:
        changed = False
        for p, k, _, _ in _components(n):
            if k >= 2:
                if all(e % p == 0 for e in terms):
                    if p == 2 and k == 2:
                        terms = {e // 4: v for e, v in terms.items()}
                        n //= 4
                    else:
                        terms = {e // p: v for e, v in terms.items()}
                        n //= p
                    changed = True
                    break
            elif p != 2:
                m = n // p
                groups: dict[int, dict[int, Fraction]] = {}
                for e, v in terms.items():
                    groups.setdefault(e % m, {})[e] = v
                new: dict[int, Fraction] = {}
                ok = True
                for r, grp in groups.items():
                    vals = set(grp.values())
                    if len(grp) != p - 1 or len(vals) != 1:
                        ok = False
                        break
                    # exponent with trivial p-component, congruent to r mod m
                    e0 = next(x for x in range(r, n, m) if x % p == 0)
                    new[e0 // p] = -vals.pop()
                if ok:
                    n = m
                    terms = new
                    changed = True
                    break
    if not terms:
        return 1, {}
    return n, terms


def _canonical(n: int, terms: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    terms = {e % n: Fraction(v) for e, v in terms.items() if v}
    if n % 4 == 2:
        # E(2m, e) = (-1)^e * E(m, e*(m+1)/2) for odd m
        m = n // 2
        half = (m + 1) // 2
        new: dict[int, Fraction] = {}
        for e, v in terms.items():
            f = (e * half) % m
            new[f] = new.get(f, 0) + (-v if e % 2 else v)
        n, terms = m, {e: v for e, v in new.items() if v}
    if n == 1:
        s = sum(terms.values(), Fraction(0))
        return (1, {0: s}) if s else (1, {})
    terms = _to_basis(n, terms)
    return _reduce_conductor(n, terms)


class Cyclotomic:
    """An element of Q(zeta_n) in canonical form.  Immutable."""

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, value: int | Fraction | "Cyclotomic" = 0):
        if isinstance(value, Cyclotomic):
            self._n, self._terms = value._n, value._terms
        else:
            v = Fraction(value)
            self._n = 1
            self._terms = ((0, v),) if v else ()
        self._hash = None

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, int | Fraction]) -> "Cyclotomic":
        """Build sum(c * E(n, e)) from an arbitrary (non-canonical) exponent map."""
        if n < 1:
            raise ValueError("conductor must be positive")
        n, t = _canonical(n, dict(terms))
        return cls._make(n, t)

    @classmethod
    def _make(cls, n: int, terms: dict[int, Fraction]) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._n = n
        obj._terms = tuple(sorted(terms.items()))
        obj._hash = None
        return obj

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return self._n == 1

    def is_zero(self) -> bool:
        return not self._terms

    def rational(self) -> Fraction:
        if self._n != 1:
            raise NotRational(f"{self} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def __int__(self) -> int:
        r = self.rational()
        if r.denominator != 1:
            raise NotRational(f"{self} is not an integer")
        return r.numerator

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction, _RationalABC)):
            return Cyclotomic(other)
        return None

    def _lift(self, n: int) -> dict[int, Fraction]:
        s = n // self._n
        return {e * s: v for e, v in self._terms}

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._n == 1 and o._n == 1:
            return Cyclotomic(self.rational() + o.rational())
        n = self._n * o._n // gcd(self._n, o._n)
        t = self._lift(n)
        for e, v in o._lift(n).items():
            t[e] = t.get(e, 0) + v
        if self._n == o._n:
            # both already in the same basis; only conductor can drop
            n2, t2 = _reduce_conductor(n, {e: v for e, v in t.items() if v})
            return self._make(n2, t2)
        return self._make(*_canonical(n, t))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return self._make(self._n, {e: -v for e, v in self._terms})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic(0)
            return self._make(self._n, {e: v * other for e, v in self._terms})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._n == 1:
            return self * o.rational()
        if self._n == 1:
            return o * self.rational()
        n = self._n * o._n // gcd(self._n, o._n)
        a, b = self._lift(n), o._lift(n)
        t: dict[int, Fraction] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = (e1 + e2) % n
                t[e] = t.get(e, 0) + v1 * v2
        return self._make(*_canonical(n, t))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by nonzero rationals is supported
        if isinstance(other, Cyclotomic):
            other = other.rational()
        r = Fraction(other)
        if not r:
            raise ZeroDivisionError("division by zero")
        return self * (1 / r)

    def scale(self, r: int | Fraction) -> "Cyclotomic":
        return self * Fraction(r)

    def conjugate(self) -> "Cyclotomic":
        if self._n == 1:
            return self
        n = self._n
        return self._make(*_canonical(n, {(-e) % n: v for e, v in self._terms}))

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n**k, k coprime to the conductor."""
        n = self._n
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        return self._make(*_canonical(n, {(k * e) % n: v for e, v in self._terms}))

    # comparison / hashing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self._n == 1:
                self._hash = hash(self.rational())
            else:
                self._hash = hash((self._n, self._terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __complex__(self) -> complex:
        import cmath

        return sum(
            (float(v) * cmath.exp(2j * cmath.pi * e / self._n) for e, v in self._terms),
            0j,
        )

    def __repr__(self) -> str:
        return f"Cyclotomic({str(self)!r})"

    def __str__(self) -> str:
        return format_cyclotomic(self)


def E(n: int, e: int = 1) -> Cyclotomic:
    """zeta_n ** e."""
    return Cyclotomic.from_terms(n, {e: 1})


def conjugate(a: Cyclotomic | int | Fraction) -> Cyclotomic:
    return Cyclotomic(a).conjugate()


def as_rational(a: Cyclotomic | int | Fraction) -> Fraction:
    """Rational value of ``a``; raises NotRational if ``a`` is irrational."""
    return Cyclotomic(a).rational()


def _format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_cyclotomic(a: Cyclotomic) -> str:
    if a.conductor == 1:
        return _format_rational(a.rational())
    parts = []
    for e, v in sorted(a.terms.items()):
        atom = f"E({a.conductor},{e})"
        if v == 1:
            s = atom
        elif v == -1:
            s = "-" + atom
        else:
            s = f"{_format_rational(v)}*{atom}"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts)


_TERM = re.compile(
    r"""([+-]?)                          # sign
        (?:(\d+(?:/\d+)?)\*?)?           # optional coefficient
        (?:E\((\d+)(?:,(-?\d+))?\))?     # optional root of unity
    """,
    re.VERBOSE,
)


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse ``p/q`` or ``c1*E(n,e1) + c2*E(n,e2) + ...`` (whitespace-insensitive)."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty cyclotomic literal")
    pos = 0
    acc = Cyclotomic(0)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse cyclotomic literal {text!r} at offset {pos}")
        sign, coeff, n, e = m.groups()
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        if n is None:
            acc = acc + c
        else:
            acc = acc + Cyclotomic.from_terms(int(n), {int(e) if e is not None else 1: c})
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse cyclotomic literal {text!r} at offset {pos}")
    return acc
