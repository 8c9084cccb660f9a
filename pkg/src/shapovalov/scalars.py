"""Exact coefficient rings.

Two rings are provided:

* :class:`CyclotomicField` -- ``Q(z)`` with ``z`` a primitive ``l``-th root of
  unity, elements stored as reduced residues modulo the ``l``-th cyclotomic
  polynomial (integer numerators over one common positive denominator).
* :class:`LaurentRing` -- ``Q[q, 1/q]``, used as the "generic parameter" world
  in which every power ``z**e`` is replaced by ``q**e``.

Both rings expose the same small interface (``zero``, ``one``, ``zeta``,
``bracket``, ``from_counts``, ``modulus``) so that the algebra code never needs
to know which one is active.  Elements of the two rings never mix.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class DivisionByZero(ZeroDivisionError):
    pass


class RingMismatch(TypeError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers
# ---------------------------------------------------------------------------


def _poly_divmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (coefficients low -> high), ``b`` monic."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for t in range(db + 1):
                a[k - db + t] -= c * b[t]
    return q, a[:db]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(l: int) -> tuple[int, ...]:
    """Coefficients (low -> high) of the ``l``-th cyclotomic polynomial."""
    if l < 1:
        raise ValueError("l must be positive")
    # x^l - 1 = prod_{d | l} Phi_d
    num = [-1] + [0] * (l - 1) + [1]
    for d in range(1, l):
        if l % d == 0:
            num, rem = _poly_divmod_monic(num, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def euler_phi(l: int) -> int:
    return len(cyclotomic_polynomial(l)) - 1


# ---------------------------------------------------------------------------
# Q(zeta_l)
# ---------------------------------------------------------------------------


class CyclotomicField:
    """The field ``Q(z)`` for a primitive ``l``-th root of unity ``z``."""

    is_field = True

    def __init__(self, l: int):
        if l < 1:
            raise ValueError("l must be a positive integer")
        self.l = l
        self.modulus = l
        self.phi = cyclotomic_polynomial(l)
        self.degree = len(self.phi) - 1
        # reduction table: z^k for 0 <= k < l, as length-degree integer vectors
        table = np.zeros((l, self.degree), dtype=np.int64)
        for k in range(l):
            vec = [0] * (k + 1)
            vec[k] = 1
            if k >= self.degree:
                _, vec = _poly_divmod_monic(vec, list(self.phi))
            table[k, : len(vec)] = vec[: self.degree]
        self._table_int = table
        self.units = [k for k in range(1, l + 1) if gcd(k, l) == 1]
        self.zero = Cyc(self, (0,) * self.degree, 1)
        self.one = self.zeta(0)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.l})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.l == self.l

    def __hash__(self) -> int:
        return hash(("cyc", self.l))

    def __reduce__(self):
        return (CyclotomicField, (self.l,))

    @property
    def name(self) -> str:
        return f"Q(zeta_{self.l})"

    def zeta(self, e: int) -> "Cyc":
        return Cyc(self, tuple(int(c) for c in self._table_int[e % self.l]), 1)

    def __call__(self, value) -> "Cyc":
        return self.coerce(value)

    def coerce(self, value) -> "Cyc":
        if isinstance(value, Cyc):
            if value.field != self:
                raise RingMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return Cyc(self, (int(value),) + (0,) * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return Cyc(self, (value.numerator,) + (0,) * (self.degree - 1), value.denominator)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_counts(self, counts: Sequence[int], offset: int = 0) -> "Cyc":
        """Element ``sum_k counts[k] z**(k - offset)`` (group-ring vector)."""
        counts = np.asarray(counts)
        acc = [0] * self.degree
        for k in np.flatnonzero(counts):
            c = int(counts[k])
            row = self._table_int[(int(k) - offset) % self.l]
            for t in range(self.degree):
                if row[t]:
                    acc[t] += c * int(row[t])
        return Cyc(self, tuple(acc), 1)

    def from_group_ring(self, coeffs: Sequence[int]) -> "Cyc":
        """Element ``sum_k coeffs[k] z**k`` for an arbitrary-length sequence."""
        acc = [0] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                row = self._table_int[k % self.l]
                for t in range(self.degree):
                    if row[t]:
                        acc[t] += c * int(row[t])
        return Cyc(self, tuple(acc), 1)

    def bracket(self, a: int) -> "Cyc":
        """``[a] = 1 - z**(-2a)``."""
        return _cyc_bracket(self, a)

    def serialize(self, x: "Cyc") -> str:
        return _poly_to_str([Fraction(n, x.den) for n in x.num], "z", 0)

    def parse(self, text: str) -> "Cyc":
        low, coeffs = _parse_poly(text, "z")
        if low < 0:
            raise ValueError("negative exponent in cyclotomic literal")
        acc = self.zero
        for k, c in enumerate(coeffs):
            if c:
                acc = acc + self.zeta(k + low) * self.coerce(Fraction(c))
        return acc


@lru_cache(maxsize=4096)
def _cyc_bracket(field: CyclotomicField, a: int) -> "Cyc":
    return field.one - field.zeta(-2 * a)


def _normalize(num: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    num = tuple(num)
    if den < 0:
        num = tuple(-n for n in num)
        den = -den
    g = den
    for n in num:
        if g == 1:
            break
        g = gcd(g, n)
    if g > 1:
        num = tuple(n // g for n in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


class Cyc:
    """Element of ``Q(z_l)``: ``(sum num[k] z**k) / den`` with ``k < phi(l)``."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int = 1):
        self.field = field
        self.num, self.den = _normalize(num, den)
        self._hash = None

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.field.l == other.field.l and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.l, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return self.field.serialize(self)

    __str__ = __repr__

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.num)

    def _other(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.field.l != self.field.l:
                raise RingMismatch("cyclotomic numbers of different order")
            return other
        return self.field.coerce(other)

    # -- arithmetic ------------------------------------------------------
    def __neg__(self) -> "Cyc":
        return Cyc(self.field, tuple(-n for n in self.num), self.den)

    def __add__(self, other) -> "Cyc":
        try:
            o = self._other(other)
        except RingMismatch:
            raise
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return Cyc(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return Cyc(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Cyc":
        try:
            o = self._other(other)
        except RingMismatch:
            raise
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Cyc":
        return self._other(other) - self

    def __mul__(self, other) -> "Cyc":
        if isinstance(other, (int, np.integer)):
            return Cyc(self.field, tuple(n * int(other) for n in self.num), self.den)
        try:
            o = self._other(other)
        except RingMismatch:
            raise
        except TypeError:
            return NotImplemented
        deg = self.field.degree
        prod = [0] * (2 * deg - 1 if deg else 0)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:deg])
        table = self.field._table_int
        for k in range(deg, len(prod)):
            c = prod[k]
            if c:
                row = table[k % self.field.l]
                for t in range(deg):
                    if row[t]:
                        out[t] += c * int(row[t])
        return Cyc(self.field, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyc":
        """Image under ``z -> z**k`` (``k`` coprime to ``l``)."""
        coeffs = [0] * self.field.l
        for e, n in enumerate(self.num):
            if n:
                coeffs[(k * e) % self.field.l] += n
        x = self.field.from_group_ring(coeffs)
        return Cyc(self.field, x.num, self.den)

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in cyclotomic field")
        # x^{-1} = prod_{sigma != 1} sigma(x) / N(x)
        conj = self.field.one
        for k in self.field.units:
            if k % self.field.l != 1 % self.field.l:
                conj = conj * self.galois(k)
        norm = conj * self
        assert not any(norm.num[1:]), "norm must be rational"
        n = Fraction(norm.num[0], norm.den)
        return Cyc(self.field, tuple(c * n.denominator for c in conj.num), conj.den * n.numerator)

    def __truediv__(self, other) -> "Cyc":
        o = self._other(other)
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Cyc":
        return self._other(other) * self.inverse()

    def __pow__(self, e: int) -> "Cyc":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


# ---------------------------------------------------------------------------
# Q[q, 1/q]
# ---------------------------------------------------------------------------


class LaurentRing:
    """Laurent polynomials in one variable ``q`` with rational coefficients."""

    is_field = False
    modulus = 0
    name = "Q[q,1/q]"

    def __init__(self):
        self.zero = Laurent(self, 0, ())
        self.one = Laurent(self, 0, (1,))

    def __repr__(self) -> str:
        return "LaurentRing()"

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentRing)

    def __hash__(self) -> int:
        return hash("laurent")

    def __reduce__(self):
        return (LaurentRing, ())

    def zeta(self, e: int) -> "Laurent":
        return Laurent(self, e, (1,))

    def __call__(self, value) -> "Laurent":
        return self.coerce(value)

    def coerce(self, value) -> "Laurent":
        if isinstance(value, Laurent):
            return value
        if isinstance(value, (int, np.integer, Fraction)):
            return Laurent(self, 0, (value if isinstance(value, Fraction) else int(value),))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_counts(self, counts: Sequence[int], offset: int = 0) -> "Laurent":
        return Laurent(self, -offset, tuple(int(c) for c in counts))

    def bracket(self, a: int) -> "Laurent":
        return self.one - self.zeta(-2 * a)

    def serialize(self, x: "Laurent") -> str:
        return _poly_to_str(list(x.coeffs), "q", x.low)

    def parse(self, text: str) -> "Laurent":
        low, coeffs = _parse_poly(text, "q")
        return Laurent(self, low, tuple(Fraction(c) for c in coeffs))


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Laurent:
    """``sum coeffs[k] q**(low + k)`` with no zero leading/trailing coefficients."""

    __slots__ = ("ring", "low", "coeffs")

    def __init__(self, ring: LaurentRing, low: int, coeffs: Sequence):
        coeffs = [_clean(c) for c in coeffs]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        self.ring = ring
        self.coeffs = tuple(coeffs[start:end])
        self.low = low + start if self.coeffs else 0

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.coerce(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs))

    def __repr__(self) -> str:
        return self.ring.serialize(self)

    __str__ = __repr__

    def _other(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, Cyc):
            raise RingMismatch("cannot mix Laurent and cyclotomic scalars")
        return self.ring.coerce(other)

    def __neg__(self) -> "Laurent":
        return Laurent(self.ring, self.low, tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "Laurent":
        try:
            o = self._other(other)
        except RingMismatch:
            raise
        except TypeError:
            return NotImplemented
        if not o.coeffs:
            return self
        if not self.coeffs:
            return o
        low = min(self.low, o.low)
        high = max(self.high, o.high)
        out = [0] * (high - low + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - low + k] += c
        for k, c in enumerate(o.coeffs):
            out[o.low - low + k] += c
        return Laurent(self.ring, low, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Laurent":
        try:
            o = self._other(other)
        except RingMismatch:
            raise
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Laurent":
        return self._other(other) - self

    def __mul__(self, other) -> "Laurent":
        try:
            o = self._other(other)
        except RingMismatch:
            raise
        except TypeError:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return self.ring.zero
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Laurent(self.ring, self.low + o.low, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Laurent":
        if e < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return Laurent(self.ring, -self.low * (-e), (self.coeffs[0] ** (-e),))
            raise DivisionByZero("only monomial units are invertible in Q[q,1/q]")
        out = self.ring.one
        for _ in range(e):
            out = out * self
        return out

    def divexact(self, other) -> "Laurent":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        o = self._other(other)
        if not o.coeffs:
            raise DivisionByZero("division by zero Laurent polynomial")
        if not self.coeffs:
            return self.ring.zero
        rem = [Fraction(c) for c in self.coeffs]
        db = len(o.coeffs) - 1
        if len(rem) - 1 < db:
            raise ArithmeticError("inexact Laurent division")
        lead = Fraction(o.coeffs[-1])
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                c = c / lead
                quot[k - db] = c
                for t in range(db + 1):
                    rem[k - db + t] -= c * o.coeffs[t]
        if any(rem):
            raise ArithmeticError("inexact Laurent division")
        return Laurent(self.ring, self.low - o.low, quot)

    def __truediv__(self, other) -> "Laurent":
        return self.divexact(other)

    def evaluate(self, value):
        """Evaluate at ``q = value`` (any ring element or number supporting ``**``)."""
        acc = 0
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + value ** (self.low + k) * c
        return acc


# ---------------------------------------------------------------------------
# serialisation helpers
# ---------------------------------------------------------------------------


def _poly_to_str(coeffs: Sequence, var: str, low: int) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        e = low + k
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _parse_poly(text: str, var: str) -> tuple[int, list[Fraction]]:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return 0, []
    if s[0] not in "+-":
        s = "+" + s
    terms: dict[int, Fraction] = {}
    pieces = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and not cur.endswith("^"):
            pieces.append(cur)
            cur = ch
        else:
            cur += ch
    pieces.append(cur)
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece[1:]
        if var in body:
            coef_part, _, exp_part = body.partition(var)
            coef_part = coef_part.rstrip("*")
            coef = Fraction(coef_part) if coef_part else Fraction(1)
            exp = int(exp_part[1:]) if exp_part.startswith("^") else 1
        else:
            coef, exp = Fraction(body), 0
        terms[exp] = terms.get(exp, Fraction(0)) + sign * coef
    low = min(terms)
    high = max(terms)
    return low, [terms.get(e, Fraction(0)) for e in range(low, high + 1)]


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def zeta_power(l: int, e: int) -> Cyc:
    return CyclotomicField(l).zeta(e)


def bracket(ring, a: int):
    """``[a] = 1 - z**(-2a)`` in ``ring``."""
    return ring.bracket(a)


def q_bracket_i(ring, a: int, d_i: int):
    """``[a]_{z_i}`` with ``z_i = z**d_i``."""
    if d_i < 1:
        raise ValueError("d_i must be positive")
    return ring.bracket(d_i * a)


def q_factorial_i(ring, p: int, d_i: int):
    """``[p]_i^! = prod_{a=1}^p (z_i^a - z_i^-a) / (z_i - z_i^-1)``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    den = ring.zeta(d_i) - ring.zeta(-d_i)
    if den.is_zero():
        raise DivisionByZero("z_i - z_i^-1 vanishes")
    out = ring.one
    for a in range(1, p + 1):
        num = ring.zeta(a * d_i) - ring.zeta(-a * d_i)
        if ring.is_field:
            out = out * num / den
        else:
            out = out * num.divexact(den)
    return out


def make_ring(l: int | str | None):
    """``CyclotomicField(l)`` for an integer, ``LaurentRing`` for ``"generic"``/None."""
    if l is None or l == "generic":
        return LaurentRing()
    return CyclotomicField(int(l))
