"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value lives in one fixed field Q(zeta_N) and is written in the power basis
{1, zeta, ..., zeta^(phi(N)-1)}, where phi(N) is the degree of the N-th
cyclotomic polynomial.  Internally the coefficient vector is a tuple of
integers over a single positive denominator, which keeps multiplication an
integer convolution.  No descent into subfields is attempted: a number built
at order 12 stays at order 12 even if its value is rational, and equality
across orders goes through the least-common-multiple embedding.

Rationals are stdlib ``fractions.Fraction`` throughout, re-exported here as
``Rational``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence, Union

Rational = Fraction

RationalLike = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(value: RationalLike) -> str:
    """Format a rational as "p" when integral, else "p/q" in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic; the division is exact for every use in this module.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for j in range(dd + 1):
                num[k + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Integer coefficients of the order-th cyclotomic polynomial.

    Constant term first, leading coefficient 1.  Computed by dividing
    x^order - 1 by the cyclotomic polynomials of all proper divisors, so the
    defining product identity holds by construction.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if order < 1:
        raise ValueError(f"order must be a positive integer, got {order}")
    if order == 1:
        return (-1, 1)
    poly = [-1] + [0] * (order - 1) + [1]
    for d in _divisors(order):
        if d != order:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def power_basis_size(order: int) -> int:
    """Dimension of Q(zeta_order) over Q, i.e. deg of the cyclotomic polynomial."""
    return len(cyclotomic_polynomial(order)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(order: int) -> tuple[tuple[int, ...], ...]:
    # Row k is the coordinate vector of zeta^k in the power basis, 0 <= k < order.
    phi = power_basis_size(order)
    rows: list[tuple[int, ...]] = []
    for k in range(min(phi, order)):
        rows.append(tuple(1 if i == k else 0 for i in range(phi)))
    top = tuple(-c for c in cyclotomic_polynomial(order)[:phi])
    for _ in range(phi, order):
        prev = rows[-1]
        carry = prev[phi - 1]
        shifted = [0] + list(prev[: phi - 1])
        if carry:
            for i, t in enumerate(top):
                if t:
                    shifted[i] += carry * t
        rows.append(tuple(shifted))
    return tuple(rows)


def _normalized(numerators: Sequence[int], denominator: int) -> tuple[tuple[int, ...], int]:
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    if denominator < 0:
        numerators = [-c for c in numerators]
        denominator = -denominator
    g = reduce(math.gcd, numerators, denominator)
    if g > 1:
        numerators = [c // g for c in numerators]
        denominator //= g
    return tuple(numerators), denominator


@dataclass(frozen=True, eq=False)
class CyclotomicNumber:
    """An element of Q(zeta_order) with exact rational coordinates.

    ``numerators[i] / denominator`` is the coefficient of zeta^i.  Stored data
    is canonical: the denominator is positive and coprime to the content of
    the numerator vector, so two values in the same field are equal exactly
    when their stored fields are equal.
    """

    order: int
    numerators: tuple[int, ...]
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        phi = power_basis_size(self.order)
        if len(self.numerators) != phi:
            raise ValueError(
                f"order {self.order} needs {phi} coordinates, got {len(self.numerators)}"
            )
        nums, den = _normalized(self.numerators, self.denominator)
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominator", den)

    # Equality crosses field orders, so hashing is deliberately disabled.
    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_rational(cls, value: RationalLike, order: int = 1) -> "CyclotomicNumber":
        value = Fraction(value)
        phi = power_basis_size(order)
        nums = (value.numerator,) + (0,) * (phi - 1)
        return cls(order, nums, value.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Power-basis coordinates as Fractions."""
        d = self.denominator
        return tuple(Fraction(c, d) for c in self.numerators)

    def is_zero(self) -> bool:
        return not any(self.numerators)

    def is_rational(self) -> bool:
        return not any(self.numerators[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.numerators[0], self.denominator)

    def embedded(self, order: int) -> "CyclotomicNumber":
        """The same value viewed in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        phi = power_basis_size(order)
        rows = _reduction_rows(order)
        out = [0] * phi
        for i, c in enumerate(self.numerators):
            if c:
                row = rows[i * step]
                for k, rk in enumerate(row):
                    if rk:
                        out[k] += c * rk
        return CyclotomicNumber(order, tuple(out), self.denominator)

    def _aligned(self, other: "CyclotomicNumber") -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if self.order == other.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.embedded(m), other.embedded(m)

    @staticmethod
    def _coerce(value: object) -> "CyclotomicNumber | None":
        if isinstance(value, CyclotomicNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CyclotomicNumber.from_rational(value)
        return None

    def __add__(self, other: object) -> "CyclotomicNumber":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self._aligned(rhs)
        den = math.lcm(a.denominator, b.denominator)
        sa, sb = den // a.denominator, den // b.denominator
        nums = tuple(x * sa + y * sb for x, y in zip(a.numerators, b.numerators))
        return CyclotomicNumber(a.order, nums, den)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, tuple(-c for c in self.numerators), self.denominator)

    def __sub__(self, other: object) -> "CyclotomicNumber":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "CyclotomicNumber":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(
                self.order,
                tuple(c * q.numerator for c in self.numerators),
                self.denominator * q.denominator,
            )
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._aligned(other)
        n = a.order
        phi = len(a.numerators)
        conv = [0] * (2 * phi - 1)
        bn = b.numerators
        for i, ai in enumerate(a.numerators):
            if ai:
                for j, bj in enumerate(bn):
                    if bj:
                        conv[i + j] += ai * bj
        if len(conv) > n:
            # zeta^n = 1, so exponents fold modulo n before basis reduction
            for k in range(n, len(conv)):
                conv[k - n] += conv[k]
            del conv[n:]
        out = list(conv[:phi]) + [0] * (phi - min(phi, len(conv)))
        rows = _reduction_rows(n)
        for k in range(phi, len(conv)):
            c = conv[k]
            if c:
                row = rows[k]
                for i, ri in enumerate(row):
                    if ri:
                        out[i] += c * ri
        return CyclotomicNumber(n, tuple(out), a.denominator * b.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if not other.is_rational():
                raise ValueError("division is only supported by rational values")
            other = other.as_rational()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return self * Fraction(q.denominator, q.numerator)

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta -> zeta^(order-1)."""
        n = self.order
        phi = len(self.numerators)
        rows = _reduction_rows(n)
        out = [0] * phi
        for i, c in enumerate(self.numerators):
            if c:
                row = rows[(n - i) % n]
                for k, rk in enumerate(row):
                    if rk:
                        out[k] += c * rk
        return CyclotomicNumber(n, tuple(out), self.denominator)

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self._aligned(rhs)
        return a.numerators == b.numerators and a.denominator == b.denominator

    def __repr__(self) -> str:
        if self.is_zero():
            body = "0"
        else:
            terms = []
            for i, q in enumerate(self.coefficients):
                if q == 0:
                    continue
                if i == 0:
                    terms.append(format_rational(q))
                else:
                    coeff = "" if q == 1 else ("-" if q == -1 else format_rational(q) + "*")
                    power = "z" if i == 1 else f"z^{i}"
                    terms.append(f"{coeff}{power}")
            body = " + ".join(terms).replace("+ -", "- ")
        return f"CyclotomicNumber({self.order}; {body})"

    def to_dict(self) -> dict:
        """JSON-ready form: {"order": N, "coeffs": ["p/q" or "p", ...]}."""
        return {
            "order": self.order,
            "coeffs": [format_rational(q) for q in self.coefficients],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CyclotomicNumber":
        if not isinstance(data, dict) or set(data) != {"order", "coeffs"}:
            raise ValueError("expected an object with exactly the keys 'order' and 'coeffs'")
        order = data["order"]
        coeffs = data["coeffs"]
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"'order' must be a positive integer, got {order!r}")
        phi = power_basis_size(order)
        if not isinstance(coeffs, list) or len(coeffs) != phi:
            raise ValueError(f"order {order} needs exactly {phi} coefficients")
        parsed = [parse_rational(c) if isinstance(c, str) else Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (q.denominator for q in parsed), 1)
        nums = tuple(q.numerator * (den // q.denominator) for q in parsed)
        return cls(order, nums, den)

    def to_complex(self) -> complex:
        """Floating approximation; a debugging aid only, never used in logic."""
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(q) * z**i for i, q in enumerate(self.coefficients))


def root_of_unity(numerator: int, order: int) -> CyclotomicNumber:
    """zeta_order^numerator as an element of Q(zeta_order).

    The exponent is taken modulo order; the result has multiplicative order
    order / gcd(numerator, order).

    >>> root_of_unity(1, 2)
    CyclotomicNumber(2; -1)
    """
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    rows = _reduction_rows(order)
    return CyclotomicNumber(order, rows[numerator % order], 1)
