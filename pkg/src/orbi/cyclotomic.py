"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored as remainders modulo the N-th cyclotomic polynomial, with
Fraction coefficients, so equality and the "is this a rational integer" test
are exact. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import NonIntegerDimension


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n // 2 + 1) if n % d == 0]
    out.append(n)
    return out


def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Divide integer polynomials (ascending coefficients); den is monic and
    the division must be exact."""
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * (len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, dc in enumerate(den):
            num[i - deg_d + j] -= c * dc
    assert all(c == 0 for c in num), "non-exact cyclotomic division"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, computed by exact division of
    x^n - 1 by all lower Phi_d."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce(n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Remainder of sum(coeffs[k] x^k) modulo Phi_n, padded to degree phi(n)-1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c == 0:
            continue
        work[i] = Fraction(0)
        # x^i = x^(i-deg) * (x^deg - Phi_n) since Phi_n is monic
        for j in range(deg):
            work[i - deg + j] -= c * phi[j]
    work = work[:deg] if len(work) >= deg else work + [Fraction(0)] * (deg - len(work))
    return tuple(work)


class Cyclotomic:
    """An element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Fraction] = ()):
        self.conductor = int(conductor)
        self.coeffs = _reduce(self.conductor, [Fraction(c) for c in coeffs])

    @classmethod
    def zero(cls, n: int) -> "Cyclotomic":
        return cls(n, ())

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_N^k."""
        k %= n
        return cls(n, [Fraction(0)] * k + [Fraction(1)])

    @classmethod
    def from_exponent_sums(cls, n: int, sums: Mapping[int, Fraction]) -> "Cyclotomic":
        """sum over exponents k of sums[k] * zeta_N^k, reduced once."""
        coeffs = [Fraction(0)] * n
        for k, v in sums.items():
            coeffs[k % n] += v
        return cls(n, coeffs)

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        assert self.conductor == other.conductor
        return Cyclotomic(self.conductor,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        assert self.conductor == other.conductor
        return Cyclotomic(self.conductor,
                          [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [c * other for c in self.coeffs])
        assert self.conductor == other.conductor
        n = len(self.coeffs) + len(other.coeffs)
        prod = [Fraction(0)] * max(n, 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return Cyclotomic(self.conductor, prod)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other if self.coeffs \
                else other == 0
        return (isinstance(other, Cyclotomic)
                and self.conductor == other.conductor
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {list(self.coeffs)})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:]) if self.coeffs else True

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NonIntegerDimension(f"not a rational number: {self!r}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def as_integer(self) -> int:
        """The value as a rational integer; raises NonIntegerDimension otherwise."""
        q = self.rational_value()
        if q.denominator != 1:
            raise NonIntegerDimension(f"not an integer: {q}")
        return q.numerator


def character_average(n: int, exponent_sums: Mapping[int, Fraction]) -> int:
    """Reduce sum(v * zeta_n^k) to a rational integer, or raise."""
    return Cyclotomic.from_exponent_sums(n, exponent_sums).as_integer()
