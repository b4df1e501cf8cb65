"""Exact phases r*pi (r rational, taken mod 2) and quadratic Gauss sums.

A :class:`RationalPhase` stores the angle ``num/den * pi`` reduced to the
canonical window ``0 <= num/den < 2``.  Everything stays in integers until
:func:`phase_to_complex`, so periodicity arguments (``e^{i pi (a+n)^2/a} =
e^{i pi n^2/a}`` and friends) become exact equalities of objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PreconditionError

# i**k for the exact quarter-turn rotation in phase_to_complex
_QUARTER_TURNS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


@dataclass(frozen=True, slots=True, order=True)
class RationalPhase:
    """The unit complex number ``exp(i*pi*num/den)``."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or math.gcd(self.num, self.den) != 1 or not 0 <= self.num < 2 * self.den:
            raise DomainError(f"non-canonical phase {self.num}/{self.den}; use phase_normalize")

    @classmethod
    def of(cls, value) -> "RationalPhase":
        """Phase ``value*pi`` for an int or Fraction ``value``."""
        value = Fraction(value)
        return phase_normalize(value.numerator, value.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: "RationalPhase") -> "RationalPhase":
        if not isinstance(other, RationalPhase):
            return NotImplemented
        return phase_normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalPhase":
        return phase_normalize(-self.num, self.den)

    def __sub__(self, other: "RationalPhase") -> "RationalPhase":
        return self + (-other)

    def scale(self, k: int) -> "RationalPhase":
        """The k-th power of the unit number, k an integer."""
        return phase_normalize(self.num * k, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def to_complex(self) -> complex:
        return phase_to_complex(self)

    def __repr__(self):
        return f"RationalPhase({self.num}/{self.den} pi)"


ZERO_PHASE = RationalPhase(0, 1)


def phase_normalize(num: int, den: int) -> RationalPhase:
    """Reduce ``num/den`` modulo 2 to the canonical representative."""
    if den == 0:
        raise DomainError("phase denominator must be nonzero")
    if den < 0:
        num, den = -num, -den
    g = math.gcd(num, den)
    num, den = num // g, den // g
    return RationalPhase(num % (2 * den), den)


def phase_to_complex(p: RationalPhase) -> complex:
    """Evaluate ``exp(i*pi*p)``.

    The angle is folded into ``[0, pi/4]`` with exact integer arithmetic
    before calling cos/sin, so the rounding error does not grow with the
    size of the angle.
    """
    num, den = p.num, p.den
    # p = quarter/2 + rem/(2*den), 0 <= rem < den
    quarter, rem = divmod(2 * num, den)
    if 2 * rem <= den:
        x = math.pi * rem / (2 * den)
        c, s = math.cos(x), math.sin(x)
    else:
        x = math.pi * (den - rem) / (2 * den)
        c, s = math.sin(x), math.cos(x)
    rc, rs = _QUARTER_TURNS[quarter % 4]
    return complex(rc * c - rs * s, rs * c + rc * s)


def fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(z.real for z in values), math.fsum(z.imag for z in values))


@dataclass(frozen=True)
class GaussSumParams:
    """Parameters of ``sum_{n=0}^{|g|-1} exp(pi*i*(c*n^2 + d*n)/g)``."""

    c: int
    d: int
    g: int

    def reciprocity_violation(self) -> str | None:
        """Name the first violated reciprocity precondition, or None."""
        if self.c * self.g == 0:
            return "c*g must be nonzero"
        if (self.c * self.g - self.d) % 2:
            return "c*g - d must be even"
        return None


def gauss_sum_terms(c: int, d: int, g: int) -> list[RationalPhase]:
    """The |g| exact phases whose sum is the quadratic Gauss sum."""
    if g == 0:
        raise DomainError("g must be nonzero")
    return [phase_normalize(c * n * n + d * n, g) for n in range(abs(g))]


def gauss_sum_direct(p: GaussSumParams) -> complex:
    """Literal summation; this is the brute-force reference."""
    return fsum_complex(t.to_complex() for t in gauss_sum_terms(p.c, p.d, p.g))


def reciprocity_prefactor_phase(c: int, d: int, g: int) -> RationalPhase:
    return phase_normalize(abs(c * g) - d * d, 4 * c * g)


def gauss_sum_reciprocity(p: GaussSumParams) -> complex:
    """Evaluate the Gauss sum through the reciprocity formula

    sum_{n<|g|} e^{pi i (c n^2 + d n)/g}
        = |g/c|^{1/2} e^{pi i (|cg| - d^2)/(4cg)} sum_{n<|c|} e^{-pi i (g n^2 + d n)/c}

    valid for ``c*g != 0`` and ``c*g - d`` even.  Cost is O(|c|) instead of O(|g|).
    """
    why = p.reciprocity_violation()
    if why is not None:
        raise PreconditionError(f"reciprocity precondition failed: {why} (c={p.c}, d={p.d}, g={p.g})")
    c, d, g = p.c, p.d, p.g
    inner = fsum_complex(phase_normalize(-(g * n * n + d * n), c).to_complex() for n in range(abs(c)))
    return math.sqrt(abs(g) / abs(c)) * reciprocity_prefactor_phase(c, d, g).to_complex() * inner
