"""Harmonic oscillator propagator through a three-factor splitting.

For operators with ``[A,B] = C, [A,C] = 2 gamma A, [B,C] = -2 gamma B`` one
has ``exp(A + B) = exp(alpha A) exp(beta B) exp(alpha A)`` with
``alpha = tan(sqrt(gamma)/2)/sqrt(gamma)`` and ``beta = sin(sqrt(gamma))/sqrt(gamma)``.
For ``H = P^2/2m + m omega^2 Q^2/2`` this gives

    K = exp(i alpha Q^2) exp(i beta P^2) exp(i alpha Q^2),
    alpha = -m omega tan(omega t/2)/(2 hbar),   beta = -sin(omega t)/(2 omega m hbar).

In H_N with ``a = h sin(omega t)/(m omega)`` we get ``beta*b^2/pi = -1/a``
exactly, so the P^2 factor is an exact phase diagonal and the momentum sum
collapses to the same Gauss sum as for the free particle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .embedding import op_expP2, op_expQ2
from .errors import DivisibilityError, DomainError, InvariantBreach, PreconditionError, SingularityError
from .free import PropagatorResult, propagator_terms
from .model import Basis, FiniteModel, apply_diagonal, as_rational, basis_vector, make_model
from .phase import GaussSumParams, fsum_complex, gauss_sum_reciprocity

METHODS = ("matrix", "full_sum", "reduced_sum", "closed_form")
SINGULAR_TOL = 1e-12
EVEN_TOL = 1e-9


def factor_coefficients_generic(gamma: float) -> tuple[float, float]:
    """(alpha, beta) of the symmetric three-factor splitting for parameter gamma."""
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if gamma == 0:
        return 0.5, 1.0
    s = math.sqrt(gamma)
    if abs(math.cos(s / 2)) < SINGULAR_TOL:
        raise SingularityError(f"tan(sqrt(gamma)/2) is singular at gamma={gamma}")
    return math.tan(s / 2) / s, math.sin(s) / s


@dataclass(frozen=True)
class OscParams:
    m: float
    omega: float
    t: float
    hbar: float = 1.0

    @classmethod
    def unit_mode(cls, a, omega_t: float) -> "OscParams":
        """hbar = omega = 1, t = omega_t and m chosen so the scaling equals ``a``."""
        return cls(m=2 * math.pi * math.sin(omega_t) / float(a), omega=1.0, t=omega_t, hbar=1.0)

    @property
    def h(self) -> float:
        return 2 * math.pi * self.hbar

    @property
    def gamma(self) -> float:
        return (self.t * self.omega) ** 2

    @property
    def a(self) -> float:
        """Length scaling ``h sin(omega t)/(m omega)``."""
        return self.h * math.sin(self.omega * self.t) / (self.m * self.omega)

    def check_singular(self) -> "OscParams":
        wt = self.omega * self.t
        if self.m <= 0 or self.omega <= 0 or self.hbar <= 0:
            raise DomainError("m, omega and hbar must be positive")
        if abs(math.sin(wt)) < SINGULAR_TOL:
            raise SingularityError(f"sin(omega t) = 0: propagator singular (omega t = {wt})")
        if abs(math.cos(wt / 2)) < SINGULAR_TOL:
            raise SingularityError(f"cos(omega t/2) = 0: factorization singular (omega t = {wt})")
        return self

    def even_a(self) -> int:
        """The scaling a as an even positive integer, or PreconditionError."""
        a = self.a
        k = round(a)
        if a <= 0 or abs(a - k) > EVEN_TOL * max(1.0, abs(a)) or k % 2:
            raise PreconditionError(f"a = h sin(omega t)/(m omega) = {a!r} is not an even positive integer")
        return int(k)

    def model(self, N: int) -> FiniteModel:
        return make_model(N, self.even_a(), as_rational(self.h))


def osc_coefficients(p: OscParams) -> tuple[float, float]:
    """(alpha, beta) with ``K = e^{i alpha Q^2} e^{i beta P^2} e^{i alpha Q^2}``."""
    p.check_singular()
    wt = p.omega * p.t
    alpha = -p.m * p.omega * math.tan(wt / 2) / (2 * p.hbar)
    beta = -math.sin(wt) / (2 * p.omega * p.m * p.hbar)
    return alpha, beta


def mehler_reference(p: OscParams, x0: float, x1: float) -> complex:
    """Continuum oscillator kernel

    sqrt(m w/(2 pi i hbar sin wt)) * exp(i m w (cos(wt)(x0^2 + x1^2) - 2 x0 x1)/(2 hbar sin wt)).
    """
    wt = p.omega * p.t
    s = math.sin(wt)
    if abs(s) < SINGULAR_TOL:
        raise SingularityError(f"sin(omega t) = 0: propagator singular (omega t = {wt})")
    pref = cmath.sqrt(p.m * p.omega / (2j * math.pi * p.hbar * s))
    return pref * cmath.exp(1j * p.m * p.omega * (math.cos(wt) * (x0 * x0 + x1 * x1) - 2 * x0 * x1) / (2 * p.hbar * s))


def _check_positions(model: FiniteModel, x0: Fraction, x1: Fraction) -> int:
    a = model.a
    if model.N % a.numerator or a.denominator != 1:
        raise DivisibilityError(f"a = {a} must divide N = {model.N}")
    if (x1 - x0).denominator != 1:
        raise PreconditionError(f"x1 - x0 must be an integer, got {x1 - x0}")
    model.position_index(x0)
    model.position_index(x1)
    return (x1 - x0).numerator


def osc_propagator(model: FiniteModel, p: OscParams, x0, x1, method: str = "closed_form") -> PropagatorResult:
    """``<x1|A B A|x0>`` in H_N; reference is :func:`mehler_reference`."""
    alpha, beta = osc_coefficients(p)
    a = p.even_a()
    if model.a != a:
        raise DomainError(f"model has a = {model.a} but the oscillator scaling gives a = {a}")
    x0, x1 = as_rational(x0, "x0"), as_rational(x1, "x1")
    delta = _check_positions(model, x0, x1)

    b2_over_pi = Fraction(-1, a)
    if abs(beta * float(model.b) ** 2 / math.pi - float(b2_over_pi)) > 1e-12 * max(1.0, abs(float(b2_over_pi))):
        raise InvariantBreach(f"beta*b^2/pi = {beta * float(model.b) ** 2 / math.pi} differs from -1/a")

    outer = cmath.exp(1j * alpha * float(x0**2 + x1**2))
    if method == "matrix":
        A = op_expQ2(model, alpha)
        B = op_expP2(model, alpha_b2_over_pi=b2_over_pi)
        s = basis_vector(model, Basis.U, model.position_index(x0))
        s = apply_diagonal(model, A, s)
        s = apply_diagonal(model, B, s)
        s = apply_diagonal(model, A, s)
        value = complex(s.amplitudes[model.position_index(x1)])
    elif method == "full_sum":
        value = outer * fsum_complex(t.to_complex() for t in propagator_terms(a, delta, model.N)) / model.N
    elif method == "reduced_sum":
        value = outer * fsum_complex(t.to_complex() for t in propagator_terms(a, delta, a)) / a
    elif method == "closed_form":
        value = outer * gauss_sum_reciprocity(GaussSumParams(-1, 2 * delta, a)) / a
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return PropagatorResult.compare(value, method, mehler_reference(p, float(x0), float(x1)))
