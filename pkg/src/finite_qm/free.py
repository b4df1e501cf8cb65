"""Free-particle time evolution and its Feynman propagator.

Under the scaling a = h*t/m, b = m/t the evolution is diagonal in the
v-basis with ``K v(x) = exp(-i*pi*x^2/a) v(x)``.  The amplitude
``<x1|K|x0>`` is computed four ways:

* ``full_sum``    -- ``(1/N) sum_{n<N} exp(i pi (2 D n - n^2)/a)``, D = x1 - x0
* ``reduced_sum`` -- the same sum over one period, ``(1/a) sum_{n<a}``
* ``closed_form`` -- the period sum via Gauss-sum reciprocity
* ``matrix``      -- apply K to u(N x0/a) and read off the u(N x1/a) entry

The ``conjugate`` variant flips the sign of the kernel exponent (the
time-dependent Hamiltonian); its propagator is the complex conjugate.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisibilityError, DomainError, PreconditionError, SingularityError
from .model import Basis, ExactDiagonal, FiniteModel, apply_diagonal, as_rational, basis_vector, make_model
from .phase import GaussSumParams, RationalPhase, fsum_complex, gauss_sum_reciprocity, phase_normalize

METHODS = ("full_sum", "reduced_sum", "closed_form", "matrix")
VARIANTS = ("standard", "conjugate")

# SI values used for the space-size estimates
PLANCK_H = 6.62607015e-34
ELECTRON_MASS = 9.1093837015e-31


@dataclass(frozen=True)
class PropagatorResult:
    value: complex
    method: str
    reference: complex
    abs_dev: float
    rel_dev: float

    @classmethod
    def compare(cls, value: complex, method: str, reference: complex) -> "PropagatorResult":
        dev = abs(value - reference)
        return cls(value, method, reference, dev, dev / abs(reference) if reference else math.inf)


@dataclass(frozen=True)
class FreeParams:
    """a = h*t/m (an even positive integer), end points x0, x1 in [0, a)."""

    a: int
    x0: Fraction
    x1: Fraction
    N: int
    variant: str = "standard"

    def __post_init__(self):
        object.__setattr__(self, "x0", as_rational(self.x0, "x0"))
        object.__setattr__(self, "x1", as_rational(self.x1, "x1"))

    @property
    def delta(self) -> int:
        """x1 - x0 (validated to be an integer)."""
        return (self.x1 - self.x0).numerator

    def validate(self) -> "FreeParams":
        if self.a == 0:
            raise SingularityError("a = 0 (t = 0): the space is a single point and K is singular")
        if int(self.a) != self.a or self.a < 0:
            raise PreconditionError(f"a must be a positive integer, got {self.a}")
        if self.a % 2:
            raise PreconditionError(f"a must be even, got {self.a}")
        if self.variant not in VARIANTS:
            raise PreconditionError(f"variant must be one of {VARIANTS}")
        for name, x in (("x0", self.x0), ("x1", self.x1)):
            if not 0 <= x < self.a:
                raise PreconditionError(f"{name} = {x} must lie in [0, a)")
        if (self.x1 - self.x0).denominator != 1:
            raise PreconditionError(f"x1 - x0 must be an integer, got {self.x1 - self.x0}")
        if self.N % self.a:
            raise DivisibilityError(f"a = {self.a} must divide N = {self.N}")
        for name, x in (("x0", self.x0), ("x1", self.x1)):
            if (self.N * x / self.a).denominator != 1:
                raise DivisibilityError(f"N*{name}/a must be an integer (N={self.N}, {name}={x})")
        return self

    def min_admissible_N(self) -> int:
        """Smallest N divisible by a with N*x0/a and N*x1/a integral."""
        return math.lcm(int(self.a), (self.x0 / self.a).denominator, (self.x1 / self.a).denominator)

    def model(self, h=None) -> FiniteModel:
        return make_model(self.N, self.a, h)


def _sign(variant: str) -> int:
    return -1 if variant == "standard" else 1


def free_kernel(model: FiniteModel, params: FreeParams) -> ExactDiagonal:
    """K as a v-diagonal: phase ``-x^2/a`` (standard) or ``+x^2/a`` (conjugate)."""
    params.validate()
    _check_model(model, params)
    s = _sign(params.variant)
    return ExactDiagonal(Basis.V, (phase_normalize(s * x * x, params.a) for x in range(model.N)))


def _check_model(model: FiniteModel, params: FreeParams):
    if model.N != params.N or model.a != params.a:
        raise DomainError(f"model (N={model.N}, a={model.a}) does not match params (N={params.N}, a={params.a})")


def propagator_terms(a: int, delta: int, count: int, variant: str = "standard") -> list[RationalPhase]:
    """Exact phases ``(2*delta*n -+ n^2)/a`` for n < count."""
    s = _sign(variant)
    return [phase_normalize(2 * delta * n + s * n * n, a) for n in range(count)]


def reduction_is_exact(a: int, delta: int, N: int, variant: str = "standard") -> bool:
    """True iff the N phase terms are exactly N/a copies of the first a terms."""
    if N % a:
        return False
    full = Counter(propagator_terms(a, delta, N, variant))
    one_period = Counter(propagator_terms(a, delta, a, variant))
    return full == Counter({p: c * (N // a) for p, c in one_period.items()})


def gauss_params(params: FreeParams) -> GaussSumParams:
    """(c, d, g) used for the closed form."""
    if params.variant == "standard":
        return GaussSumParams(-1, 2 * params.delta, params.a)
    return GaussSumParams(1, -2 * params.delta, params.a)


def _value(model: FiniteModel, params: FreeParams, method: str) -> complex:
    a, D = params.a, params.delta
    if method == "full_sum":
        return fsum_complex(p.to_complex() for p in propagator_terms(a, D, params.N, params.variant)) / params.N
    if method == "reduced_sum":
        return fsum_complex(p.to_complex() for p in propagator_terms(a, D, a, params.variant)) / a
    if method == "closed_form":
        return gauss_sum_reciprocity(gauss_params(params)) / a
    if method == "matrix":
        K = free_kernel(model, params)
        start = basis_vector(model, Basis.U, model.position_index(params.x0))
        end = apply_diagonal(model, K, start)
        return complex(end.amplitudes[model.position_index(params.x1)])
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def free_propagator(model: FiniteModel, params: FreeParams, method: str = "closed_form") -> PropagatorResult:
    """``<x1|K|x0>`` by ``method``; the reference is the continuum kernel."""
    params.validate()
    _check_model(model, params)
    value = _value(model, params, method)
    # pick m = t = 1 and hbar = a/(2 pi), so h*t/m = a
    ref = physics_reference(1.0, 1.0, params.a / (2 * math.pi), float(params.x0), float(params.x1), params.variant)
    return PropagatorResult.compare(value, method, ref)


def physics_reference(m: float, t: float, hbar: float, x0: float, x1: float, variant: str = "standard") -> complex:
    """Continuum free kernel ``(m/(2 pi i hbar t))^{1/2} exp(i m (x0-x1)^2/(2 hbar t))``.

    The conjugate variant replaces i by -i throughout.
    """
    if t == 0:
        raise SingularityError("t = 0: the free propagator is singular")
    i = 1j if variant == "standard" else -1j
    return cmath.sqrt(m / (2 * math.pi * i * hbar * t)) * cmath.exp(i * m * (x0 - x1) ** 2 / (2 * hbar * t))


def space_size(mass: float, t: float, h: float = PLANCK_H, length_unit: float = 1.0) -> tuple[float, float]:
    """Length of the model space after time ``t``.

    Returns ``(a, length)`` where ``a = h*t/(mass*unit^2)`` is the length in
    units of ``length_unit`` (metres per unit) and ``length = a*length_unit``
    in metres.
    """
    if mass <= 0:
        raise DomainError(f"mass must be positive, got {mass}")
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    if length_unit <= 0:
        raise DomainError("length unit must be positive")
    a = h * t / (mass * length_unit**2)
    return a, a * length_unit
