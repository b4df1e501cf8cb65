"""Sampled L2([0, a]) functions embedded into H_N, and exp(i alpha Q^2), exp(i alpha P^2).

``F_N(f) = sum_k (a/N)^{1/2} f(a_k) u(k)`` with ``a_k = a*k/N``.  The
Fourier modes ``f_n = a^{-1/2} exp(2 pi i n x/a)`` land exactly on the
momentum basis: ``F_N(f_n) = v(n mod N)`` as long as ``|n| < N/2``.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import DomainError
from .model import Basis, ExactDiagonal, FiniteModel, FloatDiagonal, StateVector, as_rational
from .phase import RationalPhase, phase_normalize


class NStabilityWarning(UserWarning):
    """exp(i alpha P^2) in float mode is only consistent for special N."""


@dataclass(frozen=True)
class FourierMode:
    n: int

    def check_alias_free(self, N: int):
        if 2 * abs(self.n) >= N:
            raise DomainError(f"mode n={self.n} aliases in H_{N}; need |n| < N/2")


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples ``f(a*k/N)`` for k < N.

    ``descriptor`` optionally records where the samples came from (a
    :class:`FourierMode`, or a tuple of polynomial coefficients) so exact
    code paths can use it.
    """

    a: Fraction
    N: int
    samples: np.ndarray
    descriptor: object = None

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a, "a"))
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))
        if self.a <= 0:
            raise DomainError("interval length a must be positive")
        if len(self.samples) != self.N:
            raise DomainError(f"expected {self.N} samples, got {len(self.samples)}")

    @property
    def grid(self) -> np.ndarray:
        return float(self.a) * np.arange(self.N) / self.N

    @classmethod
    def from_callable(cls, f: Callable[[np.ndarray], np.ndarray], a, N: int) -> "SampledFunction":
        a = as_rational(a, "a")
        xs = float(a) * np.arange(N) / N
        return cls(a, N, np.broadcast_to(f(xs), (N,)).astype(complex))

    @classmethod
    def mode(cls, n: int, a, N: int) -> "SampledFunction":
        """``f_n`` sampled; phases ``2 n k/N`` are formed exactly."""
        a = as_rational(a, "a")
        amp = 1 / math.sqrt(a)
        phases = np.array([phase_normalize(2 * n * k, N).to_complex() for k in range(N)])
        return cls(a, N, amp * phases, FourierMode(n))

    @classmethod
    def polynomial(cls, coeffs, a, N: int) -> "SampledFunction":
        """``sum_j coeffs[j] x^j`` sampled on the grid."""
        coeffs = tuple(coeffs)
        f = cls.from_callable(lambda x: np.polynomial.polynomial.polyval(x, coeffs), a, N)
        return cls(f.a, N, f.samples, coeffs)

    @classmethod
    def gaussian(cls, center: float, width: float, a, N: int) -> "SampledFunction":
        return cls.from_callable(lambda x: np.exp(-((x - center) / width) ** 2 / 2), a, N)

    @classmethod
    def from_csv(cls, path, a) -> "SampledFunction":
        """Read rows ``index, re, im`` (a header row is allowed)."""
        rows = {}
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or not row[0].strip().lstrip("-").isdigit():
                    continue
                rows[int(row[0])] = complex(float(row[1]), float(row[2]))
        N = len(rows)
        if sorted(rows) != list(range(N)):
            raise DomainError("CSV indices must be exactly 0..N-1")
        return cls(a, N, np.array([rows[k] for k in range(N)]))


def _check(model: FiniteModel, f: SampledFunction):
    if f.N != model.N or f.a != model.a:
        raise DomainError(f"function sampled with (N={f.N}, a={f.a}) but model has (N={model.N}, a={model.a})")


def embed(model: FiniteModel, f: SampledFunction) -> StateVector:
    """F_N(f) in u-coordinates."""
    _check(model, f)
    if isinstance(f.descriptor, FourierMode):
        # (a/N)^{1/2} * a^{-1/2} = N^{-1/2}; use the exact phases directly
        f.descriptor.check_alias_free(model.N)
        scale = math.sqrt(float(Fraction(1, model.N)))
        phases = np.array([phase_normalize(2 * f.descriptor.n * k, model.N).to_complex() for k in range(model.N)])
        return StateVector(Basis.U, scale * phases)
    return StateVector(Basis.U, math.sqrt(float(model.a / model.N)) * f.samples)


def embedded_norm_sq(model: FiniteModel, f: SampledFunction) -> float:
    """``(a/N) sum_k |f(a_k)|^2``, the left Riemann sum of the integral of |f|^2."""
    _check(model, f)
    return float(model.a / model.N) * math.fsum(np.abs(f.samples) ** 2)


def op_expQ2(model: FiniteModel, alpha: float | None = None, *, alpha_over_pi=None):
    """A^alpha: ``u(k) -> exp(i alpha (k a/N)^2) u(k)``.

    Pass ``alpha_over_pi`` (rational) instead of ``alpha`` to get an
    :class:`ExactDiagonal`.
    """
    ks = range(model.N)
    if alpha_over_pi is not None:
        r = as_rational(alpha_over_pi) * (model.a / model.N) ** 2
        return ExactDiagonal(Basis.U, (RationalPhase.of(r * k * k) for k in ks))
    if alpha is None:
        raise TypeError("give alpha or alpha_over_pi")
    x = float(model.a) * np.arange(model.N) / model.N
    return FloatDiagonal(Basis.U, alpha * x**2)


def op_expP2(model: FiniteModel, alpha: float | None = None, *, alpha_b2_over_pi=None):
    """B^alpha: ``v(k) -> exp(i alpha (b k)^2) v(k)``.

    With ``alpha_b2_over_pi`` (the rational alpha*b^2/pi) the result is an
    :class:`ExactDiagonal`; the v(N+k) = v(k) identification for negative
    momenta is then exact whenever N is divisible enough.  Float mode has
    no such guarantee and warns with :class:`NStabilityWarning`.
    """
    if alpha_b2_over_pi is not None:
        r = as_rational(alpha_b2_over_pi)
        return ExactDiagonal(Basis.V, (RationalPhase.of(r * k * k) for k in range(model.N)))
    if alpha is None:
        raise TypeError("give alpha or alpha_b2_over_pi")
    warnings.warn("float-mode exp(i alpha P^2) is not N-stable unless alpha*b^2/pi is rational",
                  NStabilityWarning, stacklevel=2)
    k = np.arange(model.N)
    return FloatDiagonal(Basis.V, alpha * (float(model.b) * k) ** 2)
