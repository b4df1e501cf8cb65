"""Translation with wraparound on [0, a) and the failure of the Weyl relation.

With periodic boundary conditions ``exp(itP) f(x) = f(x + t hbar - a m)``
where ``m = m(x, t)`` is the integer putting the argument back into
[0, a).  Comparing the two operator orders pointwise gives

    (e^{itP} e^{isQ} f)(x) / (e^{isQ} e^{itP} f)(x) = exp(i s t hbar - i s a m(x, t)),

which is the naive Weyl phase ``exp(i s t hbar)`` only where ``m = 0``.
Everything is evaluated on the grid ``x_k = a k/N``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .embedding import SampledFunction
from .errors import DomainError, GridError
from .model import as_rational

GRID_TOL = 1e-9


@dataclass(frozen=True)
class WeylGrid:
    a: Fraction
    N: int
    hbar: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a, "a"))
        object.__setattr__(self, "hbar", as_rational(self.hbar, "hbar"))
        if self.a <= 0 or self.hbar <= 0 or self.N < 1:
            raise DomainError("need a > 0, hbar > 0, N >= 1")

    def x(self, k: int) -> float:
        return float(self.a * k / self.N)


@dataclass(frozen=True)
class WraparoundShift:
    """``exp(itP)`` on the grid: shift by ``steps`` samples with wrap counts."""

    grid: WeylGrid
    t: Fraction
    steps: int

    @property
    def shift(self) -> Fraction:
        """t*hbar (not reduced mod a)."""
        return self.t * self.grid.hbar

    def m_of(self, k: int) -> int:
        """m(x_k, t): the integer with 0 <= x_k + t hbar - a m < a."""
        return (k + self.steps) // self.grid.N

    def target(self, k: int) -> int:
        return (k + self.steps) % self.grid.N


def wraparound_shift(grid: WeylGrid, t) -> WraparoundShift:
    """Validate that t*hbar lands on the grid and build the shift."""
    t_exact = as_rational(t, "t")
    steps = t_exact * grid.hbar * grid.N / grid.a
    if steps.denominator != 1:
        nearest = round(steps)
        if isinstance(t, float) and abs(float(steps) - nearest) <= GRID_TOL * max(1, abs(nearest)):
            t_exact = Fraction(nearest) * grid.a / (grid.hbar * grid.N)
            steps = Fraction(nearest)
        else:
            t_near = Fraction(nearest) * grid.a / (grid.hbar * grid.N)
            raise GridError(f"t*hbar*N/a = {float(steps)} is not an integer; nearest admissible t is {t_near}")
    return WraparoundShift(grid, t_exact, steps.numerator)


def _check(grid: WeylGrid, f: SampledFunction):
    if f.N != grid.N or f.a != grid.a:
        raise DomainError(f"function sampled with (N={f.N}, a={f.a}), grid has (N={grid.N}, a={grid.a})")


def translate(grid: WeylGrid, t, f: SampledFunction) -> SampledFunction:
    """``exp(itP) f``: a cyclic shift of the samples by t*hbar*N/a places."""
    _check(grid, f)
    shift = wraparound_shift(grid, t)
    return SampledFunction(f.a, f.N, np.roll(f.samples, -shift.steps))


def mult_position(grid: WeylGrid, s: float, f: SampledFunction) -> SampledFunction:
    """``exp(isQ) f``: multiply sample k by exp(i s x_k)."""
    _check(grid, f)
    xs = np.array([grid.x(k) for k in range(grid.N)])
    return SampledFunction(f.a, f.N, np.exp(1j * s * xs) * f.samples)


def default_probe(grid: WeylGrid) -> SampledFunction:
    """A nowhere-vanishing test function (the first Fourier mode)."""
    return SampledFunction.mode(1, grid.a, grid.N)


def commutator_ratios(grid: WeylGrid, s: float, t, f: SampledFunction | None = None) -> np.ndarray:
    """``(e^{itP} e^{isQ} f) / (e^{isQ} e^{itP} f)`` at every grid point."""
    f = default_probe(grid) if f is None else f
    shifted = translate(grid, t, f).samples
    if np.any(shifted == 0):
        k = int(np.flatnonzero(shifted == 0)[0])
        raise DomainError(f"probe function vanishes at the shifted point of x_{k}; ratio undefined")
    pq = translate(grid, t, mult_position(grid, s, f)).samples
    qp = mult_position(grid, s, translate(grid, t, f)).samples
    return pq / qp


def weyl_commutator(grid: WeylGrid, s: float, t, k: int, f: SampledFunction | None = None) -> complex:
    """Pointwise ratio ``(e^{itP} e^{isQ} f)(x_k) / (e^{isQ} e^{itP} f)(x_k)``."""
    if not 0 <= k < grid.N:
        raise DomainError(f"grid index {k} outside [0, {grid.N})")
    return complex(commutator_ratios(grid, s, t, f)[k])


def weyl_commutator_formula(grid: WeylGrid, s: float, t, k: int) -> complex:
    """``exp(i s t hbar - i s a m(x_k, t))``."""
    shift = wraparound_shift(grid, t)
    return cmath.exp(1j * s * (float(shift.shift) - float(grid.a) * shift.m_of(k)))


@dataclass(frozen=True)
class WeylViolationReport:
    N: int
    s: float
    t: Fraction
    shift: Fraction
    wrapped: tuple[int, ...]
    fraction: Fraction
    max_formula_dev: float

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "s": self.s,
            "t": str(self.t),
            "t_hbar": str(self.shift),
            "wrapped_count": len(self.wrapped),
            "violation_fraction": float(self.fraction),
            "violation_fraction_exact": str(self.fraction),
            "max_formula_deviation": self.max_formula_dev,
        }


def weyl_violation_report(grid: WeylGrid, s: float, t, f: SampledFunction | None = None) -> WeylViolationReport:
    """Grid points where the naive phase exp(i s t hbar) is wrong (m(x, t) != 0).

    Also records the largest deviation of the measured pointwise ratio from
    the wraparound formula.
    """
    shift = wraparound_shift(grid, t)
    wrapped = tuple(k for k in range(grid.N) if shift.m_of(k) != 0)
    ratios = commutator_ratios(grid, s, t, f)
    dev = max(abs(ratios[k] - weyl_commutator_formula(grid, s, t, k)) for k in range(grid.N))
    return WeylViolationReport(grid.N, s, shift.t, shift.shift, wrapped, Fraction(len(wrapped), grid.N), dev)
