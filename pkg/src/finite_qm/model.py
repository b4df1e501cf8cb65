"""The N-dimensional model space with its position (u) and momentum (v) bases.

``v(x) = N^{-1/2} sum_y q^{xy} u(y)`` with ``q = exp(2*pi*i/N)``.  The
unitary families U^t, V^t and V_*^t = (V^t)^N are diagonal in one of the two
bases; they are parametrised here by the reduced times ``t_u = a*t/(2*pi)``
and ``t_v = b*t/(2*pi)`` as exact rationals, so every phase they produce is
an exact :class:`~finite_qm.phase.RationalPhase`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DivisibilityError, DomainError, InvariantBreach
from .phase import RationalPhase, phase_normalize

MAX_N = 2**20
# definitional O(N^2) transform below this size, FFT at and above
FFT_THRESHOLD = 4096
_ROW_CHUNK = 256


class Basis(str, enum.Enum):
    U = "U"
    V = "V"


def as_rational(value, name: str = "value") -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float.

    Floats are taken at their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value}")
        return Fraction(value)
    raise DomainError(f"{name} must be rational, got {value!r}")


def require_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise DivisibilityError(f"{what} must be an integer, got {value}")
    return value.numerator


@dataclass(frozen=True)
class FiniteModel:
    """The space H_N with scalings a (position) and b = h/a (momentum)."""

    N: int
    a: Fraction
    h: Fraction

    @property
    def b(self) -> Fraction:
        return self.h / self.a

    @property
    def hbar(self) -> float:
        return float(self.h) / (2 * math.pi)

    @cached_property
    def roots(self) -> np.ndarray:
        """``q**k`` for k < N, each evaluated from its exact phase."""
        return np.array([phase_normalize(2 * k, self.N).to_complex() for k in range(self.N)])

    def position_index(self, x) -> int:
        """Index k with ``|x> = u(k)``, i.e. ``k = N*x/a``."""
        k = as_rational(x, "x") * self.N / self.a
        if k.denominator != 1:
            raise DivisibilityError(f"N*x/a must be an integer (N={self.N}, a={self.a}, x={x})")
        if not 0 <= k < self.N:
            raise DomainError(f"position {x} outside [0, a)")
        return k.numerator


def make_model(N: int, a=1, h=None) -> FiniteModel:
    """Build H_N.  ``h`` defaults to ``a`` (so b = 1); b is always h/a."""
    if int(N) != N or N <= 1:
        raise DomainError(f"N must be an integer > 1, got {N}")
    if N > MAX_N:
        raise DomainError(f"N={N} exceeds the dense-vector cap {MAX_N}")
    a = as_rational(a, "a")
    h = a if h is None else as_rational(h, "h")
    if a <= 0 or h <= 0:
        raise DomainError("a and h must be positive")
    return FiniteModel(int(N), a, h)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes of a vector in the u- or v-basis."""

    basis: Basis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "basis", Basis(self.basis))

    def __len__(self):
        return len(self.amplitudes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def inner(s1: StateVector, s2: StateVector) -> complex:
    """``<s1|s2>``, conjugate-linear in the first slot.  Bases must agree."""
    if s1.basis != s2.basis:
        raise DomainError("inner product needs both vectors in the same basis")
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def basis_vector(model: FiniteModel, basis: Basis | str, x: int, coords: Basis | str = Basis.U) -> StateVector:
    """u(x) or v(x), expressed in ``coords`` coordinates."""
    basis, coords = Basis(basis), Basis(coords)
    N = model.N
    if not 0 <= x < N:
        raise DomainError(f"basis index {x} outside [0, {N})")
    if basis == coords:
        amps = np.zeros(N, dtype=complex)
        amps[x] = 1.0
        return StateVector(coords, amps)
    # v(x) in u-coords has entries q^{xy}/sqrt(N); u(x) in v-coords q^{-xy}/sqrt(N)
    sign = 1 if basis == Basis.V else -1
    idx = (sign * x * np.arange(N)) % N
    return StateVector(coords, math.sqrt(float(Fraction(1, N))) * model.roots[idx])


def _dft_definition(model: FiniteModel, amps: np.ndarray, sign: int) -> np.ndarray:
    N = model.N
    out = np.empty(N, dtype=complex)
    ys = np.arange(N)
    for start in range(0, N, _ROW_CHUNK):
        xs = np.arange(start, min(start + _ROW_CHUNK, N))
        kernel = model.roots[(sign * np.outer(xs, ys)) % N]
        out[xs] = kernel @ amps
    return out / math.sqrt(N)


def change_basis(model: FiniteModel, s: StateVector, target: Basis | str, method: str = "auto") -> StateVector:
    """Re-express ``s`` in the ``target`` basis.

    ``method`` is "definition" (the O(N^2) sum), "fft", or "auto" (definition
    below FFT_THRESHOLD).
    """
    target = Basis(target)
    if len(s) != model.N:
        raise DomainError(f"vector of length {len(s)} does not live in H_{model.N}")
    if s.basis == target:
        return s
    if method == "auto":
        method = "definition" if model.N < FFT_THRESHOLD else "fft"
    to_v = target == Basis.V
    if method == "definition":
        amps = _dft_definition(model, s.amplitudes, -1 if to_v else 1)
    elif method == "fft":
        amps = np.fft.fft(s.amplitudes, norm="ortho") if to_v else np.fft.ifft(s.amplitudes, norm="ortho")
    else:
        raise ValueError(f"unknown method {method!r}")
    return StateVector(target, amps)


@dataclass(frozen=True, eq=False)
class ExactDiagonal:
    """A unitary diagonal in ``basis`` whose entries are exact phases."""

    basis: Basis
    phases: tuple[RationalPhase, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "phases", tuple(self.phases))

    def __len__(self):
        return len(self.phases)

    def __eq__(self, other):
        if not isinstance(other, ExactDiagonal):
            return NotImplemented
        return self.basis == other.basis and self.phases == other.phases

    def phase_at(self, x: int) -> RationalPhase:
        return self.phases[x]

    def factors(self) -> np.ndarray:
        return np.array([p.to_complex() for p in self.phases])

    def is_identity(self) -> bool:
        return all(p.is_zero() for p in self.phases)

    def compose(self, other: "ExactDiagonal") -> "ExactDiagonal":
        """``self @ other``; diagonals in one basis commute, phases add."""
        if self.basis != other.basis or len(self) != len(other):
            raise DomainError("can only compose diagonals of the same basis and size")
        return ExactDiagonal(self.basis, (p + r for p, r in zip(self.phases, other.phases)))

    __matmul__ = compose

    @cached_property
    def cyclic_shift(self) -> int | None:
        """k if this is a V-diagonal with phases 2*y*k/N, else None.

        Such an operator maps u(x) to u(x - k mod N) with no phase.
        """
        if self.basis != Basis.V:
            return None
        N = len(self.phases)
        k = self.phases[1 % N].fraction * N / 2
        if k.denominator != 1:
            return None
        k = k.numerator % N
        if all(p == phase_normalize(2 * y * k, N) for y, p in enumerate(self.phases)):
            return k
        return None


@dataclass(frozen=True, eq=False)
class FloatDiagonal:
    """A unitary diagonal in ``basis`` given by real angles (radians)."""

    basis: Basis
    angles: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "angles", np.asarray(self.angles, dtype=float))

    def __len__(self):
        return len(self.angles)

    def factors(self) -> np.ndarray:
        return np.exp(1j * self.angles)


def _diagonal(model: FiniteModel, basis: Basis, scale: Fraction) -> ExactDiagonal:
    # phase_at(x) = scale * x  (pi units)
    return ExactDiagonal(basis, (RationalPhase.of(scale * x) for x in range(model.N)))


def op_U(model: FiniteModel, t_u) -> ExactDiagonal:
    """U^t: ``u(x) -> q^{x t_u} u(x)``."""
    return _diagonal(model, Basis.U, 2 * as_rational(t_u, "t_u") / model.N)


def op_V(model: FiniteModel, t_v) -> ExactDiagonal:
    """V^t: ``v(x) -> q^{x t_v} v(x)``."""
    return _diagonal(model, Basis.V, 2 * as_rational(t_v, "t_v") / model.N)


def op_Vstar(model: FiniteModel, t_v) -> ExactDiagonal:
    """V_*^t = (V^t)^N: ``v(x) -> e^{2 pi i x t_v} v(x)``."""
    return _diagonal(model, Basis.V, 2 * as_rational(t_v, "t_v"))


def apply_diagonal(model: FiniteModel, d: ExactDiagonal | FloatDiagonal, s: StateVector,
                   out_basis: Basis | str | None = None) -> StateVector:
    """Apply ``d`` to ``s``; the result is returned in ``out_basis`` (default: s's basis)."""
    if len(d) != model.N:
        raise DomainError(f"diagonal of size {len(d)} does not act on H_{model.N}")
    out_basis = s.basis if out_basis is None else Basis(out_basis)
    work = change_basis(model, s, d.basis)
    result = StateVector(d.basis, d.factors() * work.amplitudes)
    return change_basis(model, result, out_basis)


def apply_exact_to_u(d: ExactDiagonal, x: int) -> tuple[int, RationalPhase]:
    """Exact image of u(x) under ``d`` as (index, phase).

    Works for U-diagonals and for V-diagonals that are cyclic shifts.
    """
    if d.basis == Basis.U:
        return x, d.phases[x]
    k = d.cyclic_shift
    if k is None:
        raise DomainError("V-diagonal is not a cyclic shift on the u-basis")
    return (x - k) % len(d), phase_normalize(0, 1)


def commutator_phase(model: FiniteModel, t_u, w_v, starred: bool = False) -> RationalPhase:
    """The exact phase theta with ``V^w U^t = e^{i theta} U^t V^w``.

    Both orders are applied to every u(x) exactly; the phase must be the
    same for all x (otherwise :class:`InvariantBreach`).  Unstarred needs
    integer t_u and w_v; starred needs integer t_u and N*w_v.
    """
    t_u, w_v = as_rational(t_u, "t_u"), as_rational(w_v, "w_v")
    require_integer(t_u, "t_u")
    if starred:
        require_integer(model.N * w_v, "N*w_v")
        V = op_Vstar(model, w_v)
    else:
        require_integer(w_v, "w_v")
        V = op_V(model, w_v)
    U = op_U(model, t_u)

    theta = None
    for x in range(model.N):
        y1, p1 = apply_exact_to_u(U, x)
        y1, p2 = apply_exact_to_u(V, y1)
        vu = (y1, p1 + p2)
        y2, p1 = apply_exact_to_u(V, x)
        y2, p2 = apply_exact_to_u(U, y2)
        uv = (y2, p1 + p2)
        if vu[0] != uv[0]:
            raise InvariantBreach(f"V U and U V send u({x}) to different basis vectors")
        diff = vu[1] - uv[1]
        if theta is None:
            theta = diff
        elif diff != theta:
            raise InvariantBreach(f"commutator phase not constant: {theta} vs {diff} at x={x}")
    return theta


def expected_commutator_phase(model: FiniteModel, t_u, w_v, starred: bool = False) -> RationalPhase:
    """Closed form: ``q^{w_v t_u}`` unstarred, ``e^{2 pi i t_u w_v}`` starred."""
    prod = 2 * as_rational(t_u) * as_rational(w_v)
    return RationalPhase.of(prod if starred else prod / model.N)


def dense_matrix(model: FiniteModel, d: ExactDiagonal | FloatDiagonal) -> np.ndarray:
    """Matrix of ``d`` in u-coordinates."""
    if d.basis == Basis.U:
        return np.diag(d.factors())
    F = np.array([basis_vector(model, Basis.V, x).amplitudes for x in range(model.N)]).T
    return F @ np.diag(d.factors()) @ F.conj().T
