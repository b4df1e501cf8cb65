"""Finite-dimensional models of a quantum particle: DFT bases, exact Gauss-sum propagators."""

__version__ = "0.1.0"

from .errors import DivisibilityError, DomainError, GridError, InvariantBreach, PreconditionError, SingularityError
from .phase import RationalPhase, GaussSumParams, phase_normalize, phase_to_complex, gauss_sum_direct, gauss_sum_reciprocity
from .model import Basis, FiniteModel, StateVector, ExactDiagonal, FloatDiagonal, make_model, basis_vector, change_basis
from .free import FreeParams, PropagatorResult, free_propagator, physics_reference, space_size
from .oscillator import OscParams, osc_propagator, mehler_reference
