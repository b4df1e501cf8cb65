"""Evaluate a quantity along a divisibility chain of N and look for stabilisation.

This is the computational stand-in for "true in H_N for all sufficiently
divisible N": a report only says whether the last two values agree to the
tolerance, never that a limit exists.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .embedding import SampledFunction, embedded_norm_sq
from .errors import DomainError, PreconditionError
from .free import FreeParams, free_propagator
from .model import as_rational, commutator_phase, make_model
from .oscillator import OscParams, osc_propagator
from .weyl import WeylGrid, weyl_violation_report


def _free(N, a, x0=0, x1=0, variant="standard", method="full_sum"):
    p = FreeParams(int(a), x0, x1, N, variant)
    return free_propagator(p.model(), p, method).value


def _osc(N, a, omega_t, x0=0, x1=0, method="full_sum"):
    p = OscParams.unit_mode(a, float(omega_t))
    return osc_propagator(p.model(N), p, x0, x1, method).value


def _norm(N, a=1, family="polynomial", coeffs=(0, 1), n=0, center=0.5, width=0.1):
    if family == "polynomial":
        f = SampledFunction.polynomial(coeffs, a, N)
    elif family == "mode":
        f = SampledFunction.mode(int(n), a, N)
    elif family == "gaussian":
        f = SampledFunction.gaussian(center, width, a, N)
    else:
        raise DomainError(f"unknown function family {family!r}")
    return embedded_norm_sq(make_model(N, a), f)


def _commutator(N, t_u, w_v, starred=False, a=1):
    return commutator_phase(make_model(N, a), t_u, w_v, starred).to_complex()


def _weyl(N, a=1, hbar=1, s=1.0, t="1/2"):
    return float(weyl_violation_report(WeylGrid(a, N, hbar), s, as_rational(t)).fraction)


QUANTITIES: dict[str, Callable] = {
    "free_propagator": _free,
    "osc_propagator": _osc,
    "embedded_norm_sq": _norm,
    "commutator_phase": _commutator,
    "weyl_violation": _weyl,
}


@dataclass(frozen=True)
class SweepSpec:
    quantity: str
    chain: tuple[int, ...]
    tolerance: float = 1e-12
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(int(n) for n in self.chain))

    def validate(self) -> "SweepSpec":
        if self.quantity not in QUANTITIES:
            raise DomainError(f"unknown quantity {self.quantity!r}; known: {sorted(QUANTITIES)}")
        if not self.chain:
            raise DomainError("chain must contain at least one N")
        for lo, hi in zip(self.chain, self.chain[1:]):
            if hi <= lo:
                raise DomainError(f"chain must be strictly increasing ({lo} then {hi})")
            if hi % lo:
                raise DomainError(f"chain must be a divisibility chain ({lo} does not divide {hi})")
        if self.tolerance < 0:
            raise DomainError("tolerance must be non-negative")
        return self

    @classmethod
    def from_json(cls, text: str) -> "SweepSpec":
        d = json.loads(text)
        missing = {"quantity", "chain"} - set(d)
        if missing:
            raise DomainError(f"sweep spec missing keys {sorted(missing)}")
        return cls(d["quantity"], d["chain"], float(d.get("tolerance", 1e-12)), dict(d.get("params", {})))


@dataclass(frozen=True)
class SweepReport:
    quantity: str
    chain: tuple[int, ...]
    values: tuple[complex, ...]
    deviations: tuple[float, ...]  # |value[i] - value[i-1]|, one shorter than chain
    tolerance: float
    stabilized: bool
    stabilized_at: int | None

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "chain": list(self.chain),
            "values": [{"re": v.real, "im": v.imag} for v in self.values],
            "deviations": list(self.deviations),
            "tolerance": self.tolerance,
            "stabilized": self.stabilized,
            "stabilized_at": self.stabilized_at,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "value_re", "value_im", "deviation"])
        for i, (N, v) in enumerate(zip(self.chain, self.values)):
            w.writerow([N, repr(v.real), repr(v.imag), repr(self.deviations[i - 1]) if i else ""])
        return buf.getvalue()


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepReport:
    spec.validate()
    fn = QUANTITIES[spec.quantity]

    def evaluate(N):
        try:
            return complex(fn(N, **spec.params))
        except PreconditionError as exc:
            raise type(exc)(f"at N={N}: {exc}") from exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = tuple(pool.map(evaluate, spec.chain))
    else:
        values = tuple(evaluate(N) for N in spec.chain)
    devs = tuple(abs(v - u) for u, v in zip(values, values[1:]))
    stabilized = len(values) == 1 or devs[-1] < spec.tolerance
    at = None
    if stabilized:
        i = len(devs)
        while i > 0 and devs[i - 1] < spec.tolerance:
            i -= 1
        at = spec.chain[i]
    return SweepReport(spec.quantity, spec.chain, values, devs, spec.tolerance, stabilized, at)
