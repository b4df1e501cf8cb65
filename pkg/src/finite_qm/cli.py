"""Command-line front end.

Every command prints one JSON object (schema_version 1).  Exit codes:
0 ok, 2 validation failure, 3 mathematical singularity, 4 invariant breach.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import DomainError, InvariantBreach, PreconditionError, SingularityError
from .free import ELECTRON_MASS, METHODS as FREE_METHODS, PLANCK_H, FreeParams, free_propagator, space_size
from .oscillator import METHODS as OSC_METHODS, OscParams, mehler_reference, osc_coefficients, osc_propagator
from .phase import GaussSumParams, gauss_sum_direct, gauss_sum_reciprocity
from .sweep import SweepSpec, run_sweep
from .weyl import WeylGrid, weyl_violation_report

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VALIDATION, EXIT_SINGULAR, EXIT_INVARIANT = 0, 2, 3, 4

PARTICLES = {"electron": ELECTRON_MASS}
LENGTH_UNITS = {"m": 1.0, "cm": 1e-2, "mm": 1e-3}

_ANGLE = re.compile(r"^\s*(?P<num>[-+]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(?P<den>\d*\.?\d+))?\s*$")


class Snapper:
    """Parses numeric flags and records every decimal -> exact conversion."""

    def __init__(self):
        self.inputs = {}

    def rational(self, name, raw):
        if raw is None:
            return None
        try:
            value = Fraction(str(raw).strip())
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"--{name}: cannot read {raw!r} as a rational number")
        self.inputs[name] = {"raw": str(raw), "snapped": str(value)}
        return value

    def real(self, name, raw):
        if raw is None:
            return None
        value = parse_angle(raw)
        self.inputs[name] = value if str(raw).strip() == repr(value) else {"raw": str(raw), "value": value}
        return value

    def plain(self, name, value):
        self.inputs[name] = value
        return value


def parse_angle(raw) -> float:
    """A float, or an expression like ``pi/2``, ``3pi/4``, ``0.5*pi``."""
    text = str(raw).strip()
    m = _ANGLE.match(text)
    if m:
        num = m.group("num")
        coef = float(num) if num not in ("", "+", "-") else (-1.0 if num == "-" else 1.0)
        den = float(m.group("den")) if m.group("den") else 1.0
        return coef * math.pi / den
    try:
        value = float(text)
    except ValueError:
        raise DomainError(f"cannot read {raw!r} as a number")
    if not math.isfinite(value):
        raise DomainError(f"{raw!r} is not finite")
    return value


def cplx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _result(command, snap, outputs, deviations=None, warnings=()):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": snap.inputs,
        "outputs": outputs,
        "deviations": deviations or {},
        "warnings": list(warnings),
    }


def _cross_deviation(values: dict) -> float:
    vals = list(values.values())
    return max((abs(u - v) for u in vals for v in vals), default=0.0)


def cmd_free(args) -> dict:
    snap = Snapper()
    warnings = []
    if args.mass is not None or args.particle is not None:
        mass = PARTICLES[args.particle] if args.particle else args.mass
        if args.time is None:
            raise DomainError("physical mode needs --time")
        unit = LENGTH_UNITS.get(args.unit, None) if args.unit_length is None else args.unit_length
        a_float, _ = space_size(mass, args.time, args.h, unit)
        snap.plain("mode", "physical")
        snap.plain("mass", mass)
        snap.plain("time", args.time)
        snap.plain("h", args.h)
        snap.plain("length_unit_m", unit)
        if a_float == 0:
            raise SingularityError("t = 0: a = 0, the space is a single point")
        a = max(2, 2 * round(a_float / 2))
        snap.inputs["a"] = {"raw": repr(a_float), "snapped": str(a)}
        if a != a_float:
            warnings.append(f"a = h t/(m unit^2) = {a_float!r} snapped to the even integer {a} "
                            f"(relative change {abs(a - a_float) / a_float:.3e})")
    else:
        if args.a is None:
            raise DomainError("give --a (dimensionless mode) or --mass/--particle with --time (physical mode)")
        snap.plain("mode", "dimensionless")
        a = snap.rational("a", args.a)
        if a.denominator != 1:
            raise PreconditionError(f"a must be an even integer, got {a}")
        a = a.numerator
        if a == 0:
            raise SingularityError("a = 0 (t = 0): the free propagator is singular")
        if a % 2 or a < 0:
            raise PreconditionError(f"a must be even (and positive), got {a}")
    x0 = snap.rational("x0", args.x0)
    x1 = snap.rational("x1", args.x1)
    if (x1 - x0).denominator != 1:
        raise PreconditionError(f"x1 - x0 must be an integer, got {x1 - x0}")
    probe = FreeParams(a, x0, x1, a, args.variant)
    n_min = probe.min_admissible_N()
    N = n_min if args.N is None else args.N
    snap.plain("N", N)
    snap.plain("variant", args.variant)
    snap.plain("method", args.method)
    params = FreeParams(a, x0, x1, N, args.variant)
    try:
        params.validate()
    except PreconditionError as exc:
        raise type(exc)(f"{exc}; minimal admissible N is {n_min}") from exc
    model = params.model()
    methods = FREE_METHODS if args.method == "all" else (args.method,)
    results = {m: free_propagator(model, params, m) for m in methods}
    value = results[methods[0]].value if len(methods) == 1 else results["closed_form"].value
    ref = results[methods[0]].reference
    outputs = {
        "value": cplx(value),
        "modulus": abs(value),
        "methods": {m: cplx(r.value) for m, r in results.items()},
        "reference": cplx(ref),
        "minimal_admissible_N": n_min,
    }
    deviations = {
        "max_cross_method": _cross_deviation({m: r.value for m, r in results.items()}),
        "vs_reference": {m: r.abs_dev for m, r in results.items()},
    }
    return _result("free", snap, outputs, deviations, warnings)


def cmd_oscillator(args) -> dict:
    snap = Snapper()
    warnings = []
    if args.a is not None:
        if args.omega_t is None:
            raise DomainError("unit mode needs --a and --omega-t")
        a_in = snap.rational("a", args.a)
        p = OscParams.unit_mode(a_in, snap.real("omega_t", args.omega_t))
        snap.plain("mode", "unit")
    else:
        missing = [n for n in ("m", "omega", "t") if getattr(args, n) is None]
        if missing:
            raise DomainError(f"give --a/--omega-t, or all of --m --omega --t (missing {missing})")
        p = OscParams(snap.real("m", args.m), snap.real("omega", args.omega), snap.real("t", args.t),
                      snap.real("hbar", args.hbar))
        snap.plain("mode", "physical")
    p.check_singular()
    alpha, beta = osc_coefficients(p)
    x0 = snap.rational("x0", args.x0)
    x1 = snap.rational("x1", args.x1)
    ref = mehler_reference(p, float(x0), float(x1))
    outputs = {"alpha": alpha, "beta": beta, "a": p.a}
    try:
        a = p.even_a()
    except PreconditionError as exc:
        if args.method not in ("all", "mehler"):
            raise
        warnings.append(f"{exc}; only the continuum (Mehler) kernel is available")
        snap.plain("method", args.method)
        outputs.update({"value": cplx(ref), "modulus": abs(ref), "phase": math.atan2(ref.imag, ref.real),
                        "methods": {}, "reference": cplx(ref)})
        return _result("oscillator", snap, outputs, {}, warnings)
    n_min = math.lcm(a, (x0 / a).denominator, (x1 / a).denominator)
    N = n_min if args.N is None else args.N
    snap.plain("N", N)
    snap.plain("method", args.method)
    if (x1 - x0).denominator != 1:
        raise PreconditionError(f"x1 - x0 must be an integer, got {x1 - x0}")
    if N % n_min:
        raise PreconditionError(f"N = {N} is not admissible (needs a | N and N x/a integral); minimal admissible N is {n_min}")
    model = p.model(N)
    if args.method == "mehler":
        methods = ()
    else:
        methods = OSC_METHODS if args.method == "all" else (args.method,)
    results = {m: osc_propagator(model, p, x0, x1, m) for m in methods}
    value = results["closed_form"].value if "closed_form" in results else (
        results[methods[0]].value if methods else ref)
    outputs.update({
        "value": cplx(value),
        "modulus": abs(value),
        "phase": math.atan2(value.imag, value.real),
        "methods": {m: cplx(r.value) for m, r in results.items()},
        "reference": cplx(ref),
        "minimal_admissible_N": n_min,
    })
    deviations = {
        "max_cross_method": _cross_deviation({m: r.value for m, r in results.items()}),
        "vs_reference": {m: r.abs_dev for m, r in results.items()},
    }
    return _result("oscillator", snap, outputs, deviations, warnings)


def cmd_gauss(args) -> dict:
    snap = Snapper()
    for k in ("c", "d", "g"):
        snap.plain(k, getattr(args, k))
    snap.plain("check", args.check)
    p = GaussSumParams(args.c, args.d, args.g)
    direct = gauss_sum_direct(p)
    outputs = {"value": cplx(direct), "direct": cplx(direct)}
    deviations = {}
    if args.check:
        recip = gauss_sum_reciprocity(p)
        outputs["reciprocity"] = cplx(recip)
        deviations["direct_vs_reciprocity"] = abs(recip - direct)
    return _result("gauss", snap, outputs, deviations)


def cmd_space_size(args) -> dict:
    snap = Snapper()
    mass = PARTICLES[args.particle] if args.mass is None else args.mass
    unit = LENGTH_UNITS[args.unit] if args.unit_length is None else args.unit_length
    snap.plain("mass", mass)
    snap.plain("time", args.time)
    snap.plain("h", args.h)
    snap.plain("length_unit_m", unit)
    a, length = space_size(mass, args.time, args.h, unit)
    warnings = ["t = 0: the space consists of one point"] if args.time == 0 else []
    return _result("space-size", snap, {"a": a, "length_m": length}, {}, warnings)


def cmd_weyl(args) -> dict:
    snap = Snapper()
    grid = WeylGrid(snap.rational("a", args.a), args.N, snap.rational("hbar", args.hbar))
    snap.plain("N", args.N)
    s = snap.real("s", args.s)
    t = snap.rational("t", args.t)
    rep = weyl_violation_report(grid, s, t)
    if rep.max_formula_dev > 1e-9:
        raise InvariantBreach(f"measured commutator deviates from the wraparound formula by {rep.max_formula_dev}")
    return _result("weyl", snap, rep.as_dict(), {"max_formula_deviation": rep.max_formula_dev})


def cmd_sweep(args) -> dict:
    snap = Snapper()
    snap.plain("spec_file", str(args.spec))
    try:
        text = Path(args.spec).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read sweep spec: {exc}")
    try:
        spec = SweepSpec.from_json(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"sweep spec is not valid JSON: {exc}")
    snap.plain("spec", {"quantity": spec.quantity, "params": spec.params, "chain": list(spec.chain),
                        "tolerance": spec.tolerance})
    snap.plain("jobs", args.jobs)
    rep = run_sweep(spec, jobs=args.jobs)
    if args.csv == "-":
        sys.stdout.write(rep.to_csv())
    elif args.csv:
        Path(args.csv).write_text(rep.to_csv())
    return _result("sweep", snap, rep.as_dict(), {"successive": list(rep.deviations)})


def cmd_verify(args) -> dict:
    from .verify import run_all

    snap = Snapper()
    snap.plain("seed", args.seed)
    families = run_all(args.seed)
    passed = all(f["passed"] for f in families)
    out = _result("verify", snap, {"passed": passed, "families": families})
    if not passed:
        out["exit_code"] = EXIT_INVARIANT
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finite-qm", description=__doc__.splitlines()[0])
    ap.add_argument("--no-meta", action="store_true", help="omit the timestamp/version block (byte-stable output)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("free", help="free-particle propagator")
    p.add_argument("--a", help="even integer scaling a = h t/m (dimensionless mode)")
    p.add_argument("--x0", default="0")
    p.add_argument("--x1", default="0")
    p.add_argument("--N", type=int, help="dimension (default: minimal admissible)")
    p.add_argument("--variant", choices=["standard", "conjugate"], default="standard")
    p.add_argument("--method", choices=[*FREE_METHODS, "all"], default="all")
    p.add_argument("--particle", choices=sorted(PARTICLES))
    p.add_argument("--mass", type=float, help="kg (physical mode)")
    p.add_argument("--time", type=float, help="s (physical mode)")
    p.add_argument("--h", type=float, default=PLANCK_H)
    p.add_argument("--unit", choices=sorted(LENGTH_UNITS), default="cm")
    p.add_argument("--unit-length", type=float, help="metres per length unit (overrides --unit)")
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("oscillator", help="harmonic-oscillator propagator")
    p.add_argument("--a", help="even integer scaling (unit mode, with --omega-t)")
    p.add_argument("--omega-t", help="omega*t, e.g. pi/4")
    p.add_argument("--m")
    p.add_argument("--omega")
    p.add_argument("--t")
    p.add_argument("--hbar", default="1")
    p.add_argument("--x0", default="0")
    p.add_argument("--x1", default="0")
    p.add_argument("--N", type=int)
    p.add_argument("--method", choices=[*OSC_METHODS, "mehler", "all"], default="all")
    p.set_defaults(func=cmd_oscillator)

    p = sub.add_parser("gauss", help="quadratic Gauss sum")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--check", action="store_true", help="also evaluate by reciprocity and compare")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("space-size", help="length of the model space")
    p.add_argument("--particle", choices=sorted(PARTICLES), default="electron")
    p.add_argument("--mass", type=float)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--h", type=float, default=PLANCK_H)
    p.add_argument("--unit", choices=sorted(LENGTH_UNITS), default="m")
    p.add_argument("--unit-length", type=float)
    p.set_defaults(func=cmd_space_size)

    p = sub.add_parser("weyl", help="Weyl-relation failure report")
    p.add_argument("--a", default="1")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--hbar", default="1")
    p.add_argument("--s", default="1")
    p.add_argument("--t", required=True, help="rational; t*hbar*N/a must be an integer")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("sweep", help="evaluate a quantity along a divisibility chain")
    p.add_argument("spec", help="JSON file {quantity, params, chain, tolerance}")
    p.add_argument("--csv", help="write CSV here ('-' for stdout, replacing the JSON)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the property families")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def _error(command, kind, exc):
    return {"schema_version": SCHEMA_VERSION, "command": command, "error": {"kind": kind, "message": str(exc)}}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        out = args.func(args)
        code = out.pop("exit_code", EXIT_OK)
    except SingularityError as exc:
        out, code = _error(args.command, "singularity", exc), EXIT_SINGULAR
    except (DomainError, PreconditionError) as exc:
        out, code = _error(args.command, "validation", exc), EXIT_VALIDATION
    except InvariantBreach as exc:
        out, code = _error(args.command, "invariant", exc), EXIT_INVARIANT
    if not args.no_meta:
        out["meta"] = {"version": __version__,
                       "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")}
    if not (args.command == "sweep" and getattr(args, "csv", None) == "-" and code == EXIT_OK):
        print(json.dumps(out, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
