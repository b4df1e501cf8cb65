"""Quick self-check of the property families, used by ``finite-qm verify``."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .embedding import SampledFunction, embed, embedded_norm_sq
from .free import ELECTRON_MASS, METHODS as FREE_METHODS, FreeParams, free_propagator, physics_reference, reduction_is_exact, space_size
from .model import (Basis, basis_vector, change_basis, commutator_phase, expected_commutator_phase, inner, make_model,
                    op_U, op_V)
from .oscillator import METHODS as OSC_METHODS, OscParams, osc_propagator
from .phase import GaussSumParams, gauss_sum_direct, gauss_sum_reciprocity
from .sweep import SweepSpec, run_sweep
from .weyl import WeylGrid, weyl_violation_report


def check_gauss(rng):
    worst = 0.0
    for _ in range(200):
        c = rng.choice([k for k in range(-20, 21) if k])
        g = rng.choice([k for k in range(-20, 21) if k])
        d = rng.randrange(-30, 31)
        if (c * g - d) % 2:
            d += 1
        p = GaussSumParams(c, d, g)
        worst = max(worst, abs(gauss_sum_reciprocity(p) - gauss_sum_direct(p)) / abs(g))
    return worst <= 1e-10, f"max |reciprocity - direct|/|g| = {worst:.2e}"


def check_bases(rng):
    N = 16
    m = make_model(N)
    worst = 0.0
    for _ in range(10):
        x = rng.randrange(N)
        s = basis_vector(m, Basis.U, x)
        back = change_basis(m, change_basis(m, s, Basis.V), Basis.U)
        worst = max(worst, float(np.max(np.abs(back.amplitudes - s.amplitudes))))
    gram = np.array([[inner(basis_vector(m, Basis.V, i), basis_vector(m, Basis.V, j)) for j in range(N)] for i in range(N)])
    worst = max(worst, float(np.max(np.abs(gram - np.eye(N)))))
    ok = op_U(m, 1).compose(op_U(m, 2)) == op_U(m, 3) and op_V(m, Fraction(1, 3)).compose(op_V(m, 1)) == op_V(m, Fraction(4, 3))
    return ok and worst <= 1e-12 * N, f"basis duality / group law, max dev {worst:.2e}"


def check_commutators(rng):
    for N in (6, 12):
        m = make_model(N)
        for t in range(N):
            for w in range(N):
                if commutator_phase(m, t, w) != expected_commutator_phase(m, t, w):
                    return False, f"unstarred law fails at N={N}, t_u={t}, w_v={w}"
                ws = Fraction(w, N)
                if commutator_phase(m, t, ws, starred=True) != expected_commutator_phase(m, t, ws, starred=True):
                    return False, f"starred law fails at N={N}, t_u={t}, w_v={ws}"
    return True, "exact commutator phases for N in (6, 12)"


def check_free(rng):
    worst = 0.0
    for a in (2, 4, 6):
        for d in range(a):
            for N in (a, 4 * a):
                p = FreeParams(a, 0, d, N)
                if not reduction_is_exact(a, d, N):
                    return False, f"reduction not exact at a={a}, delta={d}, N={N}"
                vals = [free_propagator(p.model(), p, meth).value for meth in FREE_METHODS]
                worst = max(worst, max(abs(v - vals[2]) for v in vals) / abs(vals[2]))
                cp = FreeParams(a, 0, d, N, "conjugate")
                worst = max(worst, abs(free_propagator(cp.model(), cp).value - vals[2].conjugate()))
    return worst <= 1e-9, f"free-particle methods + conjugacy, max rel dev {worst:.2e}"


def check_continuum(rng):
    worst = 0.0
    h = 2 * math.pi
    for _ in range(20):
        a = 2 * rng.randrange(1, 10)
        t = rng.uniform(0.1, 10)
        m = h * t / a
        d = rng.randrange(a)
        p = FreeParams(a, 0, d, a)
        worst = max(worst, abs(free_propagator(p.model(), p).value - physics_reference(m, t, 1.0, 0.0, float(d))))
    return worst <= 1e-12, f"closed form vs continuum kernel, max dev {worst:.2e}"


def check_oscillator(rng):
    worst = 0.0
    for wt in (math.pi / 6, math.pi / 4, math.pi / 2):
        for a in (2, 4, 8):
            p = OscParams.unit_mode(a, wt)
            model = p.model(8 * a)
            x0, x1 = Fraction(1, 2), Fraction(1, 2) + a // 2
            vals = [osc_propagator(model, p, x0, x1, meth) for meth in OSC_METHODS]
            worst = max(worst, max(r.rel_dev for r in vals))
    return worst <= 1e-8, f"oscillator methods vs Mehler kernel, max rel dev {worst:.2e}"


def check_embedding(rng):
    N = 32
    m = make_model(N)
    for n in range(-N // 2 + 1, N // 2):
        if not np.array_equal(embed(m, SampledFunction.mode(n, 1, N)).amplitudes,
                              basis_vector(m, Basis.V, n % N).amplitudes):
            return False, f"F_N(f_{n}) != v({n % N})"
    devs = [abs(embedded_norm_sq(make_model(N), SampledFunction.polynomial((0, 1), 1, N)) - 1 / 3) for N in (100, 1000)]
    return devs[0] < 2 / 100 and devs[1] < 2 / 1000, f"mode identification exact; Riemann devs {devs[0]:.2e}, {devs[1]:.2e}"


def check_weyl(rng):
    rep = weyl_violation_report(WeylGrid(1, 64), 0.7, Fraction(1, 2))
    return rep.fraction == Fraction(1, 2) and rep.max_formula_dev <= 1e-12, \
        f"violation fraction {rep.fraction}, formula dev {rep.max_formula_dev:.2e}"


def check_space_size(rng):
    a, length = space_size(ELECTRON_MASS, 1.0, length_unit=0.01)
    a_h, length_h = space_size(ELECTRON_MASS, 3600.0, length_unit=0.01)
    ok = abs(length / 0.0727 - 1) < 0.01 and abs(length_h / 262 - 1) < 0.01
    return ok, f"electron: {length * 100:.3f} cm after 1 s, {length_h:.1f} m after 1 h"


def check_sweep(rng):
    r = run_sweep(SweepSpec("free_propagator", (2, 8, 64), 1e-12, {"a": 2, "x1": 1}))
    s = run_sweep(SweepSpec("embedded_norm_sq", (100, 400, 1600), 1e-6))
    ok = r.stabilized_at == 2 and max(r.deviations) == 0 and s.deviations[1] < s.deviations[0]
    return ok, f"exact chain stabilised at N={r.stabilized_at}; Riemann deviations {s.deviations}"


FAMILIES = {
    "gauss_reciprocity": check_gauss,
    "basis_duality": check_bases,
    "commutator_laws": check_commutators,
    "free_particle": check_free,
    "continuum_match": check_continuum,
    "oscillator": check_oscillator,
    "embedding": check_embedding,
    "weyl_failure": check_weyl,
    "space_size": check_space_size,
    "sweep": check_sweep,
}


def run_all(seed: int = 0) -> list[dict]:
    rng = random.Random(seed)
    out = []
    for name, fn in FAMILIES.items():
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash counts as a failed family
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"family": name, "passed": bool(ok), "detail": detail})
    return out
