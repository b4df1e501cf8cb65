import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finite_qm.embedding import SampledFunction
from finite_qm.errors import DomainError, GridError
from finite_qm.weyl import (WeylGrid, commutator_ratios, translate, weyl_commutator, weyl_commutator_formula,
                            weyl_violation_report, wraparound_shift)


def test_translate_examples():
    g = WeylGrid(1, 4)
    f = SampledFunction(1, 4, [1, 2, 3, 4])
    np.testing.assert_array_equal(translate(g, 0, f).samples, f.samples)
    np.testing.assert_array_equal(translate(g, Fraction(1, 2), f).samples, [3, 4, 1, 2])


def test_off_grid_shift():
    with pytest.raises(GridError, match="nearest admissible t is 1/4"):
        translate(WeylGrid(1, 4), Fraction(3, 10), SampledFunction(1, 4, [1, 2, 3, 4]))


def test_float_t_snaps_onto_grid():
    assert wraparound_shift(WeylGrid(1, 4), 0.25).steps == 1


@given(st.integers(2, 64), st.integers(-8, 8), st.integers(-200, 200))
def test_translate_on_modes_is_eigen(N, n, steps):
    if 2 * abs(n) >= N:
        return
    a, hbar = Fraction(3), Fraction(1, 2)
    g = WeylGrid(a, N, hbar)
    t = Fraction(steps) * a / (hbar * N)
    f = SampledFunction.mode(n, a, N)
    out = translate(g, t, f)
    factor = cmath.exp(2j * cmath.pi * n * float(t * hbar / a))
    assert np.max(np.abs(out.samples - factor * f.samples)) <= 1e-12
    assert np.linalg.norm(out.samples) == pytest.approx(np.linalg.norm(f.samples), rel=1e-15)


def test_m_values():
    sh = wraparound_shift(WeylGrid(1, 8), Fraction(3, 4))
    assert [sh.m_of(k) for k in range(8)] == [0, 0, 1, 1, 1, 1, 1, 1]
    sh = wraparound_shift(WeylGrid(1, 8), Fraction(-1, 4))
    assert [sh.m_of(k) for k in range(8)] == [-1, -1, 0, 0, 0, 0, 0, 0]


def test_commutator_examples():
    g = WeylGrid(1, 8)
    s = 0.9
    # no wrap at x = 0
    assert weyl_commutator(g, s, Fraction(1, 4), 0) == pytest.approx(cmath.exp(1j * s / 4), abs=1e-14)
    # x = 1/2, t hbar = 3/4 -> m = 1
    got = weyl_commutator(g, s, Fraction(3, 4), 4)
    assert got == pytest.approx(cmath.exp(1j * s * 0.75 - 1j * s), abs=1e-14)
    assert weyl_commutator(g, 0.0, Fraction(3, 4), 5) == pytest.approx(1, abs=1e-15)


@settings(deadline=None)
@given(st.integers(2, 40), st.floats(-5, 5), st.integers(-100, 100), st.integers(0, 2**31))
def test_commutator_formula_random_f(N, s, steps, seed):
    g = WeylGrid(Fraction(7, 3), N, Fraction(2))
    t = Fraction(steps) * g.a / (g.hbar * N)
    rng = np.random.default_rng(seed)
    f = SampledFunction(g.a, N, rng.uniform(0.5, 2, N) * np.exp(1j * rng.uniform(0, 6.3, N)))
    ratios = commutator_ratios(g, s, t, f)
    for k in range(N):
        assert abs(ratios[k] - weyl_commutator_formula(g, s, t, k)) <= 1e-12


def test_vanishing_probe():
    f = SampledFunction(1, 4, [1, 0, 1, 1])
    with pytest.raises(DomainError):
        weyl_commutator(WeylGrid(1, 4), 1.0, Fraction(1, 4), 0, f)


@pytest.mark.parametrize("shift_steps,expected", [(0, Fraction(0)), (32, Fraction(1, 2)), (63, Fraction(63, 64)),
                                                  (1, Fraction(1, 64))])
def test_violation_fraction(shift_steps, expected):
    g = WeylGrid(1, 64)
    rep = weyl_violation_report(g, 0.7, Fraction(shift_steps, 64))
    assert rep.fraction == expected
    assert rep.max_formula_dev <= 1e-12
