import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finite_qm.embedding import (NStabilityWarning, SampledFunction, embed, embedded_norm_sq, op_expP2, op_expQ2)
from finite_qm.errors import DomainError
from finite_qm.model import RationalPhase, basis_vector, inner, make_model
from finite_qm.oscillator import OscParams, osc_coefficients


def test_mode_examples():
    N = 16
    m = make_model(N, 3)
    np.testing.assert_array_equal(embed(m, SampledFunction.mode(0, 3, N)).amplitudes,
                                  basis_vector(m, "V", 0).amplitudes)
    np.testing.assert_array_equal(embed(m, SampledFunction.mode(-1, 3, N)).amplitudes,
                                  basis_vector(m, "V", N - 1).amplitudes)
    zero = SampledFunction(3, N, np.zeros(N))
    assert not embed(m, zero).amplitudes.any()
    assert embedded_norm_sq(m, zero) == 0


@pytest.mark.parametrize("N", [16, 256])
def test_modes_land_on_momentum_basis(N):
    m = make_model(N, Fraction(5, 2))
    for n in range(-(N // 2) + 1, N // 2):
        f = SampledFunction.mode(n, m.a, N)
        np.testing.assert_array_equal(embed(m, f).amplitudes, basis_vector(m, "V", n % N).amplitudes)
        # the generic sample path agrees to rounding
        plain = SampledFunction(f.a, N, f.samples)
        np.testing.assert_allclose(embed(m, plain).amplitudes, basis_vector(m, "V", n % N).amplitudes, atol=1e-15)


def test_aliasing_rejected():
    m = make_model(8, 1)
    with pytest.raises(DomainError, match="alias"):
        embed(m, SampledFunction.mode(4, 1, 8))


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        embed(make_model(8, 1), SampledFunction.mode(0, 1, 16))
    with pytest.raises(DomainError):
        embed(make_model(8, 1), SampledFunction.mode(0, 2, 8))


@given(st.integers(3, 40), st.integers(-19, 19), st.integers(-19, 19))
def test_mode_inner_products(N, i, j):
    if 2 * max(abs(i), abs(j)) >= N:
        return
    m = make_model(N, 2)
    got = inner(embed(m, SampledFunction.mode(i, 2, N)), embed(m, SampledFunction.mode(j, 2, N)))
    assert abs(got - (i == j)) <= 1e-12 * N
    assert embedded_norm_sq(m, SampledFunction.mode(i, 2, N)) == pytest.approx(1, abs=1e-14)


def test_riemann_example():
    N = 1000
    val = embedded_norm_sq(make_model(N, 1), SampledFunction.polynomial((0, 1), 1, N))
    exact = Fraction((N - 1) * (2 * N - 1), 6 * N * N)  # (1/N) sum (k/N)^2
    assert val == pytest.approx(float(exact), rel=1e-14)
    assert val == pytest.approx(0.33283, abs=1e-5)


def _norm_error_bound(coeffs, a, N):
    # left Riemann sum error <= a^2 max|g'|/(2N), g = |f|^2 for real coefficients
    P = np.polynomial.Polynomial(coeffs)
    g = P * P
    xs = np.linspace(0, a, 20001)
    return a * a * np.max(np.abs(g.deriv()(xs))) / (2 * N), float(g.integ()(a) - g.integ()(0))


@settings(deadline=None, max_examples=25)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.sampled_from([1, 2, 3]))
def test_riemann_convergence_for_cubics(coeffs, a):
    prev = None
    for N in (100, 1000, 10000):
        bound, exact = _norm_error_bound(coeffs, a, N)
        err = abs(embedded_norm_sq(make_model(N, a), SampledFunction.polynomial(coeffs, a, N)) - exact)
        assert err <= bound + 1e-9
        if prev is not None and prev > 1e-6:
            # roughly first order: tenfold N gives about a tenth of the error
            assert err <= prev / 5
        prev = err


def test_expQ2_examples():
    N, a = 8, 2
    m = make_model(N, a)
    assert np.all(op_expQ2(m, 0.0).factors() == 1)
    d = op_expQ2(m, math.pi * (N / a) ** 2)
    assert d.factors()[1] == pytest.approx(-1, abs=1e-13)
    assert d.factors()[0] == 1
    exact = op_expQ2(m, alpha_over_pi=(Fraction(N, a)) ** 2)
    assert exact.phase_at(1) == RationalPhase(1, 1)
    np.testing.assert_allclose(exact.factors(), d.factors(), atol=1e-12)


def test_expP2_examples():
    m = make_model(8, 2, 6)  # b = 3
    with pytest.warns(NStabilityWarning):
        assert np.all(op_expP2(m, 0.0).factors() == 1)
    with pytest.warns(NStabilityWarning):
        assert op_expP2(m, math.pi / 9).factors()[1] == pytest.approx(-1, abs=1e-14)
    assert op_expP2(m, alpha_b2_over_pi=2).is_identity()
    assert op_expP2(m, alpha_b2_over_pi=1).phase_at(1) == RationalPhase(1, 1)


def test_expP2_negative_momenta_wrap_exactly():
    a, N = 4, 32
    m = make_model(N, a)
    B = op_expP2(m, alpha_b2_over_pi=Fraction(-1, a))
    for k in range(1, N // 2):
        # v(N - k) carries momentum -k: the phase for -k must match
        assert B.phase_at(N - k) == RationalPhase.of(Fraction(-1, a) * k * k)


def test_oscillator_diagonals_consistent():
    p = OscParams.unit_mode(4, 0.9)
    m = p.model(16)
    alpha, beta = osc_coefficients(p)
    A = op_expQ2(m, alpha)
    k = np.arange(16)
    np.testing.assert_allclose(A.angles, alpha * (k * 4 / 16) ** 2)
    with pytest.warns(NStabilityWarning):
        Bf = op_expP2(m, beta)
    Be = op_expP2(m, alpha_b2_over_pi=Fraction(-1, 4))
    np.testing.assert_allclose(Bf.factors(), Be.factors(), atol=1e-12)


def test_csv_roundtrip(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("index,re,im\n0,1.0,0.0\n1,0.5,-0.5\n2,0,2\n3,1,1\n")
    f = SampledFunction.from_csv(path, 1)
    assert f.N == 4 and f.samples[1] == 0.5 - 0.5j
    path.write_text("0,1,0\n2,1,0\n")
    with pytest.raises(DomainError):
        SampledFunction.from_csv(path, 1)
