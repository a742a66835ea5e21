import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tklab import instances
from tklab.blaschke import BlaschkeProduct
from tklab.errors import CircleSingularity, TrivialKernel
from tklab.kernels import multiply_subspace, same_subspace, toeplitz_kernel
from tklab.ratfun import RatFun, circle_points, max_circle_diff
from tklab.symbols import (
    ToeplitzSymbol,
    kernel_included_symbolic,
    kernels_equal_symbolic,
    symbol_compose,
    symbols_equivalent,
    wiener_hopf,
    winding_number,
)

B = BlaschkeProduct([-0.5])
CONJ_Z = ToeplitzSymbol.conj_of(RatFun.z(1))


def _on_circle(s, n=64):
    return s(circle_points(n, 0.37))


def test_conj_z_times_z_is_constant():
    s = CONJ_Z * ToeplitzSymbol.analytic(RatFun.z(1))
    assert s.power == 0 and s.anti.is_constant and s.ana.is_constant
    assert np.allclose(_on_circle(s), 1.0)


def test_squaring_conj_b():
    s = ToeplitzSymbol.conj_of(B) * ToeplitzSymbol.conj_of(B)
    assert np.allclose(_on_circle(s), np.conj(B(circle_points(64, 0.37)) ** 2))


def test_realize_agrees_with_symbol():
    s = ToeplitzSymbol(RatFun([1, 0.4j], [1, -0.3]), RatFun([2, 1]), -2)
    z = circle_points(64, 0.37)
    assert np.allclose(s.realize()(z), s(z))


def test_circle_singularity_rejected():
    with pytest.raises(CircleSingularity):
        ToeplitzSymbol.analytic(RatFun([-1, 1]))


def test_compose_examples():
    z2 = BlaschkeProduct.z_power(2)
    got = symbol_compose(CONJ_Z, z2)
    assert np.allclose(_on_circle(got), np.conj(circle_points(64, 0.37) ** 2))
    s = CONJ_Z * ToeplitzSymbol.analytic(B)
    got = symbol_compose(s, z2)
    zeta = circle_points(64, 0.37)
    assert np.allclose(got(zeta), np.conj(zeta ** 2) * B(zeta ** 2))
    psi = BlaschkeProduct.automorphism(0.3 + 0.2j)
    theta = BlaschkeProduct([0.1, -0.6j])
    got = symbol_compose(ToeplitzSymbol.conj_of(theta), psi)
    assert np.allclose(got(zeta), np.conj(theta(psi(zeta))))


def test_winding_examples():
    assert winding_number(CONJ_Z) == -1
    assert winding_number(ToeplitzSymbol(RatFun.z(3), B.as_ratfun() ** 2)) == -1
    assert winding_number(ToeplitzSymbol.conj_of(RatFun.z(3) * B.as_ratfun() ** 2)) == -5
    assert winding_number(ToeplitzSymbol.analytic(BlaschkeProduct([0.2, 0.3]))) == 2


def test_wiener_hopf_examples():
    theta = BlaschkeProduct([0.2, -0.5j, 0.6])
    wh = wiener_hopf(ToeplitzSymbol.conj_of(theta))
    assert wh.kappa == -3
    z = circle_points(64, 0.11)
    recon = wh.sigma_minus(z) * z ** wh.kappa * wh.sigma_plus(z)
    assert np.allclose(recon, np.conj(theta(z)))
    assert wh.sigma_plus.poles().degree == 0
    assert wh.sigma_plus.zeros().same_as(RatFun(theta.as_ratfun().den).zeros())

    wh = wiener_hopf(ToeplitzSymbol.z_power(1))
    assert wh.kappa == 1
    assert max_circle_diff(wh.sigma_plus, RatFun.const(1.0)) < 1e-15

    s = ToeplitzSymbol.analytic(RatFun([2, 1], [1, 2]))
    wh = wiener_hopf(s)
    assert wh.kappa == -1
    assert wh.sigma_plus.zeros().same_as(RatFun([2, 1]).zeros())


def test_kernels_equal_examples():
    g = ToeplitzSymbol(RatFun.z(1) * RatFun([4, 4, 1]), RatFun(1.0, [4, 4, 1]))
    h = ToeplitzSymbol(RatFun.z(3), B.as_ratfun() ** 2)
    assert kernels_equal_symbolic(g, h)
    assert not kernels_equal_symbolic(CONJ_Z, ToeplitzSymbol.conj_of(RatFun.z(2)))
    s = ToeplitzSymbol(RatFun([1, 0.3]), RatFun([2, 1]), -2)
    assert kernels_equal_symbolic(s, s * 3.5j)


def test_kernel_inclusion_examples():
    z2 = ToeplitzSymbol.conj_of(RatFun.z(2))
    assert not kernel_included_symbolic(z2, CONJ_Z)
    assert kernel_included_symbolic(CONJ_Z, z2)
    assert not kernel_included_symbolic(ToeplitzSymbol.conj_of(B), CONJ_Z)
    with pytest.raises(TrivialKernel):
        kernel_included_symbolic(ToeplitzSymbol.z_power(1), CONJ_Z)


def test_symbols_equivalent_examples():
    s = ToeplitzSymbol(RatFun([1, 0.3]), RatFun([2, 1]), -2)
    w = symbols_equivalent(s, s)
    assert w is not None
    assert np.allclose(w.h_plus(circle_points(16)) * w.h_minus(circle_points(16)), 1.0)
    assert symbols_equivalent(CONJ_Z, ToeplitzSymbol.z_power(1)) is None


def test_equivalence_under_crofoot_shift():
    theta = BlaschkeProduct([0.3, -0.5j]).as_ratfun()
    a = 0.2 + 0.1j
    beta = (theta - a) / (1 - np.conj(a) * theta)
    g1, g2 = ToeplitzSymbol.conj_of(theta), ToeplitzSymbol.conj_of(beta)
    w = symbols_equivalent(g1, g2)
    z = circle_points(32, 0.3)
    assert np.allclose(g1(z), w.h_minus(z) * g2(z) * w.h_plus(z))
    # h_plus is a constant multiple of 1 + conj(a) beta, and h_minus of its reciprocal partner
    ratio = w.h_plus(z) / (1 + np.conj(a) * beta(z))
    assert np.ptp(np.abs(ratio)) < 1e-12 and np.ptp(np.angle(ratio)) < 1e-12
    assert not np.allclose(g1(z), (1 + a * np.conj(beta(z))) * g2(z) / (1 + np.conj(a) * beta(z)))
    k1, k2 = toeplitz_kernel(g1), toeplitz_kernel(g2)
    assert same_subspace(k1, multiply_subspace(1 / w.h_plus, k2))


# --- properties -------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_winding_matches_argument_principle_and_reconstruction(seed):
    s = instances.symbol(np.random.default_rng(seed))
    kappa = winding_number(s)
    z = circle_points(2048)
    steps = np.angle(np.roll(s(z), -1) / s(z))
    assert round(np.sum(steps) / (2 * np.pi)) == kappa
    wh = wiener_hopf(s)
    assert wh.kappa == kappa
    zz = circle_points(64, 0.21)
    assert np.allclose(wh.sigma_minus(zz) * zz ** kappa * wh.sigma_plus(zz), s(zz), rtol=1e-8, atol=1e-10)
    assert abs(wh.sigma_minus.value_at_infinity() - 1) < 1e-9
    assert all(abs(loc) > 1 for loc, _ in wh.sigma_plus.zeros())
    assert all(abs(loc) > 1 for loc, _ in wh.sigma_plus.poles())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_winding_is_additive(seed):
    rng = np.random.default_rng(seed)
    a, b = instances.symbol(rng, 3, 2), instances.symbol(rng, 3, 2)
    assert winding_number(a * b) == winding_number(a) + winding_number(b)
    assert winding_number(a.adjoint()) == -winding_number(a)
