import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tklab import instances
from tklab.blaschke import BlaschkeProduct, H2Rational, blaschke_compose
from tklab.errors import HypothesisViolated, NotInKernel, RankLoss
from tklab.kernels import (
    Subspace,
    annihilates,
    apply_composition,
    backward_shift,
    canonical_maximal_vector,
    certify_minimal_model,
    coburn_check,
    coburn_dims,
    composition_image,
    composition_maps_into,
    crofoot_maximal_vector,
    hitt_decomposition,
    is_maximal_vector,
    is_nearly_sstar_invariant,
    is_subspace_of,
    lcm_minimal_kernel_family,
    membership,
    minimal_inner_multiple,
    minimal_kernel_of_composed,
    minimal_kernel_of_multiplied,
    minimal_kernel_of_vector,
    minimal_kernel_post_multiplied_composed,
    minimal_kernel_pre_multiplied_composed,
    minimal_model_containing_composition,
    minimal_model_weighted_post,
    minimal_model_weighted_pre,
    model_space,
    multiplied_kernel_exact,
    multiply_subspace,
    same_subspace,
    shifted_inner,
    subspace_relations,
    toeplitz_kernel,
    transport_maximal_vector,
)
from tklab.ratfun import RatFun, max_circle_diff, rat_compose
from tklab.symbols import EquivalenceWitness, ToeplitzSymbol, kernel_included_symbolic, kernels_equal_symbolic

Z = BlaschkeProduct.z_power(1)
Z2 = BlaschkeProduct.z_power(2)
B = BlaschkeProduct([-0.5])
U = RatFun([4, 4, 1])  # (z + 2)^2
CONJ_Z = ToeplitzSymbol.conj_of(Z)
FINAL = ToeplitzSymbol(RatFun.z(3), B.as_ratfun() ** 2)
ONE = EquivalenceWitness(RatFun.const(1.0), RatFun.const(1.0))


def span(*fs):
    return Subspace(list(fs))


# --- subspaces --------------------------------------------------------------


def test_kernel_of_conj_z_is_constants():
    k = toeplitz_kernel(CONJ_Z)
    assert k.dim == 1 and same_subspace(k, span(RatFun.const(1.0)))


def test_final_kernel_is_span_of_u():
    k = toeplitz_kernel(FINAL)
    assert k.dim == 1 and membership(U, k)
    assert annihilates(FINAL, U)


def test_kernel_of_conj_theta_is_model_space():
    theta = BlaschkeProduct([0.3, -0.2j, 0.5 + 0.1j])
    assert same_subspace(toeplitz_kernel(ToeplitzSymbol.conj_of(theta)), model_space(theta))


def test_model_space_examples():
    assert same_subspace(model_space(Z), span(RatFun.const(1.0)))
    assert same_subspace(model_space(Z2), span(RatFun.const(1.0), RatFun.z(1)))
    b2 = B * B
    expect = span(RatFun(1.0, [1, 0.5]) ** 2, RatFun.z(1) * RatFun(1.0, [1, 0.5]) ** 2)
    assert same_subspace(model_space(b2), expect)
    assert same_subspace(model_space(b2), toeplitz_kernel(ToeplitzSymbol.conj_of(b2)))


def test_membership_examples():
    m = span(RatFun.const(1.0), U)
    assert membership(RatFun([0, 4, 1]), m)
    assert not membership(RatFun([4, 1]), m)
    assert membership(RatFun.const(0.0), m)


def test_rank_loss_detected():
    with pytest.raises(RankLoss):
        span(U, U * 2.0)


def test_relations_examples():
    r = subspace_relations(model_space(Z), model_space(Z2))
    assert r.included and not r.equal and r.intersection_dim == 1
    assert same_subspace(r.sum, model_space(Z2))
    r = subspace_relations(model_space(Z), span(U))
    assert r.intersection_dim == 0 and r.sum.dim == 2


def test_backward_shift_examples():
    assert max_circle_diff(backward_shift(RatFun([0, 4, 1])).value, RatFun([4, 1])) < 1e-14
    assert backward_shift(RatFun.const(1.0)).is_zero
    theta = BlaschkeProduct([0.4, -0.3j])
    s = backward_shift(theta).value
    expect = (theta.as_ratfun() - theta.value_at_zero()) / RatFun.z(1)
    assert max_circle_diff(s, expect) < 1e-12


def test_near_invariance_examples():
    assert is_nearly_sstar_invariant(model_space(Z2)).invariant
    rep = is_nearly_sstar_invariant(span(RatFun.const(1.0), U))
    assert not rep.invariant
    assert max_circle_diff(rep.witness.value, RatFun([0, 4, 1])) < 1e-12
    theta = BlaschkeProduct([0.3, 0.5j])
    assert not is_nearly_sstar_invariant(apply_composition(model_space(theta), Z2)).invariant


def test_apply_composition_examples():
    psi = BlaschkeProduct([0.2, 0.4j])
    assert same_subspace(apply_composition(model_space(Z), psi), model_space(Z))
    assert same_subspace(apply_composition(model_space(Z2), Z2), span(RatFun.const(1.0), RatFun.z(2)))
    theta = BlaschkeProduct([0.3, -0.4])
    a = BlaschkeProduct.automorphism(0.25 - 0.1j)
    sym = ToeplitzSymbol.conj_of(blaschke_compose(theta, a)) * ToeplitzSymbol(1.0, a, -1)
    assert same_subspace(apply_composition(model_space(theta), a), toeplitz_kernel(sym))


def test_multiply_subspace_examples():
    assert same_subspace(multiply_subspace(U, model_space(Z)), span(U))
    m = model_space(Z2)
    assert same_subspace(multiply_subspace(1.0, m), m)
    assert same_subspace(multiply_subspace(B, model_space(Z)), span(B.as_ratfun()))


# --- minimal kernels and maximal vectors ------------------------------------


def test_minimal_kernel_of_vector_examples():
    _, k = minimal_kernel_of_vector(RatFun.const(1.0))
    assert same_subspace(k, model_space(Z))
    theta = BlaschkeProduct([0.3, 0.1 - 0.5j])
    _, k = minimal_kernel_of_vector(shifted_inner(theta))
    assert same_subspace(k, model_space(theta))
    _, k = minimal_kernel_of_vector(U)
    assert k.dim == 1 and membership(U, k)


def test_maximal_vector_examples():
    theta = BlaschkeProduct([0.3, 0.1 - 0.5j, -0.6])
    cert = is_maximal_vector(shifted_inner(theta), ToeplitzSymbol.conj_of(theta))
    assert cert is not None
    expected = 1 - np.conj(theta.value_at_zero()) * theta.as_ratfun()
    assert max_circle_diff(cert.outer_witness.value, expected) < 1e-9
    assert is_maximal_vector(RatFun.const(1.0), ToeplitzSymbol.conj_of(Z2)) is None
    psi = BlaschkeProduct([0.2j, 0.5])
    k = rat_compose(shifted_inner(theta).value, psi.as_ratfun())
    sym = minimal_kernel_of_composed(ToeplitzSymbol.conj_of(theta), psi)
    assert is_maximal_vector(k, sym) is not None
    with pytest.raises(NotInKernel):
        is_maximal_vector(RatFun.z(3), ToeplitzSymbol.conj_of(Z2))


def test_minimal_kernel_of_composed_examples():
    theta = BlaschkeProduct([0.3, -0.4j])
    a = BlaschkeProduct.automorphism(-0.2 + 0.3j)
    F = ToeplitzSymbol.conj_of(theta)
    assert same_subspace(toeplitz_kernel(minimal_kernel_of_composed(F, a)), apply_composition(model_space(theta), a))
    image = apply_composition(model_space(theta), Z2)
    big = toeplitz_kernel(minimal_kernel_of_composed(F, Z2))
    r = subspace_relations(image, big)
    assert r.included and not r.equal
    psi = BlaschkeProduct([0.1, 0.6j])
    assert same_subspace(toeplitz_kernel(minimal_kernel_of_composed(CONJ_Z, psi)), model_space(Z))


def test_minimal_model_examples():
    v = minimal_model_containing_composition(B, Z2)
    assert v.same_zeros(blaschke_compose(B, Z2))
    theta, psi = BlaschkeProduct([0.3]), BlaschkeProduct([0.5j])
    v = minimal_model_containing_composition(theta, psi)
    assert v.same_zeros(Z * blaschke_compose(theta, psi))
    v = minimal_model_containing_composition(Z, BlaschkeProduct([0.0, 0.4, -0.3j]))
    assert v.zeros.roots == ((0j, 1),)
    assert certify_minimal_model(composition_image(B, Z2), blaschke_compose(B, Z2)).minimal


def test_multiplied_kernel_examples():
    s = minimal_kernel_of_multiplied(U, CONJ_Z)
    assert same_subspace(toeplitz_kernel(s), span(U))
    s = minimal_kernel_of_multiplied(1.0, FINAL)
    assert same_subspace(toeplitz_kernel(s), toeplitz_kernel(FINAL))
    s = minimal_kernel_of_multiplied(B, CONJ_Z)
    assert same_subspace(toeplitz_kernel(s), model_space(Z * B))
    assert is_subspace_of(multiply_subspace(B, model_space(Z)), toeplitz_kernel(s))


def test_multiplied_kernel_exact_examples():
    s = multiplied_kernel_exact(U, CONJ_Z)
    assert same_subspace(toeplitz_kernel(s), span(U))
    assert kernels_equal_symbolic(s, FINAL)
    assert same_subspace(toeplitz_kernel(multiplied_kernel_exact(1.0, FINAL)), toeplitz_kernel(FINAL))
    with pytest.raises(HypothesisViolated):
        multiplied_kernel_exact(RatFun.z(1), CONJ_Z)


def test_pre_and_post_multiplied_reduce_for_unit_weight():
    F = ToeplitzSymbol.conj_of(BlaschkeProduct([0.3, -0.5j]))
    psi = BlaschkeProduct([0.2, 0.4])
    base = toeplitz_kernel(minimal_kernel_of_composed(F, psi))
    assert same_subspace(toeplitz_kernel(minimal_kernel_pre_multiplied_composed(1.0, F, psi)), base)
    assert same_subspace(toeplitz_kernel(minimal_kernel_post_multiplied_composed(1.0, F, psi)), base)
    ident = BlaschkeProduct.z_power(1)
    g = minimal_kernel_post_multiplied_composed(U, F, ident)
    assert same_subspace(toeplitz_kernel(g), toeplitz_kernel(minimal_kernel_of_multiplied(U, F)))


def test_pre_multiplied_example_with_u_squared():
    H = minimal_kernel_pre_multiplied_composed(U, CONJ_Z, Z2)
    image = apply_composition(multiply_subspace(U, model_space(Z)), Z2)
    assert is_subspace_of(image, toeplitz_kernel(H))


def test_post_multiplied_example_certificate():
    theta = BlaschkeProduct([0.3, 0.2j])
    G = minimal_kernel_post_multiplied_composed(U, ToeplitzSymbol.conj_of(theta), Z2)
    image = multiply_subspace(U, apply_composition(model_space(theta), Z2))
    assert is_subspace_of(image, toeplitz_kernel(G))
    k = U * rat_compose(shifted_inner(theta).value, Z2.as_ratfun())
    assert is_maximal_vector(k, G) is not None


def test_weighted_model_examples():
    theta, psi = BlaschkeProduct([0.3]), BlaschkeProduct([0.4, 0.5j])
    unit = BlaschkeProduct()
    for fn in (minimal_model_weighted_pre, minimal_model_weighted_post):
        assert fn(unit, theta, psi).same_zeros(minimal_model_containing_composition(theta, psi))
    u = BlaschkeProduct([0.2j])
    psi0 = BlaschkeProduct([0.0, 0.4])
    eta = minimal_model_weighted_pre(u, theta, psi0)
    assert eta.same_zeros(blaschke_compose(theta, psi0) * blaschke_compose(u, psi0))
    eta = minimal_model_weighted_pre(Z, Z, Z2)
    assert eta.zeros.roots == ((0j, 3),)
    assert certify_minimal_model(composition_image(Z, Z2, Z, "pre"), eta).minimal
    eta = minimal_model_weighted_post(u, theta, psi0)
    assert eta.same_zeros(blaschke_compose(theta, psi0) * u)
    eta = minimal_model_weighted_post(B, Z, Z2)
    assert eta.same_zeros(Z * B)
    assert certify_minimal_model(composition_image(Z, Z2, B, "post"), eta).minimal


def test_post_weighted_formula_is_not_minimal_when_u_shares_a_zero_with_psi():
    eta = minimal_model_weighted_post(Z, B, Z2)
    image = composition_image(B, Z2, Z, "post")
    rep = certify_minimal_model(image, eta)
    assert rep.contains and not rep.minimal
    smaller = minimal_inner_multiple(blaschke_compose(B, Z2) * Z, Z2)
    assert smaller.same_zeros(blaschke_compose(B, Z2))
    assert certify_minimal_model(image, smaller).minimal


def test_composition_maps_into_examples():
    theta = BlaschkeProduct([0.3, -0.2j])
    psi = BlaschkeProduct([0.1, 0.5])
    v = minimal_model_containing_composition(theta, psi)
    r = composition_maps_into(ToeplitzSymbol.conj_of(theta), psi, ToeplitzSymbol.conj_of(v))
    assert r.holds and r.via_smirnov and r.via_maximal_vector
    r = composition_maps_into(CONJ_Z, Z2, CONJ_Z)
    assert r.holds and r.via_smirnov and r.via_maximal_vector
    r = composition_maps_into(ToeplitzSymbol.conj_of(Z2), Z2, CONJ_Z)
    assert not (r.holds or r.via_smirnov or r.via_maximal_vector)


def test_transport_examples():
    theta = BlaschkeProduct([0.3, -0.2j])
    g = ToeplitzSymbol.conj_of(theta)
    psi = BlaschkeProduct([0.1, 0.5j])
    vec, sym = transport_maximal_vector(shifted_inner(theta), g, psi, ONE, "timesPsi")
    assert same_subspace(toeplitz_kernel(sym), model_space(Z * blaschke_compose(theta, psi)))
    assert is_maximal_vector(vec, sym) is not None
    vec, sym = transport_maximal_vector(shifted_inner(theta), g, psi, ONE, "plain")
    assert is_maximal_vector(vec, sym) is not None
    vec, sym = transport_maximal_vector(shifted_inner(theta), g, Z2, ONE, "psiOverZ")
    assert same_subspace(toeplitz_kernel(sym), model_space(blaschke_compose(theta, Z2)))
    assert is_maximal_vector(vec, sym) is not None
    with pytest.raises(HypothesisViolated):
        transport_maximal_vector(shifted_inner(theta), g, psi, ONE, "psiOverZ")


def test_crofoot_examples():
    theta = BlaschkeProduct([0.0, 0.4j, -0.3])
    k0 = crofoot_maximal_vector(theta, 0.0)
    assert max_circle_diff(k0.value, shifted_inner(theta).value) < 1e-12
    k = crofoot_maximal_vector(Z2, 1 / 3)
    assert is_maximal_vector(k, ToeplitzSymbol.conj_of(Z2)) is not None
    with pytest.raises(HypothesisViolated):
        crofoot_maximal_vector(B, 0.2)


# --- families, Coburn, Hitt -------------------------------------------------


def test_lcm_family_examples():
    res = lcm_minimal_kernel_family([Z], Z)
    assert same_subspace(res.K, model_space(Z2))
    res = lcm_minimal_kernel_family([Z, B], Z)
    assert res.theta.same_zeros(Z * B)
    assert same_subspace(res.K, model_space(Z2 * B))
    assert all(res.decomposition_checks)
    theta = BlaschkeProduct([0.3, 0.2j])
    a, b = lcm_minimal_kernel_family([theta, theta], Z2), lcm_minimal_kernel_family([theta], Z2)
    assert same_subspace(a.K, b.K)


def test_coburn_examples():
    assert coburn_dims(CONJ_Z) == (1, 0) and coburn_check(CONJ_Z)
    one = ToeplitzSymbol()
    assert coburn_dims(one) == (0, 0) and coburn_check(one)


def test_hitt_examples():
    h = hitt_decomposition(model_space(Z2))
    assert max_circle_diff(h.u.value, RatFun.const(1.0)) < 1e-12
    assert same_subspace(h.K, model_space(Z2))
    assert h.isometry_defect < 1e-12
    h = hitt_decomposition(span(U))
    assert max_circle_diff(h.u.value, U * (1 / np.sqrt(33))) < 1e-12
    assert same_subspace(h.K, model_space(Z))
    h = hitt_decomposition(multiply_subspace(B, model_space(Z)))
    assert max_circle_diff(h.u.value, B.as_ratfun()) < 1e-12
    assert same_subspace(h.K, model_space(Z))


# --- properties -------------------------------------------------------------

seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_symbolic_and_subspace_inclusion_agree(seed):
    rng = np.random.default_rng(seed)
    g = instances.nontrivial_symbol(rng, 3, 2)
    h = g * ToeplitzSymbol.conj_of(instances.blaschke(rng, 1)) if rng.uniform() < 0.5 else instances.nontrivial_symbol(rng, 4, 3)
    kg, kh = toeplitz_kernel(g), toeplitz_kernel(h)
    r = subspace_relations(kg, kh)
    assert kernel_included_symbolic(g, h) == r.included
    assert kernels_equal_symbolic(g, h) == r.equal


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_equal_kernels_under_conjugate_outer_factor(seed):
    rng = np.random.default_rng(seed)
    g = instances.nontrivial_symbol(rng, 3, 2)
    h = g * ToeplitzSymbol.conj_of(instances.outer_rational(rng, 2))
    assert kernels_equal_symbolic(g, h)
    assert same_subspace(toeplitz_kernel(g), toeplitz_kernel(h))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_multiplier_maps_minimal_kernel_into_minimal_kernel_of_product(seed):
    rng = np.random.default_rng(seed)
    u, v = instances.h2_rational(rng, 2), instances.h2_rational(rng, 3)
    _, kv = minimal_kernel_of_vector(v)
    _, kuv = minimal_kernel_of_vector(u * v)
    assert is_subspace_of(multiply_subspace(u, kv), kuv)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_canonical_maximal_vector_generates_kernel(seed):
    g = instances.nontrivial_symbol(np.random.default_rng(seed), 4, 3)
    k = canonical_maximal_vector(g)
    assert is_maximal_vector(k, g) is not None
    sym, kmin = minimal_kernel_of_vector(k)
    assert same_subspace(kmin, toeplitz_kernel(g))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_model_spaces_are_nearly_invariant(seed):
    theta = instances.blaschke(np.random.default_rng(seed), 3)
    assert is_nearly_sstar_invariant(model_space(theta)).invariant


def test_hitt_of_h2_rational_vector_span():
    f = H2Rational(RatFun([1, 0.5], [3, 1]))
    h = hitt_decomposition(span(f))
    assert h.K.dim == 1 and h.isometry_defect < 1e-10
