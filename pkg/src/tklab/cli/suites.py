"""Randomized verification suites, one per result being checked.

Each trial draws its instance from a generator seeded by ``(seed, trial)``
so any single trial can be re-run in isolation from its repro record.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import instances as inst
from ..blaschke import BlaschkeProduct, H2Rational, blaschke_compose, blaschke_gcd_lcm
from ..errors import GapFailure, InternalInconsistency, TklabError, UnknownSuite
from ..kernels import (
    BRANCH_GENERIC,
    BRANCH_PSI_VANISHES,
    BRANCH_THETA_VANISHES,
    TRANSPORT_VARIANTS,
    Subspace,
    annihilates,
    apply_composition,
    backward_shift,
    canonical_maximal_vector,
    certify_minimal_model,
    coburn_dims,
    composition_image,
    composition_maps_into,
    crofoot_maximal_vector,
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
    model_branch,
    model_space,
    multiplied_kernel_exact,
    multiply_subspace,
    same_subspace,
    shifted_inner,
    subspace_relations,
    toeplitz_kernel,
    transport_maximal_vector,
)
from ..oracle import (
    DEFAULT_ORACLE,
    OracleConfig,
    assert_same_subspace,
    h2_inner_product,
    singular_value_gap,
    taylor_embed,
    truncated_kernel,
)
from ..ratfun import DEFAULT_TOL, RatFun, ToleranceConfig, conj_reflect, max_circle_diff, rat_compose
from ..symbols import (
    EquivalenceWitness,
    ToeplitzSymbol,
    kernel_included_symbolic,
    kernels_equal_symbolic,
    winding_number,
)
from .serialize import blaschke_record, complex_record, function_record, symbol_record


@dataclass(frozen=True)
class RunConfig:
    tol: ToleranceConfig = DEFAULT_TOL
    oracle: OracleConfig = DEFAULT_ORACLE


@dataclass
class Trial:
    """Instance record plus ``(check, passed, details)`` triples."""

    instance: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def check(self, name: str, passed, **details) -> bool:
        self.checks.append((name, bool(passed), details))
        return bool(passed)


@dataclass(frozen=True)
class Suite:
    name: str
    anchor: str
    description: str
    run: Callable[[np.random.Generator, int, RunConfig], Trial]
    default_trials: int


def _b(rng, lo: int, hi: int, cfg: RunConfig, vanish=None) -> BlaschkeProduct:
    return inst.blaschke(rng, int(rng.integers(lo, hi + 1)), vanish, tol=cfg.tol)


def _branch_name(i: int) -> str:
    return (BRANCH_THETA_VANISHES, BRANCH_PSI_VANISHES, BRANCH_GENERIC)[i % 3]


# ---------------------------------------------------------------------------
# Kernels, dimensions and the numeric oracle
# ---------------------------------------------------------------------------


def _oracle_agreement(t: Trial, s: ToeplitzSymbol, k: Subspace, cfg: RunConfig) -> None:
    gap = singular_value_gap(s, cfg.oracle)
    try:
        numeric = truncated_kernel(s, cfg.oracle)
    except GapFailure as exc:
        t.check("oracle-dimension", False, gap=gap, error=str(exc))
        return
    t.check("oracle-dimension", numeric.dim == k.dim and gap >= cfg.oracle.gap, oracleDim=numeric.dim, gap=gap)
    if numeric.dim == k.dim:
        angle = assert_same_subspace(numeric, taylor_embed(k, cfg.oracle), cfg.oracle)
        t.check("oracle-angle", angle <= cfg.oracle.angle_tol, angle=angle)


def dimension_law(rng, trial, cfg) -> Trial:
    s = inst.symbol(rng, 4, 3, cfg.tol)
    t = Trial({"symbol": symbol_record(s)})
    kappa = winding_number(s)
    k = toeplitz_kernel(s)
    t.check("dimension-law", k.dim == max(-kappa, 0), winding=kappa, dim=k.dim)
    t.check("annihilation", all(annihilates(s, f) for f in k.basis), dim=k.dim)
    _oracle_agreement(t, s, k, cfg)
    return t


def oracle_crosscheck(rng, trial, cfg) -> Trial:
    theta = _b(rng, 1, 5, cfg)
    t = Trial({"theta": blaschke_record(theta)})
    s = ToeplitzSymbol.conj_of(theta)
    k, m = toeplitz_kernel(s), model_space(theta)
    t.check("model-space-exact", same_subspace(k, m), dim=k.dim, degree=theta.degree)
    angle = assert_same_subspace(taylor_embed(k, cfg.oracle), taylor_embed(m, cfg.oracle), cfg.oracle)
    t.check("model-space-angle", angle <= cfg.oracle.angle_tol, angle=angle)
    _oracle_agreement(t, s, k, cfg)
    fs = m.functions
    f, g = fs[0], fs[-1]
    fg, gf = h2_inner_product(f, g, cfg.oracle), h2_inner_product(g, f, cfg.oracle)
    t.check("inner-product-symmetry", abs(fg - np.conj(gf)) <= 1e-12 * max(1.0, abs(fg)),
            value=complex_record(fg))
    return t


def coburn(rng, trial, cfg) -> Trial:
    s = inst.symbol(rng, 4, 3, cfg.tol)
    t = Trial({"symbol": symbol_record(s)})
    kappa = winding_number(s)
    dims = coburn_dims(s)
    t.check("coburn", min(dims) == 0, dims=list(dims), winding=kappa)
    t.check("winding-sign", dims == (max(-kappa, 0), max(kappa, 0)), dims=list(dims), winding=kappa)
    return t


# ---------------------------------------------------------------------------
# Composition into model spaces
# ---------------------------------------------------------------------------


def _stratified_pair(rng, trial: int, cfg: RunConfig, theta_hi: int = 4, psi_hi: int = 3):
    branch = trial % 3
    if branch == 0:
        theta = _b(rng, 1, theta_hi, cfg, vanish=True)
        psi = _b(rng, 1, psi_hi, cfg)
    elif branch == 1:
        theta = _b(rng, 1, theta_hi, cfg, vanish=False)
        psi = _b(rng, 1, psi_hi, cfg, vanish=True)
    else:
        theta = _b(rng, 1, theta_hi, cfg, vanish=False)
        psi = _b(rng, 1, psi_hi, cfg, vanish=False)
    return theta, psi


def thm_13(rng, trial, cfg) -> Trial:
    theta, psi = _stratified_pair(rng, trial, cfg)
    t = Trial({"theta": blaschke_record(theta), "psi": blaschke_record(psi)})
    v = minimal_model_containing_composition(theta, psi)
    branch = model_branch(theta, psi)
    t.check("branch", branch == _branch_name(trial), branch=branch)
    rep = certify_minimal_model(composition_image(theta, psi), v)
    t.check("containment", rep.contains, v=blaschke_record(v))
    t.check("minimality", rep.minimal, divisorContains=list(rep.divisor_contains))
    vz = minimal_model_containing_composition(BlaschkeProduct.z_power(1, cfg.tol), psi)
    t.check("theta-z-gives-z", vz.degree == 1 and vz.zeros.roots == ((0j, 1),) and vz.unimodular == 1,
            v=blaschke_record(vz))
    return t


def _weighted(rng, trial, cfg, mode: str) -> Trial:
    branch = trial % 3
    theta, psi = _stratified_pair(rng, trial, cfg, 3, 2)
    u = _b(rng, 0, 2, cfg, vanish=False)
    t = Trial({"theta": blaschke_record(theta), "psi": blaschke_record(psi), "u": blaschke_record(u)})
    if mode == "pre":
        eta = minimal_model_weighted_pre(u, theta, psi)
        weight_vanishes = u.vanishes_at_zero()
    else:
        eta = minimal_model_weighted_post(u, theta, psi)
        weight_vanishes = False
    got = model_branch(theta, psi, weight_vanishes)
    t.check("branch", got == _branch_name(branch), branch=got)
    rep = certify_minimal_model(composition_image(theta, psi, u, mode), eta)
    t.check("containment", rep.contains, eta=blaschke_record(eta))
    t.check("minimality", rep.minimal, divisorContains=list(rep.divisor_contains))
    x = blaschke_compose(u, psi) if mode == "pre" else u
    general = minimal_inner_multiple(blaschke_compose(theta, psi) * x, psi)
    t.check("general-form-agrees", general.same_zeros(eta), general=blaschke_record(general))
    unit = BlaschkeProduct((), 1.0, cfg.tol)
    reduced = (minimal_model_weighted_pre if mode == "pre" else minimal_model_weighted_post)(unit, theta, psi)
    plain = minimal_model_containing_composition(theta, psi)
    t.check("unit-weight-reduction", blaschke_record(reduced) == blaschke_record(plain))
    return t


def thm_38(rng, trial, cfg) -> Trial:
    return _weighted(rng, trial, cfg, "pre")


def thm_ucpsi(rng, trial, cfg) -> Trial:
    return _weighted(rng, trial, cfg, "post")


def thm_model_case(rng, trial, cfg) -> Trial:
    n = int(rng.integers(1, 4))
    thetas = [_b(rng, 1, 3, cfg) for _ in range(n)]
    psi = _b(rng, 1, 2, cfg)
    t = Trial({"thetas": [blaschke_record(x) for x in thetas], "psi": blaschke_record(psi)})
    res = lcm_minimal_kernel_family(thetas, psi, cfg.oracle)
    checks = res.decomposition_checks
    t.check("sum-equality", checks[0], dim=res.K.dim)
    t.check("orthogonal-splittings", all(checks[1:]), perMember=list(checks[1:]))
    return t


def sum_proposition(rng, trial, cfg) -> Trial:
    g = _b(rng, 1, 2, cfg)
    a = g * _b(rng, 0, 2, cfg)
    b = g * _b(rng, 0, 2, cfg)
    t = Trial({"theta1": blaschke_record(a), "theta2": blaschke_record(b)})
    rel = subspace_relations(model_space(a), model_space(b))
    gcd, _ = blaschke_gcd_lcm([a, b])
    t.check("intersection-is-gcd", rel.intersection_dim == gcd.degree,
            intersectionDim=rel.intersection_dim, gcdDegree=gcd.degree)
    t.check("sum-nearly-invariant", is_nearly_sstar_invariant(rel.sum).invariant, sumDim=rel.sum.dim)
    return t


# ---------------------------------------------------------------------------
# Composition of Toeplitz kernels
# ---------------------------------------------------------------------------


def thm_14_15(rng, trial, cfg) -> Trial:
    if trial % 2 == 0:
        F = inst.nontrivial_symbol(rng, 4, 3, cfg.tol)
        psi = inst.automorphism(rng, tol=cfg.tol)
    else:
        F = inst.symbol_with_winding(rng, -4, -2, 3, tol=cfg.tol)
        psi = _b(rng, 2, 3, cfg)
    t = Trial({"F": symbol_record(F), "psi": blaschke_record(psi)})
    image = apply_composition(toeplitz_kernel(F), psi)
    big = toeplitz_kernel(minimal_kernel_of_composed(F, psi))
    rel = subspace_relations(image, big)
    if psi.degree == 1:
        t.check("equality", rel.equal, dims=[image.dim, big.dim])
        return t
    t.check("strict-containment", rel.included and not rel.equal, dims=[image.dim, big.dim])
    rep = is_nearly_sstar_invariant(image)
    t.check("not-nearly-invariant", not rep.invariant)
    if rep.witness is not None:
        w = rep.witness
        ok = abs(complex(w(0.0))) < 1e-12 and not membership(backward_shift(w), image)
        t.check("witness", ok, witness=function_record(w))
    return t


def cor_26(rng, trial, cfg) -> Trial:
    theta = _b(rng, 1, 4, cfg)
    psi = inst.automorphism(rng, tol=cfg.tol)
    a = psi.zeros.roots[0][0]
    t = Trial({"theta": blaschke_record(theta), "psi": blaschke_record(psi)})
    composed = blaschke_compose(theta, psi)
    k = toeplitz_kernel(ToeplitzSymbol.conj_of(composed) * ToeplitzSymbol(1.0, psi.as_ratfun(), -1))
    m = model_space(composed)
    factor = RatFun([1.0, -np.conj(a)], 1.0, cfg.tol)
    weighted = same_subspace(k, multiply_subspace(factor, m))
    reciprocal = same_subspace(k, multiply_subspace(1 / factor, m))
    t.check("weighted-model-equality", weighted, reciprocalWeightEqual=reciprocal, dim=k.dim)
    return t


def prop_27(rng, trial, cfg) -> Trial:
    g = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    case = trial % 3
    if case == 0:
        h = g * ToeplitzSymbol.conj_of(_b(rng, 1, 2, cfg))
    elif case == 1:
        h = g * ToeplitzSymbol.conj_of(inst.outer_rational(rng, 2, cfg.tol))
    else:
        h = inst.nontrivial_symbol(rng, 4, 3, cfg.tol)
    t = Trial({"g": symbol_record(g), "h": symbol_record(h)})
    kg, kh = toeplitz_kernel(g), toeplitz_kernel(h)
    rel = subspace_relations(kg, kh)
    sym_incl = kernel_included_symbolic(g, h)
    t.check("inclusion-agrees", sym_incl == rel.included, symbolic=sym_incl, direct=rel.included)
    sym_eq = kernels_equal_symbolic(g, h)
    t.check("equality-agrees", sym_eq == rel.equal, symbolic=sym_eq, direct=rel.equal)
    if case == 0:
        t.check("expected-inclusion", rel.included)
    elif case == 1:
        t.check("expected-equality", rel.equal)
    return t


def prop_fgpsi(rng, trial, cfg) -> Trial:
    F = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    psi = _b(rng, 1, 2, cfg)
    case = trial % 3
    if case == 0:
        H = minimal_kernel_of_composed(F, psi)
    elif case == 1:
        H = minimal_kernel_of_composed(F, psi) * ToeplitzSymbol.conj_of(_b(rng, 1, 1, cfg))
    else:
        H = inst.nontrivial_symbol(rng, 6, 3, cfg.tol)
    t = Trial({"F": symbol_record(F), "psi": blaschke_record(psi), "H": symbol_record(H)})
    rep = composition_maps_into(F, psi, H)
    t.check("routes-agree", True, holds=rep.holds, smirnov=rep.via_smirnov, maximalVector=rep.via_maximal_vector)
    if case < 2:
        t.check("expected-containment", rep.holds)
    return t


# ---------------------------------------------------------------------------
# Minimal kernels and maximal vectors
# ---------------------------------------------------------------------------


def thm_22(rng, trial, cfg) -> Trial:
    h = inst.h2_rational(rng, 3, cfg.tol)
    t = Trial({"h": function_record(h)})
    sym, k = minimal_kernel_of_vector(h)
    t.check("contains-vector", membership(h, k), symbol=symbol_record(sym))
    t.check("dimension", k.dim == h.inner.degree + 1, dim=k.dim, innerDegree=h.inner.degree)
    t.check("maximal-vector", is_maximal_vector(h, sym) is not None)
    return t


def thm_23(rng, trial, cfg) -> Trial:
    g = inst.nontrivial_symbol(rng, 4, 3, cfg.tol)
    theta = _b(rng, 1, 4, cfg)
    t = Trial({"g": symbol_record(g), "theta": blaschke_record(theta)})
    k = canonical_maximal_vector(g)
    t.check("canonical-certified", is_maximal_vector(k, g) is not None, vector=function_record(k))
    dim = toeplitz_kernel(g).dim
    if dim >= 2:
        low = H2Rational(k.value / RatFun.z(dim - 1, cfg.tol))
        t.check("non-maximal-rejected", is_maximal_vector(low, g) is None, dim=dim)
    cert = is_maximal_vector(shifted_inner(theta), ToeplitzSymbol.conj_of(theta))
    expected = 1 - np.conj(theta.value_at_zero()) * theta.as_ratfun()
    ok = cert is not None and max_circle_diff(cert.outer_witness.value, expected) < 1e-9
    t.check("shifted-inner-certificate", ok)
    return t


def prop_4_transports(rng, trial, cfg) -> Trial:
    variant = TRANSPORT_VARIANTS[trial % 3]
    g = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    psi = _b(rng, 1, 2, cfg, vanish=True if variant == "psiOverZ" else None)
    h_plus = inst.outer_rational(rng, 2, cfg.tol).value
    h_minus = inst.outer_rational(rng, 2, cfg.tol).value
    w = EquivalenceWitness(h_plus, conj_reflect(h_minus))
    t = Trial({"g": symbol_record(g), "psi": blaschke_record(psi), "variant": variant,
               "hPlus": function_record(h_plus), "hMinusConj": function_record(h_minus)})
    vec, sym = transport_maximal_vector(canonical_maximal_vector(g), g, psi, w, variant)
    t.check("transported-maximal", is_maximal_vector(vec, sym) is not None, variant=variant)
    return t


def crofoot_remark(rng, trial, cfg) -> Trial:
    theta = _b(rng, 1, 4, cfg, vanish=True)
    a = inst.point_inside(rng)
    t = Trial({"theta": blaschke_record(theta), "a": complex_record(a)})
    k = crofoot_maximal_vector(theta, a)
    t.check("crofoot-maximal", is_maximal_vector(k, ToeplitzSymbol.conj_of(theta)) is not None,
            vector=function_record(k))
    return t


# ---------------------------------------------------------------------------
# Multiplied and composed kernels
# ---------------------------------------------------------------------------


def thm_utg(rng, trial, cfg) -> Trial:
    g = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    u = inst.h2_rational(rng, 2, cfg.tol)
    t = Trial({"g": symbol_record(g), "u": function_record(u)})
    s = minimal_kernel_of_multiplied(u, g)
    t.check("containment", is_subspace_of(multiply_subspace(u, toeplitz_kernel(g)), toeplitz_kernel(s)),
            symbol=symbol_record(s))
    k = canonical_maximal_vector(g)
    t.check("maximal-vector", is_maximal_vector(H2Rational(u.value * k.value), s) is not None)
    return t


def prop_equal(rng, trial, cfg) -> Trial:
    F = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    u = inst.outer_rational(rng, 3, cfg.tol)
    t = Trial({"F": symbol_record(F), "u": function_record(u)})
    s = multiplied_kernel_exact(u, F)
    t.check("equality", same_subspace(multiply_subspace(u, toeplitz_kernel(F)), toeplitz_kernel(s)),
            symbol=symbol_record(s))
    return t


def thm_utg1(rng, trial, cfg) -> Trial:
    F = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    u = inst.h2_rational(rng, 2, cfg.tol)
    psi = _b(rng, 1, 2, cfg)
    t = Trial({"F": symbol_record(F), "u": function_record(u), "psi": blaschke_record(psi)})
    H = minimal_kernel_pre_multiplied_composed(u, F, psi)
    image = apply_composition(multiply_subspace(u, toeplitz_kernel(F)), psi)
    t.check("containment", is_subspace_of(image, toeplitz_kernel(H)), symbol=symbol_record(H))
    k = canonical_maximal_vector(F)
    vec = H2Rational(rat_compose(u.value * k.value, psi.as_ratfun()))
    t.check("maximal-vector", is_maximal_vector(vec, H) is not None)
    return t


def thm_utg2(rng, trial, cfg) -> Trial:
    F = inst.nontrivial_symbol(rng, 3, 2, cfg.tol)
    u = inst.h2_rational(rng, 2, cfg.tol)
    psi = _b(rng, 1, 2, cfg)
    t = Trial({"F": symbol_record(F), "u": function_record(u), "psi": blaschke_record(psi)})
    G = minimal_kernel_post_multiplied_composed(u, F, psi)
    image = multiply_subspace(u, apply_composition(toeplitz_kernel(F), psi))
    t.check("containment", is_subspace_of(image, toeplitz_kernel(G)), symbol=symbol_record(G))
    k = canonical_maximal_vector(F)
    vec = H2Rational(u.value * rat_compose(k.value, psi.as_ratfun()))
    t.check("maximal-vector", is_maximal_vector(vec, G) is not None)
    return t


def lem_kmin(rng, trial, cfg) -> Trial:
    v = inst.h2_rational(rng, 3, cfg.tol)
    u = inst.h2_rational(rng, 2, cfg.tol)
    t = Trial({"u": function_record(u), "v": function_record(v)})
    _, kv = minimal_kernel_of_vector(v)
    _, kuv = minimal_kernel_of_vector(u * v)
    t.check("containment", is_subspace_of(multiply_subspace(u, kv), kuv), dims=[kv.dim, kuv.dim])
    return t


# ---------------------------------------------------------------------------
# Pinned regression
# ---------------------------------------------------------------------------


def poly_text(coeffs) -> str:
    """``z^2+4z`` style text for a polynomial with integer coefficients."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = complex(coeffs[k])
        n = int(round(c.real))
        if n == 0:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        mag = abs(n)
        body = str(mag) if k == 0 or mag != 1 else ""
        sign = "-" if n < 0 else ("+" if terms else "")
        terms.append(f"{sign}{body}{mono}")
    return "".join(terms) or "0"


def final_example(rng, trial, cfg) -> Trial:
    tol = cfg.tol
    b = BlaschkeProduct([-0.5], 1.0, tol)
    u = RatFun.poly([4.0, 4.0, 1.0], tol)
    sym = ToeplitzSymbol(RatFun.z(3, tol), b.as_ratfun() ** 2, 0, tol)
    t = Trial({"symbol": symbol_record(sym), "u": function_record(u)})
    k = toeplitz_kernel(sym)
    t.check("kernel-dimension", k.dim == 1, dim=k.dim, winding=winding_number(sym))
    t.check("kernel-contains-u", membership(u, k))
    exact = toeplitz_kernel(multiplied_kernel_exact(u, ToeplitzSymbol.conj_of(RatFun.z(1, tol))))
    t.check("multiplied-kernel-equality", same_subspace(exact, k))
    pinned = Subspace([u], tol)
    angle = assert_same_subspace(truncated_kernel(sym, cfg.oracle), taylor_embed(pinned, cfg.oracle), cfg.oracle)
    t.check("oracle-angle", angle <= 1e-10, angle=angle)
    m1, m2 = model_space(BlaschkeProduct.z_power(1, tol)), pinned
    rel = subspace_relations(m1, m2)
    total = rel.sum
    inside = RatFun.poly([0.0, 4.0, 1.0], tol)
    outside = RatFun.poly([4.0, 1.0], tol)
    t.check("trivial-intersection", rel.intersection_dim == 0, sumDim=total.dim)
    t.check("contains-and-excludes", membership(inside, total) and not membership(outside, total))
    rep = is_nearly_sstar_invariant(total)
    w = rep.witness
    witness_ok = (not rep.invariant and w is not None and w.value.den.degree == 0
                  and np.allclose(w.value.num.coeffs, [0.0, 4.0, 1.0], atol=1e-9))
    shift_excluded = w is not None and not membership(backward_shift(w), total)
    witness = {"contains": poly_text(w.value.num.coeffs) if w is not None else None,
               "excludes": poly_text(backward_shift(w).value.num.coeffs) if w is not None else None}
    t.check("not-nearly-invariant", witness_ok and shift_excluded, witness=witness)
    return t


SUITES: tuple[Suite, ...] = (
    Suite("thm-1.3", "Theorem 1.3", "minimal model space containing C_psi(K_theta), three branches",
          thm_13, 75),
    Suite("thm-1.4-1.5", "Theorems 1.4 and 1.5",
          "C_psi(Ker T_F) equals Ker T_{(F o psi) psi/z} iff psi is an automorphism", thm_14_15, 100),
    Suite("thm-2.2", "Theorem 2.2", "minimal kernel K_min(h) = Ker T_{conj(z I O)/O}", thm_22, 50),
    Suite("thm-2.3", "Theorem 2.3", "maximal vectors k = g^{-1} conj(z p) with p outer", thm_23, 50),
    Suite("cor-2.6", "Corollary 2.6", "kernel of conj(theta o psi) psi/z for an automorphism psi", cor_26, 50),
    Suite("prop-2.7", "Proposition 2.7", "Smirnov-class tests for kernel inclusion and equality", prop_27, 60),
    Suite("prop-fgpsi", "Proposition FGpsi", "C_psi maps Ker T_F into Ker T_H, three routes", prop_fgpsi, 100),
    Suite("thm-utg", "Theorem uTg", "u Ker T_g lies in Ker T_{g conj(u)/u_o}", thm_utg, 50),
    Suite("prop-equal", "Proposition equal", "u Ker T_F = Ker T_{F/u} for outer invertible u", prop_equal, 50),
    Suite("thm-utg1", "Theorem uTg1", "H = psi (F o psi)(conj(u) o psi)/(z (u_o o psi))", thm_utg1, 50),
    Suite("lem-kmin", "Lemma Kmin", "u K_min(v) lies in K_min(uv)", lem_kmin, 50),
    Suite("thm-utg2", "Theorem uTg2", "G=ψ(F∘ψ)·conj(u)/(z u_o)", thm_utg2, 50),
    Suite("thm-3.8", "Theorem 3.8", "minimal model space containing C_psi(u K_theta), three branches",
          thm_38, 75),
    Suite("thm-ucpsi", "Theorem uCpsi", "minimal model space containing u C_psi(K_theta), three branches",
          thm_ucpsi, 75),
    Suite("prop-4-transports", "Propositions h+-, h+-1 and hg",
          "maximal vectors transported through equivalent symbols", prop_4_transports, 60),
    Suite("crofoot-remark", "Remark on maximal vectors", "h_+ theta/((1 - conj(a) theta) z) is maximal",
          crofoot_remark, 50),
    Suite("thm-model-case", "Theorem model case", "LCM family sum and orthogonal splittings",
          thm_model_case, 25),
    Suite("coburn", "Coburn lemma corollary", "Ker T_g or Ker T_{conj g} is trivial", coburn, 100),
    Suite("sum-proposition", "Sum proposition", "sum of model spaces with a common divisor is nearly invariant",
          sum_proposition, 50),
    Suite("final-example", "Final example", "sum of K_z and (z+2)^2 K_z is not nearly invariant",
          final_example, 1),
    Suite("dimension-law", "Kernel dimension law", "dim Ker T_sigma = max(-winding, 0), checked by the oracle",
          dimension_law, 200),
    Suite("oracle-crosscheck", "Model space identity", "Ker T_{conj theta} = K_theta, exact and numeric",
          oracle_crosscheck, 100),
)

_BY_NAME = {s.name: s for s in SUITES}


def list_suites() -> list[dict]:
    return [{"name": s.name, "paperAnchor": s.anchor, "description": s.description} for s in SUITES]


def get_suite(name: str) -> Suite:
    if name not in _BY_NAME:
        raise UnknownSuite(f"unknown suite {name!r}")
    return _BY_NAME[name]


@dataclass
class SuiteOutcome:
    results: list
    inconsistent: bool


def run_suite(name: str, seed: int, trials: int, cfg: RunConfig = RunConfig(),
              only_trial: int | None = None) -> SuiteOutcome:
    """Run the trials and aggregate one result per check name, in trial order."""
    suite = get_suite(name)
    indices = [only_trial] if only_trial is not None else list(range(trials))
    order: list[str] = []
    agg: dict[str, dict] = {}
    inconsistent = False
    for i in indices:
        rng = inst.sub_rng(seed, i)
        repro = {"suite": name, "seed": seed, "trial": i}
        try:
            trial = suite.run(rng, i, cfg)
        except InternalInconsistency as exc:
            inconsistent = True
            trial = Trial(checks=[("internal-consistency", False, {"error": type(exc).__name__,
                                                                  "message": str(exc)})])
        except TklabError as exc:
            trial = Trial(checks=[("no-error", False, {"error": type(exc).__name__, "message": str(exc)})])
        repro["instance"] = trial.instance
        for check, passed, details in trial.checks:
            if check not in agg:
                order.append(check)
                agg[check] = {"trials": 0, "passedTrials": 0, "failures": [], "sample": details}
            a = agg[check]
            a["trials"] += 1
            if passed:
                a["passedTrials"] += 1
            else:
                a["failures"].append({"trial": i, "details": details, "repro": repro})
    results = [{"check": c, "passed": agg[c]["passedTrials"] == agg[c]["trials"], "details": agg[c]}
               for c in order]
    return SuiteOutcome(results, inconsistent)
