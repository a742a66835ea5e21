"""Finite-dimensional subspaces of rational H^2 functions and Toeplitz kernels.

Subspaces keep an explicit basis of rational functions.  Linear-algebra
decisions (rank, membership, inclusion) are made on circle samples of the
basis functions: on a common denominator the samples are an injective
image of the numerator coefficients, and the Euclidean geometry of the
samples approximates the H^2 geometry, so relative tolerances measure
distance in H^2 rather than in a monomial coefficient basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import qr

from .blaschke import (
    BlaschkeProduct,
    H2Rational,
    OuterRational,
    blaschke_compose,
    blaschke_gcd_lcm,
    blaschke_quotient,
    divisors_one_lower,
    is_automorphism,
    is_outer_rational,
    smirnov_conj_member,
)
from .errors import (
    AllVanishAtOrigin,
    DegenerateInput,
    HypothesisViolated,
    InconsistencyDetected,
    NotInKernel,
    NotNearlyInvariant,
    RankLoss,
    TrivialKernel,
)
from .oracle import DEFAULT_ORACLE, OracleConfig, gram_matrix, h2_inner_product
from .ratfun import (
    DEFAULT_TOL,
    Poly,
    RatFun,
    RootMultiset,
    ToleranceConfig,
    circle_points,
    conj_reflect,
    rat_compose,
)
from .symbols import EquivalenceWitness, ToeplitzSymbol, symbol_compose, wiener_hopf, winding_number


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


def _sample_count(degree: int) -> int:
    m = 256
    while m < 4 * (degree + 1):
        m *= 2
    return m


def _samples(f: RatFun, m: int) -> np.ndarray:
    return np.asarray(f(circle_points(m, 0.5)), dtype=complex)


def _unit_rows(fs: Sequence[RatFun], m: int) -> np.ndarray:
    rows = np.array([_samples(f, m) for f in fs], dtype=complex).reshape(len(fs), m)
    norms = np.linalg.norm(rows, axis=1)
    norms[norms == 0] = 1.0
    return rows / norms[:, None]


def _degree(fs: Sequence[RatFun]) -> int:
    return max((f.degree for f in fs), default=0)


class Subspace:
    """Span of rational H^2 functions.

    ``common_den`` is the least common denominator of the basis and row
    ``i`` of ``coeff_matrix`` is the numerator of basis element ``i`` over it.
    """

    __slots__ = ("basis", "common_den", "coeff_matrix", "tol", "_pole_roots", "_ortho")

    def __init__(self, basis: Sequence = (), tol: ToleranceConfig | None = None, *, check_rank: bool = True):
        elems = tuple(H2Rational.coerce(f) for f in basis)
        if any(f.is_zero for f in elems):
            raise DegenerateInput("the zero function cannot be a basis element")
        self.tol = tol or (elems[0].tol if elems else DEFAULT_TOL)
        self.basis = elems
        roots = RootMultiset()
        for f in elems:
            roots = roots.lcm(f.value.poles(), self.tol.root_match)
        self._pole_roots = roots
        self.common_den = Poly.from_roots(roots)
        rows = []
        for f in elems:
            cof = Poly.from_roots(roots.difference(f.value.poles(), self.tol.root_match))
            rows.append((f.value.num * cof).coeffs)
        width = max((r.size for r in rows), default=1)
        mat = np.zeros((len(rows), width), dtype=complex)
        for i, r in enumerate(rows):
            mat[i, : r.size] = r
        mat.flags.writeable = False
        self.coeff_matrix = mat
        self._ortho: dict = {}
        if check_rank and elems:
            q = self.orthonormal(self._m())
            if q.shape[1] < len(elems):
                raise RankLoss(f"basis of {len(elems)} functions has numerical rank {q.shape[1]}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def functions(self) -> list[RatFun]:
        return [f.value for f in self.basis]

    def _m(self, extra: int = 0) -> int:
        return _sample_count(max(_degree(self.functions), extra))

    def orthonormal(self, m: int) -> np.ndarray:
        """Orthonormal columns spanning the circle samples (``m`` rows)."""
        if m not in self._ortho:
            if not self.basis:
                self._ortho[m] = np.zeros((m, 0), dtype=complex)
            else:
                u, sv, _ = np.linalg.svd(_unit_rows(self.functions, m).T, full_matrices=False)
                r = int(np.sum(sv > self.tol.rank * sv[0]))
                self._ortho[m] = u[:, :r]
        return self._ortho[m]

    def pole_roots(self) -> RootMultiset:
        return self._pole_roots

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim})"


def _residual(f: RatFun, space: Subspace, m: int) -> float:
    v = _samples(f, m)
    nv = np.linalg.norm(v)
    if nv == 0:
        return 0.0
    v = v / nv
    q = space.orthonormal(m)
    return float(np.linalg.norm(v - q @ (q.conj().T @ v)))


def membership(f, space: Subspace) -> bool:
    """Whether ``f`` lies in the span (relative residual below tolerance)."""
    f = H2Rational.coerce(f)
    if f.is_zero:
        return True
    if space.dim == 0:
        return False
    if not space.pole_roots().contains(f.value.poles(), space.tol.root_match):
        return False
    m = space._m(f.value.degree)
    return _residual(f.value, space, m) < space.tol.membership


@dataclass(frozen=True)
class SubspaceRelations:
    included: bool
    equal: bool
    sum: Subspace
    intersection_dim: int


def subspace_relations(m1: Subspace, m2: Subspace) -> SubspaceRelations:
    """Inclusion of ``m1`` in ``m2``, equality, sum and intersection dimension."""
    tol = m1.tol
    m = _sample_count(max(_degree(m1.functions), _degree(m2.functions)))
    q1, q2 = m1.orthonormal(m), m2.orthonormal(m)
    stacked = np.hstack([q1, q2])
    if stacked.shape[1] == 0:
        r = 0
    else:
        sv = np.linalg.svd(stacked, compute_uv=False)
        r = int(np.sum(sv > tol.rank * sv[0]))
    included = r == m2.dim
    equal = included and m1.dim == m2.dim
    fs = m1.functions + m2.functions
    if r == 0:
        total = Subspace((), tol)
    else:
        _, _, piv = qr(_unit_rows(fs, m).T, mode="economic", pivoting=True)
        total = Subspace([fs[i] for i in sorted(piv[:r])], tol)
    return SubspaceRelations(included, equal, total, m1.dim + m2.dim - r)


def is_subspace_of(m1: Subspace, m2: Subspace) -> bool:
    return subspace_relations(m1, m2).included


def same_subspace(m1: Subspace, m2: Subspace) -> bool:
    return subspace_relations(m1, m2).equal


# ---------------------------------------------------------------------------
# Kernels and model spaces
# ---------------------------------------------------------------------------


def toeplitz_kernel(s: ToeplitzSymbol) -> Subspace:
    """``Ker T_s`` as the span of ``z^j / sigma_plus``, ``0 <= j < -kappa``."""
    wh = wiener_hopf(s)
    tol = s.tol
    if wh.kappa >= 0:
        return Subspace((), tol)
    inv = 1 / wh.sigma_plus
    return Subspace([RatFun.z(j, tol) * inv for j in range(-wh.kappa)], tol)


def annihilates(s: ToeplitzSymbol, f) -> bool:
    """Whether ``s * f`` lies in ``conj(z H^2)`` (so ``f`` is in ``Ker T_s``)."""
    f = H2Rational.coerce(f)
    if f.is_zero:
        return True
    r = s.realize() * f.value
    if r.num.degree >= r.den.degree:
        return False
    return all(abs(loc) < 1 for loc, _ in r.poles())


def model_space(theta: BlaschkeProduct) -> Subspace:
    """``K_theta`` spanned by ``z^j / q`` with ``q`` the denominator of ``theta``."""
    tol = theta.tol
    q = theta.as_ratfun().den
    return Subspace([RatFun(Poly.monomial(j), q, tol) for j in range(theta.degree)], tol)


def backward_shift(f) -> H2Rational:
    """``(f - f(0)) / z``."""
    f = H2Rational.coerce(f)
    r = f.value
    if r.is_zero:
        return f
    num = r.num - r.den * complex(r(0.0))
    if num.is_zero or num.coeffs.size <= 1:
        return H2Rational(RatFun.const(0.0, r.tol))
    return H2Rational(RatFun(Poly(num.coeffs[1:]), r.den, r.tol))


@dataclass(frozen=True)
class NearInvarianceReport:
    invariant: bool
    witness: H2Rational | None = None


def _vanishing_part(space: Subspace) -> list[RatFun]:
    """A basis of ``{f in space : f(0) = 0}``."""
    fs = space.functions
    vals = np.array([complex(f(0.0)) for f in fs])
    scale = max(1.0, float(np.max(np.abs([np.max(np.abs(_samples(f, 64))) for f in fs]))))
    if np.all(np.abs(vals) <= space.tol.membership * scale):
        return list(fs)
    p = int(np.argmax(np.abs(vals)))
    return [fs[i] - fs[p] * (vals[i] / vals[p]) for i in range(len(fs)) if i != p]


def is_nearly_sstar_invariant(space: Subspace) -> NearInvarianceReport:
    """Check ``S* f in M`` for a basis of the functions in ``M`` vanishing at 0."""
    if space.dim == 0:
        raise DegenerateInput("near invariance needs a nonzero subspace")
    for g in _vanishing_part(space):
        if g.is_zero:
            continue
        if not membership(backward_shift(g), space):
            w = g * (1 / g.num.lead)
            return NearInvarianceReport(False, H2Rational(w))
    return NearInvarianceReport(True, None)


def apply_composition(space: Subspace, psi: BlaschkeProduct) -> Subspace:
    """``C_psi(M)`` spanned by ``f o psi``."""
    p = psi.as_ratfun()
    return Subspace([rat_compose(f, p) for f in space.functions], space.tol)


def multiply_subspace(u, space: Subspace) -> Subspace:
    u = H2Rational.coerce(u)
    return Subspace([u.value * f for f in space.functions], space.tol)


# ---------------------------------------------------------------------------
# Minimal kernels and maximal vectors
# ---------------------------------------------------------------------------


def minimal_kernel_of_vector(h) -> tuple[ToeplitzSymbol, Subspace]:
    """Smallest Toeplitz kernel containing ``h``: symbol ``conj(z I O) / O``."""
    h = H2Rational.coerce(h)
    if h.is_zero:
        raise DegenerateInput("the zero vector lies in every kernel")
    outer = h.outer.value
    sym = ToeplitzSymbol(RatFun.z(1, h.tol) * h.inner.as_ratfun() * outer, 1 / outer, 0)
    return sym, toeplitz_kernel(sym)


@dataclass(frozen=True)
class MaximalityCertificate:
    """``vector = symbol^{-1} conj(z) conj(outer_witness)`` on the circle."""

    vector: H2Rational
    symbol: ToeplitzSymbol
    outer_witness: OuterRational


def is_maximal_vector(k, s: ToeplitzSymbol) -> MaximalityCertificate | None:
    """Certificate that ``Ker T_s`` is the minimal kernel containing ``k``."""
    k = H2Rational.coerce(k)
    if k.is_zero:
        raise DegenerateInput("the zero vector is never maximal")
    if not membership(k, toeplitz_kernel(s)):
        raise NotInKernel("vector is not in the kernel of the symbol")
    p = conj_reflect(RatFun.z(1, k.tol) * s.realize() * k.value)
    if is_outer_rational(p, allow_circle_zeros=True):
        return MaximalityCertificate(k, s, OuterRational(p, allow_circle_zeros=True))
    return None


def canonical_maximal_vector(s: ToeplitzSymbol) -> H2Rational:
    """``z^{n-1} / sigma_plus`` for a kernel of dimension ``n >= 1``."""
    wh = wiener_hopf(s)
    if wh.kappa >= 0:
        raise TrivialKernel("the kernel is trivial")
    return H2Rational(RatFun.z(-wh.kappa - 1, s.tol) / wh.sigma_plus)


def _require_nontrivial(*symbols: ToeplitzSymbol) -> None:
    for s in symbols:
        if winding_number(s) >= 0:
            raise TrivialKernel("the Toeplitz kernel is trivial")


def minimal_kernel_of_composed(F: ToeplitzSymbol, psi: BlaschkeProduct) -> ToeplitzSymbol:
    """Symbol ``(F o psi) psi / z`` of the smallest kernel containing ``C_psi(Ker T_F)``."""
    _require_nontrivial(F)
    return symbol_compose(F, psi) * ToeplitzSymbol(1.0, psi, -1)


def minimal_kernel_of_multiplied(u, g: ToeplitzSymbol) -> ToeplitzSymbol:
    """Symbol ``g conj(u) / u_o`` of the smallest kernel containing ``u Ker T_g``."""
    _require_nontrivial(g)
    u = H2Rational.coerce(u)
    return g * ToeplitzSymbol(u.value, 1 / u.outer.value, 0)


def multiplied_kernel_exact(u, F: ToeplitzSymbol) -> ToeplitzSymbol:
    """Symbol ``F / u`` whose kernel equals ``u Ker T_F`` for outer, invertible ``u``."""
    u = H2Rational.coerce(u)
    if u.inner.degree > 0:
        raise HypothesisViolated("u has a nontrivial inner factor")
    for loc, _ in u.value.zeros():
        if abs(loc) < 1 + u.tol.disc_margin:
            raise HypothesisViolated(f"u vanishes at {loc} in the closed disc")
    return F * ToeplitzSymbol(1.0, 1 / u.value, 0)


def minimal_kernel_pre_multiplied_composed(u, F: ToeplitzSymbol, psi: BlaschkeProduct) -> ToeplitzSymbol:
    """Symbol ``psi (F o psi) (conj(u) o psi) / (z (u_o o psi))`` for ``C_psi(u Ker T_F)``."""
    _require_nontrivial(F)
    u = H2Rational.coerce(u)
    if u.is_zero:
        raise DegenerateInput("u must be nonzero")
    p = psi.as_ratfun()
    weight = ToeplitzSymbol(rat_compose(u.value, p), p / rat_compose(u.outer.value, p), -1)
    return symbol_compose(F, psi) * weight


def minimal_kernel_post_multiplied_composed(u, F: ToeplitzSymbol, psi: BlaschkeProduct) -> ToeplitzSymbol:
    """Symbol ``psi (F o psi) conj(u) / (z u_o)`` for ``u C_psi(Ker T_F)``."""
    _require_nontrivial(F)
    u = H2Rational.coerce(u)
    if u.is_zero:
        raise DegenerateInput("u must be nonzero")
    p = psi.as_ratfun()
    weight = ToeplitzSymbol(u.value, p / u.outer.value, -1)
    return symbol_compose(F, psi) * weight


# ---------------------------------------------------------------------------
# Minimal model spaces
# ---------------------------------------------------------------------------

BRANCH_THETA_VANISHES = "theta-vanishes"
BRANCH_PSI_VANISHES = "psi-vanishes"
BRANCH_GENERIC = "generic"


def model_branch(theta: BlaschkeProduct, psi: BlaschkeProduct, weight_vanishes: bool = False) -> str:
    if theta.vanishes_at_zero() or weight_vanishes:
        return BRANCH_THETA_VANISHES
    if psi.vanishes_at_zero():
        return BRANCH_PSI_VANISHES
    return BRANCH_GENERIC


def _model_core(theta: BlaschkeProduct, psi: BlaschkeProduct, weight: BlaschkeProduct | None,
                weight_vanishes: bool) -> BlaschkeProduct:
    if theta.degree < 1:
        raise DegenerateInput("K_theta must be nontrivial")
    x = blaschke_compose(theta, psi)
    if weight is not None:
        x = x * weight
    z = BlaschkeProduct.z_power(1, theta.tol)
    branch = model_branch(theta, psi, weight_vanishes)
    if branch == BRANCH_THETA_VANISHES:
        v = blaschke_quotient(z * x, psi)
    elif branch == BRANCH_PSI_VANISHES:
        v = x
    else:
        v = z * x
    return v.normalized()


def minimal_model_containing_composition(theta: BlaschkeProduct, psi: BlaschkeProduct) -> BlaschkeProduct:
    """Inner ``v`` with ``K_v`` the smallest model space containing ``C_psi(K_theta)``."""
    return _model_core(theta, psi, None, False)


def minimal_model_weighted_pre(u: BlaschkeProduct, theta: BlaschkeProduct, psi: BlaschkeProduct) -> BlaschkeProduct:
    """Inner ``eta`` for ``C_psi(u K_theta)`` with inner ``u``."""
    return _model_core(theta, psi, blaschke_compose(u, psi), u.vanishes_at_zero())


def minimal_model_weighted_post(u: BlaschkeProduct, theta: BlaschkeProduct, psi: BlaschkeProduct) -> BlaschkeProduct:
    """Inner ``eta`` for ``u C_psi(K_theta)`` with inner ``u``, by the three-case formula.

    The formula is minimal whenever ``u`` shares no zero with ``psi / z``;
    :func:`minimal_inner_multiple` gives the minimal ``eta`` in general.
    """
    return _model_core(theta, psi, u, False)


def minimal_inner_multiple(x: BlaschkeProduct, psi: BlaschkeProduct) -> BlaschkeProduct:
    """Smallest inner ``eta`` with ``eta psi / (z x)`` bounded: ``z x / gcd(z x, psi)``."""
    zx = BlaschkeProduct.z_power(1, x.tol) * x
    g, _ = blaschke_gcd_lcm([zx, psi])
    return blaschke_quotient(zx, g).normalized()


@dataclass(frozen=True)
class MinimalityReport:
    contains: bool
    divisor_contains: tuple
    minimal: bool


def certify_minimal_model(image: Subspace, v: BlaschkeProduct) -> MinimalityReport:
    """Containment in ``K_v`` and failure for every divisor of degree ``deg v - 1``."""
    contains = subspace_relations(image, model_space(v)).included
    div = tuple(subspace_relations(image, model_space(d)).included for d in divisors_one_lower(v))
    return MinimalityReport(contains, div, contains and not any(div))


def composition_image(theta: BlaschkeProduct, psi: BlaschkeProduct, u: BlaschkeProduct | None = None,
                      mode: str = "plain") -> Subspace:
    """``C_psi(K_theta)``, ``C_psi(u K_theta)`` (``pre``) or ``u C_psi(K_theta)`` (``post``)."""
    k = model_space(theta)
    if mode == "pre":
        return apply_composition(multiply_subspace(u, k), psi)
    if mode == "post":
        return multiply_subspace(u, apply_composition(k, psi))
    return apply_composition(k, psi)


# ---------------------------------------------------------------------------
# Composition predicates and maximal-vector transport
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositionReport:
    holds: bool
    via_smirnov: bool
    via_maximal_vector: bool


def composition_maps_into(F: ToeplitzSymbol, psi: BlaschkeProduct, H: ToeplitzSymbol) -> CompositionReport:
    """Whether ``C_psi`` maps ``Ker T_F`` into ``Ker T_H``, by three independent routes."""
    _require_nontrivial(F, H)
    p = psi.as_ratfun()
    kf, kh = toeplitz_kernel(F), toeplitz_kernel(H)
    holds = subspace_relations(apply_composition(kf, psi), kh).included
    expr = H.realize() / symbol_compose(F, psi).realize() * RatFun.z(1, F.tol) / p
    via_smirnov = smirnov_conj_member(expr)
    k = canonical_maximal_vector(F)
    via_max = membership(rat_compose(k.value, p), kh)
    if not holds == via_smirnov == via_max:
        raise InconsistencyDetected(
            f"containment={holds}, smirnov={via_smirnov}, maximal-vector={via_max}")
    return CompositionReport(holds, via_smirnov, via_max)


TRANSPORT_VARIANTS = ("timesPsi", "plain", "psiOverZ")


def _minus_symbol(h_minus: RatFun) -> ToeplitzSymbol:
    """``h_minus`` (analytic outside the disc) as a conjugate-analytic symbol factor."""
    return ToeplitzSymbol(conj_reflect(h_minus), 1.0, 0)


def transport_maximal_vector(k, g: ToeplitzSymbol, psi: BlaschkeProduct, w: EquivalenceWitness,
                             variant: str) -> tuple[H2Rational, ToeplitzSymbol]:
    """Maximal vector of an equivalent kernel built from ``g o psi``."""
    if variant not in TRANSPORT_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "psiOverZ" and not psi.vanishes_at_zero():
        raise HypothesisViolated("psi(0) must vanish for the psi/z transport")
    k = H2Rational.coerce(k)
    if is_maximal_vector(k, g) is None:
        raise HypothesisViolated("k is not a maximal vector for g")
    p = psi.as_ratfun()
    tol = k.tol
    base = rat_compose(k.value, p) / w.h_plus
    core = _minus_symbol(w.h_minus) * symbol_compose(g, psi) * ToeplitzSymbol(1.0, w.h_plus, 0)
    if variant == "timesPsi":
        return H2Rational(base * p), core * ToeplitzSymbol.z_power(-1)
    if variant == "plain":
        return H2Rational(base), core * ToeplitzSymbol(1.0, p, -1)
    return H2Rational(base * p / RatFun.z(1, tol)), core


def crofoot_maximal_vector(theta: BlaschkeProduct, a: complex) -> H2Rational:
    """``h_+ theta / ((1 - conj(a) theta) z)`` with ``h_+ = 1/(1 + conj(a) beta)``."""
    if not theta.vanishes_at_zero():
        raise HypothesisViolated("theta(0) must vanish")
    tol = theta.tol
    if abs(a) >= 1 - tol.disc_margin:
        raise HypothesisViolated("|a| must be below 1 - disc margin")
    t = theta.as_ratfun()
    ca = np.conj(a)
    denom = 1 - t * ca
    beta = (t - a) / denom
    h_plus = 1 / (1 + beta * ca)
    return H2Rational(h_plus / denom * t / RatFun.z(1, tol))


def shifted_inner(theta: BlaschkeProduct) -> H2Rational:
    """``S* theta``."""
    return backward_shift(H2Rational.coerce(theta))


# ---------------------------------------------------------------------------
# Families, Coburn and Hitt
# ---------------------------------------------------------------------------


def _unit_norm(fs: Sequence[RatFun], cfg: OracleConfig) -> list[RatFun]:
    return [f * (1 / np.sqrt(h2_inner_product(f, f, cfg).real)) for f in fs]


@dataclass(frozen=True)
class LcmFamilyResult:
    K: Subspace
    theta: BlaschkeProduct
    decomposition_checks: tuple = field(default_factory=tuple)


def lcm_minimal_kernel_family(thetas: Sequence[BlaschkeProduct], psi: BlaschkeProduct,
                              cfg: OracleConfig = DEFAULT_ORACLE) -> LcmFamilyResult:
    """``K_{z (theta o psi)}`` for the LCM ``theta`` with its sum and orthogonal splittings."""
    if not thetas:
        raise DegenerateInput("empty family")
    _, theta = blaschke_gcd_lcm(list(thetas))
    z = BlaschkeProduct.z_power(1, theta.tol)
    big = model_space(z * blaschke_compose(theta, psi))
    total = None
    checks = []
    for t in thetas:
        part = model_space(z * blaschke_compose(t, psi))
        total = part if total is None else subspace_relations(total, part).sum
    checks.append(subspace_relations(total, big).equal)
    for t in thetas:
        zt = z * blaschke_compose(t, psi)
        first = model_space(zt)
        second = multiply_subspace(zt, model_space(blaschke_compose(blaschke_quotient(theta, t), psi)))
        ok = first.dim + second.dim == big.dim
        ok = ok and is_subspace_of(first, big) and is_subspace_of(second, big)
        if ok and first.dim and second.dim:
            fs = _unit_norm(first.functions, cfg)
            gs = _unit_norm(second.functions, cfg)
            cross = max(abs(h2_inner_product(f, g, cfg)) for f in fs for g in gs)
            ok = cross < 1e-9
        checks.append(bool(ok))
    return LcmFamilyResult(big, theta, tuple(checks))


def coburn_dims(s: ToeplitzSymbol) -> tuple[int, int]:
    return toeplitz_kernel(s).dim, toeplitz_kernel(s.adjoint()).dim


def coburn_check(s: ToeplitzSymbol) -> bool:
    """At least one of ``Ker T_s`` and ``Ker T_{conj s}`` is trivial."""
    return min(coburn_dims(s)) == 0


@dataclass(frozen=True)
class HittDecomposition:
    u: H2Rational
    functions: tuple
    K: Subspace | None
    isometry_defect: float


def hitt_decomposition(space: Subspace, cfg: OracleConfig = DEFAULT_ORACLE) -> HittDecomposition:
    """``M = u K`` with ``u`` the normalized projection of 1 onto ``M``."""
    report = is_nearly_sstar_invariant(space)
    if not report.invariant:
        raise NotNearlyInvariant("the subspace is not nearly S*-invariant")
    fs = space.functions
    vals = np.array([complex(f(0.0)) for f in fs])
    if np.all(np.abs(vals) <= space.tol.membership * max(1.0, float(np.max(np.abs(vals))))):
        raise AllVanishAtOrigin("every element vanishes at the origin")
    gram = gram_matrix(fs, cfg)
    c = np.linalg.solve(gram, np.conj(vals))
    proj = fs[0] * c[0]
    for ci, f in zip(c[1:], fs[1:]):
        proj = proj + f * ci
    u0 = complex(proj(0.0)).real
    u = proj * (1 / np.sqrt(u0))
    ks = tuple(f / u for f in fs)
    regular = all(abs(loc) >= 1 + space.tol.disc_margin for k in ks for loc, _ in k.poles())
    if not regular:
        return HittDecomposition(H2Rational(u), ks, None, float("nan"))
    kn = _unit_norm(ks, cfg)
    defect = 0.0
    for i, a in enumerate(kn):
        for b in kn[i:]:
            d = abs(h2_inner_product(u * a, u * b, cfg) - h2_inner_product(a, b, cfg))
            defect = max(defect, d)
    return HittDecomposition(H2Rational(u), ks, Subspace(ks, space.tol), float(defect))
