"""Finite Blaschke products, outer rational functions and rational H^2 elements."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import CircleZero, DegenerateInput, InternalInconsistency, NotInH2
from .ratfun import (
    DEFAULT_TOL,
    Poly,
    RatFun,
    RootMultiset,
    ToleranceConfig,
    circle_points,
    conj_reflect,
    poly_roots,
    root_residual,
)


class BlaschkeProduct:
    """``unimodular * prod ((z - a)/(1 - conj(a) z))^m`` over the zero multiset."""

    __slots__ = ("zeros", "unimodular", "tol", "_rat")

    def __init__(self, zeros: RootMultiset | Iterable = (), unimodular: complex = 1.0,
                 tol: ToleranceConfig = DEFAULT_TOL):
        if not isinstance(zeros, RootMultiset):
            zeros = RootMultiset.from_points(zeros, tol.root_match)
        for loc, _ in zeros:
            if abs(loc) > 1 - tol.disc_margin:
                raise DegenerateInput(f"Blaschke zero {loc} is not inside the disc margin")
        unimodular = complex(unimodular)
        if abs(abs(unimodular) - 1) > 1e-12:
            raise DegenerateInput(f"constant {unimodular} is not unimodular")
        self.zeros = zeros
        self.unimodular = unimodular
        self.tol = tol
        self._rat: RatFun | None = None

    # constructors -----------------------------------------------------
    @classmethod
    def factor(cls, a: complex, tol: ToleranceConfig = DEFAULT_TOL) -> "BlaschkeProduct":
        """Single factor ``(z - a)/(1 - conj(a) z)``."""
        return cls([a], 1.0, tol)

    @classmethod
    def z_power(cls, k: int = 1, tol: ToleranceConfig = DEFAULT_TOL) -> "BlaschkeProduct":
        return cls(RootMultiset(((0j, k),)) if k else RootMultiset(), 1.0, tol)

    @classmethod
    def automorphism(cls, a: complex, unimodular: complex = 1.0,
                     tol: ToleranceConfig = DEFAULT_TOL) -> "BlaschkeProduct":
        """``unimodular * (a - z)/(1 - conj(a) z)``."""
        return cls([a], -complex(unimodular), tol)

    # properties -------------------------------------------------------
    @property
    def degree(self) -> int:
        return self.zeros.degree

    def as_ratfun(self) -> RatFun:
        if self._rat is None:
            lead = self.unimodular
            den_roots = []
            for loc, m in self.zeros:
                if loc != 0:
                    lead = lead / (-np.conj(loc)) ** m
                    den_roots.append((1 / np.conj(loc), m))
            num = Poly.from_roots(self.zeros, lead)
            den = Poly.from_roots(RootMultiset(tuple(den_roots)))
            self._rat = RatFun(num, den, self.tol, normalize=False)
        return self._rat

    def __call__(self, z):
        return self.as_ratfun()(z)

    def value_at_zero(self) -> complex:
        return complex(self(0.0))

    def vanishes_at_zero(self) -> bool:
        return self.zeros.multiplicity(0j, self.tol.root_match) > 0

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        return BlaschkeProduct(self.zeros.union(other.zeros, self.tol.root_match),
                               self.unimodular * other.unimodular, self.tol)

    def __pow__(self, k: int) -> "BlaschkeProduct":
        out = BlaschkeProduct((), 1.0, self.tol)
        for _ in range(int(k)):
            out = out * self
        return out

    def same_zeros(self, other: "BlaschkeProduct") -> bool:
        """Equality up to the unimodular constant."""
        return self.zeros.same_as(other.zeros, self.tol.root_match)

    def normalized(self) -> "BlaschkeProduct":
        return BlaschkeProduct(self.zeros, 1.0, self.tol)

    def __repr__(self) -> str:
        z = ", ".join(f"{complex(loc):.6g}^{m}" if m > 1 else f"{complex(loc):.6g}" for loc, m in self.zeros)
        return f"BlaschkeProduct([{z}], unimodular={self.unimodular:.6g})"


def blaschke_quotient(b1: BlaschkeProduct, b2: BlaschkeProduct) -> BlaschkeProduct:
    """``b1 / b2`` when ``b2`` divides ``b1``."""
    zeros = b1.zeros.difference(b2.zeros, b1.tol.root_match)
    return BlaschkeProduct(zeros, b1.unimodular / b2.unimodular, b1.tol)


def blaschke_compose(theta: BlaschkeProduct, psi: BlaschkeProduct) -> BlaschkeProduct:
    """``theta o psi`` with its zeros found as preimages under ``psi``."""
    tol = theta.tol
    if psi.degree == 0:
        return BlaschkeProduct((), _unimodular_value(theta, psi.unimodular), tol)
    p = psi.as_ratfun()
    zeros = RootMultiset()
    for a, m in theta.zeros:
        if a == 0:
            zeros = zeros.union(RootMultiset(tuple((r, k * m) for r, k in psi.zeros)), tol.root_match)
            continue
        eq = p.num - p.den * a
        pre = poly_roots(eq, tol)
        for r, k in pre:
            if root_residual(eq, r) > tol.root_residual:
                raise InternalInconsistency(f"preimage {r} of {a} failed verification")
            zeros = zeros.add(r, k * m, tol.root_match)
    base = BlaschkeProduct(zeros, 1.0, tol)
    zeta = circle_points(16, 0.29)
    c = np.mean(theta(psi(zeta)) / base(zeta))
    return BlaschkeProduct(zeros, c / abs(c), tol)


def _unimodular_value(theta: BlaschkeProduct, c: complex) -> complex:
    v = complex(theta(c))
    return v / abs(v)


def blaschke_divides(b1: BlaschkeProduct, b2: BlaschkeProduct) -> bool:
    return b2.zeros.contains(b1.zeros, b1.tol.root_match)


def blaschke_gcd_lcm(bs: Sequence[BlaschkeProduct]) -> tuple[BlaschkeProduct, BlaschkeProduct]:
    if not bs:
        raise DegenerateInput("gcd/lcm of an empty list")
    tol = bs[0].tol
    g, l = bs[0].zeros, bs[0].zeros
    for b in bs[1:]:
        g = g.gcd(b.zeros, tol.root_match)
        l = l.lcm(b.zeros, tol.root_match)
    return BlaschkeProduct(g, 1.0, tol), BlaschkeProduct(l, 1.0, tol)


def is_automorphism(psi: BlaschkeProduct) -> bool:
    return psi.degree == 1


def divisors_one_lower(v: BlaschkeProduct) -> list[BlaschkeProduct]:
    """Every inner divisor of degree ``deg v - 1`` (one per distinct zero)."""
    out = []
    for i, (loc, m) in enumerate(v.zeros):
        items = list(v.zeros.roots)
        if m == 1:
            items.pop(i)
        else:
            items[i] = (loc, m - 1)
        out.append(BlaschkeProduct(RootMultiset(tuple(items)), 1.0, v.tol))
    return out


# ---------------------------------------------------------------------------
# Outer functions and rational H^2 elements
# ---------------------------------------------------------------------------


class OuterRational:
    """Rational function with no zeros or poles in the closed disc.

    With ``allow_circle_zeros`` zeros are only required to avoid the open
    disc (outer functions may vanish on the circle).
    """

    __slots__ = ("value",)

    def __init__(self, value: RatFun, allow_circle_zeros: bool = False):
        tol = value.tol
        if value.is_zero:
            raise DegenerateInput("the zero function is not outer")
        for loc, _ in value.poles():
            if abs(loc) < 1 + tol.disc_margin:
                raise NotInH2(f"outer candidate has a pole at {loc}")
        bound = 1 - tol.disc_margin if allow_circle_zeros else 1 + tol.disc_margin
        for loc, _ in value.zeros():
            if abs(loc) < bound:
                raise CircleZero(f"outer candidate vanishes at {loc}")
        self.value = value

    def __call__(self, z):
        return self.value(z)


def is_outer_rational(f: RatFun, allow_circle_zeros: bool = False) -> bool:
    try:
        OuterRational(f, allow_circle_zeros)
    except (NotInH2, CircleZero, DegenerateInput):
        return False
    return True


class H2Rational:
    """A rational function in H^2 together with its inner-outer split."""

    __slots__ = ("value", "_inner", "_outer")

    def __init__(self, value: RatFun, inner: BlaschkeProduct | None = None, outer: OuterRational | None = None):
        tol = value.tol
        if not value.is_zero:
            for loc, _ in value.poles():
                if abs(loc) < 1 + tol.disc_margin:
                    raise NotInH2(f"pole at {loc} is not outside the closed disc")
        self.value = value
        self._inner = inner
        self._outer = outer

    @classmethod
    def coerce(cls, f) -> "H2Rational":
        if isinstance(f, H2Rational):
            return f
        if isinstance(f, BlaschkeProduct):
            return cls(f.as_ratfun(), f, OuterRational(RatFun.const(1.0, f.tol)))
        if isinstance(f, RatFun):
            return cls(f)
        return cls(RatFun.const(complex(f)))

    @property
    def tol(self) -> ToleranceConfig:
        return self.value.tol

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def _factor(self):
        h = inner_outer_factorize(self.value)
        self._inner, self._outer = h._inner, h._outer

    @property
    def inner(self) -> BlaschkeProduct:
        if self._inner is None:
            self._factor()
        return self._inner

    @property
    def outer(self) -> OuterRational:
        if self._outer is None:
            self._factor()
        return self._outer

    def __call__(self, z):
        return self.value(z)

    def __mul__(self, other) -> "H2Rational":
        if isinstance(other, H2Rational):
            other = other.value
        elif isinstance(other, BlaschkeProduct):
            other = other.as_ratfun()
        return H2Rational(self.value * other)

    def __repr__(self) -> str:
        return f"H2Rational({self.value!r})"


def inner_outer_factorize(f: RatFun) -> H2Rational:
    """Split ``f = inner * outer`` with ``outer(0) > 0``."""
    tol = f.tol
    if f.is_zero:
        raise DegenerateInput("the zero function has no inner-outer factorization")
    for loc, _ in f.poles():
        if abs(loc) < 1 + tol.disc_margin:
            raise NotInH2(f"pole at {loc} is not outside the closed disc")
    inside = []
    for loc, m in f.zeros():
        if abs(abs(loc) - 1) < tol.disc_margin:
            raise CircleZero(f"zero at {loc} lies on the unit circle")
        if abs(loc) < 1:
            inside.append((loc, m))
    inner = BlaschkeProduct(RootMultiset(tuple(inside)), 1.0, tol)
    outer = f / inner.as_ratfun()
    c = complex(outer(0.0))
    phase = c / abs(c)
    outer = outer * (1 / phase)
    inner = BlaschkeProduct(inner.zeros, phase, tol)
    return H2Rational(f, inner, OuterRational(outer))


def smirnov_conj_member(r: RatFun) -> bool:
    """Whether ``r`` restricted to the circle is the conjugate of a Smirnov function.

    In the rational class that means the reflected function has no poles in
    the open disc; poles within the disc margin of the circle are tolerated.
    """
    if r.is_zero:
        raise DegenerateInput("the zero function")
    tol = r.tol
    refl = conj_reflect(r)
    return all(abs(loc) >= 1 - tol.disc_margin for loc, _ in refl.poles())
