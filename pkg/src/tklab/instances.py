"""Random desk-scale instances shared by the verification suites and tests.

Zeros inside the disc have modulus in [0.05, 0.85]; roots outside have
modulus in [1.2, 3].  Both ranges keep every object well clear of the
unit circle.
"""
from __future__ import annotations

import numpy as np

from .blaschke import BlaschkeProduct, H2Rational
from .ratfun import DEFAULT_TOL, Poly, RatFun, RootMultiset, ToleranceConfig
from .symbols import ToeplitzSymbol, winding_number

INNER_RADII = (0.05, 0.85)
OUTER_RADII = (1.2, 3.0)


def point_inside(rng: np.random.Generator) -> complex:
    r = rng.uniform(*INNER_RADII)
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def point_outside(rng: np.random.Generator) -> complex:
    r = rng.uniform(*OUTER_RADII)
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def unimodular(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.uniform()))


def blaschke(rng: np.random.Generator, degree: int, vanish: bool | None = None,
             unit: bool = False, tol: ToleranceConfig = DEFAULT_TOL) -> BlaschkeProduct:
    """Random Blaschke product of the given degree.

    ``vanish=True`` forces a zero at the origin, ``False`` forbids one and
    ``None`` leaves it to chance (probability 1/4 per product).
    """
    if vanish is None:
        vanish = degree > 0 and rng.uniform() < 0.25
    zeros = [0j] if vanish and degree > 0 else []
    zeros += [point_inside(rng) for _ in range(degree - len(zeros))]
    return BlaschkeProduct(zeros, 1.0 if unit else unimodular(rng), tol)


def automorphism(rng: np.random.Generator, vanish: bool | None = None,
                 tol: ToleranceConfig = DEFAULT_TOL) -> BlaschkeProduct:
    return blaschke(rng, 1, vanish, tol=tol)


def _roots(rng: np.random.Generator, n: int, p_inside: float) -> list[complex]:
    return [point_inside(rng) if rng.uniform() < p_inside else point_outside(rng) for _ in range(n)]


def rational(rng: np.random.Generator, num_deg: int, den_deg: int, p_inside: float = 0.5,
             tol: ToleranceConfig = DEFAULT_TOL) -> RatFun:
    """Random rational function with every zero and pole off the circle."""
    lead = complex(rng.normal() + 1j * rng.normal())
    if lead == 0:
        lead = 1.0
    num = Poly.from_roots(RootMultiset.from_points(_roots(rng, num_deg, p_inside)), lead)
    den = Poly.from_roots(RootMultiset.from_points(_roots(rng, den_deg, p_inside)))
    return RatFun(num, den, tol)


def outer_rational(rng: np.random.Generator, max_deg: int = 3, tol: ToleranceConfig = DEFAULT_TOL) -> H2Rational:
    """Outer ``u`` with zeros and poles outside the closed disc (so ``1/u`` is bounded)."""
    f = rational(rng, int(rng.integers(0, max_deg + 1)), int(rng.integers(0, max_deg + 1)), p_inside=0.0,
                 tol=tol)
    return H2Rational(f)


def h2_rational(rng: np.random.Generator, max_deg: int = 3, tol: ToleranceConfig = DEFAULT_TOL) -> H2Rational:
    """Random ``u`` in H^2: zeros anywhere off the circle, poles outside the disc."""
    nd = int(rng.integers(0, max_deg + 1))
    lead = complex(rng.normal() + 1j * rng.normal()) or 1.0
    num = Poly.from_roots(RootMultiset.from_points(_roots(rng, nd, 0.5)), lead)
    den = Poly.from_roots(RootMultiset.from_points(_roots(rng, int(rng.integers(0, max_deg + 1)), 0.0)))
    return H2Rational(RatFun(num, den, tol))


def symbol(rng: np.random.Generator, max_deg: int = 4, max_power: int = 3,
           tol: ToleranceConfig = DEFAULT_TOL) -> ToeplitzSymbol:
    """Random ``conj(A) B z^k`` with factors of degree at most ``max_deg``."""
    deg = lambda: int(rng.integers(0, max_deg + 1))
    anti = rational(rng, deg(), deg(), tol=tol)
    ana = rational(rng, deg(), deg(), tol=tol)
    return ToeplitzSymbol(anti, ana, int(rng.integers(-max_power, max_power + 1)))


def symbol_with_winding(rng: np.random.Generator, lo: int, hi: int, max_deg: int = 4,
                        max_power: int = 3, tol: ToleranceConfig = DEFAULT_TOL) -> ToeplitzSymbol:
    """Random symbol whose winding number lies in ``[lo, hi]``."""
    while True:
        s = symbol(rng, max_deg, max_power, tol)
        if lo <= winding_number(s) <= hi:
            return s


def nontrivial_symbol(rng: np.random.Generator, max_dim: int = 4, max_deg: int = 3,
                      tol: ToleranceConfig = DEFAULT_TOL) -> ToeplitzSymbol:
    return symbol_with_winding(rng, -max_dim, -1, max_deg, tol=tol)


def sub_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial of a seeded run."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))
