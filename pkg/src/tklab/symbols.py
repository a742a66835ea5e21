"""Toeplitz symbols ``conj(A) * B * z^k`` with rational ``A`` and ``B``.

On the unit circle such a symbol coincides with the single rational
function ``reflect(A) * B * z^k`` (see :meth:`ToeplitzSymbol.realize`), so
winding numbers, Wiener-Hopf factors and the Smirnov-type predicates all
reduce to locating its zeros and poles relative to the disc.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, smirnov_conj_member
from .errors import CircleSingularity, DegenerateInput, TrivialKernel, WindingMismatch
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

ARGUMENT_SAMPLES = 4096


def _strip_origin(f: RatFun) -> tuple[RatFun, int]:
    """Split ``f = z^m * g`` with ``g`` free of zeros and poles at the origin."""
    tol = f.tol
    mz = f.zeros().multiplicity(0j, tol.root_match)
    mp = f.poles().multiplicity(0j, tol.root_match)
    if mz == 0 and mp == 0:
        return f, 0
    zeros = f.zeros().difference(RootMultiset(((0j, mz),))) if mz else f.zeros()
    poles = f.poles().difference(RootMultiset(((0j, mp),))) if mp else f.poles()
    g = RatFun(Poly.from_roots(zeros, f.num.lead), Poly.from_roots(poles), tol, normalize=False)
    return g, mz - mp


def _check_off_circle(f: RatFun, what: str) -> None:
    margin = f.tol.disc_margin
    for loc, _ in f.zeros():
        if abs(abs(loc) - 1) < margin:
            raise CircleSingularity(f"{what} vanishes near the circle at {loc}")
    for loc, _ in f.poles():
        if abs(abs(loc) - 1) < margin:
            raise CircleSingularity(f"{what} has a pole near the circle at {loc}")


class ToeplitzSymbol:
    """The circle function ``conj(anti) * ana * z^power``.

    Factors of ``z`` in ``anti`` or ``ana`` are moved into ``power`` on
    construction, so ``conj(z) * z`` is stored as the constant symbol.
    """

    __slots__ = ("anti", "ana", "power", "_real")

    def __init__(self, anti=1.0, ana=1.0, power: int = 0, tol: ToleranceConfig | None = None):
        anti = _as_rat(anti, tol)
        ana = _as_rat(ana, tol)
        if anti.is_zero or ana.is_zero:
            raise DegenerateInput("a Toeplitz symbol factor is identically zero")
        anti, ma = _strip_origin(anti)
        ana, mb = _strip_origin(ana)
        _check_off_circle(anti, "anti-analytic factor")
        _check_off_circle(ana, "analytic factor")
        self.anti = anti
        self.ana = ana
        self.power = int(power) + mb - ma
        self._real: RatFun | None = None

    # constructors -----------------------------------------------------
    @classmethod
    def conj_of(cls, f, power: int = 0) -> "ToeplitzSymbol":
        """``conj(f) * z^power``; ``f`` may be a Blaschke product or RatFun."""
        return cls(f, 1.0, power)

    @classmethod
    def analytic(cls, f, power: int = 0) -> "ToeplitzSymbol":
        return cls(1.0, f, power)

    @classmethod
    def z_power(cls, k: int) -> "ToeplitzSymbol":
        return cls(1.0, 1.0, k)

    @property
    def tol(self) -> ToleranceConfig:
        return self.anti.tol

    def realize(self) -> RatFun:
        """Rational function equal to the symbol on the unit circle."""
        if self._real is None:
            self._real = conj_reflect(self.anti) * self.ana * RatFun.z(self.power, self.tol)
        return self._real

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return np.conj(self.anti(zeta)) * self.ana(zeta) * zeta ** self.power

    def __mul__(self, other) -> "ToeplitzSymbol":
        return symbol_mul(self, other)

    def __truediv__(self, other) -> "ToeplitzSymbol":
        return symbol_mul(self, other.inverse())

    def inverse(self) -> "ToeplitzSymbol":
        return ToeplitzSymbol(1 / self.anti, 1 / self.ana, -self.power)

    def adjoint(self) -> "ToeplitzSymbol":
        """Symbol of the adjoint operator, ``conj(sigma)``."""
        return ToeplitzSymbol(self.ana, self.anti, -self.power)

    def __repr__(self) -> str:
        return f"ToeplitzSymbol(anti={self.anti!r}, ana={self.ana!r}, power={self.power})"


def _as_rat(f, tol: ToleranceConfig | None) -> RatFun:
    if isinstance(f, RatFun):
        return f
    if isinstance(f, BlaschkeProduct):
        return f.as_ratfun()
    if hasattr(f, "value") and isinstance(f.value, RatFun):
        return f.value
    return RatFun.const(complex(f), tol or DEFAULT_TOL)


def _as_symbol(s) -> ToeplitzSymbol:
    if isinstance(s, ToeplitzSymbol):
        return s
    return ToeplitzSymbol.analytic(s)


@dataclass(frozen=True)
class WienerHopfFactorization:
    sigma_minus: RatFun
    kappa: int
    sigma_plus: RatFun


@dataclass(frozen=True)
class EquivalenceWitness:
    """``G1 = h_minus * G2 * h_plus`` on the circle."""

    h_plus: RatFun
    h_minus: RatFun


def symbol_mul(s1, s2) -> ToeplitzSymbol:
    s1, s2 = _as_symbol(s1), _as_symbol(s2)
    return ToeplitzSymbol(s1.anti * s2.anti, s1.ana * s2.ana, s1.power + s2.power)


def symbol_compose(s: ToeplitzSymbol, psi: BlaschkeProduct) -> ToeplitzSymbol:
    """The symbol ``sigma o psi`` for an inner ``psi``."""
    p = psi.as_ratfun()
    anti = rat_compose(s.anti, p)
    ana = rat_compose(s.ana, p)
    if s.power > 0:
        ana = ana * p ** s.power
    elif s.power < 0:
        anti = anti * p ** (-s.power)
    return ToeplitzSymbol(anti, ana, 0)


def _disc_count(f: RatFun) -> int:
    inside = lambda loc: abs(loc) < 1
    return f.zeros().count(inside) - f.poles().count(inside)


def _argument_principle(s: ToeplitzSymbol, n: int = ARGUMENT_SAMPLES) -> float:
    vals = s(circle_points(n))
    steps = np.angle(np.roll(vals, -1) / vals)
    return float(np.sum(steps) / (2 * np.pi))


def winding_number(s: ToeplitzSymbol) -> int:
    """Index of the symbol, from root counts and checked by the argument principle."""
    kappa = s.power + _disc_count(s.ana) - _disc_count(s.anti)
    numeric = _argument_principle(s)
    if abs(numeric - kappa) > 0.25:
        raise WindingMismatch(f"root count gives {kappa}, argument principle gives {numeric:.6f}")
    return kappa


def wiener_hopf(s: ToeplitzSymbol) -> WienerHopfFactorization:
    """``sigma = sigma_minus * z^kappa * sigma_plus`` on the circle.

    ``sigma_minus`` is 1 at infinity and has its zeros and poles inside the
    disc; ``sigma_plus`` has its zeros and poles outside the closed disc.
    """
    r = s.realize()
    tol = r.tol
    zeros, poles = r.zeros(), r.poles()
    for loc, _ in list(zeros) + list(poles):
        if abs(abs(loc) - 1) < tol.disc_margin:
            raise CircleSingularity(f"root {loc} lies near the unit circle")
    inside = lambda loc: abs(loc) < 1
    outside = lambda loc: abs(loc) > 1
    nonzero_inside = lambda loc: 0 < abs(loc) < 1
    zin, pin = zeros.select(nonzero_inside), poles.select(nonzero_inside)
    kappa = zeros.count(inside) - poles.count(inside)
    if kappa != winding_number(s):
        raise WindingMismatch("realized symbol and factor counts disagree")
    shift = pin.degree - zin.degree
    minus = RatFun(Poly.from_roots(zin), Poly.from_roots(pin), tol) * RatFun.z(shift, tol)
    plus = RatFun(Poly.from_roots(zeros.select(outside), r.num.lead / r.den.lead),
                  Poly.from_roots(poles.select(outside)), tol)
    return WienerHopfFactorization(minus, kappa, plus)


def _no_roots_in_disc(f: RatFun) -> bool:
    return all(abs(loc) >= 1 for loc, _ in f.zeros()) and all(abs(loc) >= 1 for loc, _ in f.poles())


def kernels_equal_symbolic(g: ToeplitzSymbol, h: ToeplitzSymbol) -> bool:
    """Whether ``Ker T_g = Ker T_h``: the ratio ``g/h`` is a quotient of conjugate outer functions.

    When both kernels are trivial they are equal; when exactly one is, they
    are not.
    """
    kg, kh = winding_number(g), winding_number(h)
    if kg >= 0 or kh >= 0:
        return kg >= 0 and kh >= 0
    r = g.realize() / h.realize()
    return _no_roots_in_disc(conj_reflect(r))


def kernel_included_symbolic(g: ToeplitzSymbol, h: ToeplitzSymbol) -> bool:
    """Whether ``Ker T_g`` is contained in ``Ker T_h`` (both nontrivial)."""
    if winding_number(g) >= 0 or winding_number(h) >= 0:
        raise TrivialKernel("inclusion test needs nontrivial kernels")
    return smirnov_conj_member(h.realize() / g.realize())


def symbols_equivalent(g1: ToeplitzSymbol, g2: ToeplitzSymbol) -> EquivalenceWitness | None:
    wh = wiener_hopf(g1 / g2)
    if wh.kappa != 0:
        return None
    return EquivalenceWitness(h_plus=wh.sigma_plus, h_minus=wh.sigma_minus)
