"""Complex polynomials and rational functions in normalized form.

Everything downstream (Blaschke products, Toeplitz symbols, kernel bases)
is carried as a :class:`RatFun`.  Two representations live side by side in
a :class:`Poly`: the ascending coefficient vector and, when known, the root
multiset.  Roots are computed once (companion-matrix eigenvalues) and then
propagated through products, reflection and composition, so multiplicities
that are exact by construction stay exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegenerateInput, PoleEvaluation

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ToleranceConfig:
    """Every place floating point may disagree with exact mathematics."""

    root_match: float = 1e-8
    root_residual: float = 1e-8
    eval_pole: float = 1e-12
    leading: float = 1e-13
    disc_margin: float = 1e-3
    rank: float = 1e-9
    membership: float = 1e-8

    def replace(self, **changes) -> "ToleranceConfig":
        fields = {**self.__dict__, **{k: v for k, v in changes.items() if v is not None}}
        return ToleranceConfig(**fields)


DEFAULT_TOL = ToleranceConfig()


def _near(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


# ---------------------------------------------------------------------------
# Root multisets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootMultiset:
    """Distinct root locations with positive multiplicities."""

    roots: tuple = ()

    @classmethod
    def from_points(cls, points: Iterable[complex], tol: float = DEFAULT_TOL.root_match) -> "RootMultiset":
        out = cls()
        for p in points:
            out = out.add(complex(p), 1, tol)
        return out

    @classmethod
    def from_pairs(cls, pairs: Iterable, tol: float = DEFAULT_TOL.root_match) -> "RootMultiset":
        out = cls()
        for loc, mult in pairs:
            if int(mult) < 1:
                raise ValueError("multiplicities must be positive")
            out = out.add(complex(loc), int(mult), tol)
        return out

    def __iter__(self) -> Iterator:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def locations(self) -> np.ndarray:
        """Root locations repeated according to multiplicity."""
        pts = [loc for loc, m in self.roots for _ in range(m)]
        return np.array(pts, dtype=complex)

    def find(self, z: complex, tol: float) -> int:
        best, best_d = -1, math.inf
        for i, (loc, _) in enumerate(self.roots):
            d = abs(loc - z)
            if d < best_d and _near(loc, z, tol):
                best, best_d = i, d
        return best

    def multiplicity(self, z: complex, tol: float = DEFAULT_TOL.root_match) -> int:
        i = self.find(z, tol)
        return self.roots[i][1] if i >= 0 else 0

    def add(self, z: complex, mult: int, tol: float) -> "RootMultiset":
        i = self.find(z, tol)
        items = list(self.roots)
        if i >= 0:
            items[i] = (items[i][0], items[i][1] + mult)
        else:
            items.append((complex(z), mult))
        return RootMultiset(tuple(items))

    def union(self, other: "RootMultiset", tol: float = DEFAULT_TOL.root_match) -> "RootMultiset":
        """Multiplicities add (roots of a product)."""
        out = self
        for loc, m in other.roots:
            out = out.add(loc, m, tol)
        return out

    def lcm(self, other: "RootMultiset", tol: float = DEFAULT_TOL.root_match) -> "RootMultiset":
        items = list(self.roots)
        for loc, m in other.roots:
            i = self.find(loc, tol)
            if i < 0:
                items.append((loc, m))
            elif m > items[i][1]:
                items[i] = (items[i][0], m)
        return RootMultiset(tuple(items))

    def gcd(self, other: "RootMultiset", tol: float = DEFAULT_TOL.root_match) -> "RootMultiset":
        items = []
        for loc, m in self.roots:
            k = min(m, other.multiplicity(loc, tol))
            if k > 0:
                items.append((loc, k))
        return RootMultiset(tuple(items))

    def contains(self, other: "RootMultiset", tol: float = DEFAULT_TOL.root_match) -> bool:
        """Multiset containment ``other <= self``."""
        return all(self.multiplicity(loc, tol) >= m for loc, m in other.roots)

    def difference(self, other: "RootMultiset", tol: float = DEFAULT_TOL.root_match) -> "RootMultiset":
        if not self.contains(other, tol):
            raise ValueError("multiset difference requires containment")
        items = []
        for loc, m in self.roots:
            k = m - other.multiplicity(loc, tol)
            if k > 0:
                items.append((loc, k))
        return RootMultiset(tuple(items))

    def select(self, predicate) -> "RootMultiset":
        return RootMultiset(tuple((loc, m) for loc, m in self.roots if predicate(loc)))

    def count(self, predicate) -> int:
        return sum(m for loc, m in self.roots if predicate(loc))

    def same_as(self, other: "RootMultiset", tol: float = DEFAULT_TOL.root_match) -> bool:
        return self.contains(other, tol) and other.contains(self, tol)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Polynomial with complex coefficients in ascending degree order.

    Instances are treated as immutable values; the root cache is filled at
    most once and never changes the value.
    """

    __slots__ = ("coeffs", "_roots")

    def __init__(self, coeffs, roots: RootMultiset | None = None, leading_tol: float = DEFAULT_TOL.leading):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        scale = float(np.max(np.abs(c)))
        if not np.isfinite(scale):
            raise DegenerateInput("non-finite polynomial coefficient")
        if scale == 0.0:
            c = np.zeros(1, dtype=complex)
        else:
            n = c.size
            while n > 1 and abs(c[n - 1]) <= leading_tol * scale:
                n -= 1
            c = c[:n]
        c.flags.writeable = False
        self.coeffs = c
        if roots is not None and roots.degree != c.size - 1:
            roots = None
        self._roots = roots

    # construction -----------------------------------------------------
    @classmethod
    def from_roots(cls, roots: RootMultiset, lead: complex = 1.0) -> "Poly":
        pts = roots.locations()
        if pts.size == 0:
            return cls([lead], RootMultiset())
        return cls(lead * np.poly(pts)[::-1], roots)

    @classmethod
    def monomial(cls, k: int, lead: complex = 1.0) -> "Poly":
        return cls([0.0] * k + [lead], RootMultiset(((0j, k),)) if k else RootMultiset())

    @classmethod
    def constant(cls, c: complex) -> "Poly":
        return cls([c], RootMultiset() if c != 0 else None)

    # basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    @property
    def lead(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)

    def __repr__(self) -> str:
        return f"Poly({np.array2string(self.coeffs, precision=6)})"

    # arithmetic -------------------------------------------------------
    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = complex(other)
            return Poly(self.coeffs * c, self._roots if c != 0 else None)
        roots = None
        if self._roots is not None and other._roots is not None:
            roots = self._roots.union(other._roots)
        return Poly(np.convolve(self.coeffs, other.coeffs), roots)

    __rmul__ = __mul__

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-self.coeffs, self._roots)

    def __sub__(self, other) -> "Poly":
        return self + (-other if isinstance(other, Poly) else Poly([-complex(other)]))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1.0], RootMultiset())
        for _ in range(int(k)):
            out = out * self
        return out

    def divide_by_z(self, k: int = 1) -> "Poly":
        """Drop the ``k`` lowest coefficients (exact when they vanish)."""
        roots = None
        if self._roots is not None:
            m = self._roots.multiplicity(0j)
            if m >= k:
                roots = self._roots.difference(RootMultiset(((0j, k),)))
        return Poly(self.coeffs[k:] if self.coeffs.size > k else [0.0], roots)

    def reflect(self) -> "Poly":
        """Coefficients conjugated and reversed: ``z^n conj(p(1/conj z))``."""
        roots = None
        if self._roots is not None:
            roots = RootMultiset(tuple((1 / loc.conjugate(), m) for loc, m in self._roots if loc != 0))
        return Poly(np.conj(self.coeffs[::-1]), roots)


def poly_from_coeffs(coeffs: Sequence[complex]) -> Poly:
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def _taylor_at(c: complex, coeffs: np.ndarray, upto: int):
    """Taylor coefficients of p at ``c`` and matching rounding-error bounds."""
    a = list(coeffs)
    b = [abs(x) for x in coeffs]
    ac = abs(c)
    t, bound = [], []
    for _ in range(upto + 1):
        # synthetic division by (z - c); the remainder is the next coefficient
        n = len(a) - 1
        if n < 0:
            t.append(0j)
            bound.append(0.0)
            continue
        q = [0j] * n
        qb = [0.0] * n
        r, rb = a[n], b[n]
        for i in range(n - 1, -1, -1):
            q[i] = r
            qb[i] = rb
            r = a[i] + r * c
            rb = b[i] + rb * ac
        t.append(r)
        bound.append(rb)
        a, b = q, qb
    return t, bound


def _cluster_ok(c: complex, m: int, coeffs: np.ndarray, tol: float) -> bool:
    t, bound = _taylor_at(c, coeffs, m)
    n = coeffs.size - 1
    s = max(1.0, abs(c))
    for k in range(m):
        slack = 64 * (n + 1) * _EPS * bound[k] + abs(t[m]) * (tol * s) ** (m - k)
        if abs(t[k]) > slack:
            return False
    return abs(t[m]) > 0


def _polish_cluster(c: complex, m: int, coeffs: np.ndarray) -> complex:
    # Newton on the (m-1)-th derivative, which has a simple root at c
    for _ in range(3):
        t, _ = _taylor_at(c, coeffs, m)
        if t[m] == 0:
            break
        step = t[m - 1] / (m * t[m])
        if not np.isfinite(step) or abs(step) > 1e-6 * max(1.0, abs(c)):
            break
        c = c - step
    return c


def _components(pts: np.ndarray, idx: list, radius: float) -> list:
    parent = {i: i for i in idx}

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a_pos, i in enumerate(idx):
        for j in idx[a_pos + 1:]:
            if abs(pts[i] - pts[j]) <= radius * max(1.0, abs(pts[i])):
                parent[root(i)] = root(j)
    groups: dict = {}
    for i in idx:
        groups.setdefault(root(i), []).append(i)
    return list(groups.values())


def poly_roots(p: Poly, tol=DEFAULT_TOL) -> RootMultiset:
    """Roots of ``p`` with multiplicities.

    Companion-matrix eigenvalues (LAPACK balances the matrix), followed by
    cluster detection: a cluster of ``m`` eigenvalues is merged into one
    root of multiplicity ``m`` only when the first ``m`` Taylor coefficients
    at the cluster centroid vanish to rounding level.
    """
    if p.is_zero:
        raise DegenerateInput("roots of the zero polynomial")
    if p._roots is not None:
        return p._roots
    c = p.coeffs
    nzero = 0
    while nzero < c.size - 1 and c[nzero] == 0:
        nzero += 1
    core = c[nzero:]
    if core.size <= 1:
        eig = np.zeros(0, dtype=complex)
    else:
        eig = np.roots(core[::-1]).astype(complex)
    pairs: list = []
    if eig.size:
        _resolve_clusters(eig, list(range(eig.size)), 0.05, core, tol.root_match, pairs)
    polished = []
    for loc, m in pairs:
        if m == 1:
            loc = _newton_polish(loc, core)
        polished.append((loc, m))
    if nzero:
        polished.append((0j, nzero))
    rm = RootMultiset()
    for loc, m in polished:
        rm = rm.add(loc, m, tol.root_match)
    p._roots = rm
    return rm


def _resolve_clusters(pts, idx, radius, coeffs, tol, out):
    for comp in _components(pts, idx, radius):
        if len(comp) == 1:
            out.append((complex(pts[comp[0]]), 1))
            continue
        centre = complex(np.mean(pts[comp]))
        m = len(comp)
        if _cluster_ok(centre, m, coeffs, tol):
            out.append((_polish_cluster(centre, m, coeffs), m))
        elif radius / 10 >= tol:
            _resolve_clusters(pts, comp, radius / 10, coeffs, tol, out)
        else:
            out.extend((complex(pts[i]), 1) for i in comp)


def _newton_polish(z: complex, coeffs: np.ndarray) -> complex:
    rev = coeffs[::-1]
    drev = np.polyder(rev)
    for _ in range(2):
        f = np.polyval(rev, z)
        df = np.polyval(drev, z)
        if df == 0:
            break
        step = f / df
        if not np.isfinite(step) or abs(step) > 1e-6 * max(1.0, abs(z)):
            break
        z = z - step
    return complex(z)


def root_residual(p: Poly, z: complex) -> float:
    """Backward-error residual ``|p(z)| / sum |a_k| |z|^k``."""
    denom = float(np.polyval(np.abs(p.coeffs[::-1]), abs(z)))
    return abs(p(z)) / denom if denom else 0.0


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if np.isscalar(x):
        return Poly.constant(complex(x))
    return Poly(x)


def _cancel(rn: RootMultiset, rd: RootMultiset, tol: float):
    num_items = [list(it) for it in rn.roots]
    den_items = []
    cancelled = 0
    for loc, m in rd.roots:
        best, best_d = -1, math.inf
        for i, (nl, nm) in enumerate(num_items):
            if nm > 0 and _near(nl, loc, tol) and abs(nl - loc) < best_d:
                best, best_d = i, abs(nl - loc)
        if best >= 0:
            k = min(m, num_items[best][1])
            num_items[best][1] -= k
            cancelled += k
            m -= k
        if m > 0:
            den_items.append((loc, m))
    kept_n = RootMultiset(tuple((loc, m) for loc, m in num_items if m > 0))
    return kept_n, RootMultiset(tuple(den_items)), cancelled


class RatFun:
    """Rational function ``num/den``: monic denominator, no common roots."""

    __slots__ = ("num", "den", "tol")

    def __init__(self, num, den=1.0, tol: ToleranceConfig = DEFAULT_TOL, *, normalize: bool = True):
        num, den = _as_poly(num), _as_poly(den)
        self.tol = tol
        if normalize:
            num, den = _normalize(num, den, tol)
        self.num, self.den = num, den

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: complex, tol: ToleranceConfig = DEFAULT_TOL) -> "RatFun":
        return cls(Poly.constant(complex(c)), Poly.constant(1.0), tol)

    @classmethod
    def z(cls, k: int = 1, tol: ToleranceConfig = DEFAULT_TOL) -> "RatFun":
        if k >= 0:
            return cls(Poly.monomial(k), Poly.constant(1.0), tol)
        return cls(Poly.constant(1.0), Poly.monomial(-k), tol)

    @classmethod
    def from_roots(cls, zeros: RootMultiset, poles: RootMultiset = RootMultiset(), lead: complex = 1.0,
                   tol: ToleranceConfig = DEFAULT_TOL) -> "RatFun":
        return cls(Poly.from_roots(zeros, lead), Poly.from_roots(poles), tol)

    @classmethod
    def poly(cls, coeffs, tol: ToleranceConfig = DEFAULT_TOL) -> "RatFun":
        return cls(Poly(coeffs), Poly.constant(1.0), tol)

    # properties -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    @property
    def is_constant(self) -> bool:
        return self.num.degree == 0 and self.den.degree == 0

    def zeros(self) -> RootMultiset:
        return RootMultiset() if self.is_zero else poly_roots(self.num, self.tol)

    def poles(self) -> RootMultiset:
        return poly_roots(self.den, self.tol)

    def value_at_infinity(self) -> complex:
        if self.num.degree > self.den.degree:
            return complex(np.inf)
        if self.num.degree < self.den.degree:
            return 0j
        return self.num.lead / self.den.lead

    def __call__(self, z):
        return rat_eval(self, z)

    def __repr__(self) -> str:
        return f"RatFun(num={self.num.coeffs.tolist()}, den={self.den.coeffs.tolist()})"

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "RatFun":
        return other if isinstance(other, RatFun) else RatFun.const(complex(other), self.tol)

    def __mul__(self, other) -> "RatFun":
        other = self._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den, self.tol)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other.is_zero:
            raise DegenerateInput("division by the zero function")
        return RatFun(self.num * other.den, self.den * other.num, self.tol)

    def __rtruediv__(self, other) -> "RatFun":
        return self._coerce(other) / self

    def __add__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den, self.tol)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, self.tol, normalize=False)

    def __sub__(self, other) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFun":
        return self._coerce(other) - self

    def __pow__(self, k: int) -> "RatFun":
        k = int(k)
        base = self if k >= 0 else 1 / self
        return RatFun(base.num ** abs(k), base.den ** abs(k), self.tol)

    def compose(self, g: "RatFun") -> "RatFun":
        return rat_compose(self, g)

    def reflect(self) -> "RatFun":
        return conj_reflect(self)


def _normalize(num: Poly, den: Poly, tol: ToleranceConfig):
    if den.is_zero:
        raise DegenerateInput("zero denominator")
    if num.is_zero:
        return Poly([0.0]), Poly.constant(1.0)
    if num.norm <= tol.leading * den.norm * _EPS:
        return Poly([0.0]), Poly.constant(1.0)
    rd = poly_roots(den, tol)
    if den.degree == 0 or num.degree == 0:
        lead = den.lead
        return Poly(num.coeffs / lead, num._roots), Poly(den.coeffs / lead, rd)
    rn = poly_roots(num, tol)
    kept_n, kept_d, cancelled = _cancel(rn, rd, tol.root_match)
    if not cancelled:
        lead = den.lead
        return Poly(num.coeffs / lead, rn), Poly(den.coeffs / lead, rd)
    a = num.lead / den.lead
    return Poly.from_roots(kept_n, a), Poly.from_roots(kept_d)


def rat_eval(f: RatFun, z):
    """Value of ``f`` at ``z`` (scalar or array) by Horner evaluation."""
    zz = np.asarray(z, dtype=complex)
    d = f.den(zz)
    if np.any(np.abs(d) < f.tol.eval_pole * f.den.norm):
        raise PoleEvaluation(f"evaluation at a pole of {f!r}")
    out = f.num(zz) / d
    return complex(out) if out.ndim == 0 else out


def conj_reflect(f: RatFun) -> RatFun:
    """The rational function agreeing with ``conj(f)`` on the unit circle."""
    if f.is_zero:
        return f
    p, q = f.num.degree, f.den.degree
    num, den = f.num.reflect(), f.den.reflect()
    shift = q - p
    if shift > 0:
        num = num * Poly.monomial(shift)
    elif shift < 0:
        den = den * Poly.monomial(-shift)
    return RatFun(num, den, f.tol)


def _preimage_poly(g: RatFun, r: complex) -> Poly:
    """Numerator of ``g - r`` i.e. ``N - r D`` with roots filled in."""
    p = g.num - g.den * r
    poly_roots(p, g.tol)
    return p


def rat_compose(f: RatFun, g: RatFun) -> RatFun:
    """``f(g(z))`` as a normalized rational function."""
    tol = f.tol
    if f.is_constant or f.is_zero:
        return f
    if g.is_constant:
        return RatFun.const(f(g.num.coeffs[0] / g.den.coeffs[0]), tol)
    P, Q = f.num, f.den
    num = Poly.constant(P.lead)
    for r, m in poly_roots(P, tol):
        num = num * _preimage_poly(g, r) ** m
    den = Poly.constant(1.0)
    for s, m in poly_roots(Q, tol):
        den = den * _preimage_poly(g, s) ** m
    D = g.den
    if Q.degree > P.degree:
        num = num * D ** (Q.degree - P.degree)
    elif P.degree > Q.degree:
        den = den * D ** (P.degree - Q.degree)
    return RatFun(num, den, tol)


# ---------------------------------------------------------------------------
# Circle helpers
# ---------------------------------------------------------------------------


def circle_points(n: int = 64, offset: float = 0.0) -> np.ndarray:
    return np.exp(2j * np.pi * (np.arange(n) + offset) / n)


def max_circle_diff(f: RatFun, g: RatFun, n: int = 64) -> float:
    zeta = circle_points(n, 0.37)
    return float(np.max(np.abs(f(zeta) - g(zeta))))


def proportional_on_circle(f: RatFun, g: RatFun, n: int = 64, rtol: float = 1e-9) -> bool:
    """``f = c g`` for a nonzero constant ``c`` (checked on circle samples)."""
    zeta = circle_points(n, 0.37)
    a, b = f(zeta), g(zeta)
    if not np.any(np.abs(b) > 0):
        return not np.any(np.abs(a) > 0)
    c = np.vdot(b, a) / np.vdot(b, b)
    return bool(np.max(np.abs(a - c * b)) <= rtol * max(np.max(np.abs(a)), 1e-300)) and c != 0
