"""Independent numeric engine: truncated Toeplitz matrices and Taylor embeddings.

Nothing here feeds back into the exact computations.  The oracle only
samples functions on the circle or expands them in power series, so it
shares no root-finding or normalization logic with the exact engine.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.signal import lfilter

from .errors import DimensionMismatch, GapFailure, QuadratureMismatch, TruncationWarning
from .ratfun import RatFun


@dataclass(frozen=True)
class OracleConfig:
    truncation: int = 256
    fft_size: int = 4096
    svd_gap_tol: float = 1e-6
    angle_tol: float = 1e-8
    gap: float = 1e3

    def __post_init__(self):
        if self.truncation < 64:
            raise ValueError("truncation must be at least 64")
        if self.fft_size & (self.fft_size - 1):
            raise ValueError("fft_size must be a power of two")
        if self.fft_size < 4 * self.truncation:
            raise ValueError("fft_size must be at least 4 * truncation")


DEFAULT_ORACLE = OracleConfig()


@dataclass(frozen=True)
class NumericSubspace:
    """Orthonormal columns of Taylor coefficients (``truncation`` rows)."""

    columns: np.ndarray
    truncation: int

    @property
    def dim(self) -> int:
        return self.columns.shape[1]


@dataclass(frozen=True)
class FourierSeries:
    """Coefficients ``c_n`` for ``n = -N..N`` stored at offset ``N``."""

    coeffs: np.ndarray
    truncation: int
    tail_ok: bool

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[self.truncation + n])


def _sym_values(s, zeta: np.ndarray) -> np.ndarray:
    return np.asarray(s(zeta), dtype=complex)


def _circle_fft(s, cfg: OracleConfig) -> np.ndarray:
    m = cfg.fft_size
    zeta = np.exp(2j * np.pi * np.arange(m) / m)
    return np.fft.fft(_sym_values(s, zeta)) / m


def fourier_coefficients(s, cfg: OracleConfig = DEFAULT_ORACLE) -> FourierSeries:
    """Fourier coefficients of a circle function from ``fft_size`` samples."""
    n = cfg.truncation
    coeffs = _circle_fft(s, cfg)[np.arange(-n, n + 1) % cfg.fft_size]
    scale = float(np.max(np.abs(coeffs)))
    tail = max(abs(coeffs[0]), abs(coeffs[-1]))
    ok = tail < 1e-9 * scale
    if not ok:
        warnings.warn(f"Fourier tail {tail:.3g} exceeds 1e-9 of the peak", TruncationWarning, stacklevel=2)
    return FourierSeries(coeffs, n, ok)


def toeplitz_section(s, cfg: OracleConfig = DEFAULT_ORACLE) -> np.ndarray:
    """The ``2N x N`` section ``[c_{i-j}]`` of the Toeplitz matrix of ``s``.

    Twice as many rows as columns, so that shifts of the last columns are not
    cut off (a square section would give ``z`` a spurious kernel vector).
    """
    n = cfg.truncation
    full = _circle_fft(s, cfg)
    i = np.arange(2 * n)[:, None]
    j = np.arange(n)[None, :]
    return full[(i - j) % cfg.fft_size]


def truncated_kernel(s, cfg: OracleConfig = DEFAULT_ORACLE) -> NumericSubspace:
    """Numerical null space of the truncated Toeplitz matrix."""
    t = toeplitz_section(s, cfg)
    _, sv, vh = np.linalg.svd(t, full_matrices=False)
    smax = sv[0] if sv.size else 0.0
    if smax == 0:
        raise GapFailure("the symbol vanishes identically")
    kept = sv < cfg.svd_gap_tol * smax
    if np.any(kept):
        largest_kept = float(np.max(sv[kept]))
        smallest_rejected = float(np.min(sv[~kept])) if np.any(~kept) else np.inf
        if largest_kept > 0 and smallest_rejected / largest_kept < cfg.gap:
            raise GapFailure(f"singular value gap {smallest_rejected / largest_kept:.3g} below {cfg.gap:g}")
    cols = vh[kept].conj().T
    return NumericSubspace(cols, cfg.truncation)


def singular_value_gap(s, cfg: OracleConfig = DEFAULT_ORACLE) -> float:
    """Ratio between the smallest rejected and largest kept singular value."""
    sv = np.linalg.svd(toeplitz_section(s, cfg), compute_uv=False)
    kept = sv < cfg.svd_gap_tol * sv[0]
    if not np.any(kept):
        return np.inf
    largest_kept = float(np.max(sv[kept]))
    if not np.any(~kept):
        return 0.0
    return float(np.min(sv[~kept])) / largest_kept if largest_kept > 0 else np.inf


def taylor_coefficients(f: RatFun, n: int) -> np.ndarray:
    """First ``n`` Taylor coefficients at the origin."""
    impulse = np.zeros(n, dtype=complex)
    impulse[0] = 1.0
    return lfilter(np.asarray(f.num.coeffs), np.asarray(f.den.coeffs), impulse)


def _as_rat(f) -> RatFun:
    if isinstance(f, RatFun):
        return f
    if hasattr(f, "value") and isinstance(f.value, RatFun):
        return f.value
    if hasattr(f, "as_ratfun"):
        return f.as_ratfun()
    raise TypeError(f"cannot expand {type(f).__name__}")


def _basis_of(space) -> list:
    if hasattr(space, "basis"):
        return list(space.basis)
    return list(space)


def orthonormalize(mat: np.ndarray, rank_tol: float = 1e-10) -> np.ndarray:
    if mat.shape[1] == 0:
        return mat
    u, sv, _ = np.linalg.svd(mat, full_matrices=False)
    r = int(np.sum(sv > rank_tol * sv[0])) if sv.size and sv[0] > 0 else 0
    return u[:, :r]


def taylor_embed(space, cfg: OracleConfig = DEFAULT_ORACLE) -> NumericSubspace:
    """Orthonormal Taylor-coefficient basis of a finite-dimensional space."""
    n = cfg.truncation
    cols = []
    for f in _basis_of(space):
        c = taylor_coefficients(_as_rat(f), n)
        peak = float(np.max(np.abs(c))) if c.size else 0.0
        if peak and abs(c[-1]) > 1e-9 * peak:
            warnings.warn("Taylor tail above 1e-9 of the peak", TruncationWarning, stacklevel=2)
        cols.append(c)
    mat = np.array(cols, dtype=complex).T if cols else np.zeros((n, 0), dtype=complex)
    return NumericSubspace(orthonormalize(mat), n)


def principal_angles(a: NumericSubspace, b: NumericSubspace) -> np.ndarray:
    """Principal angles in ascending order.

    Cosines come from the singular values of ``A^H B``; small angles are
    taken from the sines instead, since ``arccos`` near 1 loses half the
    available digits.
    """
    if a.truncation != b.truncation:
        raise DimensionMismatch("subspaces embedded at different truncations")
    k = min(a.dim, b.dim)
    if k == 0:
        return np.zeros(0)
    m = a.columns.conj().T @ b.columns
    cos = np.clip(np.linalg.svd(m, compute_uv=False)[:k], 0.0, 1.0)
    angles = np.arccos(cos)
    small, large = (a, b) if a.dim <= b.dim else (b, a)
    resid = small.columns - large.columns @ (large.columns.conj().T @ small.columns)
    sin = np.sort(np.clip(np.linalg.svd(resid, compute_uv=False), 0.0, 1.0))[:k]
    from_sin = np.arcsin(sin)
    angles = np.sort(angles)
    use_sin = from_sin < np.pi / 4
    angles = np.where(use_sin, from_sin, angles)
    return np.sort(np.clip(angles, 0.0, np.pi / 2))


def assert_same_subspace(a: NumericSubspace, b: NumericSubspace, cfg: OracleConfig = DEFAULT_ORACLE) -> float:
    """Largest principal angle; raises when dimensions differ."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    ang = principal_angles(a, b)
    return float(np.max(ang)) if ang.size else 0.0


def _taylor_dot(f: RatFun, g: RatFun, start: int) -> tuple[complex, int]:
    n = start
    while True:
        cf, cg = taylor_coefficients(f, n), taylor_coefficients(g, n)
        tail = max(float(np.max(np.abs(cf[-8:]))), float(np.max(np.abs(cg[-8:]))))
        if tail < 1e-17 or n >= 1 << 16:
            return complex(np.vdot(cg, cf)), n
        n *= 2


def h2_inner_product(f, g, cfg: OracleConfig = DEFAULT_ORACLE) -> complex:
    """``<f, g>`` in H^2, by Taylor coefficients and by circle quadrature."""
    f, g = _as_rat(f), _as_rat(g)
    val, n = _taylor_dot(f, g, cfg.truncation)
    m = max(cfg.fft_size, 4 * n)
    zeta = np.exp(2j * np.pi * np.arange(m) / m)
    fz, gz = f(zeta), g(zeta)
    quad = complex(np.mean(fz * np.conj(gz)))
    scale = max(1.0, float(np.sqrt(np.mean(np.abs(fz) ** 2) * np.mean(np.abs(gz) ** 2))))
    if abs(val - quad) > 1e-9 * scale:
        raise QuadratureMismatch(f"Taylor {val} vs quadrature {quad}")
    return val


def gram_matrix(basis: Sequence, cfg: OracleConfig = DEFAULT_ORACLE) -> np.ndarray:
    """``G[i, j] = <f_j, f_i>``."""
    n = len(basis)
    g = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            v = h2_inner_product(basis[j], basis[i], cfg)
            g[i, j] = v
            g[j, i] = np.conj(v)
    return g
