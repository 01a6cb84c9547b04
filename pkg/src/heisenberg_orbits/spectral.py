"""Complex-vector arithmetic: transforms, shifts, root extraction, sampling.

The discrete Fourier transform convention is fixed package-wide: the forward
transform is unnormalized, X[k] = sum_j x[j] * exp(-2*pi*i*j*k/N), and the
inverse carries the 1/N factor. Every serialized invariant value depends on
this choice, so it must not be changed independently of the file formats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroInput

DEFAULT_REL_EQ = 1e-9
DEFAULT_GENERICITY_FLOOR = 1e-8
DEFAULT_RECOVERY_TOL = 1e-6


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds threaded through the recovery pipeline.

    rel_eq: relative-equality threshold for consistency checks.
    genericity_floor: smallest magnitude treated as nonvanishing.
    recovery_tol: orbit-distance acceptance threshold for recoveries.
    """

    rel_eq: float = DEFAULT_REL_EQ
    genericity_floor: float = DEFAULT_GENERICITY_FLOOR
    recovery_tol: float = DEFAULT_RECOVERY_TOL

    def __post_init__(self):
        for name in ("rel_eq", "genericity_floor", "recovery_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


def as_complex_vector(x) -> np.ndarray:
    """Validate x as a nonempty 1-D vector of finite entries, as complex128."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a nonempty one-dimensional vector")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError("vector entries must be finite")
    return arr


def as_real_vector(x) -> np.ndarray:
    """Validate x as a nonempty 1-D vector of finite entries, as float64."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a nonempty one-dimensional vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def dft(x) -> np.ndarray:
    """Forward transform, X[k] = sum_j x[j] exp(-2*pi*i*j*k/N)."""
    return np.fft.fft(as_complex_vector(x))


def idft(X) -> np.ndarray:
    """Inverse transform, x[j] = (1/N) sum_k X[k] exp(+2*pi*i*j*k/N)."""
    return np.fft.ifft(as_complex_vector(X))


def dft_matrix(n: int) -> np.ndarray:
    """Kernel matrix F with F[k, j] = exp(-2*pi*i*j*k/n), so dft(x) = F @ x.

    Used directly in hot loops where per-call FFT overhead dominates at
    desk-scale n; agrees with dft() to machine precision.
    """
    j = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(j, j) / n)


def cyclic_shift(v, k: int) -> np.ndarray:
    """Return w with w[j] = v[(j + k) mod N]; preserves the input dtype."""
    arr = np.asarray(v)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    return np.roll(arr, -int(k))


def principal_nth_root(c, n: int, floor: float = DEFAULT_GENERICITY_FLOOR) -> complex:
    """Return r with r**n = c and arg(r) in [0, 2*pi/n).

    Raises ZeroInput when |c| is at or below the genericity floor, since the
    root of a numerically-zero value carries no phase information.
    """
    c = complex(c)
    if not n >= 1:
        raise ValueError("root order must be a positive integer")
    if abs(c) <= floor:
        raise ZeroInput(f"cannot take a principal root of near-zero value {c!r}")
    theta = np.angle(c) % (2.0 * np.pi)
    return complex(abs(c) ** (1.0 / n) * np.exp(1j * theta / n))


def sample_random_signal(n: int, seed: int) -> np.ndarray:
    """I.i.d. standard complex Gaussian entries, deterministic given seed."""
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    rng = np.random.default_rng(seed)
    re = rng.standard_normal(n)
    im = rng.standard_normal(n)
    return (re + 1j * im) / np.sqrt(2.0)


def max_relative_deviation(a, b) -> float:
    """Entrywise max of |a - b| / max(|a|, |b|, 1).

    The unit floor in the denominator keeps the metric stable near zero
    entries; this is the comparison metric shared by the invariant distance,
    inversion residuals, and magnitude-match checks.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("shapes must match")
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
    return float(np.max(np.abs(a - b) / scale))
