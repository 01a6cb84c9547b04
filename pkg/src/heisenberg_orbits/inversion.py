"""Recovery of a vector, up to cyclic shift, from its bispectrum.

The inversion marches along frequencies. Writing B for the input matrix and
V for the unknown spectrum:

1. B[0, 0] = |V[0]|**2 * V[0], so V[0] = B[0, 0] / |B[0, 0]|**(2/3); the
   magnitude and phase are separated here on purpose, avoiding the branch
   ambiguity of a complex cube root.
2. B[k, 0] = |V[k]|**2 * V[0] gives every squared magnitude; each estimate
   must be real and positive for the input to be a genuine bispectrum of a
   nonvanishing spectrum.
3. arg B[1, k] = phi_1 + phi_k - phi_{k+1} turns every phase into
   phi_k = k * t + d_k with d_k accumulated from row B[1, .] and t = phi_1
   unknown; the wrap-around constraint phi_N = phi_0 (mod 2*pi) restricts t
   to N candidates that differ by 2*pi/N, exactly the cyclic-shift freedom.
   The canonical choice takes the m = 0 candidate.
4. Only row B[1, .] is consumed as data; every other entry is replayed as a
   consistency check and lands in the reported residual, which catches
   corrupted or non-bispectral inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonGenericInput, NotRealSignal, ResidualTooLarge
from .invariants import unitary_bispectrum
from .spectral import (
    DEFAULT_GENERICITY_FLOOR,
    DEFAULT_REL_EQ,
    idft,
    max_relative_deviation,
)


@dataclass(frozen=True)
class InversionResult:
    """Recovered spectrum, its inverse transform, and the replay residual."""

    spectrum: np.ndarray
    signal: np.ndarray
    residual: float


def _stable_angle(value: complex, rel_eq: float) -> float:
    # Bispectra of real vectors have structurally real entries (for example
    # row-one entries proportional to the zero-frequency coefficient), which
    # sit exactly on the +-pi branch cut when negative. Snapping near-real
    # values onto the axis keeps the canonical shift choice stable under
    # roundoff, so equal-up-to-shift inputs invert to the same representative.
    if abs(value.imag) <= rel_eq * abs(value):
        return 0.0 if value.real >= 0 else float(np.pi)
    return float(np.angle(value))


def invert_bispectrum(
    B,
    floor: float = DEFAULT_GENERICITY_FLOOR,
    rel_eq: float = DEFAULT_REL_EQ,
    max_residual: float | None = None,
) -> InversionResult:
    """Invert a bispectrum matrix to a canonical cyclic-shift representative.

    Parameters
    ----------
    B : (N, N) complex array
        Bispectrum of some spectrum with nonvanishing entries.
    floor : float
        Genericity floor; magnitude estimates at or below it are rejected.
    rel_eq : float
        Maximum tolerated relative imaginary part in magnitude estimates.
    max_residual : float, optional
        When given, raise ResidualTooLarge if the replay residual exceeds it.

    Returns
    -------
    InversionResult
        The recovered signal is cyclic-shift-equivalent to any vector whose
        bispectrum equals B.

    Raises
    ------
    NonGenericInput
        If the leading entry or any magnitude estimate falls below the floor,
        or a magnitude estimate is not real within rel_eq.
    ResidualTooLarge
        If max_residual is given and exceeded.
    """
    B = np.asarray(B, dtype=np.complex128)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] == 0:
        raise ValueError("expected a nonempty square matrix")
    n = B.shape[0]

    b00 = complex(B[0, 0])
    if abs(b00) <= floor:
        raise NonGenericInput("leading bispectrum entry is numerically zero")
    v0 = b00 / abs(b00) ** (2.0 / 3.0)

    power = B[:, 0] / v0
    low = np.flatnonzero(power.real <= floor)
    if low.size:
        raise NonGenericInput(
            f"squared-magnitude estimates at or below floor at indices {low.tolist()}"
        )
    not_real = np.flatnonzero(np.abs(power.imag) > rel_eq * np.abs(power))
    if not_real.size:
        raise NonGenericInput(
            f"squared-magnitude estimates are not real at indices {not_real.tolist()}"
        )
    mags = np.sqrt(power.real)

    phi0 = _stable_angle(b00, rel_eq)
    d = np.zeros(n + 1)
    for k in range(1, n):
        d[k + 1] = d[k] - _stable_angle(complex(B[1, k]), rel_eq)
    t = (phi0 - d[n]) / n

    spectrum = np.empty(n, dtype=np.complex128)
    spectrum[0] = v0
    if n > 1:
        ks = np.arange(1, n)
        spectrum[1:] = mags[1:] * np.exp(1j * (ks * t + d[1:n]))

    signal = idft(spectrum)
    residual = max_relative_deviation(B, unitary_bispectrum(spectrum))
    if max_residual is not None and residual > max_residual:
        raise ResidualTooLarge(
            f"replay residual {residual:.3e} exceeds bound {max_residual:.3e}"
        )
    return InversionResult(spectrum=spectrum, signal=signal, residual=residual)


def invert_real_bispectrum(
    B,
    floor: float = DEFAULT_GENERICITY_FLOOR,
    rel_eq: float = DEFAULT_REL_EQ,
) -> np.ndarray:
    """Invert the bispectrum of a real vector; returns the real signal.

    Raises NotRealSignal when the recovered signal carries an imaginary
    residue above rel_eq * ||signal||, which means the input was not the
    bispectrum of any real vector. NonGenericInput propagates from the
    underlying inversion.
    """
    result = invert_bispectrum(B, floor=floor, rel_eq=rel_eq)
    signal = result.signal
    residue = float(np.max(np.abs(signal.imag)))
    if residue > rel_eq * float(np.linalg.norm(signal)):
        raise NotRealSignal(
            f"imaginary residue {residue:.3e} too large for a real-vector bispectrum"
        )
    return signal.real
