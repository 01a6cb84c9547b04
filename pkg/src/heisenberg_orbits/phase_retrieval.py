"""Recover a vector from its entry magnitudes and Fourier magnitudes.

Both magnitude inputs carry squared moduli. Two local solvers are provided:
classical error reduction (alternating projections between the two magnitude
constraint sets) behind retrieve_phase, and a damped Gauss-Newton solve on
the phase torus whose multistart basins are far better balanced across the
several exact solution classes this data admits. A magnitude fit determines
the vector only up to a global unimodular factor within its class; callers
quotient that out with best_global_phase or fix it with a phase-sensitive
invariant, and must screen classes themselves when the class matters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentMagnitudes, OrderMismatch
from .spectral import (
    as_complex_vector,
    as_real_vector,
    dft,
    dft_matrix,
    max_relative_deviation,
)

ENERGY_BALANCE_TOL = 1e-6


@dataclass(frozen=True)
class PhaseRetrievalConfig:
    """Search budget and seeding for the restarted projection search."""

    max_restarts: int = 50
    max_iterations: int = 2000
    residual_target: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.max_restarts < 1 or self.max_iterations < 1:
            raise ValueError("restart and iteration counts must be positive")
        if not self.residual_target > 0:
            raise ValueError("residual_target must be strictly positive")


@dataclass(frozen=True)
class RecoveryReport:
    """Outcome of one retrieval: candidate, residual, and search effort."""

    candidate: np.ndarray
    residual: float
    restarts_used: int
    iterations_last: int
    success: bool

    def __post_init__(self):
        if self.success and not np.isfinite(self.residual):
            raise ValueError("successful report must carry a finite residual")


def _validated_magnitudes(y_mag, z_mag):
    y = as_real_vector(y_mag)
    z = as_real_vector(z_mag)
    if len(y) != len(z):
        raise OrderMismatch(f"magnitude lengths differ: {len(y)} vs {len(z)}")
    if np.any(y < 0) or np.any(z < 0):
        raise InconsistentMagnitudes("squared magnitudes must be nonnegative")
    return y, z


def check_energy_balance(y_mag, z_mag):
    """Validate magnitude inputs and enforce sum(y) = sum(z)/N.

    Returns the validated pair; raises InconsistentMagnitudes when no signal
    can realize the data.
    """
    y, z = _validated_magnitudes(y_mag, z_mag)
    energy_time = float(np.sum(y))
    energy_freq = float(np.sum(z)) / len(y)
    scale = max(energy_time, energy_freq)
    if scale > 0 and abs(energy_time - energy_freq) > ENERGY_BALANCE_TOL * scale:
        raise InconsistentMagnitudes(
            f"energy balance violated: sum(y)={energy_time:.6e} vs sum(z)/N={energy_freq:.6e}"
        )
    return y, z


def magnitudes_match(x, y_mag, z_mag, tol: float) -> bool:
    """True iff |x|**2 matches y_mag and |dft(x)|**2 matches z_mag within tol.

    Deviations are relative with scale max(value, 1), the shared metric.
    """
    x = as_complex_vector(x)
    y, z = _validated_magnitudes(y_mag, z_mag)
    if len(x) != len(y):
        raise OrderMismatch(f"dimensions differ: {len(x)} vs {len(y)}")
    time_err = max_relative_deviation(np.abs(x) ** 2, y)
    freq_err = max_relative_deviation(np.abs(dft(x)) ** 2, z)
    return max(time_err, freq_err) <= tol


def best_global_phase(a, b) -> tuple[complex, float]:
    """Unimodular lam minimizing ||lam * a - b|| and the aligned distance.

    lam = <b, a> / |<b, a>| with <b, a> = sum_j b[j] * conj(a[j]); when the
    inner product vanishes any phase is optimal and lam = 1 is returned.
    """
    a = as_complex_vector(a)
    b = as_complex_vector(b)
    if len(a) != len(b):
        raise OrderMismatch(f"dimensions differ: {len(a)} vs {len(b)}")
    ip = complex(np.vdot(a, b))
    lam = ip / abs(ip) if abs(ip) > 0 else complex(1.0)
    return lam, float(np.linalg.norm(lam * a - b))


def _project_phases(values, target_mags):
    # nearest point with prescribed magnitudes; zero values get phase 0
    mags = np.abs(values)
    unit = np.where(mags > 0, values / np.where(mags > 0, mags, 1.0), 1.0)
    return target_mags * unit


def error_reduction(
    y_mag,
    z_mag,
    initial_phases,
    max_iterations: int,
    residual_target: float,
    _kernels=None,
):
    """One projection run from given starting phases.

    Returns (candidate, residual, iterations, freq_errors) where freq_errors
    is the Euclidean frequency-domain mismatch || |dft(x)| - sqrt(z_mag) ||
    recorded at the start and after every iteration. That sequence is
    non-increasing: each step projects onto the nearest point of one
    constraint set, so the distance to the other set cannot grow.
    """
    y = as_real_vector(y_mag)
    z = as_real_vector(z_mag)
    n = len(y)
    if _kernels is None:
        forward = dft_matrix(n)
        backward = np.conj(forward) / n
    else:
        forward, backward = _kernels
    sqrt_y = np.sqrt(y)
    sqrt_z = np.sqrt(z)

    x = sqrt_y * np.exp(1j * np.asarray(initial_phases, dtype=np.float64))
    X = forward @ x
    freq_errors = [float(np.linalg.norm(np.abs(X) - sqrt_z))]
    residual = max(
        max_relative_deviation(np.abs(x) ** 2, y),
        max_relative_deviation(np.abs(X) ** 2, z),
    )
    iterations = 0
    while residual > residual_target and iterations < max_iterations:
        X = _project_phases(X, sqrt_z)
        x = backward @ X
        x = _project_phases(x, sqrt_y)
        X = forward @ x
        freq_errors.append(float(np.linalg.norm(np.abs(X) - sqrt_z)))
        residual = max(
            max_relative_deviation(np.abs(x) ** 2, y),
            max_relative_deviation(np.abs(X) ** 2, z),
        )
        iterations += 1
    return x, residual, iterations, freq_errors


def newton_magnitude_solve(
    y_mag,
    z_mag,
    initial_phases,
    max_iterations: int = 60,
    residual_target: float = 1e-10,
    _forward=None,
):
    """Damped Gauss-Newton solve for phases matching the frequency magnitudes.

    Parametrizes x = sqrt(y_mag) * exp(i*phi) (time magnitudes hold by
    construction) and drives |dft(x)|**2 - z_mag to zero. Multistart basins
    of this solver are far better balanced across the solution classes of
    the two-sided magnitude problem than those of the projection iteration,
    which can starve some classes almost completely; the pipeline relies on
    that balance to find the class consistent with the power-sum invariant.

    Returns (candidate, residual, iterations) with residual in the shared
    max-relative metric.
    """
    y = as_real_vector(y_mag)
    z = as_real_vector(z_mag)
    n = len(y)
    forward = dft_matrix(n) if _forward is None else _forward
    sqrt_y = np.sqrt(y)

    phi = np.asarray(initial_phases, dtype=np.float64).copy()
    damping = 1e-6
    x = sqrt_y * np.exp(1j * phi)
    X = forward @ x
    r = np.abs(X) ** 2 - z
    cost = float(np.linalg.norm(r))
    eye = np.eye(n)
    iterations = 0
    stalls = 0
    for iterations in range(1, max_iterations + 1):
        # d|X_k|^2 / d phi_j = 2*Re(conj(X_k) * i * F_kj * x_j)
        jac = -2.0 * (np.conj(X)[:, None] * forward * x[None, :]).imag
        lhs = jac.T @ jac + damping * eye
        rhs = -(jac.T @ r)
        try:
            delta = np.linalg.solve(lhs, rhs)
        except np.linalg.LinAlgError:
            break
        step = 1.0
        improved = False
        for _ in range(6):
            cand_phi = phi + step * delta
            cand_x = sqrt_y * np.exp(1j * cand_phi)
            cand_X = forward @ cand_x
            cand_r = np.abs(cand_X) ** 2 - z
            cand_cost = float(np.linalg.norm(cand_r))
            if cand_cost < cost:
                phi, x, X, r, cost = cand_phi, cand_x, cand_X, cand_r, cand_cost
                damping = max(damping * 0.3, 1e-12)
                improved = True
                break
            step *= 0.5
        if not improved:
            damping *= 10.0
            stalls += 1
            if damping > 1e8 or stalls > 8:
                break
        residual = max(
            max_relative_deviation(np.abs(x) ** 2, y),
            max_relative_deviation(np.abs(X) ** 2, z),
        )
        if residual <= residual_target:
            return x, residual, iterations
    residual = max(
        max_relative_deviation(np.abs(x) ** 2, y),
        max_relative_deviation(np.abs(X) ** 2, z),
    )
    return x, residual, iterations


def retrieve_phase(y_mag, z_mag, cfg: PhaseRetrievalConfig | None = None) -> RecoveryReport:
    """Search for a vector realizing both squared-magnitude vectors.

    Restart r draws fresh uniform phases from seed cfg.seed + r, so the whole
    search is reproducible. On success the candidate satisfies both
    constraints to cfg.residual_target; on exhaustion the best candidate is
    returned with success=False rather than raising.

    Raises InconsistentMagnitudes when the energy balance
    sum(y_mag) = (1/N) * sum(z_mag) fails, since then no signal exists.
    """
    cfg = cfg if cfg is not None else PhaseRetrievalConfig()
    y, z = check_energy_balance(y_mag, z_mag)
    n = len(y)
    if max(float(np.sum(y)), float(np.sum(z))) == 0:
        return RecoveryReport(np.zeros(n, dtype=np.complex128), 0.0, 1, 0, True)

    forward = dft_matrix(n)
    kernels = (forward, np.conj(forward) / n)
    best = None
    for restart in range(cfg.max_restarts):
        rng = np.random.default_rng(cfg.seed + restart)
        phases = rng.uniform(0.0, 2.0 * np.pi, n)
        candidate, residual, iterations, _ = error_reduction(
            y, z, phases, cfg.max_iterations, cfg.residual_target, _kernels=kernels
        )
        if residual <= cfg.residual_target:
            return RecoveryReport(candidate, residual, restart + 1, iterations, True)
        if best is None or residual < best[0]:
            best = (residual, candidate, iterations)
    residual, candidate, iterations = best
    return RecoveryReport(candidate, residual, cfg.max_restarts, iterations, False)
