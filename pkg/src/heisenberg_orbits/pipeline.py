"""End-to-end orbit recovery from an invariant bundle alone.

Stages:

1. Invert both bispectra, giving the squared-modulus vector and the
   squared-Fourier-modulus vector, each as some cyclic-shift representative.
   Any pair of representatives is jointly realized by an orbit element
   (a time shift permutes one vector, a modulation the other), so no
   shift-alignment search is needed.
2. Search for a vector realizing both squared-magnitude vectors. The
   two-sided magnitude data admits several isolated solution classes (each
   a circle of global phases), of which exactly one is the orbit class;
   the search therefore runs a seeded Gauss-Newton multistart and screens
   every converged candidate: its power-sum magnitude must match the
   bundle, and after the phase fix below the full recomputed bundle must
   match within the recovery tolerance. Spurious classes almost surely
   fail the screen, so the first accepted candidate is the orbit class.
3. Fix the remaining global phase with the power-sum invariant: the ratio
   mu = bundle.power_sum / power_sum(candidate) has unit modulus for the
   orbit class, and multiplying by any N-th root of mu lands the candidate
   in the orbit. The principal root keeps the choice deterministic.
4. The final verification values (recomputed bundle against the input) are
   reported; success means the accepted candidate passed them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import PhaseUnresolvable
from .group import GroupElement, orbit_distance
from .invariants import (
    HeisenbergInvariants,
    heisenberg_invariants,
    invariant_distance,
    power_invariant,
    unitary_bispectrum,
)
from .inversion import invert_real_bispectrum
from .phase_retrieval import (
    PhaseRetrievalConfig,
    check_energy_balance,
    newton_magnitude_solve,
)
from .spectral import (
    ToleranceConfig,
    as_complex_vector,
    dft,
    dft_matrix,
    max_relative_deviation,
    principal_nth_root,
)

PHASE_RATIO_BAND = 1e-3
_NEWTON_ITERATIONS = 60


@dataclass(frozen=True)
class StageResiduals:
    """Per-stage residuals of one recovery attempt; nan marks a skipped stage."""

    bm_inversion: float
    bfm_inversion: float
    phase_retrieval: float
    phase_fix: float
    invariant_match: float


@dataclass(frozen=True)
class OrbitRecoveryReport:
    """Recovery outcome: candidate vector, residual trail, and diagnostics."""

    candidate: np.ndarray
    stage_residuals: StageResiduals
    success: bool
    diagnostics: dict[str, Any]

    def __post_init__(self):
        if self.success and not math.isfinite(self.stage_residuals.invariant_match):
            raise ValueError("successful report must carry a finite verification residual")


@dataclass(frozen=True)
class _SearchOutcome:
    candidate: np.ndarray  # phase-fixed when accepted, best effort otherwise
    residual: float
    phase_fix_residual: float
    invariant_match: float
    ratio_modulus: float
    starts_used: int
    iterations_last: int
    accepted: bool
    converged_count: int
    power_rejected: int
    verify_rejected: int


def _consistent_candidate_search(
    y, z, inv: HeisenbergInvariants, pr_cfg: PhaseRetrievalConfig, tol: ToleranceConfig
) -> _SearchOutcome:
    """Seeded multistart over magnitude solutions, screened by the bundle.

    Start r draws its phases from seed pr_cfg.seed + r. A converged start
    must pass two screens to be accepted: its power-sum magnitude matches
    the bundle within the consistency band, and after the global-phase fix
    the fully recomputed bundle matches within the recovery tolerance.
    Rejections are counted per screen so callers can tell an exhausted
    budget from unsolvable or tampered data.
    """
    y, z = check_energy_balance(y, z)
    n = len(y)
    forward = dft_matrix(n)
    best: tuple[float, np.ndarray, int] | None = None
    converged = 0
    power_rejected = 0
    verify_rejected = 0
    for start in range(pr_cfg.max_restarts):
        rng = np.random.default_rng(pr_cfg.seed + start)
        phases = rng.uniform(0.0, 2.0 * np.pi, n)
        candidate, residual, iterations = newton_magnitude_solve(
            y,
            z,
            phases,
            max_iterations=_NEWTON_ITERATIONS,
            residual_target=pr_cfg.residual_target,
            _forward=forward,
        )
        if best is None or residual < best[0]:
            best = (residual, candidate, iterations)
        if residual > pr_cfg.residual_target:
            continue
        converged += 1
        base = power_invariant(candidate)
        if abs(base) <= tol.genericity_floor:
            power_rejected += 1
            continue
        ratio = inv.power_sum / base
        if abs(abs(ratio) - 1.0) > PHASE_RATIO_BAND:
            power_rejected += 1
            continue
        lam = principal_nth_root(ratio, n, floor=tol.genericity_floor)
        fixed = lam * candidate
        fix_residual = abs(power_invariant(fixed) - inv.power_sum) / max(
            abs(inv.power_sum), 1.0
        )
        match = invariant_distance(heisenberg_invariants(fixed), inv)
        if match > tol.recovery_tol:
            verify_rejected += 1
            continue
        return _SearchOutcome(
            candidate=fixed,
            residual=residual,
            phase_fix_residual=fix_residual,
            invariant_match=match,
            ratio_modulus=abs(ratio),
            starts_used=start + 1,
            iterations_last=iterations,
            accepted=True,
            converged_count=converged,
            power_rejected=power_rejected,
            verify_rejected=verify_rejected,
        )
    residual, candidate, iterations = best
    return _SearchOutcome(
        candidate=candidate,
        residual=residual,
        phase_fix_residual=math.nan,
        invariant_match=invariant_distance(heisenberg_invariants(candidate), inv),
        ratio_modulus=math.nan,
        starts_used=pr_cfg.max_restarts,
        iterations_last=iterations,
        accepted=False,
        converged_count=converged,
        power_rejected=power_rejected,
        verify_rejected=verify_rejected,
    )


def recover_orbit(
    inv: HeisenbergInvariants,
    pr_cfg: PhaseRetrievalConfig | None = None,
    tol: ToleranceConfig | None = None,
) -> OrbitRecoveryReport:
    """Reconstruct an orbit element from its invariant bundle.

    Success is guaranteed only for bundles of generic vectors, and only with
    the probability that the multistart budget reaches the bundle-consistent
    solution class. When no start converges at all, a best-effort report
    with success=False is returned so batch experiments can record failure
    rates. PhaseUnresolvable is raised when starts converged but none passed
    the consistency screens within the budget, which is also how tampered
    bundles (power sum with the wrong magnitude) surface.
    """
    pr_cfg = pr_cfg if pr_cfg is not None else PhaseRetrievalConfig()
    tol = tol if tol is not None else ToleranceConfig()
    diagnostics: dict[str, Any] = {}

    y = invert_real_bispectrum(inv.bm, floor=tol.genericity_floor, rel_eq=tol.rel_eq)
    res_bm = max_relative_deviation(inv.bm, unitary_bispectrum(dft(y)))
    diagnostics["bm_inversion"] = {"residual": res_bm}

    z = invert_real_bispectrum(inv.bfm, floor=tol.genericity_floor, rel_eq=tol.rel_eq)
    res_bfm = max_relative_deviation(inv.bfm, unitary_bispectrum(dft(z)))
    diagnostics["bfm_inversion"] = {"residual": res_bfm}

    search = _consistent_candidate_search(y, z, inv, pr_cfg, tol)
    diagnostics["phase_retrieval"] = {
        "method": "newton-multistart",
        "converged": search.accepted,
        "residual": search.residual,
        "restarts_used": search.starts_used,
        "iterations_last": search.iterations_last,
        "converged_starts": search.converged_count,
        "power_rejected": search.power_rejected,
        "verify_rejected": search.verify_rejected,
    }
    if not search.accepted and search.converged_count > 0:
        raise PhaseUnresolvable(
            f"{search.converged_count} magnitude solutions found in "
            f"{search.starts_used} starts, none consistent with the invariant "
            "bundle; the bundle is inconsistent or the budget too small"
        )
    if search.accepted:
        diagnostics["phase_fix"] = {
            "ratio_modulus": search.ratio_modulus,
            "residual": search.phase_fix_residual,
        }
    else:
        diagnostics["phase_fix"] = {"skipped": True}

    success = search.accepted and search.invariant_match <= tol.recovery_tol
    diagnostics["verification"] = {
        "invariant_distance": search.invariant_match,
        "tolerance": tol.recovery_tol,
    }
    return OrbitRecoveryReport(
        candidate=search.candidate,
        stage_residuals=StageResiduals(
            bm_inversion=res_bm,
            bfm_inversion=res_bfm,
            phase_retrieval=search.residual,
            phase_fix=search.phase_fix_residual,
            invariant_match=search.invariant_match,
        ),
        success=success,
        diagnostics=diagnostics,
    )


def verify_against_truth(
    report: OrbitRecoveryReport, x_true, tol: float
) -> tuple[bool, float, GroupElement]:
    """Check a recovery against a known ground truth with the orbit oracle."""
    x_true = as_complex_vector(x_true)
    dist, witness = orbit_distance(x_true, report.candidate)
    equivalent = dist <= tol * max(float(np.linalg.norm(x_true)), 1.0)
    return equivalent, dist, witness
