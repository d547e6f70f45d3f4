"""Gate-cell bookkeeping, accuracy budgets, and noisy-computation trajectories."""

from __future__ import annotations

from dataclasses import dataclass
from math import floor, pi, sin

import numpy as np

from .rng import make_generator
from .su_algebra import expi_hermitian, gell_mann_basis, random_special_unitary
from .vbs_code import eta

__all__ = [
    "unitary_distance",
    "GateCellTable",
    "build_gate_cell_table",
    "cell_assign",
    "max_gate_count",
    "compose_error_bound",
    "SimTrajectory",
    "simulate_computation",
    "trajectory_csv",
]

UNITARY_TOL = 1e-8
TIE_DECIMALS = 12


def _check_unitary(u: np.ndarray, dim: int | None = None) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    if dim is not None and u.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {u.shape[0]}")
    if np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2) > UNITARY_TOL:
        raise ValueError("matrix is not unitary")
    return u


def unitary_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Global-phase-minimized operator-norm distance between unitaries.

    min over phases of ||u - e^(i phi) v||.  Since v+u is unitary, the
    minimum is reached at the midpoint of the smallest arc enclosing its
    eigenphases: for enclosing width W the distance is 2 sin(W/4).
    """
    u = _check_unitary(u)
    v = _check_unitary(v, u.shape[0])
    phases = np.sort(np.angle(np.linalg.eigvals(v.conj().T @ u)))
    if phases.size == 1:
        return 0.0
    gaps = np.diff(phases, append=phases[0] + 2.0 * pi)
    width = 2.0 * pi - gaps.max()
    return float(2.0 * sin(max(width, 0.0) / 4.0))


@dataclass(frozen=True)
class GateCellTable:
    """Fixed set of representative gates partitioning SU(d) at one accuracy.

    Representatives are pairwise farther apart than the accuracy, so the
    nearest-representative rule assigns non-overlapping cells.  The table
    must be kept fixed for cell indices to define distinct logical gates.
    """

    dim: int
    accuracy: float
    representatives: tuple[np.ndarray, ...]


def build_gate_cell_table(
    dim: int, accuracy: float, n_samples: int, seed: int
) -> GateCellTable:
    """Greedy seeded net: sample SU(d) and keep points clearing the accuracy.

    Identical (dim, accuracy, n_samples, seed) rebuild the identical table.
    The identity is always the first representative.
    """
    if accuracy <= 0.0:
        raise ValueError("accuracy must be positive")
    basis = gell_mann_basis(dim)
    rng = make_generator(seed)
    reps: list[np.ndarray] = [np.eye(dim, dtype=complex)]
    for _ in range(n_samples):
        candidate = random_special_unitary(basis, rng)
        if all(unitary_distance(candidate, r) > accuracy for r in reps):
            reps.append(candidate)
    return GateCellTable(dim=dim, accuracy=accuracy, representatives=tuple(reps))


def cell_assign(table: GateCellTable, u: np.ndarray) -> int:
    """Index of the nearest representative; ties resolve to the lowest index.

    Distances are rounded to 12 decimals before comparison so exact midpoints
    resolve deterministically.
    """
    if not table.representatives:
        raise ValueError("gate-cell table is empty")
    u = _check_unitary(u, table.dim)
    distances = [
        round(unitary_distance(u, rep), TIE_DECIMALS)
        for rep in table.representatives
    ]
    return int(np.argmin(distances))


def max_gate_count(target: float, accuracy: float, synthesis_error: float = 0.0) -> int:
    """Largest gate count m with m * accuracy within the target budget,
    floor((target - synthesis_error) / accuracy)."""
    if accuracy <= 0.0:
        raise ValueError("accuracy must be positive")
    if synthesis_error < 0.0 or target < synthesis_error:
        raise ValueError("target budget must be at least the synthesis error")
    return int(floor((target - synthesis_error) / accuracy))


def compose_error_bound(gate_distances) -> float:
    """Subadditive accumulation bound: the sum of per-gate distances."""
    total = 0.0
    for x in gate_distances:
        if x < 0.0:
            raise ValueError("distances must be nonnegative")
        total += float(x)
    return total


@dataclass(frozen=True)
class SimTrajectory:
    """One seeded noisy-computation run at the logical level.

    ``distances[l]`` is the phase-minimized distance between the noisy and
    ideal cumulative products after step l+1; ``envelopes`` accumulates the
    per-step error-gate distances, an upper bound on ``distances``.
    """

    seed: int
    length: int
    error_scale: float
    gates: np.ndarray
    exponents: np.ndarray
    step_errors: np.ndarray
    distances: np.ndarray
    envelopes: np.ndarray

    @property
    def final_distance(self) -> float:
        return float(self.distances[-1])


def _batched_expi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """exp(i h) and the eigenvalues for a stack of Hermitian matrices."""
    w, v = np.linalg.eigh((h + h.conj().transpose(0, 2, 1)) / 2.0)
    phase = np.exp(1j * w)
    return np.einsum("lik,lk,ljk->lij", v, phase, v.conj()), w


def _arc_distances(phases: np.ndarray) -> np.ndarray:
    """Phase-minimized distances 2 sin(W/4) for stacked eigenphase rows."""
    wrapped = np.sort(np.mod(phases + np.pi, 2.0 * np.pi) - np.pi, axis=1)
    gaps = np.diff(wrapped, axis=1, append=(wrapped[:, :1] + 2.0 * np.pi))
    widths = np.clip(2.0 * np.pi - gaps.max(axis=1), 0.0, None)
    return 2.0 * np.sin(widths / 4.0)


def simulate_computation(
    d: int,
    n_sites: int,
    length: int,
    seed: int,
    gates=None,
    error_scale: float | None = None,
    error_dist: str = "uniform",
) -> SimTrajectory:
    """Alternate logical gates with error gates and track the drift.

    Each step applies a gate U_l followed by E_l = exp(i s sum_k eps_k t^k),
    where s defaults to the (d, N) accuracy scale :func:`qx.vbs_code.eta`
    and the eps components are drawn uniformly from [-1, 1] (or from a unit
    Gaussian with ``error_dist="gaussian"``).  Gates come from an explicit
    sequence or, when omitted, a seeded special-unitary stream; identical
    seeds and parameters reproduce identical trajectories.  Everything but
    the cumulative products is evaluated with batched decompositions, so
    trajectories of 1e5 steps stay around a second.
    """
    if length < 1:
        raise ValueError("computation length must be at least 1")
    if error_dist not in ("uniform", "gaussian"):
        raise ValueError(f"unknown error distribution {error_dist!r}")
    basis = gell_mann_basis(d)
    scale = eta(d, n_sites) if error_scale is None else float(error_scale)
    rng = make_generator(seed)
    if gates is None:
        weights = rng.normal(0.0, 1.0, size=(length, basis.size))
        gate_stack, _ = _batched_expi(
            np.einsum("lk,kij->lij", weights, basis.generators)
        )
    else:
        gate_list = [_check_unitary(g, d) for g in gates]
        if len(gate_list) < length:
            raise ValueError(f"need {length} gates, got {len(gate_list)}")
        gate_stack = np.stack(gate_list[:length])
    if error_dist == "uniform":
        exponents = rng.uniform(-1.0, 1.0, size=(length, basis.size))
    else:
        exponents = rng.normal(0.0, 1.0, size=(length, basis.size))
    error_stack, error_eigs = _batched_expi(
        scale * np.einsum("lk,kij->lij", exponents, basis.generators)
    )
    step_errors = _arc_distances(error_eigs)
    ideal = np.empty((length, d, d), dtype=complex)
    noisy = np.empty((length, d, d), dtype=complex)
    cur_ideal = np.eye(d, dtype=complex)
    cur_noisy = np.eye(d, dtype=complex)
    for step in range(length):
        cur_ideal = gate_stack[step] @ cur_ideal
        cur_noisy = gate_stack[step] @ error_stack[step] @ cur_noisy
        ideal[step] = cur_ideal
        noisy[step] = cur_noisy
    relative = np.einsum("lba,lbc->lac", ideal.conj(), noisy)
    distances = _arc_distances(np.angle(np.linalg.eigvals(relative)))
    return SimTrajectory(
        seed=seed,
        length=length,
        error_scale=scale,
        gates=gate_stack,
        exponents=exponents,
        step_errors=step_errors,
        distances=distances,
        envelopes=np.cumsum(step_errors),
    )


def trajectory_csv(trajectory: SimTrajectory) -> str:
    """CSV rendering with columns step, ideal_vs_noisy_distance, envelope."""
    lines = ["step,ideal_vs_noisy_distance,envelope"]
    for step in range(trajectory.length):
        lines.append(
            f"{step + 1},{trajectory.distances[step]:.12g},"
            f"{trajectory.envelopes[step]:.12g}"
        )
    return "\n".join(lines) + "\n"
