"""Dense complex linear algebra for states, channels, and distance measures.

Operators are plain numpy arrays; tensor-factored spaces are described by
explicit subsystem dimension lists where an operation needs them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod, sqrt

import numpy as np

__all__ = [
    "KrausChannel",
    "ChoiState",
    "apply_channel",
    "cptp_residuals",
    "dilation_isometry",
    "choi_matrix",
    "omega_vector",
    "omega_matrix",
    "trace_distance",
    "entanglement_fidelity",
    "partial_trace",
]

TP_TOL = 1e-10


class ChannelError(RuntimeError):
    """Raised when a channel fails a structural requirement."""


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive map given by its Kraus operators.

    Trace preservation is a property to check (see :func:`cptp_residuals`),
    not an assumption.  An empty Kraus list is allowed when the dimensions
    are given explicitly; it represents the zero map.
    """

    kraus: tuple[np.ndarray, ...]
    in_dim: int
    out_dim: int

    @classmethod
    def from_kraus(cls, kraus) -> "KrausChannel":
        ops = tuple(np.asarray(k, dtype=complex) for k in kraus)
        if not ops:
            raise ValueError("cannot infer dimensions from an empty Kraus list")
        out_dim, in_dim = ops[0].shape
        return cls(kraus=ops, in_dim=in_dim, out_dim=out_dim)

    def __post_init__(self):
        for k in self.kraus:
            if k.shape != (self.out_dim, self.in_dim):
                raise ValueError(
                    f"Kraus operator shape {k.shape} does not match "
                    f"({self.out_dim}, {self.in_dim})"
                )

    @property
    def is_square(self) -> bool:
        return self.in_dim == self.out_dim


def apply_channel(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Apply the channel: sum_i K_i rho K_i^dagger."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.in_dim, ch.in_dim):
        raise ValueError(f"state shape {rho.shape} does not match in_dim {ch.in_dim}")
    out = np.zeros((ch.out_dim, ch.out_dim), dtype=complex)
    for k in ch.kraus:
        out += k @ rho @ k.conj().T
    return out


def cptp_residuals(ch: KrausChannel) -> tuple[float, float]:
    """Operator norms of sum K+K - I (trace) and sum K K+ - I (unitality)."""
    tp = -np.eye(ch.in_dim, dtype=complex)
    un = -np.eye(ch.out_dim, dtype=complex)
    for k in ch.kraus:
        tp += k.conj().T @ k
        un += k @ k.conj().T
    return float(np.linalg.norm(tp, 2)), float(np.linalg.norm(un, 2))


def dilation_isometry(ch: KrausChannel) -> np.ndarray:
    """Isometry W stacking the Kraus blocks, with the environment index first.

    W maps in_dim -> len(kraus) * out_dim and satisfies W+W = I; tracing the
    environment factor of W rho W+ reproduces :func:`apply_channel`.
    """
    tp, _ = cptp_residuals(ch)
    if tp > TP_TOL:
        raise ChannelError(
            f"dilation undefined: channel is not trace preserving (residual {tp:.3e})"
        )
    return np.concatenate(ch.kraus, axis=0)


def omega_vector(dim: int) -> np.ndarray:
    """The maximally entangled state sum_i |ii> / sqrt(dim) on dim x dim."""
    vec = np.zeros(dim * dim, dtype=complex)
    vec[:: dim + 1] = 1.0 / sqrt(dim)
    return vec


def omega_matrix(dim: int) -> np.ndarray:
    vec = omega_vector(dim)
    return np.outer(vec, vec.conj())


@dataclass(frozen=True)
class ChoiState:
    """Choi matrix of a square channel, with system index before reference."""

    dim: int
    matrix: np.ndarray


def choi_matrix(ch: KrausChannel) -> ChoiState:
    """Choi state (ch x id)(omega) of a square channel.

    With the system factor first, C = (1/d) sum_k vec(K_k) vec(K_k)+, where
    vec is row-major flattening.  The channel is recovered through
    ch(rho) = d * Tr_ref[(I x rho^T) C].
    """
    if not ch.is_square:
        raise ValueError("Choi matrix requires a square channel")
    d = ch.in_dim
    c = np.zeros((d * d, d * d), dtype=complex)
    for k in ch.kraus:
        v = k.reshape(-1)
        c += np.outer(v, v.conj())
    return ChoiState(dim=d, matrix=c / d)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma, for Hermitian inputs."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"incompatible shapes {rho.shape} and {sigma.shape}")
    diff = rho - sigma
    diff = (diff + diff.conj().T) / 2.0
    return float(0.5 * np.abs(np.linalg.eigvalsh(diff)).sum())


def entanglement_fidelity(ch: KrausChannel) -> tuple[float, float]:
    """Entanglement fidelity F = <omega| C |omega> and Bures distance sqrt(1-F)."""
    c = choi_matrix(ch)
    omega = omega_vector(ch.in_dim)
    f = float(np.real(omega.conj() @ c.matrix @ omega))
    f = min(max(f, 0.0), 1.0)
    return f, sqrt(1.0 - f)


def partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all tensor factors not listed in ``keep`` (0-based indices)."""
    rho = np.asarray(rho, dtype=complex)
    dims = [int(d) for d in dims]
    n = len(dims)
    total = prod(dims)
    if rho.shape != (total, total):
        raise ValueError(
            f"state shape {rho.shape} does not match subsystem dims {dims}"
        )
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"invalid subsystem selection {keep} for {n} factors")
    tensor = rho.reshape(dims + dims)
    # Trace matched row/col axis pairs back to front; the pair offset is the
    # current row-axis count, which np.trace keeps consistent.
    for ax in reversed(range(n)):
        if ax in keep:
            continue
        tensor = np.trace(tensor, axis1=ax, axis2=ax + tensor.ndim // 2)
    kept_dim = prod(dims[k] for k in keep)
    return tensor.reshape(kept_dim, kept_dim)
