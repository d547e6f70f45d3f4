"""SU(d)-covariant valence-bond codes on a chain of adjoint sites.

A code with parameters (d, N) encodes a d-dimensional logical space into N
bulk sites of dimension d**2 - 1 plus one edge site of dimension d.  The
encoding chain is driven by the Kraus family A^i = sqrt(2d/(d**2-1)) t^i,
whose channel E fixes the maximally mixed state and scales every generator
by chi = -1/(d**2 - 1).

Expectation values are available along two independent routes: transfer
contraction (cost linear in N, any N) and dense brute-force encoding
(bounded by an amplitude cap).  Bond bookkeeping: bond n+ sits between
sites n and n+1, so an operator inserted at bond n is separated from the
logical ket by n channel applications; bond N is the edge site itself and
bond 0 is adjacent to the logical ket.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .quantum_ops import KrausChannel, choi_matrix, trace_distance
from .su_algebra import (
    SuBasis,
    adjoint_generator,
    adjoint_group_element,
    expi_hermitian,
    gell_mann_basis,
)

__all__ = [
    "VbsCode",
    "BondInsertion",
    "DENSE_CAP",
    "build",
    "eta",
    "transfer_apply",
    "transfer_power",
    "edge_overlap",
    "encode_dense",
    "dense_isometry",
    "edge_state",
    "bulk_state",
    "detection_overlap",
    "detection_closed_form",
    "correlation",
    "correlation_closed_form",
    "site_expectation",
    "site_operator_overlaps",
    "site_overlap_closed_forms",
    "sum_rule_check",
    "effective_noise_channel",
    "compressed_transversal_gate",
    "covariant_gate",
    "CovariantGateResult",
    "erasure_bound",
    "bond_error_weights",
    "bond_error_stacks",
    "bond_error_compressions",
]

DENSE_CAP = 2_000_000

BUILD_TOL = 1e-12


class ContractionError(RuntimeError):
    """Raised when dual-route contraction values fail to agree."""


@dataclass(frozen=True)
class VbsCode:
    d: int
    n_sites: int
    basis: SuBasis
    kraus: np.ndarray  # (d**2 - 1, d, d)
    chi: float

    @property
    def site_dim(self) -> int:
        """Bulk site dimension d**2 - 1."""
        return self.basis.size

    @property
    def site_dims(self) -> tuple[int, ...]:
        """Physical tensor factors: N bulk sites, then the edge."""
        return (self.site_dim,) * self.n_sites + (self.d,)

    @property
    def dense_size(self) -> int:
        return self.site_dim**self.n_sites * self.d


@dataclass(frozen=True)
class BondInsertion:
    """An operator spliced into the encoding chain at a given bond."""

    bond: int
    operator: np.ndarray


def build(d: int, n_sites: int) -> VbsCode:
    """Construct the (d, N) valence-bond code and validate its channel."""
    if d < 2 or n_sites < 1:
        raise ValueError(f"invalid code parameters d={d}, N={n_sites}")
    basis = gell_mann_basis(d)
    q = basis.size
    kraus = np.sqrt(2.0 * d / q) * basis.generators
    chi = -1.0 / q
    code = VbsCode(d=d, n_sites=n_sites, basis=basis, kraus=kraus, chi=chi)
    eye = np.eye(d)
    tp = np.einsum("aji,ajk->ik", kraus.conj(), kraus) - eye
    un = np.einsum("aij,akj->ik", kraus, kraus.conj()) - eye
    if max(np.abs(tp).max(), np.abs(un).max()) > BUILD_TOL:
        raise ContractionError("Kraus family is not trace preserving and unital")
    scaled = np.stack([transfer_apply(code, t) for t in basis.generators])
    if np.abs(scaled - chi * basis.generators).max() > BUILD_TOL:
        raise ContractionError("transfer channel does not scale the generators")
    return code


def eta(d: int, n_sites: int) -> float:
    """Per-gate logical error scale (chi/N)(1 - chi^N)/(1 - chi).

    This is the average of chi^n over bonds 1..N; it vanishes as either N or
    d grows, the two directions along which the code becomes exact.
    """
    if d < 2 or n_sites < 1:
        raise ValueError(f"invalid parameters d={d}, N={n_sites}")
    chi = -1.0 / (d * d - 1.0)
    return (chi / n_sites) * (1.0 - chi**n_sites) / (1.0 - chi)


def transfer_apply(code: VbsCode, x: np.ndarray) -> np.ndarray:
    """One application of the transfer channel via its Kraus sum."""
    return np.einsum("aij,jk,alk->il", code.kraus, x, code.kraus.conj())


def transfer_power(code: VbsCode, x: np.ndarray, n: int) -> np.ndarray:
    out = np.asarray(x, dtype=complex)
    for _ in range(n):
        out = transfer_apply(code, out)
    return out


def _group_insertions(code: VbsCode, insertions) -> dict[int, np.ndarray]:
    """Compose insertions per bond; first listed acts leftmost in the chain."""
    grouped: dict[int, np.ndarray] = {}
    for ins in insertions:
        if isinstance(ins, BondInsertion):
            bond, op = ins.bond, ins.operator
        else:
            bond, op = ins
        if not 0 <= bond <= code.n_sites:
            raise ValueError(f"bond index {bond} outside 0..{code.n_sites}")
        op = np.asarray(op, dtype=complex)
        if op.shape != (code.d, code.d):
            raise ValueError(f"insertion operator must be {code.d}x{code.d}")
        grouped[bond] = grouped[bond] @ op if bond in grouped else op
    return grouped


def edge_overlap(code: VbsCode, bra_insertions=(), ket_insertions=()) -> np.ndarray:
    """Logical matrix of overlaps between decorated code states.

    Returns M with M[alpha, beta] = <psi_alpha with bra insertions |
    psi_beta with ket insertions>, contracted by transfer iteration from the
    edge downwards: crossing bond b applies C -> X_b^dagger C Y_b, crossing a
    site applies the transfer channel.
    """
    bra = _group_insertions(code, bra_insertions)
    ket = _group_insertions(code, ket_insertions)
    c = np.eye(code.d, dtype=complex)
    for bond in range(code.n_sites, -1, -1):
        if bond in bra:
            c = bra[bond].conj().T @ c
        if bond in ket:
            c = c @ ket[bond]
        if bond > 0:
            c = transfer_apply(code, c)
    return c


def encode_dense(code: VbsCode, logical, insertions=(), cap: int = DENSE_CAP) -> np.ndarray:
    """Dense state vector of the encoded (optionally decorated) logical input.

    ``logical`` is a basis index or a length-d vector.  The returned vector
    is ordered with site 1 as the slowest tensor factor and the edge factor
    last.  Raises when the amplitude count exceeds ``cap``; use the transfer
    operations beyond that regime.
    """
    if code.dense_size > cap:
        raise ValueError(
            f"dense encoding needs {code.dense_size} amplitudes, cap is {cap}; "
            "use the transfer-matrix operations instead"
        )
    if np.isscalar(logical):
        vec = np.zeros(code.d, dtype=complex)
        vec[int(logical)] = 1.0
    else:
        vec = np.asarray(logical, dtype=complex)
    grouped = _group_insertions(code, insertions)
    if 0 in grouped:
        vec = grouped[0] @ vec
    tensor = vec
    for site in range(1, code.n_sites + 1):
        tensor = np.einsum("ibg,...g->...ib", code.kraus, tensor)
        if site in grouped:
            tensor = tensor @ grouped[site].T
    return tensor.reshape(-1)


def dense_isometry(code: VbsCode, cap: int = DENSE_CAP):
    """Stack dense encodings of the logical basis into a code isometry."""
    from .qec_core import CodeIsometry

    columns = [encode_dense(code, alpha, cap=cap) for alpha in range(code.d)]
    return CodeIsometry(
        isometry=np.stack(columns, axis=1), site_dims=code.site_dims
    )


def edge_state(code: VbsCode, alpha: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Edge-site density matrix after n transfer steps, two ways.

    Returns (iterated, closed) where closed = I/d + 2 chi^n sum_a t^a t^a_aa;
    the pair is checked to agree before returning.
    """
    if not 0 <= n <= code.n_sites:
        raise ValueError(f"step count {n} outside 0..{code.n_sites}")
    proj = np.zeros((code.d, code.d), dtype=complex)
    proj[alpha, alpha] = 1.0
    iterated = transfer_power(code, proj, n)
    g = code.basis.generators
    closed = np.eye(code.d) / code.d + 2.0 * code.chi**n * np.einsum(
        "a,aij->ij", g[:, alpha, alpha], g
    )
    if np.abs(iterated - closed).max() > 1e-12:
        raise ContractionError("edge state closed form disagrees with iteration")
    return iterated, closed


def bulk_state(code: VbsCode, alpha: int, n: int) -> np.ndarray:
    """Reduced density matrix of bulk site n, as the complementary-channel
    output rho[i, j] = tr(sigma_n A^j A^i) of sigma_n = E^(n-1)(|alpha><alpha|)."""
    if not 1 <= n <= code.n_sites:
        raise ValueError(f"site index {n} outside 1..{code.n_sites}")
    proj = np.zeros((code.d, code.d), dtype=complex)
    proj[alpha, alpha] = 1.0
    sigma = transfer_power(code, proj, n - 1)
    return np.einsum("ab,jbc,ica->ij", sigma, code.kraus, code.kraus)


def detection_overlap(code: VbsCode, alpha: int, beta: int, a: int, bond: int) -> complex:
    """Transfer value <psi_alpha| (t^a inserted at the given bond) |psi_beta>."""
    t = code.basis.generators[a]
    return complex(edge_overlap(code, ket_insertions=[(bond, t)])[alpha, beta])


def detection_closed_form(code: VbsCode, a: int, bond: int) -> np.ndarray:
    """Closed-form logical matrix chi^n t^a for a single bond insertion."""
    return code.chi**bond * code.basis.generators[a]


def correlation(
    code: VbsCode, alpha: int, beta: int, a: int, b: int, m: int, n: int
) -> complex:
    """Transfer value of the two-bond insertion t^a at bond m, t^b at bond n."""
    if not 0 <= m < n <= code.n_sites:
        raise ValueError(f"bond pair ({m}, {n}) must satisfy 0 <= m < n <= N")
    g = code.basis.generators
    mat = edge_overlap(code, ket_insertions=[(n, g[b]), (m, g[a])])
    return complex(mat[alpha, beta])


def correlation_closed_form(code: VbsCode, a: int, b: int, m: int, n: int) -> np.ndarray:
    """Closed-form logical matrix for the two-bond insertion.

    chi^(n-m) delta_ab I / (2d) + chi^n h_bac t^c / 2 with
    h_bac = d_bac + i f_bac.
    """
    basis = code.basis
    h = basis.d_sym[b, a, :] + 1j * basis.f[b, a, :]
    mat = 0.5 * code.chi**n * np.einsum("c,cij->ij", h, basis.generators)
    if a == b:
        mat = mat + code.chi ** (n - m) / (2.0 * code.d) * np.eye(code.d)
    return mat


def _site_term(code: VbsCode, upper: list, site: int, t: np.ndarray) -> np.ndarray:
    """Bond expansion of one adjoint site operator below fixed upper insertions."""
    low = edge_overlap(code, ket_insertions=upper + [(site - 1, t)])
    high = edge_overlap(code, ket_insertions=upper + [(site, t)])
    return low - high


def site_expectation(code: VbsCode, alpha: int, beta: int, a: int, site: int) -> complex:
    """Single adjoint site-operator matrix element via bond expansion,
    equal to d^2 chi^(site-1)/(d^2-1) t^a[alpha, beta]."""
    if not 1 <= site <= code.n_sites:
        raise ValueError(f"site index {site} outside 1..{code.n_sites}")
    mat = _site_term(code, [], site, code.basis.generators[a])
    return complex(mat[alpha, beta])


def site_operator_overlaps(
    code: VbsCode, alpha: int, beta: int, a: int, b: int, m: int, n: int
) -> tuple[complex, complex, complex]:
    """Adjoint site-operator expectation values via bond expansion.

    Returns (<T_n^a>, <T_n^a t_edge^b>, <T_m^a T_n^b>) for sites 1 <= m < n
    <= N, where T acts through [A^i, t] on the chain.  Each value is checked
    against its closed form before returning.
    """
    if not 1 <= m < n <= code.n_sites:
        raise ValueError(f"site pair ({m}, {n}) must satisfy 1 <= m < n <= N")
    g = code.basis.generators
    ta, tb = g[a], g[b]
    single = _site_term(code, [], n, ta)
    with_edge = _site_term(code, [(code.n_sites, tb)], n, ta)
    pair = _site_term(code, [(n - 1, tb)], m, ta) - _site_term(code, [(n, tb)], m, ta)
    values = (
        complex(single[alpha, beta]),
        complex(with_edge[alpha, beta]),
        complex(pair[alpha, beta]),
    )
    closed = site_overlap_closed_forms(code, a, b, m, n)
    for got, form in zip(values, closed):
        if abs(got - form[alpha, beta]) > 1e-12:
            raise ContractionError("site overlap disagrees with its closed form")
    return values


def site_overlap_closed_forms(
    code: VbsCode, a: int, b: int, m: int, n: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form logical matrices matching :func:`site_operator_overlaps`."""
    q = float(code.site_dim)
    d = code.d
    chi = code.chi
    eye = np.eye(d)
    ta = code.basis.generators[a]
    single = d * d / q * chi ** (n - 1) * ta
    with_edge = (-d / (2.0 * q) * chi ** (code.n_sites - n) * (a == b)) * eye
    pair = (-(d**3) / (2.0 * q * q) * chi ** (n - m - 1) * (a == b)) * eye
    return single, with_edge, pair


def sum_rule_check(code: VbsCode, a: int, alpha: int, beta: int) -> float:
    """Residual of the telescoping decomposition of t^a into edge and bulk terms."""
    t = code.basis.generators[a]
    total = edge_overlap(code, ket_insertions=[(code.n_sites, t)])
    for site in range(1, code.n_sites + 1):
        total = total + _site_term(code, [], site, t)
    return float(abs(t[alpha, beta] - total[alpha, beta]))


def effective_noise_channel(
    code: VbsCode, eps, bonds=None
) -> tuple[KrausChannel, np.ndarray, float]:
    """Random-unitary mixture of bond error gates and its one-unitary proxy.

    The mixture averages exp(i chi^n sum_k eps_k t^k) uniformly over the
    given bonds (default 1..N).  The proxy exponentiates the bond-averaged
    scale, which for the default bond set equals :func:`eta`.  Returns the
    mixture channel, the proxy unitary, and the trace distance between
    their Choi matrices.
    """
    eps = np.asarray(eps, dtype=float)
    if eps.shape != (code.site_dim,):
        raise ValueError(f"expected {code.site_dim} error components")
    if bonds is None:
        bonds = range(1, code.n_sites + 1)
    bonds = [int(n) for n in bonds]
    if not bonds:
        raise ValueError("bond list must not be empty")
    h = np.einsum("k,kij->ij", eps, code.basis.generators)
    weight = 1.0 / sqrt(len(bonds))
    mixture = KrausChannel.from_kraus(
        [weight * expi_hermitian(code.chi**n * h) for n in bonds]
    )
    scale = float(np.mean([code.chi**n for n in bonds]))
    unitary = expi_hermitian(scale * h)
    proxy = KrausChannel.from_kraus([unitary])
    discrepancy = trace_distance(choi_matrix(mixture).matrix, choi_matrix(proxy).matrix)
    return mixture, unitary, discrepancy


def compressed_transversal_gate(
    code: VbsCode, site_matrix: np.ndarray, edge_matrix: np.ndarray
) -> np.ndarray:
    """Logical compression V+ (W^(xN) x M) V of a transversal product gate,
    contracted by the twisted transfer map; cost linear in N."""
    w = np.asarray(site_matrix, dtype=complex)
    c = np.asarray(edge_matrix, dtype=complex)
    if w.shape != (code.site_dim, code.site_dim) or c.shape != (code.d, code.d):
        raise ValueError("factor shapes do not match the code sites")
    for _ in range(code.n_sites):
        t1 = np.einsum("jba,bc->jac", code.kraus.conj(), c)
        c = np.einsum("jac,ji,icd->ad", t1, w, code.kraus)
    return c


@dataclass(frozen=True)
class CovariantGateResult:
    site_factor: np.ndarray
    edge_factor: np.ndarray
    n_sites: int
    covariance_residual: float
    logical_gate: np.ndarray
    logical_deviation: float


def covariant_gate(code: VbsCode, g: np.ndarray) -> CovariantGateResult:
    """Transversal realization of a logical special unitary g.

    The physical gate is the adjoint rotation of g on every bulk site and g
    itself on the edge.  The covariance residual is the worst basis-state
    deficit max_alpha |1 - |<psi_(g alpha)| U |psi_alpha>|| and the logical
    deviation measures leakage out of the code space, both contracted by
    transfer so any N is reachable.  The leakage comes through a Gram matrix
    and saturates near sqrt(machine epsilon) for exactly covariant gates;
    qec_core.logical_operator_check gives the full-precision value when the
    dense operator is affordable.
    """
    g = np.asarray(g, dtype=complex)
    if np.linalg.norm(g.conj().T @ g - np.eye(code.d), 2) > 1e-10:
        raise ValueError("gate is not unitary")
    site = adjoint_group_element(code.basis, g)
    logical = compressed_transversal_gate(code, site, g)
    diag = np.abs(np.diag(g.conj().T @ logical))
    residual = float(np.max(np.abs(1.0 - diag)))
    gram = np.eye(code.d) - logical.conj().T @ logical
    deviation = float(np.sqrt(max(0.0, np.linalg.eigvalsh(gram).max())))
    return CovariantGateResult(
        site_factor=site,
        edge_factor=g,
        n_sites=code.n_sites,
        covariance_residual=residual,
        logical_gate=logical,
        logical_deviation=deviation,
    )


def erasure_bound(code: VbsCode) -> float:
    """Scale proxy 1/(N * spectral range) from the widest adjoint generator.

    Reported as a relative scaling quantity with unit proportionality
    constant, not an absolute error.
    """
    widest = 0.0
    for a in range(code.site_dim):
        spec = np.linalg.eigvalsh(adjoint_generator(code.basis, a))
        widest = max(widest, float(spec[-1] - spec[0]))
    return 1.0 / (code.n_sites * widest)


def bond_error_weights(code: VbsCode, bonds, strength: float) -> tuple[float, float]:
    """Kraus weights (identity, per-insertion) for the bond error family.

    Weights are fixed so the family is trace preserving on code states:
    (1-p) + c^2 |bonds| (d^2-1) / (2d) = 1.
    """
    if not 0.0 < strength < 1.0:
        raise ValueError("error strength must lie strictly between 0 and 1")
    c = sqrt(2.0 * code.d * strength / (len(bonds) * code.site_dim))
    return sqrt(1.0 - strength), c


def _bond_list(code: VbsCode, bonds) -> list[int]:
    if bonds is None:
        return [code.n_sites]
    out = [int(n) for n in bonds]
    if not out or not all(0 <= n <= code.n_sites for n in out):
        raise ValueError(f"bond list {out} outside 0..{code.n_sites}")
    return out


def bond_error_stacks(
    code: VbsCode, bonds=None, strength: float = 0.1, cap: int = DENSE_CAP
) -> list[np.ndarray]:
    """Dense code-state stacks E_i V for the bond error family.

    The family is the weighted identity followed by every generator inserted
    at every listed bond (default: the edge bond N), ordered bond-major.
    """
    bonds = _bond_list(code, bonds)
    w0, w = bond_error_weights(code, bonds, strength)
    base = np.stack([encode_dense(code, al, cap=cap) for al in range(code.d)], axis=1)
    stacks = [w0 * base]
    for n in bonds:
        for a in range(code.site_dim):
            ins = [(n, code.basis.generators[a])]
            cols = [encode_dense(code, al, insertions=ins, cap=cap) for al in range(code.d)]
            stacks.append(w * np.stack(cols, axis=1))
    return stacks


def bond_error_compressions(
    code: VbsCode, bonds=None, strength: float = 0.1
) -> np.ndarray:
    """Compression tensor M[i, j] = V+ E_i+ E_j V for the bond error family,
    contracted entirely by transfer so any N is reachable."""
    bonds = _bond_list(code, bonds)
    w0, w = bond_error_weights(code, bonds, strength)
    g = code.basis.generators
    labels = [None] + [(n, a) for n in bonds for a in range(code.site_dim)]
    k = len(labels)
    m = np.zeros((k, k, code.d, code.d), dtype=complex)
    for i in range(k):
        for j in range(i, k):
            li, lj = labels[i], labels[j]
            bra = [] if li is None else [(li[0], g[li[1]])]
            ket = [] if lj is None else [(lj[0], g[lj[1]])]
            wi = w0 if li is None else w
            wj = w0 if lj is None else w
            val = wi * wj * edge_overlap(code, bra_insertions=bra, ket_insertions=ket)
            m[i, j] = val
            if j > i:
                m[j, i] = val.conj().T
    return m
