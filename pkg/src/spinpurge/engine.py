"""Cyclic purification dynamics and steady-state superoperator analysis.

One cycle re-prepares the ancilla, applies the segment unitaries of a
:class:`~spinpurge.model.PiecewiseHamiltonian` in order, and traces the
ancilla out again:

    rho' = Tr_A( U ( sigma_A (x) rho ) U^dagger ),    U = U_m ... U_1.

:func:`run_cycles` iterates that map while recording purity, entropy and
target-state fidelity; :func:`build_superoperator` represents the affine
difference map ``rho -> Phi(rho) - rho`` as a real matrix over an
orthonormal Hermitian operator basis, whose numerical rank/nullity (after
projecting out the trace direction, matching the D = 4^N - 1 counting)
decides between a unique steady state and a degenerate steady-state
subspace.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import PiecewiseHamiltonian, ResetSpec
from .qmat import (
    DensityMatrix,
    entropy,
    expm_hermitian,
    fidelity_fgs,
    partial_trace_ancilla,
    partial_trace_system,
    purity,
    tensor_ancilla,
    trace_norm,
    validate_density_matrix,
)

__all__ = [
    "CycleTrace",
    "SuperoperatorMatrix",
    "RankReport",
    "SteadyStateClass",
    "segment_unitaries",
    "cycle_unitary",
    "apply_cycle",
    "reset_channel",
    "run_cycles",
    "hermitian_basis",
    "build_superoperator",
    "rank_report",
    "numeric_rank_nullity",
    "classify_rc",
    "matrix_element_apply",
]

SVD_ZERO_TOL = 1e-9


@dataclass
class CycleTrace:
    """Per-cycle functionals of a purification run."""

    purity: np.ndarray
    entropy: np.ndarray
    fgs_fidelity: np.ndarray
    ancilla_purity: np.ndarray
    converged_at: int | None = None

    @property
    def epsilon(self) -> np.ndarray:
        """Fidelity error 1 - F(n)."""
        return 1.0 - self.fgs_fidelity

    @property
    def n_cycles(self) -> int:
        return len(self.purity)


def segment_unitaries(schedule: PiecewiseHamiltonian) -> list[np.ndarray]:
    return [expm_hermitian(h, t) for h, t in schedule.segments]


def cycle_unitary(schedule: PiecewiseHamiltonian) -> np.ndarray:
    """Product of the segment unitaries in application order."""
    us = segment_unitaries(schedule)
    U = us[0]
    for v in us[1:]:
        U = v @ U
    return U


def apply_cycle(rho: np.ndarray, u_cycle: np.ndarray, ancilla_state: np.ndarray) -> np.ndarray:
    """One full cycle on a system state or a stack of them ``(..., d, d)``."""
    joint = tensor_ancilla(ancilla_state, rho)
    joint = u_cycle @ joint @ u_cycle.conj().swapaxes(-1, -2)
    return partial_trace_ancilla(joint)


def reset_channel(rho_joint: np.ndarray, reset: ResetSpec) -> np.ndarray:
    """Discard the ancilla and install the reset state: rho_A (x) Tr_A(rho)."""
    return tensor_ancilla(reset.ancilla_state(), partial_trace_ancilla(rho_joint))


def run_cycles(
    rho0: DensityMatrix | np.ndarray,
    schedule: PiecewiseHamiltonian,
    reset: ResetSpec | None = None,
    n_cycles: int = 1000,
    steady_tol: float = 1e-10,
    check_invariants: bool = True,
    invariant_tol: float = 1e-10,
    positivity_floor: float = -1e-8,
) -> tuple[DensityMatrix, CycleTrace]:
    """Iterate the purification map, recording per-cycle functionals.

    Stops early once the trace distance between consecutive states drops
    below ``steady_tol`` (set it to 0 to disable).  With
    ``check_invariants`` the state is verified each cycle to stay a valid
    density matrix within ``invariant_tol`` / ``positivity_floor``.
    """
    reset = reset or ResetSpec()
    rho = np.asarray(rho0.mat if isinstance(rho0, DensityMatrix) else rho0, dtype=complex)
    d_sys = rho.shape[0]
    if 2 * d_sys != schedule.dim:
        raise ValueError(
            f"schedule acts on dim {schedule.dim}, expected twice the system dim {d_sys}"
        )
    U = cycle_unitary(schedule)
    anc = reset.ancilla_state()

    purs = np.empty(n_cycles)
    ents = np.empty(n_cycles)
    fids = np.empty(n_cycles)
    apur = np.empty(n_cycles)
    converged = None
    n_done = 0
    for n in range(n_cycles):
        joint = tensor_ancilla(anc, rho)
        joint = U @ joint @ U.conj().T
        apur[n] = purity(partial_trace_system(joint))
        new = partial_trace_ancilla(joint)
        if check_invariants:
            validate_density_matrix(
                new,
                trace_tol=invariant_tol,
                herm_tol=invariant_tol,
                eig_floor=positivity_floor,
            )
        purs[n] = purity(new)
        ents[n] = entropy(new)
        fids[n] = fidelity_fgs(new)
        n_done = n + 1
        if steady_tol > 0 and trace_norm(new - rho) < steady_tol:
            rho = new
            converged = n
            break
        rho = new

    trace = CycleTrace(
        purity=purs[:n_done],
        entropy=ents[:n_done],
        fgs_fidelity=fids[:n_done],
        ancilla_purity=apur[:n_done],
        converged_at=converged,
    )
    return DensityMatrix(rho), trace


# ---------------------------------------------------------------------------
# superoperator representation and rank/nullity


def hermitian_basis(d: int) -> np.ndarray:
    """Orthonormal Hermitian basis of the d x d operator space, shape (d^2, d, d).

    Element 0 is I/sqrt(d); elements 1..d-1 are traceless diagonal; the rest
    are the symmetric/antisymmetric off-diagonal pairs.  Orthonormal under
    the Hilbert-Schmidt inner product, so coefficients of a Hermitian
    operator are real.
    """
    basis = np.zeros((d * d, d, d), dtype=complex)
    basis[0] = np.eye(d) / np.sqrt(d)
    for j in range(1, d):
        v = np.zeros(d)
        v[:j] = 1.0
        v[j] = -j
        basis[j] = np.diag(v / np.sqrt(j * (j + 1)))
    idx = d
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for k in range(d):
        for l in range(k + 1, d):
            basis[idx, k, l] = inv_sqrt2
            basis[idx, l, k] = inv_sqrt2
            idx += 1
            basis[idx, k, l] = -1j * inv_sqrt2
            basis[idx, l, k] = 1j * inv_sqrt2
            idx += 1
    return basis


@dataclass
class SuperoperatorMatrix:
    """Real matrix of the difference map rho -> Phi(rho) - rho.

    ``matrix`` is expressed in the :func:`hermitian_basis` ordering, so row
    and column 0 correspond to the (normalized) identity direction, and the
    remaining 4^N - 1 rows/columns span the traceless operators.  Phi is
    trace preserving, making the traceless block invariant; dropping row
    and column 0 restricts the count to the D = 4^N - 1 traceless directions.
    """

    n_qubits: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def traceless_block(self) -> np.ndarray:
        return self.matrix[1:, 1:]


def build_superoperator(
    schedule: PiecewiseHamiltonian,
    reset: ResetSpec | None = None,
    max_qubits: int = 5,
) -> SuperoperatorMatrix:
    """Apply the full cycle to every Hermitian basis element and collect columns.

    Column b holds the basis coefficients of Phi(E_b) - E_b.  Applying the
    channel to a basis is numerically identical to assembling the
    element-wise matrix of the map and keeps the index bookkeeping in the
    linear algebra library; see :func:`matrix_element_apply` for the
    element-formula cross-check.
    """
    reset = reset or ResetSpec()
    n_sys = schedule.n_qubits - 1
    if n_sys > max_qubits:
        raise ValueError(
            f"superoperator needs a 4^N x 4^N matrix; N={n_sys} exceeds the {max_qubits}-qubit cap"
        )
    d = 2**n_sys
    B = hermitian_basis(d)
    U = cycle_unitary(schedule)
    out = apply_cycle(B, U, reset.ancilla_state()) - B
    # M[a, b] = Tr(B_a out_b): flatten so zgemm does the contraction
    Bf = B.reshape(d * d, -1)
    Of = out.transpose(0, 2, 1).reshape(d * d, -1)
    M = np.real(Of @ Bf.T).T
    return SuperoperatorMatrix(n_qubits=n_sys, matrix=M)


@dataclass(frozen=True)
class RankReport:
    """Rank/nullity of the trace-projected map with gap diagnostics."""

    rank: int
    nullity: int
    singular_values: np.ndarray
    tol: float

    @property
    def gap_ratio(self) -> float:
        """sigma_rank / sigma_rank+1: the spread separating kept from zeroed values."""
        s = self.singular_values
        if self.nullity == 0 or self.rank == 0:
            return float("inf")
        return float(s[self.rank - 1] / max(s[self.rank], 1e-300))


def rank_report(M: SuperoperatorMatrix, tol: float = SVD_ZERO_TOL) -> RankReport:
    """SVD of the traceless block; values below tol * sigma_max count as zero."""
    s = np.linalg.svd(M.traceless_block(), compute_uv=False)
    cut = tol * (s[0] if s.size else 1.0)
    nullity = int(np.sum(s < cut))
    return RankReport(rank=len(s) - nullity, nullity=nullity, singular_values=s, tol=tol)


def numeric_rank_nullity(M: SuperoperatorMatrix, tol: float = SVD_ZERO_TOL) -> tuple[int, int]:
    """(rank, nullity) of the difference map on the 4^N - 1 dimensional traceless space."""
    rep = rank_report(M, tol)
    return rep.rank, rep.nullity


class SteadyStateClass(enum.Enum):
    UNIQUE_SSS = "unique"
    DEGENERATE_SSS = "degenerate"


def classify_rc(nullity: int) -> SteadyStateClass:
    """Zero nullity: one steady state, fully polarizable from any start; else degenerate."""
    return SteadyStateClass.UNIQUE_SSS if nullity == 0 else SteadyStateClass.DEGENERATE_SSS


def matrix_element_apply(u_cycle: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Channel output assembled from joint-unitary matrix elements.

    Cross-check variant of the cycle map (ideal reset) that sums the two
    ancilla readout branches explicitly:

        Phi(rho)_{ij} = sum_{a in 0,1} U[(a,i),(0,.)] rho U^dag[(0,.),(a,j)]

    where (a, i) is the joint index with ancilla bit a.  Used by the test
    suite against :func:`apply_cycle`; kept out of the hot path.
    """
    d2 = u_cycle.shape[0]
    d = d2 // 2
    rho = np.asarray(rho, dtype=complex)
    u0 = u_cycle[:d, :d]  # <0,i| U |0,alpha>
    u1 = u_cycle[d:, :d]  # <1,i| U |0,alpha>
    return u0 @ rho @ u0.conj().T + u1 @ rho @ u1.conj().T
