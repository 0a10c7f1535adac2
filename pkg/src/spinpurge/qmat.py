"""Dense complex operator algebra for small spin-1/2 systems.

Conventions used throughout the package:

* ``|0>`` is the computational-zero / down state and occupies index 0 of
  every tensor factor.  The fully polarized target state ``|00...0>`` is
  therefore the first computational basis vector, and its fidelity is the
  single matrix element ``rho[0, 0]``.
* ``sigma_z = diag(+1, -1)``, so ``|0>`` is the +1 eigenvector.
* The raising operator ``"+"`` adds one excitation, ``|0> -> |1>``; as a
  matrix it is lower triangular in this basis.  ``(sigma^+)|0...0>`` moves
  the system away from the target state.
* The ancilla, when present, is always the leftmost tensor factor.

All operators are plain complex ``numpy`` arrays; states carry a thin
:class:`DensityMatrix` wrapper only at module boundaries where the state
invariants (unit trace, Hermiticity, positivity) are part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = [
    "PAULI_AXES",
    "pauli",
    "pauli_on_site",
    "exchange_on_sites",
    "kron_all",
    "expm_hermitian",
    "partial_trace_ancilla",
    "partial_trace_system",
    "tensor_ancilla",
    "purity",
    "entropy",
    "fidelity_fgs",
    "trace_norm",
    "maximally_mixed",
    "fgs_density",
    "is_hermitian",
    "validate_density_matrix",
    "DensityMatrix",
]

_SIGMA = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
    # excitation raising/lowering relative to |0> = down
    "+": np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex),
    "-": np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
}

PAULI_AXES = tuple(_SIGMA)


def pauli(axis: str) -> np.ndarray:
    """Return a copy of the 2x2 matrix for ``axis`` in {'x','y','z','+','-'}."""
    try:
        return _SIGMA[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected one of {PAULI_AXES}") from None


def kron_all(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of the given matrices, left to right."""
    return reduce(np.kron, ops)


def pauli_on_site(axis: str, site: int, qubits: int) -> np.ndarray:
    """Single-site operator embedded in a ``qubits``-qubit register.

    Site 0 is the leftmost tensor factor.  Raises ``ValueError`` when the
    site index is out of range.
    """
    if not 0 <= site < qubits:
        raise ValueError(f"site {site} out of range for {qubits} qubits")
    sig = pauli(axis)
    left = np.eye(2**site, dtype=complex)
    right = np.eye(2 ** (qubits - site - 1), dtype=complex)
    return kron_all(left, sig, right)


def exchange_on_sites(i: int, j: int, qubits: int) -> np.ndarray:
    """Dirac exchange (swap) operator ``(1 + x.x + y.y + z.z)/2`` on qubits i, j."""
    if i == j:
        raise ValueError("exchange operator needs two distinct sites")
    out = 0.5 * np.eye(2**qubits, dtype=complex)
    for ax in "xyz":
        out += 0.5 * (pauli_on_site(ax, i, qubits) @ pauli_on_site(ax, j, qubits))
    return out


def is_hermitian(M: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.abs(M - M.conj().T).max() <= tol)


def expm_hermitian(H: np.ndarray, t: float, herm_tol: float = 1e-12) -> np.ndarray:
    """Unitary ``exp(-i H t)`` of a Hermitian generator via eigendecomposition.

    Eigendecomposition rather than scaling-and-squaring: every generator in
    this package is Hermitian, and the spectral form is unitary up to
    round-off.  Non-Hermitian input is rejected.
    """
    H = np.asarray(H, dtype=complex)
    scale = max(1.0, float(np.abs(H).max()))
    if np.abs(H - H.conj().T).max() > herm_tol * scale:
        raise ValueError("expm_hermitian: generator is not Hermitian")
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * w * t)) @ V.conj().T


def partial_trace_ancilla(rho: np.ndarray) -> np.ndarray:
    """Trace out the leftmost (ancilla) qubit.

    Accepts a single ``(2d, 2d)`` matrix or a stack ``(..., 2d, 2d)``.
    """
    rho = np.asarray(rho)
    dim = rho.shape[-1]
    if dim % 2:
        raise ValueError("dimension not divisible by 2")
    d = dim // 2
    r = rho.reshape(rho.shape[:-2] + (2, d, 2, d))
    return np.einsum("...iaib->...ab", r)


def partial_trace_system(rho: np.ndarray) -> np.ndarray:
    """Trace out everything but the leftmost (ancilla) qubit."""
    rho = np.asarray(rho)
    dim = rho.shape[-1]
    if dim % 2:
        raise ValueError("dimension not divisible by 2")
    d = dim // 2
    r = rho.reshape(rho.shape[:-2] + (2, d, 2, d))
    return np.einsum("...iaja->...ij", r)


def tensor_ancilla(ancilla_state: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Tensor a 2x2 ancilla state onto the left of ``rho``.

    Accepts a single system matrix or a stack ``(..., d, d)``.
    """
    rho = np.asarray(rho)
    if rho.ndim == 2:
        return np.kron(ancilla_state, rho)
    d = rho.shape[-1]
    out = np.einsum("ab,ncd->nacbd", ancilla_state, rho.reshape(-1, d, d))
    return out.reshape(rho.shape[:-2] + (2 * d, 2 * d))


def purity(rho: np.ndarray) -> float:
    """Tr rho^2."""
    rho = np.asarray(rho)
    return float(np.real(np.einsum("ij,ji->", rho, rho)))


def entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy -sum(lam ln lam) over eigenvalues lam > 0 (natural log)."""
    lam = np.linalg.eigvalsh(np.asarray(rho))
    lam = lam[lam > 1e-15]
    return float(-np.sum(lam * np.log(lam)))


def fidelity_fgs(rho: np.ndarray) -> float:
    """Overlap with the fully polarized state, <0...0| rho |0...0> = rho[0, 0]."""
    return float(np.real(np.asarray(rho)[0, 0]))


def trace_norm(M: np.ndarray) -> float:
    """Trace norm (sum of |eigenvalues|) of a Hermitian matrix."""
    return float(np.abs(np.linalg.eigvalsh(np.asarray(M))).sum())


def maximally_mixed(n_qubits: int) -> np.ndarray:
    d = 2**n_qubits
    return np.eye(d, dtype=complex) / d


def fgs_density(n_qubits: int) -> np.ndarray:
    rho = np.zeros((2**n_qubits, 2**n_qubits), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def validate_density_matrix(
    rho: np.ndarray,
    trace_tol: float = 1e-12,
    herm_tol: float = 1e-12,
    eig_floor: float = -1e-10,
) -> None:
    """Raise ``ValueError`` unless rho is a valid state within tolerances.

    Checks unit trace, Hermiticity in max-norm, and eigenvalues above the
    numerical positivity floor.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    n = rho.shape[0]
    if n & (n - 1):
        raise ValueError("dimension must be a power of 2")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 by more than {trace_tol}")
    if np.abs(rho - rho.conj().T).max() > herm_tol:
        raise ValueError("state is not Hermitian within tolerance")
    lam_min = float(np.linalg.eigvalsh(rho)[0])
    if lam_min < eig_floor:
        raise ValueError(f"minimum eigenvalue {lam_min} below floor {eig_floor}")


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix over a power-of-2 dimensional Hilbert space."""

    mat: np.ndarray

    @classmethod
    def make(cls, mat: np.ndarray, check: bool = True) -> "DensityMatrix":
        mat = np.asarray(mat, dtype=complex)
        if check:
            validate_density_matrix(mat)
        return cls(mat)

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        return cls(maximally_mixed(n_qubits))

    @classmethod
    def fgs(cls, n_qubits: int) -> "DensityMatrix":
        return cls(fgs_density(n_qubits))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def purity(self) -> float:
        return purity(self.mat)

    def entropy(self) -> float:
        return entropy(self.mat)

    def fidelity_fgs(self) -> float:
        return fidelity_fgs(self.mat)

    def validate(self, **kw) -> None:
        validate_density_matrix(self.mat, **kw)
