"""Hamiltonian builders and the cyclic protocol schedule.

All operators act on N+1 qubits with the ancilla as the leftmost tensor
factor (qubit 0); system node i lives on qubit i+1.  Energies are
dimensionless: the coupling scale is whatever unit the graph weights are
expressed in, with hbar = 1, and times multiply energies directly.

Two protocols are supported:

* RT   -- a single segment of duration tau with generator H_S + H_res,
          the resonant (flip-flop) exchange between ancilla and targets.
* ADRT -- the cycle split in two: resonant exchange during the first part,
          then the dispersive coupling sigma^z_A * sum_k gtilde_k sigma^z_k
          for the remainder.  H_S acts in every segment.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .netgraph import NetworkGraph
from .qmat import pauli_on_site

__all__ = [
    "ResetSpec",
    "ProtocolConfig",
    "PiecewiseHamiltonian",
    "build_h_system",
    "build_h_res",
    "build_h_disp",
    "build_schedule",
    "default_tau",
]


@dataclass(frozen=True)
class ResetSpec:
    """Ancilla state re-prepared at the start of every cycle.

    ``ideal`` resets to |0><0|; ``parametric`` resets to the qubit state
    [[1-z, x], [conj(x), z]], which must be positive semidefinite
    (z in [0,1], |x|^2 <= z(1-z)).
    """

    kind: str = "ideal"
    z: float = 0.0
    x: complex = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("ideal", "parametric"):
            raise ValueError(f"unknown reset kind {self.kind!r}")
        if self.kind == "parametric":
            if not 0.0 <= self.z <= 1.0:
                raise ValueError("reset parameter z must lie in [0, 1]")
            if abs(self.x) ** 2 > self.z * (1.0 - self.z) + 1e-15:
                raise ValueError("reset state not positive semidefinite: |x|^2 > z(1-z)")

    def ancilla_state(self) -> np.ndarray:
        if self.kind == "ideal":
            return np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        return np.array(
            [[1.0 - self.z, self.x], [np.conj(self.x), self.z]], dtype=complex
        )


@dataclass
class ProtocolConfig:
    """Cycle parameters for a purification run.

    ``g`` optionally overrides the graph's ancilla couplings; ``g_tilde``
    is required for ADRT and must provide one dispersive coupling per
    system site.  ``segment_fractions`` split the ADRT cycle (default
    halves); they must sum to 1.
    """

    tau: float
    delta: float
    protocol: str = "RT"
    g: dict[int, float] | None = None
    g_tilde: Sequence[float] | None = None
    n_cycles: int = 1000
    reset: ResetSpec = field(default_factory=ResetSpec)
    segment_fractions: tuple[float, float] = (0.5, 0.5)
    steady_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.n_cycles < 1:
            raise ValueError("n_cycles must be at least 1")
        if self.protocol not in ("RT", "ADRT"):
            raise ValueError(f"unknown protocol {self.protocol!r}")
        if abs(sum(self.segment_fractions) - 1.0) > 1e-12:
            raise ValueError("segment fractions must sum to 1")
        if self.protocol == "ADRT" and self.g_tilde is not None:
            gt = list(self.g_tilde)
            if len(set(gt)) != len(gt):
                warnings.warn(
                    "ADRT dispersive couplings are not pairwise distinct; "
                    "residual exchange symmetries will survive",
                    stacklevel=2,
                )


@dataclass(frozen=True)
class PiecewiseHamiltonian:
    """Ordered constant-generator segments making up one cycle."""

    segments: tuple[tuple[np.ndarray, float], ...]

    def __post_init__(self) -> None:
        dims = {h.shape for h, _ in self.segments}
        if len(dims) != 1:
            raise ValueError("all segment generators must share one dimension")

    @property
    def tau(self) -> float:
        return sum(t for _, t in self.segments)

    @property
    def dim(self) -> int:
        return self.segments[0][0].shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1


def build_h_system(g: NetworkGraph, delta: float) -> np.ndarray:
    """XXZ network Hamiltonian embedded with identity on the ancilla factor.

    H_S = sum_{i<j} J_ij (x_i x_j + y_i y_j + delta z_i z_j) + sum_i h_i z_i,
    each unordered pair counted once.  The fully polarized state |0...0>
    is always an eigenstate (the exchange part annihilates it and the
    diagonal part is, well, diagonal).
    """
    nq = g.n_nodes + 1
    d = 2**nq
    H = np.zeros((d, d), dtype=complex)
    for (i, j), w in g.edge_weights.items():
        for ax in "xy":
            H += w * (pauli_on_site(ax, i + 1, nq) @ pauli_on_site(ax, j + 1, nq))
        if delta != 0.0:
            H += w * delta * (pauli_on_site("z", i + 1, nq) @ pauli_on_site("z", j + 1, nq))
    for i, h in g.self_loops.items():
        H += h * pauli_on_site("z", i + 1, nq)
    return H


def build_h_res(g: NetworkGraph, g_override: dict[int, float] | None = None) -> np.ndarray:
    """Resonant exchange H_res = (1/2) sum_k g_k (s+_A s-_k + s-_A s+_k)."""
    targets = g_override if g_override is not None else g.ancilla_targets
    if not targets:
        raise ValueError("resonant coupling needs at least one ancilla target")
    nq = g.n_nodes + 1
    d = 2**nq
    H = np.zeros((d, d), dtype=complex)
    sp_a = pauli_on_site("+", 0, nq)
    sm_a = pauli_on_site("-", 0, nq)
    for k, gk in targets.items():
        H += 0.5 * gk * (sp_a @ pauli_on_site("-", k + 1, nq) + sm_a @ pauli_on_site("+", k + 1, nq))
    return H


def build_h_disp(n_nodes: int, g_tilde: Sequence[float]) -> np.ndarray:
    """Dispersive coupling H_disp = z_A * sum_k gtilde_k z_k."""
    gt = list(g_tilde)
    if len(gt) != n_nodes:
        raise ValueError(f"need one dispersive coupling per site: got {len(gt)} for N={n_nodes}")
    nq = n_nodes + 1
    za = pauli_on_site("z", 0, nq)
    H = np.zeros((2**nq, 2**nq), dtype=complex)
    for k, gk in enumerate(gt):
        H += gk * (za @ pauli_on_site("z", k + 1, nq))
    return H


def default_tau(g: NetworkGraph) -> float:
    """Default cycle time pi / (2 gbar) from the mean resonant coupling."""
    gs = [abs(v) for v in g.ancilla_targets.values()]
    if not gs:
        raise ValueError("graph has no ancilla targets")
    return math.pi / (2.0 * (sum(gs) / len(gs)))


def build_schedule(cfg: ProtocolConfig, g: NetworkGraph) -> PiecewiseHamiltonian:
    """One cycle's piecewise-constant generators for the configured protocol."""
    hs = build_h_system(g, cfg.delta)
    hres = build_h_res(g, cfg.g)
    if cfg.protocol == "RT":
        return PiecewiseHamiltonian(((hs + hres, cfg.tau),))
    if cfg.g_tilde is None:
        raise ValueError("ADRT requires g_tilde couplings on every site")
    hdisp = build_h_disp(g.n_nodes, cfg.g_tilde)
    f1, f2 = cfg.segment_fractions
    return PiecewiseHamiltonian(
        ((hs + hres, f1 * cfg.tau), (hs + hdisp, f2 * cfg.tau))
    )
