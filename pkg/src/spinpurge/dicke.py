"""Collective angular-momentum (Dicke) layer for the solvable star model.

For N spins coupled to the ancilla with one uniform strength and no
intra-network coupling, the joint dynamics block-diagonalizes over total
spin sectors (j, alpha), alpha counting the d_j degenerate copies.  Within
each ladder the resonant-transfer cycle only moves population one rung
toward the polarized end, giving the population recurrence

    p'[j, m] = p[j, m] cos^2(J+_{j,m} x) + p[j, m-1] sin^2(J+_{j,m-1} x),
    J+_{j,m} = sqrt((j - m)(j + m + 1)),

with the polarized end at m = j.  The ladder argument x absorbs the
coupling convention: for the dense Hamiltonian (1/2) g sum_k (flip-flop)
evolved for a time t, x = (g/2) t, which the test suite pins against the
dense engine at N = 1 before any multi-spin comparison.

Populations here are exact rationals where it matters: the closed-form
steady polarization and the ladder degeneracies are integer formulas, and
the consistency identities between their different published forms are
checked without floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, log
from typing import Iterator

import numpy as np

__all__ = [
    "dicke_sectors",
    "degeneracy_dj",
    "jplus",
    "DickeTable",
    "rt_recurrence_step",
    "rt_steady_polarization",
    "rt_steady_polarization_exact",
    "rt_steady_purity_blocksum_exact",
    "rt_steady_purity_binomial_exact",
    "rt_steady_entropy",
    "TailFit",
    "fit_tail_decay",
]


def dicke_sectors(n_spins: int) -> list[float]:
    """Total-spin values j for N spins, descending: N/2, N/2-1, ..., (N mod 2)/2."""
    return [twoj / 2.0 for twoj in range(n_spins % 2, n_spins + 1, 2)][::-1]


def degeneracy_dj(n_spins: int, j: float) -> int:
    """Number of irreducible copies d_j = (2j+1)/(N+1) * C(N+1, N/2 - j)."""
    twoj = int(round(2 * j))
    if abs(2 * j - twoj) > 1e-12 or twoj < 0:
        raise ValueError(f"j={j} is not a half-integer")
    if (n_spins - twoj) % 2 or twoj > n_spins:
        raise ValueError(f"j={j} invalid for N={n_spins}")
    t = (n_spins - twoj) // 2
    num = (twoj + 1) * comb(n_spins + 1, t)
    assert num % (n_spins + 1) == 0
    return num // (n_spins + 1)


def jplus(j: float, m: float) -> float:
    """Raising matrix element sqrt((j - m)(j + m + 1)); zero at the top rung m = j."""
    if m < -j - 1e-12 or m > j + 1e-12:
        raise ValueError(f"m={m} outside [-{j}, {j}]")
    return float(np.sqrt((j - m) * (j + m + 1.0)))


@dataclass
class DickeTable:
    """Populations per (j, alpha) ladder; vector index runs m = -j .. j.

    Keys are (2j as int, alpha) with alpha in 0..d_j-1.
    """

    n_spins: int
    blocks: dict[tuple[int, int], np.ndarray]

    @classmethod
    def maximally_mixed(cls, n_spins: int) -> "DickeTable":
        blocks = {}
        p0 = 1.0 / 2**n_spins
        for j in dicke_sectors(n_spins):
            twoj = int(round(2 * j))
            for alpha in range(degeneracy_dj(n_spins, j)):
                blocks[(twoj, alpha)] = np.full(twoj + 1, p0)
        return cls(n_spins, blocks)

    def total(self) -> float:
        return float(sum(v.sum() for v in self.blocks.values()))

    def purity(self) -> float:
        return float(sum((v**2).sum() for v in self.blocks.values()))

    def entropy(self) -> float:
        acc = 0.0
        for v in self.blocks.values():
            p = v[v > 1e-300]
            acc -= float(np.sum(p * np.log(p)))
        return acc

    def top_weights(self) -> dict[tuple[int, int], float]:
        return {key: float(v[-1]) for key, v in self.blocks.items()}

    def items(self) -> Iterator[tuple[tuple[int, int], np.ndarray]]:
        return iter(self.blocks.items())


def rt_recurrence_step(table: DickeTable, gtau_eff: float) -> DickeTable:
    """One resonant-transfer cycle on every ladder.

    Population flows toward m = j; the top rung only gains (its J+ element
    vanishes) and the bottom rung only loses.  Total probability is
    conserved rung by rung.
    """
    out = {}
    for (twoj, alpha), p in table.blocks.items():
        j = twoj / 2.0
        m = np.arange(-j, j + 0.5)
        jp = np.sqrt((j - m) * (j + m + 1.0))
        c2 = np.cos(jp * gtau_eff) ** 2
        q = p * c2
        q[1:] += p[:-1] * (1.0 - c2[:-1])
        out[(twoj, alpha)] = q
    return DickeTable(table.n_spins, out)


def rt_steady_polarization_exact(n_spins: int) -> Fraction:
    """Closed-form steady purity from the maximally mixed start, exact rational.

        even N: (2N+1)/4^N * C(N, N/2)
        odd  N: (N+3)/4^N * C(N+1, (N-1)/2)
    """
    n = n_spins
    if n < 1:
        raise ValueError("need N >= 1")
    if n % 2 == 0:
        return Fraction((2 * n + 1) * comb(n, n // 2), 4**n)
    return Fraction((n + 3) * comb(n + 1, (n - 1) // 2), 4**n)


def rt_steady_polarization(n_spins: int) -> float:
    return float(rt_steady_polarization_exact(n_spins))


def rt_steady_purity_blocksum_exact(n_spins: int) -> Fraction:
    """Steady purity as the block sum sum_j d_j ((2j+1)/2^N)^2, exact rational."""
    n = n_spins
    acc = Fraction(0)
    for j in dicke_sectors(n):
        twoj = int(round(2 * j))
        acc += degeneracy_dj(n, j) * Fraction(twoj + 1, 2**n) ** 2
    return acc


def rt_steady_purity_binomial_exact(n_spins: int) -> Fraction:
    """Steady purity in the (N+1)-choose form, exact rational.

        even N: (N/2 + 1)(2N+1) / (4^N (N+1)) * C(N+1, N/2)
        odd  N: (N+3)/4^N * C(N+1, (N-1)/2)
    """
    n = n_spins
    if n % 2 == 0:
        return Fraction((n // 2 + 1) * (2 * n + 1) * comb(n + 1, n // 2), 4**n * (n + 1))
    return Fraction((n + 3) * comb(n + 1, (n - 1) // 2), 4**n)


def rt_steady_entropy(n_spins: int) -> float:
    """Residual entropy -sum_j d_j q_j ln q_j with q_j = (2j+1)/2^N.

    From the maximally mixed start each of the d_j top rungs ends up
    holding its ladder's initial weight (2j+1)/2^N.
    """
    n = n_spins
    acc = 0.0
    for j in dicke_sectors(n):
        q = (2 * j + 1) / 2**n
        acc -= degeneracy_dj(n, j) * q * log(q)
    return acc


# ---------------------------------------------------------------------------
# asymptotic tail diagnostics


@dataclass(frozen=True)
class TailFit:
    """Least-squares fits of ln(eps) against n (geometric) and ln n (power law).

    Both candidate laws are reported with their residuals; no winner is
    declared.
    """

    geometric_rate: float
    geometric_residual: float
    power_exponent: float
    power_residual: float
    tail_start: int
    n_points: int


def fit_tail_decay(epsilon: np.ndarray, tail_start: int) -> TailFit:
    """Fit the tail of an error sequence with both decay laws.

    Points with eps <= 0 or below double-precision resolution are dropped;
    at least three points must survive.
    """
    eps = np.asarray(epsilon, dtype=float)
    n = np.arange(1, len(eps) + 1)
    mask = (n >= tail_start) & (eps > 1e-15)
    if mask.sum() < 3:
        raise ValueError("tail too short for a fit")
    x = n[mask].astype(float)
    y = np.log(eps[mask])

    def lsq(xs: np.ndarray) -> tuple[float, float]:
        A = np.column_stack([xs, np.ones_like(xs)])
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        resid = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
        return float(coef[0]), resid

    g_rate, g_res = lsq(x)
    p_exp, p_res = lsq(np.log(x))
    return TailFit(
        geometric_rate=g_rate,
        geometric_residual=g_res,
        power_exponent=p_exp,
        power_residual=p_res,
        tail_start=tail_start,
        n_points=int(mask.sum()),
    )
