"""Weighted spin-network graphs and their symmetry analysis.

A :class:`NetworkGraph` stores the pairwise couplings J_ij of N system
spins, optional on-site fields as self-loop weights, and the set of nodes
the ancilla couples to (with coupling weights g_k).  On top of that this
module provides

* automorphism orbits of the ancilla-augmented graph with the ancilla node
  pinned (exhaustive search with signature pruning, N <= 10),
* the closed-form rank/nullity of the steady-state equation system implied
  by an orbit-size distribution, and the polarizability bound 2^-(N-K),
* the orbit-entropy information content of a graph,
* spectral analysis of symmetric matrices: kernel dimension and the set of
  null-support nodes (nodes where every kernel vector vanishes),
* exhaustive enumeration of connected unweighted graphs up to isomorphism.

Node indices are zero based everywhere, including the on-disk format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "NetworkGraph",
    "OrbitPartition",
    "SpectralReport",
    "MAX_ORBIT_NODES",
    "augmented_adjacency",
    "automorphism_orbits",
    "analytic_rank_nullity",
    "polarizability_bound",
    "information_content",
    "spectral_report",
    "enumerate_connected_graphs",
    "canonical_code",
    "parse_graph_file",
    "write_graph_file",
]

MAX_ORBIT_NODES = 10

_WEIGHT_TOL = 1e-12


@dataclass
class NetworkGraph:
    """Weighted undirected graph with self-loops and pinned ancilla targets.

    ``edge_weights`` maps unordered node pairs (stored with i < j) to the
    coupling J_ij; ``self_loops`` maps a node to its on-site field h_i;
    ``ancilla_targets`` maps a node to its ancilla coupling g_k.
    """

    n_nodes: int
    edge_weights: dict[tuple[int, int], float] = field(default_factory=dict)
    self_loops: dict[int, float] = field(default_factory=dict)
    ancilla_targets: dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n_nodes < 1:
            raise ValueError("graph needs at least one node")
        canon: dict[tuple[int, int], float] = {}
        for (i, j), w in self.edge_weights.items():
            if i == j:
                raise ValueError("self-interactions belong in self_loops, not edge_weights")
            a, b = (i, j) if i < j else (j, i)
            self._check_node(a)
            self._check_node(b)
            if (a, b) in canon and abs(canon[(a, b)] - w) > _WEIGHT_TOL:
                raise ValueError(f"conflicting weights for edge ({a},{b})")
            canon[(a, b)] = float(w)
        self.edge_weights = canon
        for i in self.self_loops:
            self._check_node(i)
        for k in self.ancilla_targets:
            self._check_node(k)

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.n_nodes:
            raise ValueError(f"node index {i} out of range for N={self.n_nodes}")

    def adjacency(self) -> np.ndarray:
        """N x N symmetric coupling matrix; diagonal carries the self-loops."""
        A = np.zeros((self.n_nodes, self.n_nodes))
        for (i, j), w in self.edge_weights.items():
            A[i, j] = A[j, i] = w
        for i, h in self.self_loops.items():
            A[i, i] = h
        return A

    def coupling_vector(self) -> np.ndarray:
        g = np.zeros(self.n_nodes)
        for k, w in self.ancilla_targets.items():
            g[k] = w
        return g

    def relabeled(self, perm: Sequence[int]) -> "NetworkGraph":
        """Graph with node i renamed to perm[i]."""
        p = list(perm)
        return NetworkGraph(
            self.n_nodes,
            {(p[i], p[j]): w for (i, j), w in self.edge_weights.items()},
            {p[i]: h for i, h in self.self_loops.items()},
            {p[k]: g for k, g in self.ancilla_targets.items()},
        )


def augmented_adjacency(g: NetworkGraph) -> np.ndarray:
    """(N+1) x (N+1) adjacency of the graph together with its ancilla node.

    Row/column 0 is the ancilla; its couplings are the g_k weights and its
    diagonal entry is zero.  System self-loops populate the remaining
    diagonal.
    """
    n = g.n_nodes
    A = np.zeros((n + 1, n + 1))
    A[1:, 1:] = g.adjacency()
    for k, w in g.ancilla_targets.items():
        A[0, k + 1] = A[k + 1, 0] = w
    return A


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of the system nodes into automorphism orbits."""

    orbits: tuple[tuple[int, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(sorted(len(o) for o in self.orbits))

    @property
    def k(self) -> int:
        return len(self.orbits)

    def orbit_of(self, node: int) -> int:
        for idx, o in enumerate(self.orbits):
            if node in o:
                return idx
        raise KeyError(node)


def _node_signatures(A: np.ndarray) -> list[np.ndarray]:
    """Invariant per node: diagonal entry followed by the sorted incident weights."""
    n = A.shape[0]
    sigs = []
    for i in range(n):
        row = np.sort(np.delete(A[i], i))
        sigs.append(np.concatenate(([A[i, i]], row)))
    return sigs


def _sig_close(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.abs(a - b).max() <= 1e-9)


def _extend_automorphism(A: np.ndarray, cand: list[list[int]], assign: dict[int, int]) -> dict[int, int] | None:
    """Depth-first search for a weight-preserving permutation.

    ``cand[i]`` lists allowed images of node i; ``assign`` holds forced
    assignments.  Returns a complete assignment or None.
    """
    n = A.shape[0]
    order = sorted(range(n), key=lambda i: len(cand[i]))

    def rec(pos: int, cur: dict[int, int], used: set[int]) -> dict[int, int] | None:
        if pos == len(order):
            return dict(cur)
        i = order[pos]
        if i in cur:
            return rec(pos + 1, cur, used)
        for j in cand[i]:
            if j in used:
                continue
            ok = True
            for a, b in cur.items():
                if abs(A[i, a] - A[j, b]) > _WEIGHT_TOL:
                    ok = False
                    break
            if not ok:
                continue
            cur[i] = j
            used.add(j)
            res = rec(pos + 1, cur, used)
            if res is not None:
                return res
            del cur[i]
            used.discard(j)
        return None

    for i, j in assign.items():
        if j not in cand[i]:
            return None
    return rec(0, dict(assign), set(assign.values()))


def automorphism_orbits(g: NetworkGraph) -> OrbitPartition:
    """Orbits of system nodes under augmented-graph automorphisms fixing the ancilla.

    A permutation pi of the system nodes is an automorphism when the
    augmented adjacency satisfies ``A[pi(k), pi(l)] == A[k, l]`` for all
    k, l (ancilla row included), with weights compared to 1e-12.  Pinning
    the ancilla node automatically separates ancilla-attached nodes from
    the rest whenever their couplings differ.
    """
    if g.n_nodes > MAX_ORBIT_NODES:
        raise ValueError(f"orbit search supports N <= {MAX_ORBIT_NODES}, got {g.n_nodes}")
    A = augmented_adjacency(g)
    # work on augmented indices 1..N, index 0 pinned
    sigs = _node_signatures(A)
    n = g.n_nodes
    cand = [[0]] + [
        [
            j
            for j in range(1, n + 1)
            if _sig_close(sigs[j], sigs[i]) and abs(A[0, j] - A[0, i]) <= 1e-9
        ]
        for i in range(1, n + 1)
    ]

    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        parent[find(a)] = find(b)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if find(i) == find(j) or j not in cand[i]:
                continue
            res = _extend_automorphism(A, cand, {0: 0, i: j})
            if res is not None:
                for a, b in res.items():
                    union(a, b)

    groups: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i - 1)
    orbits = tuple(tuple(sorted(v)) for v in sorted(groups.values()))
    return OrbitPartition(orbits)


def analytic_rank_nullity(counts: Sequence[int], n_nodes: int) -> tuple[int, int]:
    """Closed-form rank and nullity of the steady-state system for an orbit distribution.

    ``S_m`` counts bounded compositions: integer vectors (p_1..p_K) with
    0 <= p_j <= n_j summing to m, i.e. the number of distinguishable ways
    to pick m nodes when same-orbit nodes are interchangeable.  Then

        rank    = sum_m 3^m S_m,
        nullity = (4^N - 1) - rank.

    Exact integer arithmetic throughout.
    """
    if sum(counts) != n_nodes:
        raise ValueError("orbit counts must sum to the node count")
    dp = [1] + [0] * n_nodes
    for nj in counts:
        ndp = [0] * (n_nodes + 1)
        for m, v in enumerate(dp):
            if v:
                for p in range(0, min(nj, n_nodes - m) + 1):
                    ndp[m + p] += v
        dp = ndp
    rank = sum(3**m * dp[m] for m in range(1, n_nodes + 1))
    return rank, (4**n_nodes - 1) - rank


def polarizability_bound(k_orbits: int, n_nodes: int) -> float:
    """Attainable-purity estimate 2^-(N-K) from the orbit count alone."""
    if not 1 <= k_orbits <= n_nodes:
        raise ValueError("need 1 <= K <= N")
    return 2.0 ** (-(n_nodes - k_orbits))


def information_content(counts: Sequence[int]) -> tuple[float, float]:
    """Orbit-entropy of a graph and its normalized form.

    Returns ``(I_G, I_G / ln N)`` where I_G is the Shannon entropy of the
    orbit-size distribution (natural log).  Raises for N < 2 where the
    normalization is undefined.
    """
    n = sum(counts)
    if n < 2:
        raise ValueError("normalized information content needs N >= 2")
    fr = np.array(counts, dtype=float) / n
    i_g = float(-np.sum(fr * np.log(fr)))
    return i_g, i_g / math.log(n)


@dataclass(frozen=True)
class SpectralReport:
    """Eigenvalue summary of a symmetric matrix with kernel diagnostics."""

    eigenvalues: np.ndarray
    kernel_dim: int
    null_support_nodes: frozenset[int]
    kernel_basis: np.ndarray  # columns span the kernel (empty if nonsingular)

    @property
    def singular(self) -> bool:
        return self.kernel_dim > 0


def spectral_report(A: np.ndarray, tol: float = 1e-9) -> SpectralReport:
    """Eigendecomposition with kernel dimension and null-support node set.

    An eigenvalue counts as zero when ``|lam| < tol * max|lam|``.  A node is
    null-support when every kernel vector vanishes there; this is evaluated
    through the kernel projector row norms, which makes the answer
    independent of the kernel basis choice.
    """
    A = np.asarray(A, dtype=float)
    if np.abs(A - A.T).max() > 1e-12:
        raise ValueError("spectral_report expects a symmetric matrix")
    w, V = np.linalg.eigh(A)
    scale = float(np.abs(w).max()) if w.size else 0.0
    cut = tol * max(scale, 1e-300)
    kidx = np.abs(w) < cut
    K = V[:, kidx]
    row = np.sqrt((K**2).sum(axis=1)) if K.size else np.ones(A.shape[0])
    nodes = frozenset(int(i) for i in np.nonzero(row < tol)[0]) if kidx.any() else frozenset()
    return SpectralReport(np.sort(w), int(kidx.sum()), nodes, K)


# ---------------------------------------------------------------------------
# enumeration of connected unweighted graphs up to isomorphism


def canonical_code(adj: Sequence[Sequence[int]]) -> int:
    """Minimal adjacency bitmask over all relabelings of an unweighted graph.

    The bitmask reads the upper triangle column by column (bits of node q
    against nodes placed before it).  Minimality over every permutation is
    enforced by a branch-and-bound placement search, so equal codes are
    exactly the isomorphic graphs.
    """
    n = len(adj)
    best: list[int] | None = None

    def rec(placed: list[int], bits: list[int]) -> None:
        nonlocal best
        if len(placed) == n:
            if best is None or bits < best:
                best = list(bits)
            return
        for v in range(n):
            if v in placed:
                continue
            newbits = bits + [adj[v][u] for u in placed]
            if best is not None and newbits > best[: len(newbits)]:
                continue
            placed.append(v)
            rec(placed, newbits)
            placed.pop()

    rec([], [])
    assert best is not None
    code = 0
    for b in best:
        code = (code << 1) | b
    return code


def _decode_code(code: int, n: int) -> list[list[int]]:
    nb = n * (n - 1) // 2
    bits = [(code >> (nb - 1 - k)) & 1 for k in range(nb)]
    adj = [[0] * n for _ in range(n)]
    k = 0
    for q in range(1, n):
        for u in range(q):
            adj[q][u] = adj[u][q] = bits[k]
            k += 1
    return adj


def enumerate_connected_graphs(
    n_nodes: int,
    ancilla_node: int = 0,
    ancilla_g: float = 1.0,
) -> Iterator[NetworkGraph]:
    """Yield one unit-weight representative per isomorphism class of connected graphs.

    Representatives grow by node extension: every connected graph on n
    nodes arises from a connected graph on n-1 nodes by attaching the new
    node to a nonempty neighbor set (every connected graph has a non-cut
    vertex), and duplicates are removed through :func:`canonical_code`.
    The yielded graphs carry the canonical labeling and an ancilla pinned
    to ``ancilla_node``.
    """
    if n_nodes < 1 or n_nodes > 7:
        raise ValueError("enumeration supports 1 <= N <= 7")
    layer: dict[int, list[list[int]]] = {0: [[0]]}
    for n in range(2, n_nodes + 1):
        nxt: dict[int, list[list[int]]] = {}
        for G in layer.values():
            for mask in range(1, 1 << (n - 1)):
                adj = [row[:] + [0] for row in G] + [[0] * n]
                for u in range(n - 1):
                    if (mask >> u) & 1:
                        adj[u][n - 1] = adj[n - 1][u] = 1
                code = canonical_code(adj)
                if code not in nxt:
                    nxt[code] = _decode_code(code, n)
        layer = nxt
    for code in sorted(layer):
        adj = layer[code]
        edges = {
            (i, j): 1.0
            for i in range(n_nodes)
            for j in range(i + 1, n_nodes)
            if adj[i][j]
        }
        yield NetworkGraph(n_nodes, edges, {}, {ancilla_node: ancilla_g})


# ---------------------------------------------------------------------------
# line-oriented graph file format
#
#   N <count>
#   E i j w      edge (i, j) with weight w
#   L i h        self-loop weight h on node i
#   A k g        ancilla target k with coupling g
#
# Whitespace separated, zero-based indices, '#' starts a comment line.


def parse_graph_file(text: str) -> NetworkGraph:
    n_nodes = None
    edges: dict[tuple[int, int], float] = {}
    loops: dict[int, float] = {}
    targets: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "N":
                n_nodes = int(tok[1])
            elif tok[0] == "E":
                edges[(int(tok[1]), int(tok[2]))] = float(tok[3])
            elif tok[0] == "L":
                loops[int(tok[1])] = float(tok[2])
            elif tok[0] == "A":
                targets[int(tok[1])] = float(tok[2])
            else:
                raise ValueError(f"unknown record {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"graph file line {lineno}: {exc}") from None
    if n_nodes is None:
        raise ValueError("graph file has no 'N <count>' header")
    return NetworkGraph(n_nodes, edges, loops, targets)


def write_graph_file(g: NetworkGraph) -> str:
    lines = [f"N {g.n_nodes}"]
    for (i, j), w in sorted(g.edge_weights.items()):
        lines.append(f"E {i} {j} {w:.17g}")
    for i, h in sorted(g.self_loops.items()):
        lines.append(f"L {i} {h:.17g}")
    for k, gg in sorted(g.ancilla_targets.items()):
        lines.append(f"A {k} {gg:.17g}")
    return "\n".join(lines) + "\n"
