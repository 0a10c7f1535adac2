#!/usr/bin/env python3
"""Search small connected graphs for the spectral-symmetry preset networks.

Regenerates the two frozen singular-graph presets:

* N=5, probed-identity: adjacency kernel nonempty, some null-support node
  whose pinning leaves only singleton orbits (frozen as ``bull``);
* N=6, mirror: kernel nonempty, probed orbits of the form singletons plus
  pairs (frozen as ``double_star``).

Exhaustive over isomorphism classes, so the output is deterministic.
"""

import numpy as np

from spinpurge.netgraph import (
    NetworkGraph,
    automorphism_orbits,
    enumerate_connected_graphs,
    spectral_report,
)


def with_ancilla(g: NetworkGraph, node: int) -> NetworkGraph:
    return NetworkGraph(g.n_nodes, dict(g.edge_weights), dict(g.self_loops), {node: 1.0})


def candidates(n: int):
    for g in enumerate_connected_graphs(n):
        rep = spectral_report(g.adjacency())
        if rep.kernel_dim == 0:
            continue
        for node in sorted(rep.null_support_nodes):
            yield g, node, rep


def main():
    print("probed-identity graphs with a kernel vanishing at the probe (N=5):")
    for g, node, rep in candidates(5):
        counts = automorphism_orbits(with_ancilla(g, node)).counts
        if counts == (1,) * 5:
            edges = sorted(g.edge_weights)
            print(f"  edges={edges} probe@{node} kernel_dim={rep.kernel_dim} "
                  f"null_support={sorted(rep.null_support_nodes)}")

    print("mirror graphs with a kernel vanishing at the probe (N=6):")
    for g, node, rep in candidates(6):
        counts = automorphism_orbits(with_ancilla(g, node)).counts
        if max(counts) == 2 and counts.count(2) >= 2:
            edges = sorted(g.edge_weights)
            print(f"  edges={edges} probe@{node} kernel_dim={rep.kernel_dim} "
                  f"null_support={sorted(rep.null_support_nodes)} orbits={counts}")


if __name__ == "__main__":
    main()
