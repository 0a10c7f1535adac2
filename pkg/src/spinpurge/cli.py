"""Scenario-driven command line front end.

Subcommands::

    spinpurge analyze   --scenario FILE [--out DIR]
    spinpurge simulate  --scenario FILE [--out DIR]
    spinpurge enumerate --n N [--large] [--out DIR]
    spinpurge reproduce FIGURE [--out DIR] [--seed U64] [--large]

Scenarios are TOML files with [graph], [protocol], [analyses] and [output]
sections; see the README for the schema.  Every CSV artifact starts with
'#'-prefixed metadata lines (tool version, seed, scenario or preset hash)
followed by a mandatory header row, and is byte-identical across runs of
the same scenario.  Exit codes: 0 success, 2 scenario errors, 3
numerical-limit violations.  SPINPURGE_THREADS caps the sweep worker pool.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from . import __version__, dicke, presets
from .engine import (
    CycleTrace,
    build_superoperator,
    classify_rc,
    rank_report,
    run_cycles,
)
from .model import ProtocolConfig, ResetSpec, build_schedule, default_tau
from .netgraph import (
    NetworkGraph,
    analytic_rank_nullity,
    automorphism_orbits,
    enumerate_connected_graphs,
    information_content,
    parse_graph_file,
    polarizability_bound,
    spectral_report,
)
from .qmat import DensityMatrix

EXIT_OK = 0
EXIT_SCENARIO = 2
EXIT_LIMIT = 3

NUMERIC_NULLITY_MAX_N = 5
ENUMERATE_DEFAULT_MAX = 6
ENUMERATE_LARGE_MAX = 7

KNOWN_ANALYSES = (
    "orbits",
    "nullity-analytic",
    "nullity-numeric",
    "spectrum",
    "simulate",
    "dicke-compare",
)

FIGURE_IDS = ("2c", "3b", "3d", "3e", "4c", "5b", "5c", "6", "7", "9")


class ScenarioError(Exception):
    """Unparseable or inconsistent scenario input."""


class LimitError(Exception):
    """Requested analysis exceeds a hard numerical size limit."""


# ---------------------------------------------------------------------------
# scenario loading


@dataclass
class Scenario:
    graph: NetworkGraph
    protocol: ProtocolConfig
    analyses: tuple[str, ...]
    out_dir: Path
    sha256: str
    seed: int = 0
    extras: dict = field(default_factory=dict)


def _graph_from_table(tab: dict, base_dir: Path) -> NetworkGraph:
    if "preset" in tab:
        return presets.network(tab["preset"])
    if "file" in tab:
        path = base_dir / tab["file"]
        try:
            return parse_graph_file(path.read_text())
        except OSError as exc:
            raise ScenarioError(f"cannot read graph file {path}: {exc}") from None
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
    try:
        return NetworkGraph(
            n_nodes=int(tab["n"]),
            edge_weights={(int(i), int(j)): float(w) for i, j, w in tab.get("edges", [])},
            self_loops={int(i): float(h) for i, h in tab.get("self_loops", [])},
            ancilla_targets={int(k): float(g) for k, g in tab.get("ancilla", [])},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad [graph] section: {exc}") from None


def load_scenario(path: str | Path, seed: int = 0) -> Scenario:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from None
    try:
        doc = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ScenarioError(f"scenario parse failure in {path}: {exc}") from None

    if "graph" not in doc:
        raise ScenarioError("scenario is missing the [graph] section")
    graph = _graph_from_table(doc["graph"], path.parent)

    prot = doc.get("protocol", {})
    reset_tab = prot.get("reset", {})
    if reset_tab.get("kind", "ideal") == "ideal" and "z" not in reset_tab:
        reset = ResetSpec()
    else:
        reset = ResetSpec(
            kind=reset_tab.get("kind", "parametric"),
            z=float(reset_tab.get("z", 0.0)),
            x=complex(reset_tab.get("x", 0.0)),
        )
    try:
        protocol = ProtocolConfig(
            tau=float(prot["tau"]) if "tau" in prot else default_tau(graph),
            delta=float(prot.get("delta", 0.0)),
            protocol=prot.get("protocol", "RT"),
            g_tilde=prot.get("g_tilde"),
            n_cycles=int(prot.get("n_cycles", 1000)),
            reset=reset,
            steady_tol=float(prot.get("steady_tol", 1e-10)),
        )
    except ValueError as exc:
        raise ScenarioError(f"bad [protocol] section: {exc}") from None

    analyses = tuple(doc.get("analyses", {}).get("run", ["orbits", "nullity-analytic", "spectrum"]))
    for a in analyses:
        if a not in KNOWN_ANALYSES:
            raise ScenarioError(f"unknown analysis {a!r}; known: {KNOWN_ANALYSES}")
    if "nullity-numeric" in analyses and graph.n_nodes > NUMERIC_NULLITY_MAX_N:
        raise LimitError(
            f"nullity-numeric needs N <= {NUMERIC_NULLITY_MAX_N}, scenario has N={graph.n_nodes}"
        )

    out_dir = Path(doc.get("output", {}).get("dir", "out"))
    return Scenario(
        graph=graph,
        protocol=protocol,
        analyses=analyses,
        out_dir=out_dir,
        sha256=hashlib.sha256(raw).hexdigest(),
        seed=seed,
        extras=doc,
    )


# ---------------------------------------------------------------------------
# CSV plumbing


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def write_csv(path: Path, header: list[str], rows: list[list], meta: dict) -> None:
    """CSV with '#' metadata lines, then a header row, then data."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        for key, value in meta.items():
            fh.write(f"# {key} {value}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _meta(scenario_hash: str, seed: int, **extra) -> dict:
    meta = {"tool": f"spinpurge {__version__}", "seed": seed, "scenario": scenario_hash}
    meta.update(extra)
    return meta


def _n_workers() -> int:
    env = os.environ.get("SPINPURGE_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _pool_map(fn, items):
    """Map over sweep points on the worker pool, results in input order."""
    with ThreadPoolExecutor(max_workers=_n_workers()) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# analyze


def _sps_blocked(graph: NetworkGraph, tol: float = 1e-9) -> bool:
    """True when some adjacency kernel vector vanishes on every ancilla target.

    Such a vector is an excitation mode the probe cannot see; it survives
    every reset cycle and caps the attainable purity.
    """
    rep = spectral_report(graph.adjacency(), tol)
    if rep.kernel_dim == 0:
        return False
    rows = rep.kernel_basis[sorted(graph.ancilla_targets), :]
    visible_rank = np.linalg.matrix_rank(rows, tol=1e-9) if rows.size else 0
    return visible_rank < rep.kernel_dim


def cmd_analyze(scn: Scenario, out_dir: Path) -> int:
    g = scn.graph
    n = g.n_nodes
    part = automorphism_orbits(g)
    rank_a, null_a = analytic_rank_nullity(part.counts, n)
    i_g, i_norm = information_content(part.counts) if n >= 2 else (0.0, float("nan"))
    rep = spectral_report(g.adjacency())
    meta = _meta(scn.sha256, scn.seed)

    write_csv(
        out_dir / "orbits.csv",
        ["node", "orbit_id"],
        [[node, part.orbit_of(node)] for node in range(n)],
        meta,
    )

    sym_header = ["n", "k", "counts", "i_g", "i_norm", "rank_analytic", "nullity_analytic", "p_bound"]
    sym_row = [
        n,
        part.k,
        ";".join(str(c) for c in part.counts),
        i_g,
        i_norm,
        rank_a,
        null_a,
        polarizability_bound(part.k, n),
    ]
    if "nullity-numeric" in scn.analyses:
        schedule = build_schedule(scn.protocol, g)
        sop = build_superoperator(schedule, scn.protocol.reset)
        rrep = rank_report(sop)
        sym_header += [
            "rank_numeric",
            "nullity_numeric",
            "nullity_gap_ratio",
            "nullity_numeric_minus_analytic",
            "rc_class",
        ]
        sym_row += [
            rrep.rank,
            rrep.nullity,
            rrep.gap_ratio,
            rrep.nullity - null_a,
            classify_rc(rrep.nullity).value,
        ]
    write_csv(out_dir / "symmetry.csv", sym_header, [sym_row], meta)

    write_csv(
        out_dir / "spectrum.csv",
        ["index", "eigenvalue", "in_kernel"],
        [
            [i, float(w), int(abs(w) < 1e-9 * max(np.abs(rep.eigenvalues).max(), 1e-300))]
            for i, w in enumerate(rep.eigenvalues)
        ],
        {
            **meta,
            "kernel_dim": rep.kernel_dim,
            "null_support_nodes": ";".join(str(i) for i in sorted(rep.null_support_nodes)) or "-",
        },
    )

    if part.k < n:
        verdict = "AO-blocked"
    elif _sps_blocked(g):
        verdict = "SPS-blocked"
    else:
        verdict = "polarizable"
    (out_dir / "verdict.txt").write_text(verdict + "\n")
    print(verdict)
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def _trace_rows(trace: CycleTrace) -> list[list]:
    rows = [
        [n, trace.purity[n], trace.entropy[n], trace.fgs_fidelity[n], trace.epsilon[n]]
        for n in range(trace.n_cycles)
    ]
    last = trace.n_cycles - 1
    rows.append(
        ["steady", trace.purity[last], trace.entropy[last], trace.fgs_fidelity[last], trace.epsilon[last]]
    )
    return rows


def cmd_simulate(scn: Scenario, out_dir: Path) -> int:
    g = scn.graph
    if g.n_nodes + 1 > 13:
        raise LimitError(f"dense simulation caps at 13 qubits; scenario needs {g.n_nodes + 1}")
    schedule = build_schedule(scn.protocol, g)
    rho0 = DensityMatrix.maximally_mixed(g.n_nodes)
    _, trace = run_cycles(
        rho0,
        schedule,
        scn.protocol.reset,
        n_cycles=scn.protocol.n_cycles,
        steady_tol=scn.protocol.steady_tol,
    )
    meta = _meta(scn.sha256, scn.seed, converged_at=trace.converged_at if trace.converged_at is not None else "-")
    write_csv(
        out_dir / "trace.csv",
        ["cycle", "purity", "entropy", "fgs_fidelity", "epsilon"],
        _trace_rows(trace),
        meta,
    )

    if "dicke-compare" in scn.analyses:
        if g.edge_weights or g.self_loops or len(set(g.ancilla_targets.values())) != 1 or len(
            g.ancilla_targets
        ) != g.n_nodes:
            raise ScenarioError("dicke-compare needs a star graph: no edges, uniform all-site coupling")
        gval = next(iter(g.ancilla_targets.values()))
        seg_rt = scn.protocol.tau if scn.protocol.protocol == "RT" else scn.protocol.tau / 2
        gtau = 0.5 * gval * seg_rt
        table = dicke.DickeTable.maximally_mixed(g.n_nodes)
        rows = []
        for cyc in range(trace.n_cycles):
            table = dicke.rt_recurrence_step(table, gtau)
            rows.append(
                [cyc, trace.purity[cyc], table.purity(), abs(trace.purity[cyc] - table.purity())]
            )
        write_csv(
            out_dir / "dicke_compare.csv",
            ["cycle", "dense_purity", "recurrence_purity", "abs_diff"],
            rows,
            meta,
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate


def _population_rows(n: int) -> list[list]:
    d_total = 4**n - 1
    s8_upper = d_total - (2 * 3**n - 3)

    def one(g: NetworkGraph) -> list:
        part = automorphism_orbits(g)
        _, nullity = analytic_rank_nullity(part.counts, n)
        i_g, i_norm = information_content(part.counts)
        edges = ";".join(f"{i}-{j}" for (i, j) in sorted(g.edge_weights))
        return [
            n,
            edges,
            part.k,
            ";".join(str(c) for c in part.counts),
            i_g,
            i_norm,
            nullity,
            nullity / d_total,
            s8_upper / d_total,
        ]

    return _pool_map(one, list(enumerate_connected_graphs(n)))


POPULATION_HEADER = [
    "n",
    "edges",
    "k",
    "counts",
    "i_g",
    "i_norm",
    "nullity",
    "nullity_frac",
    "s8_upper_frac",
]


def cmd_enumerate(n: int, large: bool, out_dir: Path, seed: int) -> int:
    cap = ENUMERATE_LARGE_MAX if large else ENUMERATE_DEFAULT_MAX
    if not 2 <= n <= cap:
        raise LimitError(f"enumerate supports 2 <= N <= {cap} (use --large for {ENUMERATE_LARGE_MAX})")
    rows = _population_rows(n)
    write_csv(
        out_dir / "population.csv",
        POPULATION_HEADER,
        rows,
        _meta("-", seed, preset=presets.preset_sha256(), n=n),
    )
    print(f"{len(rows)} connected graph classes for N={n}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduce


def _run_trace(
    graph: NetworkGraph,
    tau: float,
    delta: float,
    protocol: str,
    n_cycles: int,
    g_tilde: list[float] | None = None,
) -> CycleTrace:
    cfg = ProtocolConfig(
        tau=tau, delta=delta, protocol=protocol, g_tilde=g_tilde, n_cycles=n_cycles, steady_tol=0.0
    )
    schedule = build_schedule(cfg, graph)
    _, trace = run_cycles(
        DensityMatrix.maximally_mixed(graph.n_nodes),
        schedule,
        cfg.reset,
        n_cycles=n_cycles,
        steady_tol=0.0,
    )
    return trace


def _bundle_meta(figure: str, seed: int, **extra) -> dict:
    return _meta("-", seed, preset=presets.preset_sha256(), figure=figure, **extra)


def _reproduce_2c(spec: dict, out: Path, seed: int) -> list[str]:
    rows = []
    for n in range(1, spec["n_max"] + 1):
        p = dicke.rt_steady_polarization(n)
        rows.append([n, p, float(np.sqrt(n) * np.exp(-n / 2.0))])
    write_csv(out / "polarizability_vs_n.csv", ["n", "p_steady", "sqrtn_expn2"], rows, _bundle_meta("2c", seed))
    return ["polarizability_vs_n.csv"]


def _reproduce_3b(spec: dict, out: Path, seed: int) -> list[str]:
    files = []

    def one(name: str):
        g = presets.network(name)
        return name, _run_trace(g, spec["tau"], spec["delta"], "RT", spec["n_cycles"])

    for name, trace in _pool_map(one, spec["networks"]):
        fname = f"network_{name}.csv"
        rows = [[n, trace.purity[n], trace.fgs_fidelity[n]] for n in range(trace.n_cycles)]
        write_csv(out / fname, ["cycle", "purity", "fgs_fidelity"], rows, _bundle_meta("3b", seed))
        files.append(fname)
    return files


def _reproduce_3d(spec: dict, out: Path, seed: int) -> list[str]:
    rows = []
    for n in range(spec["n_min"], spec["n_max"] + 1):
        rows.append([n, polarizability_bound(n, n), polarizability_bound(2, n)])
    write_csv(out / "bound_vs_n.csv", ["n", "p_chain", "p_complete"], rows, _bundle_meta("3d", seed))
    return ["bound_vs_n.csv"]


def _reproduce_3e(spec: dict, out: Path, seed: int) -> list[str]:
    g = presets.network(spec["network"])

    def one(delta: float):
        return delta, _run_trace(g, spec["tau"], delta, "RT", spec["n_cycles"])

    rows = []
    for delta, trace in _pool_map(one, spec["deltas"]):
        rows.extend([delta, n, trace.purity[n]] for n in range(trace.n_cycles))
    write_csv(out / "anisotropy_scan.csv", ["delta", "cycle", "purity"], rows, _bundle_meta("3e", seed))
    return ["anisotropy_scan.csv"]


def _reproduce_4c(spec: dict, out: Path, seed: int) -> list[str]:
    files = []

    def one(name: str):
        g = presets.network(name)
        return name, _run_trace(g, spec["tau"], spec["delta"], "RT", spec["n_cycles"])

    for name, trace in _pool_map(one, spec["networks"]):
        fname = f"network_{name}.csv"
        rows = [[n, trace.purity[n], trace.fgs_fidelity[n]] for n in range(trace.n_cycles)]
        write_csv(out / fname, ["cycle", "purity", "fgs_fidelity"], rows, _bundle_meta("4c", seed))
        files.append(fname)
    return files


def _reproduce_5b(spec: dict, out: Path, seed: int) -> list[str]:
    jobs = []
    for run in spec["runs"]:
        g = presets.network(run["network"])
        gt = presets.g_tilde_ramp(g.n_nodes, spec["g_tilde_base"], spec["g_tilde_step"])
        jobs.extend(
            (run["network"], d, g, gt, run["tau"], run["n_cycles"]) for d in run["deltas"]
        )

    def one(job):
        name, delta, g, gt, tau, n_cycles = job
        return name, delta, _run_trace(g, tau, delta, "ADRT", n_cycles, gt)

    rows = []
    for name, delta, trace in _pool_map(one, jobs):
        rows.extend([name, delta, n, trace.purity[n]] for n in range(trace.n_cycles))
    write_csv(out / "adrt_purity.csv", ["system", "delta", "cycle", "purity"], rows, _bundle_meta("5b", seed))
    return ["adrt_purity.csv"]


def _reproduce_5c(spec: dict, out: Path, seed: int) -> list[str]:
    g = presets.network(spec["network"])
    gt = presets.g_tilde_ramp(g.n_nodes, spec["g_tilde_base"], spec["g_tilde_step"])

    def one(delta: float):
        return delta, _run_trace(g, spec["tau"], delta, "ADRT", spec["n_cycles"], gt)

    rows = []
    for delta, trace in _pool_map(one, spec["deltas"]):
        rows.extend([delta, n, trace.purity[n]] for n in range(trace.n_cycles))
    write_csv(out / "adrt_anisotropy_scan.csv", ["delta", "cycle", "purity"], rows, _bundle_meta("5c", seed))
    return ["adrt_anisotropy_scan.csv"]


def _check_ancilla_proxy(trace: CycleTrace) -> None:
    """Once A stays pure for 10 cycles, S must already sit near its final fidelity."""
    apur = trace.ancilla_purity
    final_f = trace.fgs_fidelity[-1]
    run = 0
    for n in range(trace.n_cycles):
        run = run + 1 if apur[n] > 1 - 1e-3 else 0
        if run >= 10 and trace.fgs_fidelity[n] < final_f - 1e-2:
            raise RuntimeError(
                f"ancilla-purity proxy violated at cycle {n}: "
                f"A purity {apur[n]:.6f}, S fidelity {trace.fgs_fidelity[n]:.6f} vs final {final_f:.6f}"
            )


def _reproduce_6(spec: dict, out: Path, seed: int) -> list[str]:
    g = presets.network(spec["network"])
    gt = presets.g_tilde_ramp(g.n_nodes, spec["g_tilde_base"], spec["g_tilde_step"])
    trace = _run_trace(g, spec["tau"], spec["delta"], "ADRT", spec["n_cycles"], gt)
    _check_ancilla_proxy(trace)
    rows = [
        [n, trace.purity[n], trace.ancilla_purity[n], trace.fgs_fidelity[n], trace.epsilon[n]]
        for n in range(trace.n_cycles)
    ]
    write_csv(
        out / "purity_s_and_a.csv",
        ["cycle", "system_purity", "ancilla_purity", "fgs_fidelity", "epsilon"],
        rows,
        _bundle_meta("6", seed),
    )
    fit = dicke.fit_tail_decay(trace.epsilon, spec["tail_start"])
    write_csv(
        out / "tail_fits.csv",
        ["model", "slope", "rms_residual", "tail_start", "n_points"],
        [
            ["geometric", fit.geometric_rate, fit.geometric_residual, fit.tail_start, fit.n_points],
            ["power", fit.power_exponent, fit.power_residual, fit.tail_start, fit.n_points],
        ],
        _bundle_meta("6", seed),
    )
    return ["purity_s_and_a.csv", "tail_fits.csv"]


def _reproduce_7(spec: dict, out: Path, seed: int, large: bool) -> list[str]:
    n_max = spec["n_max_large"] if large else spec["n_max"]
    rows = []
    for n in range(2, n_max + 1):
        rows.extend(_population_rows(n))
    write_csv(out / "population.csv", POPULATION_HEADER, rows, _bundle_meta("7", seed))
    return ["population.csv"]


def _reproduce_9(spec: dict, out: Path, seed: int) -> list[str]:
    base = presets.network(spec["network"])
    cap = spec["cycle_cap"]
    target = spec["purity_target"]

    def one(dh: float):
        g = NetworkGraph(
            base.n_nodes,
            dict(base.edge_weights),
            {1: -dh / 2.0, 2: dh / 2.0} if dh else {},
            dict(base.ancilla_targets),
        )
        trace = _run_trace(g, spec["tau"], spec["delta"], "RT", cap)
        hit = np.nonzero(trace.purity >= target)[0]
        cycles = int(hit[0]) + 1 if hit.size else None
        return dh, cycles, float(trace.purity[-1])

    rows = []
    for dh, cycles, final_p in _pool_map(one, spec["delta_h_grid"]):
        rows.append([dh, cycles if cycles is not None else "", final_p])
    write_csv(
        out / "cycles_to_P90.csv",
        ["delta_h", "cycles_to_target", "final_purity"],
        rows,
        _bundle_meta("9", seed, purity_target=target, cycle_cap=cap),
    )
    return ["cycles_to_P90.csv"]


def cmd_reproduce(figure: str, out_dir: Path, seed: int, large: bool) -> int:
    if figure not in FIGURE_IDS:
        raise ScenarioError(f"unknown figure id {figure!r}; known: {', '.join(FIGURE_IDS)}")
    spec = presets.figure_spec(figure)
    out = out_dir / f"fig{figure}"
    out.mkdir(parents=True, exist_ok=True)
    builders = {
        "2c": _reproduce_2c,
        "3b": _reproduce_3b,
        "3d": _reproduce_3d,
        "3e": _reproduce_3e,
        "4c": _reproduce_4c,
        "5b": _reproduce_5b,
        "5c": _reproduce_5c,
        "6": _reproduce_6,
        "9": _reproduce_9,
    }
    if figure == "7":
        files = _reproduce_7(spec, out, seed, large)
    else:
        files = builders[figure](spec, out, seed)

    manifest = {
        "figure": figure,
        "tool": f"spinpurge {__version__}",
        "seed": seed,
        "preset_file": "spinpurge/presets/figures.toml",
        "preset_sha256": presets.preset_sha256(),
        "parameters": spec,
        "files": {
            f: hashlib.sha256((out / f).read_bytes()).hexdigest() for f in sorted(files)
        },
    }
    with open(out / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote bundle {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spinpurge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="graph symmetry and spectrum reports")
    p_an.add_argument("--scenario", required=True)
    p_an.add_argument("--out", default=None)
    p_an.add_argument("--seed", type=int, default=0)

    p_sim = sub.add_parser("simulate", help="run the purification cycles")
    p_sim.add_argument("--scenario", required=True)
    p_sim.add_argument("--out", default=None)
    p_sim.add_argument("--seed", type=int, default=0)

    p_enum = sub.add_parser("enumerate", help="population scan over connected graphs")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--out", default="out")
    p_enum.add_argument("--seed", type=int, default=0)
    p_enum.add_argument("--large", action="store_true", help="allow N=7")

    p_rep = sub.add_parser("reproduce", help="emit a figure data bundle")
    p_rep.add_argument("figure", choices=FIGURE_IDS)
    p_rep.add_argument("--out", default="out")
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--large", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("analyze", "simulate"):
            scn = load_scenario(args.scenario, seed=args.seed)
            out_dir = Path(args.out) if args.out else scn.out_dir
            if args.command == "analyze":
                return cmd_analyze(scn, out_dir)
            return cmd_simulate(scn, out_dir)
        if args.command == "enumerate":
            return cmd_enumerate(args.n, args.large, Path(args.out), args.seed)
        return cmd_reproduce(args.figure, Path(args.out), args.seed, args.large)
    except (ScenarioError, ValueError) as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    except LimitError as exc:
        print(f"limit error: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
