"""Render spinpurge CSV bundles into images.

Bundles are read-only inputs; each renderer only reshapes columns for
plotting.  Column requirements are enforced up front so a stale or foreign
CSV fails with the path and a header diff instead of a cryptic KeyError.
"""

from __future__ import annotations

import csv
import os
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .style import BOUND_LINE_GID, MARKER_SIZE, RC

FIGURE_IDS = ("2c", "3b", "3d", "3e", "4c", "5b", "5c", "6", "7", "9")


class BundleError(Exception):
    """Missing or malformed bundle input."""


def read_bundle_csv(path: Path, required: list[str]) -> dict[str, list[str]]:
    """Columns of a metadata-prefixed CSV, validated against ``required``."""
    if not path.exists():
        raise BundleError(f"{path}: missing bundle file")
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise BundleError(f"{path}: no header row")
    header = rows[0]
    missing = [c for c in required if c not in header]
    if missing:
        raise BundleError(
            f"{path}: missing columns {missing}; header has {header}"
        )
    cols = {c: [] for c in header}
    for r in rows[1:]:
        for c, v in zip(header, r):
            cols[c].append(v)
    return cols


def _floats(col: list[str]) -> np.ndarray:
    return np.array([float(v) for v in col])


def _trace_files(bundle: Path) -> list[Path]:
    files = sorted(bundle.glob("network_*.csv"))
    if not files:
        raise BundleError(f"{bundle}: no network_*.csv trace files")
    return files


def _render_2c(bundle: Path, ax) -> None:
    cols = read_bundle_csv(bundle / "polarizability_vs_n.csv", ["n", "p_steady", "sqrtn_expn2"])
    n = _floats(cols["n"])
    ax.scatter(n, _floats(cols["p_steady"]), s=MARKER_SIZE, label="steady polarization")
    ax.plot(n, _floats(cols["sqrtn_expn2"]), "--", color="gray", label="sqrt(N) exp(-N/2)")
    ax.set_yscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("P")
    ax.legend()


def _render_traces(bundle: Path, ax) -> None:
    for f in _trace_files(bundle):
        cols = read_bundle_csv(f, ["cycle", "purity"])
        label = f.stem.removeprefix("network_")
        ax.plot(_floats(cols["cycle"]), _floats(cols["purity"]), label=label)
    ax.set_xlabel("cycle")
    ax.set_ylabel("purity")
    ax.set_ylim(0, 1.05)
    ax.legend()


def _render_3d(bundle: Path, ax) -> None:
    cols = read_bundle_csv(bundle / "bound_vs_n.csv", ["n", "p_chain", "p_complete"])
    n = _floats(cols["n"])
    ax.plot(n, _floats(cols["p_chain"]), "o-", label="open chain")
    ax.plot(n, _floats(cols["p_complete"]), "s--", color="red", label="complete graph")
    ax.set_yscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("estimated purity")
    ax.legend()


def _render_delta_scan(path: Path, ax) -> None:
    cols = read_bundle_csv(path, ["delta", "cycle", "purity"])
    series: dict[str, list[tuple[float, float]]] = defaultdict(list)
    for d, c, p in zip(cols["delta"], cols["cycle"], cols["purity"]):
        series[d].append((float(c), float(p)))
    for d in sorted(series, key=float):
        pts = np.array(series[d])
        ax.plot(pts[:, 0], pts[:, 1], label=f"delta = {d}")
    ax.set_xlabel("cycle")
    ax.set_ylabel("purity")
    ax.set_ylim(0, 1.05)
    ax.legend()


def _render_5b(bundle: Path, ax) -> None:
    cols = read_bundle_csv(bundle / "adrt_purity.csv", ["system", "delta", "cycle", "purity"])
    series: dict[tuple[str, str], list[tuple[float, float]]] = defaultdict(list)
    for s, d, c, p in zip(cols["system"], cols["delta"], cols["cycle"], cols["purity"]):
        series[(s, d)].append((float(c), float(p)))
    for (s, d) in sorted(series):
        pts = np.array(series[(s, d)])
        ax.plot(pts[:, 0], pts[:, 1], label=f"{s}, delta = {d}")
    ax.set_xlabel("cycle")
    ax.set_ylabel("purity")
    ax.set_ylim(0, 1.05)
    ax.legend()


def _render_6(bundle: Path, axes) -> None:
    ax1, ax2 = axes
    cols = read_bundle_csv(
        bundle / "purity_s_and_a.csv",
        ["cycle", "system_purity", "ancilla_purity", "epsilon"],
    )
    cyc = _floats(cols["cycle"])
    ax1.plot(cyc, _floats(cols["system_purity"]), label="system")
    ax1.plot(cyc, _floats(cols["ancilla_purity"]), "--", label="ancilla")
    ax1.set_xlabel("cycle")
    ax1.set_ylabel("purity")
    ax1.legend()
    eps = _floats(cols["epsilon"])
    mask = eps > 1e-15
    ax2.plot(cyc[mask], eps[mask])
    ax2.set_yscale("log")
    ax2.set_xlabel("cycle")
    ax2.set_ylabel("target-state error")
    fits = read_bundle_csv(bundle / "tail_fits.csv", ["model", "slope", "rms_residual"])
    note = "; ".join(
        f"{m}: slope {float(s):.3g} (rms {float(r):.2g})"
        for m, s, r in zip(fits["model"], fits["slope"], fits["rms_residual"])
    )
    ax2.set_title(note, fontsize=7)


def _render_7(bundle: Path, ax) -> None:
    cols = read_bundle_csv(
        bundle / "population.csv", ["n", "i_norm", "nullity_frac", "s8_upper_frac"]
    )
    n = np.array([int(v) for v in cols["n"]])
    x = _floats(cols["i_norm"])
    y = _floats(cols["nullity_frac"])
    ub = _floats(cols["s8_upper_frac"])
    first = True
    for nv in sorted(set(n)):
        sel = n == nv
        ax.scatter(x[sel], y[sel], s=MARKER_SIZE, label=f"N = {nv}")
        line = ax.axhline(
            ub[sel][0],
            linestyle=":",
            color="black",
            linewidth=1.0,
            label="population upper bound" if first else None,
        )
        if first:
            line.set_gid(BOUND_LINE_GID)
            first = False
    ax.set_xlabel("normalized orbit entropy")
    ax.set_ylabel("nullity fraction")
    ax.legend()


def _render_9(bundle: Path, ax) -> None:
    cols = read_bundle_csv(bundle / "cycles_to_P90.csv", ["delta_h", "cycles_to_target"])
    pts = [
        (float(d), int(c))
        for d, c in zip(cols["delta_h"], cols["cycles_to_target"])
        if c != ""
    ]
    arr = np.array(pts)
    ax.plot(arr[:, 0], arr[:, 1], "o-")
    ax.set_xlabel("field splitting")
    ax.set_ylabel("cycles to purity 0.9")


def render(figure_id: str, bundle_dir: str | os.PathLike, out_path: str | os.PathLike) -> Path:
    """Render one bundle to ``out_path``; no partial file is left on failure."""
    if figure_id not in FIGURE_IDS:
        raise BundleError(f"unknown figure id {figure_id!r}")
    bundle = Path(bundle_dir)
    out = Path(out_path)
    with plt.rc_context(RC):
        if figure_id == "6":
            fig, axes = plt.subplots(1, 2, figsize=(9, 4))
        else:
            fig, axes = plt.subplots()
        try:
            if figure_id == "2c":
                _render_2c(bundle, axes)
            elif figure_id in ("3b", "4c"):
                _render_traces(bundle, axes)
            elif figure_id == "3d":
                _render_3d(bundle, axes)
            elif figure_id == "3e":
                _render_delta_scan(bundle / "anisotropy_scan.csv", axes)
            elif figure_id == "5b":
                _render_5b(bundle, axes)
            elif figure_id == "5c":
                _render_delta_scan(bundle / "adrt_anisotropy_scan.csv", axes)
            elif figure_id == "6":
                _render_6(bundle, axes)
            elif figure_id == "7":
                _render_7(bundle, axes)
            elif figure_id == "9":
                _render_9(bundle, axes)
            fig.tight_layout()
            out.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(out)
        except BundleError:
            if out.exists():
                out.unlink()
            raise
        finally:
            plt.close(fig)
    return out
