"""Access to the versioned figure presets shipped with the package."""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from .netgraph import NetworkGraph

__all__ = [
    "preset_bytes",
    "preset_sha256",
    "load_presets",
    "network",
    "figure_spec",
    "protocol_spec",
    "g_tilde_ramp",
]

_PRESET_FILE = "figures.toml"


@lru_cache(maxsize=1)
def preset_bytes() -> bytes:
    return resources.files("spinpurge").joinpath("presets").joinpath(_PRESET_FILE).read_bytes()


def preset_sha256() -> str:
    return hashlib.sha256(preset_bytes()).hexdigest()


@lru_cache(maxsize=1)
def load_presets() -> dict:
    return tomllib.loads(preset_bytes().decode("utf-8"))


def network(name: str) -> NetworkGraph:
    """Build the named preset network."""
    try:
        spec = load_presets()["networks"][name]
    except KeyError:
        raise KeyError(f"unknown preset network {name!r}") from None
    return NetworkGraph(
        n_nodes=spec["n"],
        edge_weights={(int(i), int(j)): float(w) for i, j, w in spec.get("edges", [])},
        self_loops={int(i): float(h) for i, h in spec.get("self_loops", [])},
        ancilla_targets={int(k): float(g) for k, g in spec.get("ancilla", [])},
    )


def figure_spec(figure_id: str) -> dict:
    try:
        return dict(load_presets()["figures"][figure_id])
    except KeyError:
        raise KeyError(f"unknown figure id {figure_id!r}") from None


def protocol_spec(name: str) -> dict:
    try:
        return dict(load_presets()["protocols"][name])
    except KeyError:
        raise KeyError(f"unknown protocol preset {name!r}") from None


def g_tilde_ramp(n_sites: int, base: float, step: float) -> list[float]:
    """Pairwise-distinct dispersive couplings base, base+step, ..."""
    return [base + step * k for k in range(n_sites)]
