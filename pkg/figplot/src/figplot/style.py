"""Single styling spec for every rendered figure; keep it boring."""

RC = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
    "font.size": 10,
    "legend.fontsize": 8,
    "legend.framealpha": 0.8,
}

MARKER_SIZE = 14
BOUND_LINE_GID = "s8-bound-line"
