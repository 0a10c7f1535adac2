"""Rendering front end for spinpurge figure bundles."""

__version__ = "0.1.0"

from .render import render, BundleError, FIGURE_IDS  # noqa: F401
