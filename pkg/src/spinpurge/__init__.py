"""spinpurge: collective purification of interacting spin networks.

Graph-symmetry analysis (automorphism orbits, spectral kernels, closed-form
rank/nullity and polarizability bounds) triangulated against exact dense
simulation of ancilla-reset purification cycles.
"""

__version__ = "0.1.0"

from .netgraph import NetworkGraph, OrbitPartition, SpectralReport  # noqa: F401
from .model import ProtocolConfig, ResetSpec  # noqa: F401
from .qmat import DensityMatrix  # noqa: F401
