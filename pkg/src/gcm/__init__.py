"""Generic Cayley graphs G_m(G) = Cay(G^m, S) and mechanical checks of their structure."""

from .errors import GcmError
from .graph import GcmGraph, build_graph
from .groups import GroupTable, build_group

__all__ = ["GcmError", "GcmGraph", "GroupTable", "build_graph", "build_group"]
__version__ = "0.1.0"
