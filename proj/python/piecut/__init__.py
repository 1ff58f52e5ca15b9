"""Planted balanced-cut toolkit: PIE instance generation, the iterative
SDP-based partitioning pipeline, max-flow damage control, and baselines."""

try:
    from ._piecut import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - build-tree layout
    import os
    import sys

    _module_dir = os.environ.get("PIECUT_MODULE_DIR")
    if not _module_dir:
        raise
    sys.path.insert(0, _module_dir)
    from _piecut import *  # noqa: F401,F403
