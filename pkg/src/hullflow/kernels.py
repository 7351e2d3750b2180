"""Kernel selection: compiled extension when built, pure Python otherwise.

Set HULLFLOW_PURE=1 to force the pure-Python kernels (used by the tests and
the benchmark to compare both implementations).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HULLFLOW_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION: str = _impl.IMPLEMENTATION
HAVE_COMPILED: bool = IMPLEMENTATION == "cython"

closure_table = _impl.closure_table
hull_value = _impl.hull_value
perm_table = _impl.perm_table
image = _impl.image
pairwise_closed = _impl.pairwise_closed
commutes_with_closure = _impl.commutes_with_closure
orbit_blocks = _impl.orbit_blocks
coherent_block = _impl.coherent_block
trace_coherent = _impl.trace_coherent
