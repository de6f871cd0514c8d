"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it imports; setting
``STANLEYDEPTH_PURE=1`` forces the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as py

if os.environ.get("STANLEYDEPTH_PURE"):
    impl = py
else:
    try:
        from . import _ckernels as impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        impl = py

BACKEND: str = impl.BACKEND
cover_search = impl.cover_search
canonical_mask = impl.canonical_mask
is_canonical = impl.is_canonical
canonical_filter = impl.canonical_filter
edge_images = py.edge_images
relabel_mask = py.relabel_mask
