"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``NAGATA_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
rank_mod = _kernels_py.rank_mod
condition_rank = _kernels_py.condition_rank

if not os.environ.get("NAGATA_PURE_PYTHON"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        rank_mod = _kernels.rank_mod
        condition_rank = _kernels.condition_rank

__all__ = ["BACKEND", "rank_mod", "condition_rank"]
