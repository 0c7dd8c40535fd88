"""Kernel dispatch: compiled bitmask loops with a pure-Python fallback.

The compiled extension only handles carriers of at most 64 elements
(masks in one machine word); anything wider, and any install without
the extension, runs on the pure-Python twin.  Set ``POWERPOSET_PURE=1``
to force the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

from . import _kernels_py as _py

_compiled = None
if os.environ.get("POWERPOSET_PURE") != "1":
    try:
        from . import _kernels_c as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

# allocation in the compiled enumerator is proportional to the cap
_COMPILED_CAP_LIMIT = 1 << 22


def implementation() -> str:
    """Name of the active kernel implementation: 'compiled' or 'pure'."""
    return "compiled" if _compiled is not None else "pure"


def transitive_closure(rows: Sequence[int]) -> list[int]:
    rows = list(rows)
    if _compiled is not None and len(rows) <= 64:
        return _compiled.transitive_closure(rows)
    return _py.transitive_closure(rows)


def downset_masks(pred_rows: Sequence[int], cap: int) -> Optional[list[int]]:
    """All down-set masks, sorted ascending; None if more than ``cap``."""
    pred_rows = list(pred_rows)
    n = len(pred_rows)
    if _compiled is not None and cap <= _COMPILED_CAP_LIMIT:
        if n <= 64:
            return _compiled.downset_masks(pred_rows, cap)
        return _compiled.downset_masks_wide(pred_rows, n, cap)
    return _py.downset_masks(pred_rows, cap)


def upset_masks(pred_rows: Sequence[int], cap: int) -> Optional[list[int]]:
    """All up-set masks (complements of down-sets), sorted ascending."""
    downs = downset_masks(pred_rows, cap)
    if downs is None:
        return None
    full = (1 << len(pred_rows)) - 1
    return sorted(full ^ d for d in downs)


def containment_rows(elements: Sequence[int], width: Optional[int] = None) -> list[int]:
    """bit j of row i is set iff elements[i] is a subset of elements[j]."""
    elements = list(elements)
    if _compiled is not None:
        if all(0 <= e < (1 << 64) for e in elements):
            return _compiled.containment_rows(elements)
        w = width if width is not None else max(e.bit_length() for e in elements)
        return _compiled.containment_rows_wide(elements, w)
    return _py.containment_rows(elements)


def transpose_rows(rows: Sequence[int]) -> list[int]:
    """Transpose a square bit matrix; the compiled path handles any width."""
    rows = list(rows)
    if _compiled is not None:
        return _compiled.transpose_rows(rows)
    return _py.transpose_rows(rows)
