"""Batched int64 edge test, used as a second route in the exhaustive sweeps.

Rows are (pa, pb, qa, qb).  The numba kernel is used when FAREY_NUMBA=1
and numba imports; otherwise the numpy version runs.  Both refuse inputs
whose coordinates could overflow int64 in the norm computation.
"""
from __future__ import annotations

import os

import numpy as np

LIMIT = 1 << 14  # |coordinate| bound that keeps N(det) far below 2**63


def _check(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape or a.ndim != 2 or a.shape[1] != 4:
        raise ValueError(f"expected two (n, 4) arrays, got {a.shape} and {b.shape}")
    if a.size and max(np.abs(a).max(), np.abs(b).max()) >= LIMIT:
        raise OverflowError(f"coordinates must stay below {LIMIT} in absolute value")


def _det_norm_numpy(d: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    k = (d + 1) // 4
    m3 = d % 4 == 3

    def mul(x1, y1, x2, y2):
        bb = y1 * y2
        if m3:
            return x1 * x2 - k * bb, x1 * y2 + x2 * y1 + bb
        return x1 * x2 - d * bb, x1 * y2 + x2 * y1

    s = mul(a[:, 0], a[:, 1], b[:, 2], b[:, 3])
    t = mul(b[:, 0], b[:, 1], a[:, 2], a[:, 3])
    x, y = s[0] - t[0], s[1] - t[1]
    if m3:
        return x * x + x * y + k * y * y
    return x * x + d * y * y


def _numba_kernel():
    from numba import njit

    @njit(cache=True)
    def det_norm(d, a, b):
        n = a.shape[0]
        out = np.empty(n, dtype=np.int64)
        k = (d + 1) // 4
        m3 = d % 4 == 3
        for i in range(n):
            x1, y1, x2, y2 = a[i, 0], a[i, 1], b[i, 2], b[i, 3]
            u1, v1, u2, v2 = b[i, 0], b[i, 1], a[i, 2], a[i, 3]
            if m3:
                sx = x1 * x2 - k * y1 * y2
                sy = x1 * y2 + x2 * y1 + y1 * y2
                tx = u1 * u2 - k * v1 * v2
                ty = u1 * v2 + u2 * v1 + v1 * v2
                x, y = sx - tx, sy - ty
                out[i] = x * x + x * y + k * y * y
            else:
                sx = x1 * x2 - d * y1 * y2
                sy = x1 * y2 + x2 * y1
                tx = u1 * u2 - d * v1 * v2
                ty = u1 * v2 + u2 * v1
                x, y = sx - tx, sy - ty
                out[i] = x * x + d * y * y
        return out

    return det_norm


def _want_numba() -> bool:
    return os.environ.get("FAREY_NUMBA", "0") == "1"


_NUMBA = None


def backend() -> str:
    global _NUMBA
    if not _want_numba():
        return "numpy"
    if _NUMBA is None:
        try:
            _NUMBA = _numba_kernel()
        except ImportError:
            _NUMBA = False
    return "numba" if _NUMBA else "numpy"


def det_norm(d: int, a, b, use: str | None = None) -> np.ndarray:
    """N(p1 q2 - p2 q1) row by row."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    _check(a, b)
    use = use or backend()
    if use == "numba":
        if backend() != "numba":
            raise RuntimeError("numba backend requested but unavailable (set FAREY_NUMBA=1, install numba)")
        return _NUMBA(d, a, b)
    return _det_norm_numpy(d, a, b)


def is_edge_batch(d: int, a, b, use: str | None = None) -> np.ndarray:
    return det_norm(d, a, b, use) == 1
