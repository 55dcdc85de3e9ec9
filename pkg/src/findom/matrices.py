"""
Small helpers for exact matrices stored as numpy object arrays.

Entries are Python ``int`` or :class:`~findom.laurent.LaurentPoly`; both
support ``+``, ``*`` and comparison with ``0``, so numpy's object-dtype
``@`` does exact arithmetic.
"""

from __future__ import annotations

import numpy as np

from .laurent import LaurentPoly


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def identity(n: int, scalar=1) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = scalar
    return m


def as_matrix(data, rows=None, cols=None) -> np.ndarray:
    """Coerce nested lists (or an array) to a 2-d object array."""
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        m = data
    else:
        arr = np.asarray(data, dtype=object)
        if arr.ndim == 0 or arr.size == 0:
            m = zeros(rows or 0, cols or 0)
        elif arr.ndim == 1:
            m = arr.reshape(1, -1)
        else:
            m = arr
        m = np.array(
            [[_norm(v) for v in row] for row in m], dtype=object
        ).reshape(m.shape)
    if rows is not None and cols is not None and m.shape != (rows, cols):
        if m.size == 0 and rows * cols == 0:
            return zeros(rows, cols)
        raise ValueError(f"expected a {rows}x{cols} matrix, got {m.shape}")
    return m


def _norm(v):
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    raise TypeError(f"unsupported matrix entry {v!r}")


def mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact matrix product that also handles empty inner dimensions."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return np.dot(a, b)


def chain(*mats: np.ndarray) -> np.ndarray:
    """Product ``mats[0] @ mats[1] @ ...``."""
    out = mats[0]
    for m in mats[1:]:
        out = mm(out, m)
    return out


def is_zero(m: np.ndarray) -> bool:
    return all(v == 0 for v in m.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(u == v for u, v in zip(a.flat, b.flat))


def nonzero_entries(m: np.ndarray):
    return [(i, j) for (i, j), v in np.ndenumerate(m) if v != 0]


def block(rows) -> np.ndarray:
    """
    Assemble a block matrix from a list of lists of 2-d object arrays.

    Row heights and column widths are inferred from the blocks; every block
    must be present (use :func:`zeros` for empty ones).
    """
    heights = [r[0].shape[0] for r in rows]
    widths = [b.shape[1] for b in rows[0]]
    out = zeros(sum(heights), sum(widths))
    r0 = 0
    for i, r in enumerate(rows):
        c0 = 0
        for j, b in enumerate(r):
            if b.shape != (heights[i], widths[j]):
                raise ValueError(f"block ({i},{j}) has shape {b.shape}, expected {(heights[i], widths[j])}")
            out[r0 : r0 + heights[i], c0 : c0 + widths[j]] = b
            c0 += widths[j]
        r0 += heights[i]
    return out


def block_diag(*mats: np.ndarray) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def scalar_mul(s, m: np.ndarray) -> np.ndarray:
    out = zeros(*m.shape)
    for idx, v in np.ndenumerate(m):
        out[idx] = s * v
    return out


def to_poly(m: np.ndarray) -> np.ndarray:
    """Return a copy whose entries are all :class:`LaurentPoly`."""
    out = zeros(*m.shape)
    for idx, v in np.ndenumerate(m):
        out[idx] = LaurentPoly(v)
    return out


def to_int(m: np.ndarray) -> np.ndarray:
    """Return a copy with integer entries; fails on non-constant entries."""
    out = zeros(*m.shape)
    for idx, v in np.ndenumerate(m):
        if isinstance(v, LaurentPoly):
            t = v.terms
            if any(k != (0, 0) for k in t):
                raise ValueError(f"entry {idx} is not constant: {v}")
            out[idx] = t.get((0, 0), 0)
        else:
            out[idx] = int(v)
    return out


def apply_entrywise(m: np.ndarray, fn) -> np.ndarray:
    out = zeros(*m.shape)
    for idx, v in np.ndenumerate(m):
        out[idx] = fn(v)
    return out


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact Kronecker product."""
    out = zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    for (i, j), v in np.ndenumerate(a):
        if v != 0:
            out[i * b.shape[0] : (i + 1) * b.shape[0], j * b.shape[1] : (j + 1) * b.shape[1]] = scalar_mul(v, b)
    return out
