"""Exact rational linear algebra on numpy object arrays.

Scalars are Python ``int`` or ``fractions.Fraction``. Integer-valued arrays take
an int64 fast path whenever the products involved cannot overflow.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

_INT64_SAFE = 2**62


def to_exact(x):
    """Convert a scalar (int, Fraction, numeric string, float) to int or Fraction."""
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Rational):
        f = Fraction(x)
    elif isinstance(x, str):
        f = Fraction(x.strip())
    elif isinstance(x, (float, np.floating)):
        if not np.isfinite(x):
            raise ValueError(f"non-finite scalar {x!r}")
        # decimal reading: 0.1 -> 1/10, not the binary expansion
        f = Fraction(repr(float(x)))
    else:
        raise TypeError(f"cannot read {type(x).__name__} as an exact scalar")
    return f.numerator if f.denominator == 1 else f


def exact_array(data) -> np.ndarray:
    raw = np.asarray(data)
    if raw.dtype != object and np.issubdtype(raw.dtype, np.integer):
        return raw.astype(object)
    arr = np.asarray(data, dtype=object)
    if set(map(type, arr.reshape(-1))) <= {int}:
        return arr.copy()
    out = np.empty(arr.shape, dtype=object)
    flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = to_exact(v)
    return out


def as_int64(arr: np.ndarray, bound: int = _INT64_SAFE):
    """Return an int64 copy when every entry is an integer below ``bound``, else None."""
    if arr.dtype != object:
        if np.issubdtype(arr.dtype, np.integer):
            return arr.astype(np.int64) if arr.size == 0 or np.abs(arr).max() < bound else None
        return None
    if not set(map(type, arr.reshape(-1))) <= {int}:
        return None
    try:
        out = arr.astype(np.int64)
    except OverflowError:
        return None
    if out.size and np.abs(out).max() >= bound:
        return None
    return out


def exact_matmul(a: np.ndarray, b: np.ndarray, as_object: bool = True) -> np.ndarray:
    """Exact product; with ``as_object=False`` the int64 fast path result stays int64."""
    ia = as_int64(a)
    ib = as_int64(b) if ia is not None else None
    if ia is not None and ib is not None and a.ndim and b.ndim:
        inner = a.shape[-1]
        ma = int(np.abs(ia).max()) if ia.size else 0
        mb = int(np.abs(ib).max()) if ib.size else 0
        bound = ma * mb * max(inner, 1)
        if bound < _INT64_SAFE:
            if bound < 2**53:
                # BLAS float product is exact below 2**53
                out = np.rint(ia.astype(float) @ ib.astype(float)).astype(np.int64)
            else:
                out = ia @ ib
            return out.astype(object) if as_object else out
    return np.dot(a.astype(object), b.astype(object))


def exact_einsum(spec: str, *ops: np.ndarray) -> np.ndarray:
    ints = [as_int64(o) for o in ops]
    if all(i is not None for i in ints):
        bound = 1
        for i in ints:
            bound *= max(int(np.abs(i).max()) if i.size else 0, 1)
        # generous bound on the number of summed terms
        bound *= max(max(o.size for o in ops), 1)
        if bound < _INT64_SAFE:
            return np.einsum(spec, *ints).astype(object)
    return np.einsum(spec, *[o.astype(object) for o in ops])


class Echelon:
    """Incremental row echelon form over the rationals with sparse rows."""

    def __init__(self, width: int):
        self.width = width
        self.pivots: dict[int, dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row) -> bool:
        """Reduce ``row`` against the basis; keep it if independent. Returns True if kept."""
        if isinstance(row, dict):
            r = {k: v for k, v in row.items() if v}
        else:
            r = {int(k): row[k] for k in np.flatnonzero(row)}
        while r:
            col = min(r)
            piv = self.pivots.get(col)
            if piv is None:
                lead = Fraction(r[col])
                self.pivots[col] = {k: _norm(Fraction(v) / lead) for k, v in r.items()}
                return True
            f = r[col]
            for k, v in piv.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return False

    def basis(self) -> np.ndarray:
        rows = np.zeros((self.rank, self.width), dtype=object)
        for i, col in enumerate(sorted(self.pivots)):
            for k, v in self.pivots[col].items():
                rows[i, k] = v
        return rows

    def reduced_basis(self) -> np.ndarray:
        """Reduced row echelon basis (canonical for the span)."""
        rows = self.basis()
        cols = sorted(self.pivots)
        for i in range(len(cols) - 1, -1, -1):
            for j in range(i):
                f = rows[j, cols[i]]
                if f:
                    rows[j] = rows[j] - f * rows[i]
        return _normalize_array(rows)


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _normalize_array(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    flat = out.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = _norm(v)
    return out


def row_basis_exact(rows, width: int, limit: int | None = None) -> np.ndarray:
    """Reduced basis of the span of ``rows``; stops early once ``limit`` rank is reached."""
    ech = Echelon(width)
    limit = width if limit is None else limit
    for row in rows:
        ech.add(row)
        if ech.rank >= limit:
            break
    return ech.reduced_basis()


def row_basis_float(rows: np.ndarray, tol: float) -> np.ndarray:
    rows = np.asarray(rows)
    if rows.size == 0:
        return np.zeros((0, rows.shape[-1] if rows.ndim == 2 else 0))
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    scale = max(1.0, float(s[0])) if s.size else 1.0
    rank = int(np.sum(s > tol * scale))
    return vh[:rank]


def exact_inverse(m: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse on sparse rows; raises ZeroDivisionError for singular input."""
    a = exact_array(m)
    n = a.shape[0]
    rows = []
    for i in range(n):
        r = {int(k): a[i, k] for k in np.flatnonzero(a[i])}
        r[n + i] = 1
        rows.append(r)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r].get(col, 0) != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        lead = rows[col][col]
        if lead != 1:
            lead = Fraction(lead)
            rows[col] = {k: _norm(v / lead) for k, v in rows[col].items()}
        prow = rows[col]
        for r in range(n):
            f = rows[r].get(col, 0) if r != col else 0
            if f:
                row = rows[r]
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = _norm(nv)
                    else:
                        row.pop(k, None)
    out = np.zeros((n, n), dtype=object)
    for i, r in enumerate(rows):
        for k, v in r.items():
            if k >= n:
                out[i, k - n] = v
    return out


def to_float(arr: np.ndarray) -> np.ndarray:
    return np.asarray(arr, dtype=object).astype(float) if np.asarray(arr).dtype == object else np.asarray(arr, dtype=float)


def format_exact(v):
    """JSON-friendly rendering: ints stay ints, fractions become "p/q" strings."""
    v = _norm(v) if isinstance(v, Fraction) else v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)
