"""Determinants over exact rings."""
from __future__ import annotations

from functools import lru_cache


def det_field(rows, zero, one):
    """Gaussian elimination with nonzero pivoting; entries must support division."""
    n = len(rows)
    if n == 0:
        return one
    a = [list(r) for r in rows]
    sign = 1
    out = one
    for c in range(n):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            return zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        out = out * p
        pinv = p.inv()
        for r in range(c + 1, n):
            if a[r][c].is_zero():
                continue
            f = a[r][c] * pinv
            row_c = a[c]
            row_r = a[r]
            for k in range(c + 1, n):
                if not row_c[k].is_zero():
                    row_r[k] = row_r[k] - f * row_c[k]
    return out if sign > 0 else -out


def det_ring(rows, zero, one, mul=None):
    """Division-free Laplace expansion with memoised minors.

    ``mul`` lets the caller supply a truncated product.
    """
    n = len(rows)
    if n == 0:
        return one
    mul = mul or (lambda x, y: x * y)

    @lru_cache(maxsize=None)
    def minor(r, cols):
        # determinant of rows r.. with the given column tuple
        if r == n:
            return one
        acc = zero
        for k, c in enumerate(cols):
            e = rows[r][c]
            if e.is_zero():
                continue
            sub = minor(r + 1, cols[:k] + cols[k + 1:])
            if sub.is_zero():
                continue
            term = mul(e, sub)
            acc = acc + term if k % 2 == 0 else acc - term
        return acc

    return minor(0, tuple(range(n)))
