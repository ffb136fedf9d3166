"""Sparse exact linear algebra over :class:`Scalar`.

Vectors are ``dict[int, Scalar]`` with no zero entries; matrices are lists of
rows or ``dict[(i, j), Scalar]`` depending on the caller.
"""

from __future__ import annotations

from typing import Hashable, Iterable

from .exactnum import ONE, ZERO, Scalar, scalar_inv

SparseVec = dict


def vclean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c}


def vadd(x: dict, y: dict, c: Scalar = ONE) -> dict:
    """Return x + c*y."""
    out = dict(x)
    vaxpy(out, c, y)
    return out


def vaxpy(x: dict, c, y: dict) -> None:
    """x += c*y in place."""
    if not c:
        return
    one = c == ONE
    for k, v in y.items():
        t = v if one else c * v
        cur = x.get(k)
        if cur is None:
            x[k] = t
        else:
            s = cur + t
            if s:
                x[k] = s
            else:
                del x[k]


def vscale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def vsum(terms: Iterable[tuple]) -> dict:
    """Sum of ``(coefficient, vector)`` pairs."""
    out: dict = {}
    for c, v in terms:
        vaxpy(out, c, v)
    return out


class Echelon:
    """Incremental semi-echelon form that remembers how each row was made.

    Rows are kept in insertion order with pivot coefficient 1; a row has zero
    entries at the pivots of all earlier rows.  Each row carries its expansion
    in terms of the accepted input vectors, so coordinates of any vector in the
    span can be read off after reduction.
    """

    def __init__(self):
        self.rows: list[tuple[Hashable, dict, dict]] = []
        self.tags: list = []

    def __len__(self) -> int:
        return len(self.tags)

    def reduce(self, v: dict) -> tuple[dict, dict]:
        """Return (residual, combo) with v = residual + sum combo[t]*input_t."""
        res = dict(v)
        combo: dict = {}
        for pivot, row, rc in self.rows:
            c = res.get(pivot)
            if c is None:
                continue
            vaxpy(res, -c, row)
            vaxpy(combo, c, rc)
        return res, combo

    def add(self, v: dict, tag=None) -> bool:
        """Insert v if independent; return True when it was accepted."""
        res, combo = self.reduce(v)
        if not res:
            return False
        idx = len(self.tags)
        self.tags.append(tag)
        pivot = min(res)
        inv = scalar_inv(res[pivot])
        row = vscale(res, inv)
        rc = vscale(combo, -inv)
        rc[idx] = inv
        self.rows.append((pivot, row, rc))
        return True

    def coords(self, v: dict) -> dict:
        """Coordinates of v over accepted inputs; raises if v is outside the span."""
        res, combo = self.reduce(v)
        if res:
            raise ValueError("vector is not in the span")
        return combo

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Iterable[dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def inverse(m: list[list[Scalar]]) -> list[list[Scalar]]:
    """Gauss-Jordan inverse of a square matrix; raises on singular input."""
    n = len(m)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = scalar_inv(a[col][col])
        a[col] = [x * inv if x else x for x in a[col]]
        prow = a[col]
        nz = [j for j, x in enumerate(prow) if x]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                row = a[r]
                for j in nz:
                    row[j] = row[j] - f * prow[j]
    return [row[n:] for row in a]


def pivots_ldl(m: list[list[Scalar]]) -> list[Scalar]:
    """Pivots of Gaussian elimination without row exchanges.

    The k-th leading principal minor is the product of the first k pivots, so
    a symmetric matrix is positive definite iff every pivot is positive.
    Returns a short list if a zero pivot stops elimination.
    """
    n = len(m)
    a = [list(r) for r in m]
    out = []
    for k in range(n):
        p = a[k][k]
        if not p:
            out.append(p)
            return out
        out.append(p)
        inv = scalar_inv(p)
        for r in range(k + 1, n):
            if a[r][k]:
                f = a[r][k] * inv
                for j in range(k, n):
                    if a[k][j]:
                        a[r][j] = a[r][j] - f * a[k][j]
    return out


def nullspace(rows: list[dict], ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows} as sparse vectors."""
    # full RREF
    piv_rows: dict[int, dict] = {}
    for r in rows:
        v = dict(r)
        for p, pr in piv_rows.items():
            c = v.get(p)
            if c is not None:
                vaxpy(v, -c, pr)
        if not v:
            continue
        p = min(v)
        inv = scalar_inv(v[p])
        v = vscale(v, inv)
        for q in list(piv_rows):
            c = piv_rows[q].get(p)
            if c is not None:
                vaxpy(piv_rows[q], -c, v)
        piv_rows[p] = v
    free = [j for j in range(ncols) if j not in piv_rows]
    basis = []
    for f in free:
        x = {f: ONE}
        for p, pr in piv_rows.items():
            c = pr.get(f)
            if c is not None:
                x[p] = -c
        basis.append(x)
    return basis


def solve(rows: list[dict], rhs: list, ncols: int) -> dict | None:
    """One solution of rows . x = rhs, or None when inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        v = dict(r)
        if b:
            v[ncols] = b
        aug.append(v)
    piv_rows: dict[int, dict] = {}
    for v in aug:
        for p, pr in piv_rows.items():
            c = v.get(p)
            if c is not None:
                vaxpy(v, -c, pr)
        if not v:
            continue
        p = min(v)
        if p == ncols:
            return None
        inv = scalar_inv(v[p])
        v = vscale(v, inv)
        for q in list(piv_rows):
            c = piv_rows[q].get(p)
            if c is not None:
                vaxpy(piv_rows[q], -c, v)
        piv_rows[p] = v
    return {p: pr[ncols] for p, pr in piv_rows.items() if ncols in pr}
