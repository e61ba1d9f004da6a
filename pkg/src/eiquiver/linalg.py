"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced to {0..p-1}.  All
routines use deterministic pivoting (first nonzero column, topmost row)
so that downstream artifacts are reproducible byte-for-byte.
"""

from __future__ import annotations

import numpy as np


def asmod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries bounded by n * p^2 which fits in int64 for p up to ~10^6
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def inv_scalar(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (R, pivot_columns)."""
    r = asmod(a, p).copy()
    m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        sel = -1
        for i in range(row, m):
            if r[i, col] % p != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != row:
            r[[row, sel]] = r[[sel, row]]
        r[row] = (r[row] * inv_scalar(r[row, col], p)) % p
        for i in range(m):
            if i != row and r[i, col] % p != 0:
                r[i] = (r[i] - r[i, col] * r[row]) % p
        pivots.append(col)
        row += 1
    return r % p, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_space(a: np.ndarray, p: int) -> np.ndarray:
    """Deterministic echelon basis of the row space (nonzero rows of rref)."""
    r, pivots = rref(a, p)
    return r[: len(pivots)]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as rows, in echelon-determined order."""
    m, n = a.shape
    r, pivots = rref(a, p)
    free = [j for j in range(n) if j not in pivots]
    basis = zeros(len(free), n)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, j]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b (columns of b), or None if inconsistent."""
    m, n = a.shape
    b = asmod(b, p)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    aug = np.hstack([asmod(a, p), b])
    r, pivots = rref(aug, p)
    k = b.shape[1]
    for i in range(len(pivots)):
        if pivots[i] >= n:
            return None
    # rows below the pivots must be zero on the rhs too
    if len(pivots) < m and np.any(r[len(pivots):, n:] % p):
        return None
    x = zeros(n, k)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x % p


def inv(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    x = solve(a, eye(n), p)
    if x is None or rank(a, p) < n:
        raise ValueError("matrix not invertible mod %d" % p)
    return x


def det(a: np.ndarray, p: int) -> int:
    a = asmod(a, p).copy()
    n = a.shape[0]
    d = 1
    for col in range(n):
        sel = -1
        for i in range(col, n):
            if a[i, col] % p:
                sel = i
                break
        if sel < 0:
            return 0
        if sel != col:
            a[[col, sel]] = a[[sel, col]]
            d = (-d) % p
        d = (d * int(a[col, col])) % p
        piv_inv = inv_scalar(a[col, col], p)
        for i in range(col + 1, n):
            if a[i, col] % p:
                a[i] = (a[i] - a[i, col] * piv_inv % p * a[col]) % p
    return d % p


def char_poly(a: np.ndarray, p: int) -> list[int]:
    """Coefficients of det(xI - a), highest degree first, via interpolation.

    Requires p > deg, which holds for every splitting prime in this package.
    """
    n = a.shape[0]
    if n == 0:
        return [1]
    xs = list(range(n + 1))
    ys = [det((x * eye(n) - a) % p, p) for x in xs]
    # Lagrange interpolation at 0..n
    coeffs = [0] * (n + 1)
    for i, xi in enumerate(xs):
        # basis polynomial prod_{j!=i} (x - xj) / (xi - xj)
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                denom = denom * (xi - xj) % p
        scale = ys[i] * inv_scalar(denom, p) % p
        basis = [1]  # poly coefficients, highest first
        for j, xj in enumerate(xs):
            if j != i:
                nxt = [0] * (len(basis) + 1)
                for k, c in enumerate(basis):
                    nxt[k] = (nxt[k] + c) % p
                    nxt[k + 1] = (nxt[k + 1] - c * xj) % p
                basis = nxt
        off = n + 1 - len(basis)
        for k, c in enumerate(basis):
            coeffs[off + k] = (coeffs[off + k] + scale * c) % p
    return [c % p for c in coeffs]


def poly_eval(coeffs: list[int], x: int, p: int) -> int:
    acc = 0
    for c in coeffs:
        acc = (acc * x + c) % p
    return acc


def poly_roots(coeffs: list[int], p: int) -> list[int]:
    """All roots in F_p with multiplicity, ascending. Assumes the polynomial
    splits (true for class-sum matrices over a splitting prime)."""
    coeffs = [c % p for c in coeffs]
    roots: list[int] = []
    deg = len(coeffs) - 1
    for lam in range(p):
        if deg == 0:
            break
        while deg > 0 and poly_eval(coeffs, lam, p) == 0:
            # synthetic division by (x - lam)
            out = []
            acc = 0
            for c in coeffs:
                acc = (acc * lam + c) % p
                out.append(acc)
            coeffs = out[:-1]
            deg -= 1
            roots.append(lam)
    return roots
