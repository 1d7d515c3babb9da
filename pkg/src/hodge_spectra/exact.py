"""Exact integer linear algebra: characteristic polynomials, ranks, polynomial helpers.

Everything here works on Python ``int`` so results never overflow.  Matrices may
be passed as numpy integer arrays or nested lists.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np


def _as_object(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype.kind not in "iub" and arr.dtype != object:
        raise TypeError(f"exact routines need an integer matrix, got dtype {arr.dtype}")
    out = np.empty(arr.shape, dtype=object)
    if arr.size:
        out[...] = arr.tolist()
    return out


_LIMB_BITS = 31
_LIMB_MASK = (1 << _LIMB_BITS) - 1


def _matvec_limbs(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Exact ``M @ v`` for a small-entry int64 ``M`` and an object array of ints.

    ``v`` is split into 31-bit limbs so every partial product runs in int64;
    the max absolute row sum of ``M`` must stay below 2**31.
    """
    sign = np.where(v < 0, -1, 1).astype(np.int64)
    mag = np.abs(v)
    top = int(mag.max()) if mag.size else 0
    out = np.zeros(M.shape[0], dtype=object)
    shift = 0
    while top >> shift:
        limb = ((mag >> shift) & _LIMB_MASK).astype(np.int64) * sign
        out += (M @ limb).astype(object) << shift
        shift += _LIMB_BITS
    return out


def berkowitz(a) -> list[int]:
    """Coefficients of det(xI - A), leading coefficient first.

    Division-free (Berkowitz), so every intermediate stays in Z.  Cost is
    O(m^4) integer operations; coefficients grow at most like (1 + rho)^m
    where rho bounds the spectral radius, so the method is meant for m up to
    a few hundred.  Small-entry matrices take a limb-split int64 fast path for
    the Krylov products.
    """
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"square matrix required, got shape {arr.shape}")
    A = _as_object(arr)
    m = A.shape[0]
    small = arr.dtype != object and m and int(np.abs(arr).sum(axis=1).max()) < 2**31
    A64 = arr.astype(np.int64) if small else None
    poly = [1]
    for r in range(m):
        q = [1, -int(A[r, r])]
        if small and r:
            # stack the row on top of the leading block: one product gives row.v and sub.v
            M = np.vstack([A64[r, :r], A64[:r, :r]])
            rb = int(np.abs(M).sum(axis=1).max())
            v = A64[:r, r]
            bound = int(np.abs(v).max())
            for _ in range(r):
                if v.dtype != object and bound * rb < 2**62:
                    w = M @ v
                    bound *= rb
                else:
                    w = _matvec_limbs(M, v.astype(object))
                q.append(-int(w[0]))
                v = w[1:]
        elif r:
            row, sub, v = A[r, :r], A[:r, :r], A[:r, r]
            for _ in range(r):
                q.append(-int(np.dot(row, v)))
                v = sub.dot(v)
        # lower-triangular Toeplitz product, truncated to r + 2 terms
        new = [0] * (r + 2)
        for i, qi in enumerate(q):
            if qi == 0:
                continue
            for j in range(min(len(poly), r + 2 - i)):
                new[i + j] += qi * poly[j]
        poly = new
    return [int(c) for c in poly]


def _primes_below(limit: int, count: int) -> list[int]:
    out = []
    p = limit - 1 if limit % 2 == 0 else limit - 2
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p -= 2
    return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % d == 0:
            return p == d
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _charpoly_mod_p(a: np.ndarray, p: int) -> list[int]:
    """det(xI - A) mod p via Hessenberg reduction over GF(p).

    p must stay below 2**26 so that a length-m dot product of residues fits
    in int64 for m up to 2**11.
    """
    H = np.mod(a, p).astype(np.int64)
    m = H.shape[0]
    for j in range(m - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            H[[piv, j + 1], :] = H[[j + 1, piv], :]
            H[:, [piv, j + 1]] = H[:, [j + 1, piv]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        f = H[j + 2:, j] * inv % p
        if not f.any():
            continue
        # similarity by I - f e_{j+1}^T: rows first, then the inverse on columns
        H[j + 2:, :] = (H[j + 2:, :] - np.outer(f, H[j + 1, :]) % p) % p
        H[:, j + 1] = (H[:, j + 1] + H[:, j + 2:] @ f) % p
    # charpoly of the upper Hessenberg matrix; polys stored lowest degree first
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, m + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:k] = (cur[:k] - H[k - 1, k - 1] * prev) % p
        t = 1
        for i in range(k - 1, 0, -1):
            t = t * int(H[i, i - 1]) % p
            if t == 0:
                break
            c = t * int(H[i - 1, k - 1]) % p
            if c:
                pi = polys[i - 1]
                cur[: pi.size] = (cur[: pi.size] - c * pi) % p
        polys.append(cur)
    return [int(c) for c in polys[m][::-1]]


def coefficient_bound(a) -> int:
    """Upper bound on |c_k| for det(xI - A) of a symmetric integer matrix.

    Every eigenvalue is bounded by the max absolute row sum r, so
    |c_k| = |e_k(eigenvalues)| <= C(m, k) r^k <= (1 + r)^m.
    """
    arr = np.abs(np.asarray(a, dtype=object))
    m = arr.shape[0]
    if m == 0:
        return 1
    r = max(int(sum(row)) for row in arr)
    return (1 + r) ** m


def charpoly_modular(a) -> list[int]:
    """det(xI - A) for a symmetric integer matrix by multi-modular CRT.

    Fast exact path for large m: Hessenberg reduction modulo word-size primes,
    recombined with a symmetric residue once the modulus exceeds twice the
    coefficient bound.  Only valid for symmetric (or otherwise real-spectrum)
    inputs, since the bound relies on real eigenvalues.
    """
    arr = np.asarray(a)
    m = arr.shape[0]
    if m == 0:
        return [1]
    bound = coefficient_bound(arr)
    primes: list[int] = []
    modulus = 1
    while modulus <= 2 * bound:
        primes = _primes_below(2**26, len(primes) + 8)
        modulus = 1
        for p in primes:
            modulus *= p
    residues = [_charpoly_mod_p(arr.astype(np.int64), p) for p in primes]
    coeffs = []
    for k in range(m + 1):
        x, mod = 0, 1
        for p, res in zip(primes, residues):
            # incremental CRT
            t = ((res[k] - x) * pow(mod, -1, p)) % p
            x += mod * t
            mod *= p
        if x > mod // 2:
            x -= mod
        coeffs.append(x)
    return coeffs


def bareiss_rank(a) -> int:
    """Exact rank by fraction-free (Bareiss) elimination over Z."""
    M = _as_object(a)
    if M.ndim != 2:
        raise ValueError("matrix required")
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return 0
    M = M.copy()
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = None
        for r in range(rank, rows):
            if M[r, c] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            M[[piv, rank], :] = M[[rank, piv], :]
        p = M[rank, c]
        if rank + 1 < rows:
            below = M[rank + 1:, c:]
            lead = below[:, :1]
            # exact division by the previous pivot (Sylvester identity)
            M[rank + 1:, c:] = (below * p - lead * M[rank, c:]) // prev
        prev = p
        rank += 1
    return rank


def poly_from_roots(roots: Iterable[tuple[int, int]]) -> list[int]:
    """Expand prod (x - r)^mult as integer coefficients, leading first."""
    poly = [1]
    for r, mult in roots:
        for _ in range(mult):
            new = poly + [0]
            for i, c in enumerate(poly):
                new[i + 1] -= r * c
            poly = new
    return poly


def poly_eval(coeffs: Sequence[int], x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_taylor_shift(coeffs: Sequence[int], s: int) -> list[int]:
    """Coefficients of p(x + s) given those of p(x), leading first."""
    out = list(coeffs)
    n = len(out)
    # repeated synthetic division (Horner's shift)
    for i in range(n - 1):
        for j in range(1, n - i):
            out[j] += s * out[j - 1]
    return [int(c) for c in out]


def trailing_zeros(coeffs: Sequence[int]) -> int:
    k = 0
    for c in reversed(coeffs):
        if c != 0:
            break
        k += 1
    return k
