"""Hot mod-p kernels: blocked row reduction and monomial-matrix assembly.

Interpolating a degree-6 relation in 10 variables means reducing a
~5500 x 5005 matrix per prime, which dominates the runtime of the whole
pipeline.  Both kernels therefore exist twice: a numba-jitted int64 version
(default) and a pure-numpy float64 version.  Set TRIAREA_PURE_NUMPY=1 to
force the numpy path.  Both paths run the same blocked algorithm and produce
identical results.

Primes must satisfy p < 2**23 so that a block of BLOCK products accumulates
exactly: BLOCK * (p-1)**2 < 2**52 keeps float64 arithmetic exact, with room
to spare in int64.
"""

import os

import numpy as np

BLOCK = 64
MAX_PRIME_BITS = 23  # BLOCK * (2**23)**2 = 2**52, exact in float64

_FORCE_NUMPY = os.environ.get("TRIAREA_PURE_NUMPY", "") not in ("", "0")

if not _FORCE_NUMPY:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _FORCE_NUMPY = True


def using_numba():
    """True when the jitted kernels are active."""
    return not _FORCE_NUMPY


def modinv(a, p):
    return pow(int(a) % p, p - 2, p)


# ---------------------------------------------------------------------------
# pure-numpy path (float64, delayed reduction)


def _reduce_f64(x, p, pinv):
    # x mod p in place, for float64 arrays of exact integers, |x| < 2**52
    q = np.floor(x * pinv)
    x -= q * p
    np.subtract(x, p, out=x, where=(x >= p))
    np.add(x, p, out=x, where=(x < 0))
    return x


def _echelon_numpy(A, p):
    """Blocked forward elimination over F_p; A is float64, modified in place.

    Returns the list of pivot columns.  Rows are left unnormalized.
    """
    m, n = A.shape
    pinv = 1.0 / p
    r = 0
    c0 = 0
    pivcols = []
    while c0 < n and r < m:
        b = min(BLOCK, n - c0)
        c1 = c0 + b
        L = np.zeros((m - r, b))
        k = 0
        for c in range(c0, c1):
            rr = r + k
            if rr >= m:
                break
            col = A[rr:m, c]
            _reduce_f64(col, p, pinv)
            nz = np.flatnonzero(col)
            if nz.size == 0:
                continue
            kk = rr + int(nz[0])
            if kk != rr:
                A[[rr, kk], c0:] = A[[kk, rr], c0:]
                L[[rr - r, kk - r], :] = L[[kk - r, rr - r], :]
            _reduce_f64(A[rr, c0:c1], p, pinv)
            inv = float(modinv(A[rr, c], p))
            fcol = A[rr + 1:m, c] * inv
            _reduce_f64(fcol, p, pinv)
            L[rr + 1 - r:, k] = fcol
            if fcol.size and c + 1 < c1:
                A[rr + 1:m, c + 1:c1] -= np.outer(fcol, A[rr, c + 1:c1])
            A[rr + 1:m, c] = 0.0
            pivcols.append(c)
            k += 1
        if c1 < n:
            for t in range(1, k):
                lt = L[t, :t]
                if np.any(lt):
                    A[r + t, c1:] -= lt @ A[r:r + t, c1:]
                    _reduce_f64(A[r + t, c1:], p, pinv)
            if k and r + k < m:
                A[r + k:m, c1:] -= L[k:, :k] @ A[r:r + k, c1:]
                _reduce_f64(A[r + k:m, c1:], p, pinv)
        r += k
        c0 = c1
    return pivcols


def _monomial_matrix_numpy(values, exps, p):
    m, nvars = values.shape
    nmono, _ = exps.shape
    maxdeg = int(exps.max()) if nmono else 0
    # power table: pow[v, e, i] = values[i, v]**e mod p
    powtab = np.empty((nvars, maxdeg + 1, m), dtype=np.int64)
    powtab[:, 0, :] = 1
    for v in range(nvars):
        for e in range(1, maxdeg + 1):
            powtab[v, e] = powtab[v, e - 1] * values[:, v] % p
    out = np.empty((m, nmono), dtype=np.int64)
    for j in range(nmono):
        acc = np.ones(m, dtype=np.int64)
        for v in range(nvars):
            e = int(exps[j, v])
            if e:
                acc = acc * powtab[v, e] % p
        out[:, j] = acc
    return out


# ---------------------------------------------------------------------------
# numba path (int64, same blocking)

if not _FORCE_NUMPY:

    @njit(cache=True)
    def _modinv_i64(a, p):
        r = np.int64(1)
        b = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                r = (r * b) % p
            b = (b * b) % p
            e >>= 1
        return r

    @njit(cache=True)
    def _echelon_numba(A, p):
        m, n = A.shape
        piv = np.empty(n, np.int64)
        npiv = 0
        r = 0
        c0 = 0
        while c0 < n and r < m:
            b = min(BLOCK, n - c0)
            c1 = c0 + b
            L = np.zeros((m - r, b), np.int64)
            k = 0
            for c in range(c0, c1):
                rr = r + k
                if rr >= m:
                    break
                kk = -1
                for i in range(rr, m):
                    A[i, c] %= p
                    if A[i, c] != 0 and kk < 0:
                        kk = i
                # finish reducing the column even after a pivot is found
                if kk < 0:
                    continue
                if kk != rr:
                    for j in range(c0, n):
                        tmp = A[rr, j]
                        A[rr, j] = A[kk, j]
                        A[kk, j] = tmp
                    for j in range(b):
                        tmp = L[rr - r, j]
                        L[rr - r, j] = L[kk - r, j]
                        L[kk - r, j] = tmp
                for j in range(c0, c1):
                    A[rr, j] %= p
                inv = _modinv_i64(A[rr, c], p)
                for i in range(rr + 1, m):
                    f = (A[i, c] * inv) % p
                    L[i - r, k] = f
                    if f != 0:
                        for j in range(c + 1, c1):
                            A[i, j] -= f * A[rr, j]
                    A[i, c] = 0
                piv[npiv] = c
                npiv += 1
                k += 1
            if c1 < n:
                for t in range(1, k):
                    for u in range(t):
                        f = L[t, u]
                        if f != 0:
                            for j in range(c1, n):
                                A[r + t, j] -= f * A[r + u, j]
                    for j in range(c1, n):
                        A[r + t, j] %= p
                if k > 0:
                    for i in range(r + k, m):
                        for u in range(k):
                            f = L[i - r, u]
                            if f != 0:
                                for j in range(c1, n):
                                    A[i, j] -= f * A[r + u, j]
                        for j in range(c1, n):
                            A[i, j] %= p
            r += k
            c0 = c1
        return piv[:npiv]

    @njit(cache=True)
    def _monomial_matrix_numba(values, exps, p):
        m, nvars = values.shape
        nmono = exps.shape[0]
        maxdeg = 0
        for j in range(nmono):
            for v in range(nvars):
                if exps[j, v] > maxdeg:
                    maxdeg = exps[j, v]
        powtab = np.empty((m, nvars, maxdeg + 1), np.int64)
        for i in range(m):
            for v in range(nvars):
                powtab[i, v, 0] = 1
                for e in range(1, maxdeg + 1):
                    powtab[i, v, e] = (powtab[i, v, e - 1] * values[i, v]) % p
        out = np.empty((m, nmono), np.int64)
        for i in range(m):
            for j in range(nmono):
                acc = np.int64(1)
                for v in range(nvars):
                    e = exps[j, v]
                    if e:
                        acc = (acc * powtab[i, v, e]) % p
                out[i, j] = acc
        return out


# ---------------------------------------------------------------------------
# public entry points


def row_echelon_mod_p(matrix, p):
    """Reduce an int64 matrix to (unnormalized) row echelon form mod p.

    Returns (echelon, pivcols) where echelon is a fresh int64 array.
    """
    if p <= 2 or p >= 1 << MAX_PRIME_BITS:
        raise ValueError(f"modulus must be an odd prime below 2**{MAX_PRIME_BITS}")
    A = np.asarray(matrix, dtype=np.int64) % p
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError("matrix must be 2-dimensional and nonempty")
    if _FORCE_NUMPY:
        F = A.astype(np.float64)
        pivcols = _echelon_numpy(F, p)
        E = F.astype(np.int64)
    else:
        E = A.copy()
        pivcols = [int(c) for c in _echelon_numba(E, np.int64(p))]
        E %= p
    return E, list(pivcols)


def nullspace_from_echelon(E, pivcols, p):
    """Back-substitute a row echelon form into a right-nullspace basis.

    Returns an int64 array of shape (n - rank, n); rows are basis vectors
    with entries in [0, p).
    """
    n = E.shape[1]
    rank = len(pivcols)
    pivset = set(pivcols)
    free = [c for c in range(n) if c not in pivset]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for idx, fc in enumerate(free):
        v = basis[idx]
        v[fc] = 1
        for t in range(rank - 1, -1, -1):
            c = pivcols[t]
            # sum over columns right of c; length <= n so the int64 dot is exact
            s = int(E[t, c + 1:] @ v[c + 1:]) % p
            if s:
                v[c] = (-s * modinv(E[t, c], p)) % p
    return basis


def nullspace_mod_p(matrix, p):
    """Basis of the right-nullspace of `matrix` over F_p (rows = vectors)."""
    E, pivcols = row_echelon_mod_p(matrix, p)
    return nullspace_from_echelon(E, pivcols, p)


def monomial_matrix(values, exps, p):
    """Evaluate monomials at sample points mod p.

    values: (m, nvars) int64 sample coordinates in [0, p)
    exps:   (nmono, nvars) int64 exponent rows
    Returns (m, nmono) int64 matrix M with M[i, j] = prod_v values[i,v]**exps[j,v].
    """
    values = np.ascontiguousarray(values, dtype=np.int64)
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    if _FORCE_NUMPY:
        return _monomial_matrix_numpy(values, exps, p)
    return _monomial_matrix_numba(values, exps, np.int64(p))
