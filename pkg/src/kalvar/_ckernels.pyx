# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) kernels; same signatures as kalvar._kernels_py."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from ._kernels_py import gaussian_binomial, iter_rref_subspaces  # noqa: F401


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int64_t* _load(rows, Py_ssize_t nrows, Py_ssize_t ncols, int64_t p) except NULL:
    cdef int64_t* m = <int64_t*> malloc(max(nrows * ncols, 1) * sizeof(int64_t))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(nrows):
        row = rows[i]
        for j in range(ncols):
            m[i * ncols + j] = (<int64_t> row[j]) % p
    return m


cdef Py_ssize_t _rref(int64_t* m, Py_ssize_t nrows, Py_ssize_t ncols, int64_t p,
                      Py_ssize_t* pivots, bint full) nogil:
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i * ncols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r * ncols + j]
                m[r * ncols + j] = m[piv * ncols + j]
                m[piv * ncols + j] = tmp
        inv = _inv(m[r * ncols + c], p)
        if full:
            for j in range(c, ncols):
                m[r * ncols + j] = m[r * ncols + j] * inv % p
            inv = 1
        for i in range(0 if full else r + 1, nrows):
            if i == r:
                continue
            f = m[i * ncols + c]
            if f != 0:
                f = f * inv % p
                for j in range(c, ncols):
                    m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                    if m[i * ncols + j] < 0:
                        m[i * ncols + j] += p
        pivots[r] = c
        r += 1
    return r


def rank_mod_p(rows, Py_ssize_t ncols, int64_t p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef int64_t* m = _load(rows, nrows, ncols, p)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t r
    try:
        r = _rref(m, nrows, ncols, p, piv, False)
    finally:
        free(m)
        free(piv)
    return r


def rref_mod_p(rows, Py_ssize_t ncols, int64_t p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef int64_t* m = _load(rows, nrows, ncols, p)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t r, i, j
    try:
        r = _rref(m, nrows, ncols, p, piv, True)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
        pivots = [piv[i] for i in range(r)]
    finally:
        free(m)
        free(piv)
    return out, pivots


def nullspace_mod_p(rows, Py_ssize_t ncols, int64_t p):
    red, pivots = rref_mod_p(rows, ncols, p)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][f]) % p
        basis.append(v)
    return basis


cdef bint _invariant(int64_t* A, Py_ssize_t n, Py_ssize_t d, Py_ssize_t s,
                     int64_t* basis, Py_ssize_t* pivots, int64_t p,
                     int64_t* w) nogil:
    cdef Py_ssize_t r, i, j, rr
    cdef int64_t acc, f
    for r in range(s):
        for i in range(n):
            acc = 0
            for j in range(d):
                acc = (acc + A[i * n + j] * basis[r * d + j]) % p
            w[i] = acc
        for i in range(d, n):
            if w[i] != 0:
                return False
        for rr in range(s):
            f = w[pivots[rr]]
            if f != 0:
                for j in range(d):
                    w[j] = (w[j] - f * basis[rr * d + j]) % p
                    if w[j] < 0:
                        w[j] += p
        for j in range(d):
            if w[j] != 0:
                return False
    return True


def find_invariant_subspace(A, Py_ssize_t d, Py_ssize_t s, int64_t p):
    """First s-dim A-invariant subspace of span(e_1..e_d) over GF(p), as RREF rows, or None.

    Enumeration order matches the pure-Python kernel: pivot patterns lex,
    then free entries odometer-style with the last slot fastest.
    """
    cdef Py_ssize_t n = len(A)
    if s == 0:
        return []
    cdef int64_t* Am = _load(A, n, n, p)
    cdef int64_t* basis = <int64_t*> malloc(s * d * sizeof(int64_t))
    cdef int64_t* w = <int64_t*> malloc(n * sizeof(int64_t))
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(s * sizeof(Py_ssize_t))
    cdef Py_ssize_t* slot_r = <Py_ssize_t*> malloc(s * d * sizeof(Py_ssize_t))
    cdef Py_ssize_t* slot_c = <Py_ssize_t*> malloc(s * d * sizeof(Py_ssize_t))
    cdef Py_ssize_t nslots, k, r, c, i
    cdef bint found = False, done
    from itertools import combinations
    try:
        for pivots in combinations(range(d), s):
            pivset = set(pivots)
            nslots = 0
            for r in range(s):
                piv[r] = pivots[r]
                for c in range(pivots[r] + 1, d):
                    if c not in pivset:
                        slot_r[nslots] = r
                        slot_c[nslots] = c
                        nslots += 1
            for i in range(s * d):
                basis[i] = 0
            for r in range(s):
                basis[r * d + piv[r]] = 1
            with nogil:
                while True:
                    if _invariant(Am, n, d, s, basis, piv, p, w):
                        found = True
                        break
                    # odometer step, last slot fastest
                    done = True
                    k = nslots - 1
                    while k >= 0:
                        i = slot_r[k] * d + slot_c[k]
                        basis[i] += 1
                        if basis[i] < p:
                            done = False
                            break
                        basis[i] = 0
                        k -= 1
                    if done:
                        break
            if found:
                return [[basis[r * d + c] for c in range(d)] for r in range(s)]
        return None
    finally:
        free(Am)
        free(basis)
        free(w)
        free(piv)
        free(slot_r)
        free(slot_c)
