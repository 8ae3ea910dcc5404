"""Pure-Python GF(p) kernels (reference implementation and fallback).

Matrices are lists of rows of ints already reduced into [0, p).
"""
from itertools import combinations, product


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            row = [x * inv % p for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    m[i] = [(x - f * y) % p for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod_p(rows, ncols, p):
    m = [list(r) for r in rows]
    rank = 0
    nrows = len(m)
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        row = m[rank]
        inv = pow(row[c], p - 2, p)
        for i in range(rank + 1, nrows):
            f = m[i][c]
            if f:
                f = f * inv % p
                other = m[i]
                m[i] = [(x - f * y) % p for x, y in zip(other, row)]
        rank += 1
        if rank == nrows:
            break
    return rank


def nullspace_mod_p(rows, ncols, p):
    """Basis of {x : M x = 0}, one vector per free column."""
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


def gaussian_binomial(d, s, q):
    """Number of s-dimensional subspaces of GF(q)^d."""
    if s < 0 or s > d:
        return 0
    num = den = 1
    for i in range(s):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_rref_subspaces(d, s, p):
    """All s x d RREF matrices over GF(p): pivot patterns in lex order, free entries odometer-style."""
    for pivots in combinations(range(d), s):
        pivset = set(pivots)
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivset]
        for values in product(range(p), repeat=len(slots)):
            basis = [[0] * d for _ in range(s)]
            for r, pc in enumerate(pivots):
                basis[r][pc] = 1
            for (r, c), v in zip(slots, values):
                basis[r][c] = v
            yield basis, pivots


def is_invariant_rref(A, basis, pivots, d, p):
    """Does A map the row span of ``basis`` (vectors supported on the first d coordinates) into itself?"""
    n = len(A)
    for v in basis:
        w = [0] * n
        for i in range(n):
            row = A[i]
            acc = 0
            for j in range(d):
                if v[j]:
                    acc += row[j] * v[j]
            w[i] = acc % p
        for i in range(d, n):
            if w[i]:
                return False
        # reduce the L-part against the RREF basis
        res = w[:d]
        for r, c in enumerate(pivots):
            f = res[c]
            if f:
                b = basis[r]
                res = [(x - f * y) % p for x, y in zip(res, b)]
        if any(res):
            return False
    return True


def find_invariant_subspace(A, d, s, p):
    """First s-dim A-invariant subspace of span(e_1..e_d) over GF(p), as RREF rows, or None."""
    for basis, pivots in iter_rref_subspaces(d, s, p):
        if is_invariant_rref(A, basis, pivots, d, p):
            return basis
    return None
