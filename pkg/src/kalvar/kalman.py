"""Kalman matrices, stratum generators, and membership oracles.

Throughout, L = span(e_1, ..., e_d) and C = (0 | I) is the (n-d) x n matrix
cutting it out.  A stratum (s, d, n) is the set of n x n matrices A having an
A-invariant subspace of dimension >= s inside L.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Union

from . import kernels
from .arith import QQ, Field, PrimeField
from .matrix import (Matrix, PolyMatrix, ScalarMatrix, determinant, exact_rank,
                     inverse, nullspace, rref, symbolic_matrix)
from .polyring import Poly, PolyRing

__all__ = [
    "StratumSpec", "SubspaceWitness", "c_matrix", "kalman_matrix",
    "small_kalman_matrix", "reduced_kalman_matrix", "all_minors",
    "stratum_generators", "degree_census", "is_member", "membership_report",
    "brute_force_member", "find_invariant_subspace", "make_witness",
    "random_matrix", "kalman_kernel_invariance", "minors_vanish", "MembershipError",
]

MAX_SYMBOLIC_MINOR = 9


class MembershipError(RuntimeError):
    """The two rank criteria disagreed (should be impossible)."""


@dataclass(frozen=True)
class StratumSpec:
    s: int
    d: int
    n: int

    def __post_init__(self):
        if not (1 <= self.s <= self.d <= self.n):
            raise ValueError(f"need 1 <= s <= d <= n, got (s,d,n)=({self.s},{self.d},{self.n})")

    @property
    def codimension(self) -> int:
        return self.s * (self.n - self.d)

    def __str__(self):
        return f"K_{{{self.s},{self.d},{self.n}}}"


def _check_d(n: int, d: int):
    if not (1 <= d <= n - 1):
        raise ValueError(f"d must satisfy 1 <= d <= n-1, got d={d}, n={n}")


def _check_square(A: Matrix):
    if A.nrows != A.ncols:
        raise ValueError("A must be square")


def c_matrix(n: int, d: int, like: Matrix) -> Matrix:
    """C = (0 | I), (n-d) x n, in the same matrix kind as ``like``."""
    z = like._zero()
    one = z + 1
    return like._new([[one if j == d + i else z for j in range(n)] for i in range(n - d)])


def _lower_blocks(A: Matrix, d: int) -> List[Matrix]:
    """[C A, C A^2, ..., C A^d]; C A^k is the last n-d rows of A^k."""
    n = A.nrows
    blocks = []
    cur = A.block(d, n, 0, n)
    blocks.append(cur)
    for _ in range(d - 1):
        cur = cur @ A
        blocks.append(cur)
    return blocks


def kalman_matrix(A: Matrix, d: int) -> Matrix:
    """The (d+1)(n-d) x n stack C, CA, ..., CA^d."""
    _check_square(A)
    n = A.nrows
    _check_d(n, d)
    return c_matrix(n, d, A).vstack(*_lower_blocks(A, d))


def small_kalman_matrix(A: Matrix, d: int) -> Matrix:
    """The d(n-d) x d stack [A], [A^2], ..., [A^d] (last n-d rows, first d columns)."""
    _check_square(A)
    n = A.nrows
    _check_d(n, d)
    blocks = [b.block(0, n - d, 0, d) for b in _lower_blocks(A, d)]
    return blocks[0].vstack(*blocks[1:])


def reduced_kalman_matrix(d: int, n: int, A: Optional[Matrix] = None,
                          ring: Optional[PolyRing] = None) -> Matrix:
    """The d(n-d) x d stack A21, A21 A11, ..., A21 A11^(d-1).

    Symbolic in the entries of A11 and A21 unless a concrete ``A`` is given.
    """
    _check_d(n, d)
    if A is None:
        A = symbolic_matrix(ring if ring is not None else PolyRing(n, QQ))
    _check_square(A)
    if A.nrows != n:
        raise ValueError("A has the wrong size")
    A11 = A.block(0, d, 0, d)
    cur = A.block(d, n, 0, d)
    blocks = [cur]
    for _ in range(d - 1):
        cur = cur @ A11
        blocks.append(cur)
    return blocks[0].vstack(*blocks[1:])


# -- minors ---------------------------------------------------------------

def all_minors(M: Matrix, k: int) -> Dict[tuple, object]:
    """Every k x k minor, keyed by (row subset, column subset).

    Laplace expansion along the sparsest row of each submatrix, with
    sub-minors memoized across the whole family.
    """
    if k < 1 or k > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {k} exceeds the {M.nrows}x{M.ncols} matrix")
    if isinstance(M, PolyMatrix) and k > MAX_SYMBOLIC_MINOR:
        raise ValueError(f"symbolic minors capped at {MAX_SYMBOLIC_MINOR}x{MAX_SYMBOLIC_MINOR}")
    rows = M.rows
    zero = M._zero()
    memo: dict = {}

    def det(ri: tuple, ci: tuple):
        if len(ri) == 1:
            return rows[ri[0]][ci[0]]
        key = (ri, ci)
        hit = memo.get(key)
        if hit is not None:
            return hit
        pos = min(range(len(ri)), key=lambda t: sum(1 for c in ci if rows[ri[t]][c]))
        r = ri[pos]
        rest = ri[:pos] + ri[pos + 1:]
        total = zero
        for idx, c in enumerate(ci):
            e = rows[r][c]
            if not e:
                continue
            sub = det(rest, ci[:idx] + ci[idx + 1:])
            if not sub:
                continue
            term = e * sub
            total = total - term if (pos + idx) % 2 else total + term
        memo[key] = total
        return total

    out = {}
    for ri in combinations(range(M.nrows), k):
        for ci in combinations(range(M.ncols), k):
            out[(ri, ci)] = det(ri, ci)
    return out


def _gen_key(f: Poly):
    return f.degree(), tuple(-x for x in f.lm)


def stratum_generators(spec: StratumSpec, source: str = "reduced",
                       ring: Optional[PolyRing] = None) -> List[Poly]:
    """Nonzero minors cutting out K_{s,d,n}.

    ``full``: (n-s+1)-minors of the Kalman matrix; ``small`` / ``reduced``:
    (d-s+1)-minors of the small / reduced Kalman matrix.  Sorted by degree,
    then by leading monomial (lex-greatest first).
    """
    s, d, n = spec.s, spec.d, spec.n
    _check_d(n, d)
    ring = ring if ring is not None else PolyRing(n, QQ)
    A = symbolic_matrix(ring)
    if source == "full":
        M, k = kalman_matrix(A, d), n - s + 1
    elif source == "small":
        M, k = small_kalman_matrix(A, d), d - s + 1
    elif source == "reduced":
        M, k = reduced_kalman_matrix(d, n, ring=ring), d - s + 1
    else:
        raise ValueError(f"unknown source {source!r} (full, small, reduced)")
    gens = [f for f in all_minors(M, k).values() if not f.is_zero()]
    gens.sort(key=_gen_key)
    return gens


def degree_census(polys) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for f in polys:
        out[f.degree()] = out.get(f.degree(), 0) + 1
    return dict(sorted(out.items()))


# -- membership -----------------------------------------------------------

def membership_report(A: ScalarMatrix, spec: StratumSpec) -> dict:
    """Both rank criteria for A in K_{s,d,n}; raises MembershipError if they disagree."""
    _check_square(A)
    if A.nrows != spec.n:
        raise ValueError(f"matrix is {A.nrows}x{A.ncols} but n={spec.n}")
    s, d, n = spec.s, spec.d, spec.n
    if d == n:
        # L is everything: A always has invariant subspaces of every dimension over the closure
        return {"member": True, "kalman_rank": 0, "kalman_bound": n - s,
                "small_rank": 0, "small_bound": d - s}
    rk = exact_rank(kalman_matrix(A, d))
    rs = exact_rank(small_kalman_matrix(A, d))
    full = rk <= n - s
    small = rs <= d - s
    if full != small:
        raise MembershipError(f"rank criteria disagree: kalman rank {rk}, small rank {rs}")
    return {"member": full, "kalman_rank": rk, "kalman_bound": n - s,
            "small_rank": rs, "small_bound": d - s}


def is_member(A: ScalarMatrix, spec: StratumSpec) -> bool:
    """Rank test: the Kalman matrix of A has rank <= n - s."""
    return membership_report(A, spec)["member"]


def find_invariant_subspace(A: ScalarMatrix, spec: StratumSpec, cap: int = 10 ** 6,
                            exact_dim: bool = False):
    """Exhaustive search for an A-invariant subspace of L of dimension >= s over GF(p).

    Returns RREF basis rows (length n) of the first subspace found, smallest
    dimension first, or None.
    """
    if not isinstance(A.field, PrimeField):
        raise ValueError("brute-force search needs a GF(p) matrix")
    _check_square(A)
    s, d, n = spec.s, spec.d, spec.n
    p = A.field.p
    dims = [s] if exact_dim else list(range(s, d + 1))
    total = sum(kernels.gaussian_binomial(d, k, p) for k in dims)
    if total > cap:
        raise ValueError(f"enumeration cap exceeded: {total} subspaces > {cap}")
    ints = A.int_rows()
    for k in dims:
        basis = kernels.find_invariant_subspace(ints, d, k, p)
        if basis is not None:
            f = A.field
            return [[f(x) for x in row] + [f.zero] * (n - d) for row in basis]
    return None


def brute_force_member(A: ScalarMatrix, spec: StratumSpec, cap: int = 10 ** 6) -> bool:
    return find_invariant_subspace(A, spec, cap) is not None


# -- witnesses ------------------------------------------------------------

@dataclass
class SubspaceWitness:
    """A matrix together with an invariant subspace of L certifying membership."""

    spec: StratumSpec
    A: ScalarMatrix
    basis: List[list]  # s RREF rows of length n

    def verify(self) -> bool:
        d, n, s = self.spec.d, self.spec.n, self.spec.s
        if len(self.basis) != s:
            return False
        if any(v[j] for v in self.basis for j in range(d, n)):
            return False
        f = self.A.field
        V = ScalarMatrix._raw([list(v) for v in self.basis], f)
        if exact_rank(V) != s:
            return False
        images = [self.A.apply(v) for v in self.basis]
        return exact_rank(ScalarMatrix._raw([list(v) for v in self.basis] + images, f)) == s

    def to_json(self) -> dict:
        out = self.A.to_json()
        out["spec"] = {"s": self.spec.s, "d": self.spec.d, "n": self.spec.n}
        if isinstance(self.A.field, PrimeField):
            out["basis"] = [[str(x.value) for x in v] for v in self.basis]
        else:
            out["basis"] = [[str(x) for x in v] for v in self.basis]
        return out


def _random_scalar(field: Field, rng: random.Random):
    if isinstance(field, PrimeField):
        return field(rng.randrange(field.p))
    return field(rng.randint(-9, 9))


def random_matrix(n: int, field: Field, rng: random.Random, m: Optional[int] = None) -> ScalarMatrix:
    m = n if m is None else m
    return ScalarMatrix._raw([[_random_scalar(field, rng) for _ in range(m)] for _ in range(n)], field)


def make_witness(spec: StratumSpec, field: Field = QQ,
                 seed: Union[int, random.Random] = 0) -> SubspaceWitness:
    """Random point of K_{s,d,n} with a certified s-dimensional invariant subspace.

    B keeps span(e_1..e_s) invariant; g is a random invertible matrix with
    zero lower-left (n-d) x d block, so g(L) = L.  Returns A = g B g^-1 with
    the subspace g(span(e_1..e_s)).
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    s, d, n = spec.s, spec.d, spec.n
    B = random_matrix(n, field, rng)
    for i in range(s, n):
        for j in range(s):
            B.rows[i][j] = field.zero
    while True:
        g = random_matrix(n, field, rng)
        for i in range(d, n):
            for j in range(d):
                g.rows[i][j] = field.zero
        ginv = inverse(g)
        if ginv is not None:
            break
    A = g @ B @ ginv
    cols = ScalarMatrix._raw([[g.rows[i][j] for i in range(n)] for j in range(s)], field)
    basis, _ = rref(cols)
    return SubspaceWitness(spec, A, basis)


def kalman_kernel_invariance(A: ScalarMatrix, d: int) -> bool:
    """Is the kernel of the Kalman matrix of A mapped into itself by A?"""
    K = kalman_matrix(A, d)
    for v in nullspace(K):
        if any(K.apply(A.apply(v))):
            return False
    return True


def minors_vanish(A: ScalarMatrix, spec: StratumSpec) -> bool:
    """Do all (d-s+1)-minors of the numeric small Kalman matrix vanish?"""
    M = small_kalman_matrix(A, spec.d)
    k = spec.d - spec.s + 1
    for ri in combinations(range(M.nrows), k):
        for ci in combinations(range(M.ncols), k):
            if determinant(M.submatrix(ri, ci)):
                return False
    return True
