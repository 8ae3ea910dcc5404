import itertools

import pytest
from hypothesis import given, strategies as st
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from kalvar import _kernels_py as py
from kalvar import kernels

try:
    from kalvar import _ckernels as cy
except ImportError:  # pragma: no cover - depends on the build
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

PRIMES = st.sampled_from([2, 3, 5, 101])


@st.composite
def matrices(draw, max_rows=8, max_cols=8):
    p = draw(PRIMES)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return rows, c, p


def _sympy_rank(rows, p):
    return DomainMatrix([[SymGF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), SymGF(p)).rank()


@given(matrices())
def test_rank_matches_sympy(m):
    rows, c, p = m
    assert py.rank_mod_p(rows, c, p) == _sympy_rank(rows, p)


@given(matrices())
def test_rref_and_nullspace(m):
    rows, c, p = m
    red, piv = py.rref_mod_p(rows, c, p)
    assert len(red) == py.rank_mod_p(rows, c, p)
    for k, col in enumerate(piv):
        assert [r[col] for r in red] == [1 if i == k else 0 for i in range(len(red))]
    ns = py.nullspace_mod_p(rows, c, p)
    assert len(ns) == c - len(red)
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)


@needs_cython
@given(matrices())
def test_cython_matches_python(m):
    rows, c, p = m
    assert cy.rank_mod_p(rows, c, p) == py.rank_mod_p(rows, c, p)
    assert cy.rref_mod_p(rows, c, p) == py.rref_mod_p(rows, c, p)
    assert cy.nullspace_mod_p(rows, c, p) == py.nullspace_mod_p(rows, c, p)


@needs_cython
@given(st.integers(1, 4), st.sampled_from([2, 3]), st.data())
def test_cython_subspace_search_matches(d, p, data):
    s = data.draw(st.integers(1, d))
    A = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), min_size=d, max_size=d))
    assert cy.find_invariant_subspace(A, d, s, p) == py.find_invariant_subspace(A, d, s, p)


@pytest.mark.parametrize("d,s,p", [(3, 1, 2), (3, 2, 3), (4, 2, 2), (4, 2, 3), (2, 2, 5)])
def test_rref_enumeration_counts(d, s, p):
    subs = list(py.iter_rref_subspaces(d, s, p))
    assert len(subs) == py.gaussian_binomial(d, s, p)
    # canonical representatives are pairwise distinct subspaces
    assert len({tuple(map(tuple, b)) for b, _ in subs}) == len(subs)


def test_gaussian_binomial_values():
    assert py.gaussian_binomial(4, 2, 2) == 35
    assert py.gaussian_binomial(3, 1, 3) == 13
    assert py.gaussian_binomial(5, 0, 7) == 1


def test_subspace_search_against_exhaustive_vectors():
    # s = 1: an invariant line is an eigenvector; check against all vectors of GF(3)^3
    p, d = 3, 3
    for A in itertools.islice(itertools.product(range(p), repeat=d * d), 0, 3000, 7):
        M = [list(A[i * d:(i + 1) * d]) for i in range(d)]
        has_eig = False
        for v in itertools.product(range(p), repeat=d):
            if not any(v):
                continue
            Av = [sum(M[i][j] * v[j] for j in range(d)) % p for i in range(d)]
            if any(all(Av[i] == lam * v[i] % p for i in range(d)) for lam in range(p)):
                has_eig = True
                break
        assert (py.find_invariant_subspace(M, d, 1, p) is not None) == has_eig


def test_backend_selected():
    import os
    forced = os.environ.get("KALVAR_PURE_PYTHON", "") in ("1", "true", "yes")
    expected = "cython" if cy is not None and not forced else "python"
    assert kernels.BACKEND == expected


def test_pure_python_fallback_in_subprocess():
    import os
    import subprocess
    import sys
    env = dict(os.environ, KALVAR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from kalvar import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
