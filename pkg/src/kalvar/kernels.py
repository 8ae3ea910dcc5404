"""GF(p) kernel dispatch.

The compiled extension ``kalvar._ckernels`` is used when it imports;
otherwise, or when ``KALVAR_PURE_PYTHON=1`` is set, the pure-Python
implementation in ``kalvar._kernels_py`` is used.  Both expose the same
functions and return identical results.
"""
import os

from . import _kernels_py

_impl = _kernels_py
BACKEND = "python"

if os.environ.get("KALVAR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

rank_mod_p = _impl.rank_mod_p
rref_mod_p = _impl.rref_mod_p
nullspace_mod_p = _impl.nullspace_mod_p
find_invariant_subspace = _impl.find_invariant_subspace
gaussian_binomial = _kernels_py.gaussian_binomial
iter_rref_subspaces = _kernels_py.iter_rref_subspaces

__all__ = [
    "BACKEND", "rank_mod_p", "rref_mod_p", "nullspace_mod_p",
    "find_invariant_subspace", "gaussian_binomial", "iter_rref_subspaces",
]
