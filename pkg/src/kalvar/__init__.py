"""Kalman varieties of matrices with invariant subspaces in a coordinate subspace."""
