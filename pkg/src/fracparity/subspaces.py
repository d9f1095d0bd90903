"""Subspaces of GF(p)^d with canonical echelon bases and lattice operations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from . import linalg


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: np.ndarray  # ambient_dim x k, reduced column echelon, full column rank
    p: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.p == other.p
                and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        if self.dim == 0:
            return True
        joint = np.hstack([other.basis, self.basis])
        return linalg.rank(joint, self.p) == other.dim

    def contains(self, v: np.ndarray) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1) % self.p
        if v.shape[0] != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient dimension")
        if not np.any(v):
            return True
        return linalg.rank(np.hstack([self.basis, v]), self.p) == self.dim


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise DimensionMismatch("incompatible ambient spaces")


def from_columns(cols: np.ndarray, ambient_dim: int, p: int) -> Subspace:
    """Canonical subspace spanned by the given column vectors."""
    cols = np.asarray(cols, dtype=np.int64).reshape(ambient_dim, -1) % p
    R, pivots = linalg.rref(cols.T, p)
    basis = R[:len(pivots), :].T.copy()
    return Subspace(ambient_dim, basis, p)


def zero_subspace(ambient_dim: int, p: int) -> Subspace:
    return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=np.int64), p)


def full_space(ambient_dim: int, p: int) -> Subspace:
    return Subspace(ambient_dim, np.eye(ambient_dim, dtype=np.int64), p)


def sum_spaces(U: Subspace, V: Subspace) -> Subspace:
    _check_ambient(U, V)
    return from_columns(np.hstack([U.basis, V.basis]), U.ambient_dim, U.p)


def intersection(U: Subspace, V: Subspace) -> Subspace:
    _check_ambient(U, V)
    if U.dim == 0 or V.dim == 0:
        return zero_subspace(U.ambient_dim, U.p)
    K = linalg.kernel(np.hstack([U.basis, V.basis]), U.p)
    vecs = linalg.matmul(U.basis, K[:U.dim, :], U.p)
    return from_columns(vecs, U.ambient_dim, U.p)


def preimage(M: np.ndarray, W: Subspace) -> Subspace:
    """{u : M u in W}."""
    M = np.asarray(M, dtype=np.int64) % W.p
    if M.shape[0] != W.ambient_dim:
        raise DimensionMismatch("operator codomain != subspace ambient")
    K = linalg.kernel(np.hstack([M, W.basis]), W.p)
    return from_columns(K[:M.shape[1], :], M.shape[1], W.p)


def apply_space(operators, U: Subspace) -> Subspace:
    """span{G u : G in operators, u in U}, in the operators' codomain."""
    if not operators:
        raise DimensionMismatch("empty operator list")
    codomain = np.asarray(operators[0]).shape[0]
    if U.dim == 0:
        return zero_subspace(codomain, U.p)
    images = [linalg.matmul(np.asarray(G, dtype=np.int64) % U.p, U.basis, U.p)
              for G in operators]
    return from_columns(np.hstack(images), codomain, U.p)


def complement(U: Subspace) -> Subspace:
    """Coordinate complement: standard vectors off U's echelon pivot rows."""
    pivot_rows = set()
    for j in range(U.dim):
        pivot_rows.add(int(np.nonzero(U.basis[:, j])[0][0]))
    free = [i for i in range(U.ambient_dim) if i not in pivot_rows]
    basis = np.eye(U.ambient_dim, dtype=np.int64)[:, free]
    return Subspace(U.ambient_dim, basis, U.p)


def orthogonal_complement(U: Subspace) -> Subspace:
    """Annihilator {x : u . x = 0 for all u in U} via the standard form."""
    if U.dim == 0:
        return full_space(U.ambient_dim, U.p)
    return from_columns(linalg.kernel(U.basis.T.copy(), U.p),
                        U.ambient_dim, U.p)


def image(M: np.ndarray, p: int) -> Subspace:
    M = np.asarray(M, dtype=np.int64)
    return from_columns(M % p, M.shape[0], p)


def kernel_space(M: np.ndarray, p: int) -> Subspace:
    M = np.asarray(M, dtype=np.int64)
    return from_columns(linalg.kernel(M, p), M.shape[1], p)
