"""Exact dense linear algebra over GF(p).

Matrices are numpy int64 arrays with entries reduced to [0, p).  All
routines are classical O(n^3) elimination; products split the right
factor into 16-bit limbs so that int64 accumulation never overflows
(valid while the inner dimension stays below 2^15).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotSkewSymmetric, Singular

_LIMB = 1 << 16
_MASK = _LIMB - 1


def as_fmatrix(M, p: int) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    return A % p


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise DimensionMismatch(f"matmul {A.shape} x {B.shape}")
    if A.shape[-1] >= (1 << 15):
        raise DimensionMismatch("inner dimension too large for limb split")
    lo = B & _MASK
    hi = B >> 16
    return (A @ lo + (A @ hi) % p * _LIMB) % p


def matvec(A: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    return matmul(A, v.reshape(-1, 1), p).ravel()


def dot(u: np.ndarray, v: np.ndarray, p: int) -> int:
    return int(matmul(u.reshape(1, -1), v.reshape(-1, 1), p)[0, 0])


def _eliminate(M: np.ndarray, p: int, reduced: bool,
               stop_col: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Row echelon form in place on a copy; returns (form, pivot columns).

    Pivots are only sought in columns below stop_col (all by default);
    later columns still receive the row operations.
    """
    A = M.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols if stop_col is None else stop_col):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        if reduced:
            others = np.nonzero(A[:, c])[0]
            others = others[others != r]
        else:
            others = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    return _eliminate(as_fmatrix(M, p), p, reduced=True)


def rank(M: np.ndarray, p: int) -> int:
    A = as_fmatrix(M, p)
    if 0 in A.shape:
        return 0
    return len(_eliminate(A, p, reduced=False)[1])


def inverse(M: np.ndarray, p: int) -> np.ndarray:
    A = as_fmatrix(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("inverse needs a square matrix")
    aug = np.hstack([A, np.eye(n, dtype=np.int64)])
    R, pivots = _eliminate(aug, p, reduced=True)
    if pivots != list(range(n)):
        raise Singular("matrix is singular")
    return R[:, n:]


def kernel(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space, columns, in echelon-derived form."""
    A = as_fmatrix(M, p)
    rows, cols = A.shape
    R, pivots = _eliminate(A, p, reduced=True)
    free = [c for c in range(cols) if c not in pivots]
    K = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for r, c in enumerate(pivots):
            K[c, j] = -R[r, f] % p
    return K


def det(M: np.ndarray, p: int) -> int:
    A = as_fmatrix(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("det needs a square matrix")
    sign = 1
    acc = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            sign = -sign
        piv = int(A[c, c])
        acc = acc * piv % p
        below = c + 1 + np.nonzero(A[c + 1:, c])[0]
        if below.size:
            fac = A[below, c] * pow(piv, -1, p) % p
            A[below] = (A[below] - np.outer(fac, A[c])) % p
    return acc * sign % p


def pseudoinverse(M: np.ndarray, p: int) -> np.ndarray:
    """Nonsingular G.F with F.M.G = diag(I_r, 0); satisfies M.X.M = M."""
    A = as_fmatrix(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("pseudoinverse needs a square matrix")
    aug = np.hstack([A, np.eye(n, dtype=np.int64)])
    R, pivots = _eliminate(aug, p, reduced=True, stop_col=n)
    F = R[:, n:]
    Rm = R[:, :n]
    r = len(pivots)
    perm = pivots + [c for c in range(n) if c not in pivots]
    G1 = np.eye(n, dtype=np.int64)[:, perm]
    # after the column permutation the top rows read [I_r | X]; clear X
    X = Rm[:, perm][:r, r:]
    G2 = np.eye(n, dtype=np.int64)
    G2[:r, r:] = -X % p
    G = matmul(G1, G2, p)
    return matmul(G, F, p)


def kronecker(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return np.kron(as_fmatrix(A, p), as_fmatrix(B, p)) % p


def check_skew(M: np.ndarray, p: int) -> None:
    A = as_fmatrix(M, p)
    if A.shape[0] != A.shape[1] or not np.array_equal(A.T, -A % p) \
            or np.any(A.diagonal()):
        raise NotSkewSymmetric("matrix is not skew-symmetric")


def pfaffian(M: np.ndarray, p: int) -> int:
    """Pfaffian by skew elimination (Parlett-Reid); 0 for odd order."""
    check_skew(M, p)
    A = as_fmatrix(M, p)
    n = A.shape[0]
    if n % 2 == 1:
        return 0
    sign = 1
    acc = 1
    for k in range(0, n, 2):
        nz = np.nonzero(A[k, k + 1:])[0]
        if nz.size == 0:
            return 0
        j = k + 1 + int(nz[0])
        if j != k + 1:
            A[[k + 1, j]] = A[[j, k + 1]]
            A[:, [k + 1, j]] = A[:, [j, k + 1]]
            sign = -sign
        piv = int(A[k, k + 1])
        acc = acc * piv % p
        if k + 2 < n:
            u = A[k + 2:, k]
            v = A[k + 2:, k + 1]
            upd = (np.outer(v, u) - np.outer(u, v)) % p * pow(piv, -1, p) % p
            A[k + 2:, k + 2:] = (A[k + 2:, k + 2:] + upd) % p
    return acc * sign % p


def schur_inverse(Q1: np.ndarray, Q2: np.ndarray, T: np.ndarray, p: int) -> np.ndarray:
    """Inverse of [[0, Q1], [Q2, T]] assembled from the Schur complement."""
    Tinv = inverse(T, p)
    M = -matmul(matmul(Q1, Tinv, p), Q2, p) % p
    Minv = inverse(M, p)
    n = Q1.shape[0]
    t = T.shape[0]
    top_left = Minv
    top_right = -matmul(matmul(Minv, Q1, p), Tinv, p) % p
    bot_left = -matmul(matmul(Tinv, Q2, p), Minv, p) % p
    bot_right = (Tinv + matmul(matmul(matmul(Tinv, Q2, p), Minv, p),
                               matmul(Q1, Tinv, p), p)) % p
    out = np.zeros((n + t, n + t), dtype=np.int64)
    out[:n, :n] = top_left
    out[:n, n:] = top_right
    out[n:, :n] = bot_left
    out[n:, n:] = bot_right
    return out


def low_rank_update_inverse(m_ss, m_ss1, m_s1s, m_s1s1, d_ss, p: int) -> np.ndarray:
    """(Z')^{-1}[S'] from blocks of Z^{-1}, where Z' = Z + D on S x S."""
    s = d_ss.shape[0]
    K = (np.eye(s, dtype=np.int64) + matmul(d_ss, m_ss, p)) % p
    Kinv = inverse(K, p)  # Singular signals Z' singular
    corr = matmul(matmul(matmul(m_s1s, Kinv, p), d_ss, p), m_ss1, p)
    return (m_s1s1 - corr) % p


def update_is_nonsingular(m_ss, d_ss, p: int) -> bool:
    """Whether Z' = Z + D stays nonsingular, via I + D[S] M[S]."""
    s = d_ss.shape[0]
    K = (np.eye(s, dtype=np.int64) + matmul(d_ss, m_ss, p)) % p
    return rank(K, p) == s


@dataclass
class RankFactorization:
    """M = left . right with maintained one-sided inverses.

    left_inv . left = I_r and right . right_inv = I_r; both are what the
    rank-one update needs to stay O(n r) per step.
    """

    left: np.ndarray
    right: np.ndarray
    left_inv: np.ndarray
    right_inv: np.ndarray
    p: int

    @property
    def rank(self) -> int:
        return self.left.shape[1]

    def matrix(self) -> np.ndarray:
        return matmul(self.left, self.right, self.p)


def rank_factorization(M: np.ndarray, p: int) -> RankFactorization:
    A = as_fmatrix(M, p)
    rows, cols = A.shape
    R, pivots = rref(A, p)
    r = len(pivots)
    L = A[:, pivots].reshape(rows, r)
    Rr = R[:r, :].reshape(r, cols)
    # left inverse: invert an independent row subset of L
    if r:
        _, row_piv = _eliminate(L.T.copy(), p, reduced=False)
    else:
        row_piv = []
    pl = np.zeros((r, rows), dtype=np.int64)
    if r:
        pl[:, row_piv] = inverse(L[row_piv, :], p)
    # right inverse: unit vectors at the pivot columns of the RREF
    pr = np.zeros((cols, r), dtype=np.int64)
    for i, c in enumerate(pivots):
        pr[c, i] = 1
    return RankFactorization(L, Rr, pl, pr, p)


def _rank_one_update(F: RankFactorization, u: np.ndarray, v: np.ndarray) -> RankFactorization:
    p = F.p
    L, R, pl, pr = F.left, F.right, F.left_inv, F.right_inv
    rows, r = L.shape
    cols = R.shape[1]
    u = u % p
    v = v % p
    c = matvec(pl, u, p)
    w = (u - matvec(L, c, p)) % p
    d = matvec(pr.T, v, p)
    z = (v - matvec(R.T, d, p)) % p
    w_nz = np.any(w)
    z_nz = np.any(z)
    if w_nz and z_nz:
        # rank grows by one
        j = int(np.nonzero(w)[0][0])
        q = (np.eye(rows, dtype=np.int64)[j] - matvec(pl.T, L[j], p)) \
            * pow(int(w[j]), -1, p) % p
        k = int(np.nonzero(z)[0][0])
        t = (np.eye(cols, dtype=np.int64)[k] - matvec(pr, R[:, k], p)) \
            * pow(int(z[k]), -1, p) % p
        L2 = np.hstack([L, w.reshape(-1, 1)])
        R2 = np.vstack([(R + np.outer(c, v)) % p, v.reshape(1, -1)])
        pl2 = np.vstack([pl, q.reshape(1, -1)])
        last = (-matvec(pr, c, p) + (1 + dot(d, c, p)) * t) % p
        pr2 = np.hstack([(pr - np.outer(t, d)) % p, last.reshape(-1, 1)])
        return RankFactorization(L2, R2, pl2, pr2, p)
    if not w_nz and z_nz:
        k = int(np.nonzero(z)[0][0])
        t = (np.eye(cols, dtype=np.int64)[k] - matvec(pr, R[:, k], p)) \
            * pow(int(z[k]), -1, p) % p
        R2 = (R + np.outer(c, v)) % p
        pr2 = (pr - np.outer(t, d)) % p
        return RankFactorization(L, R2, pl, pr2, p)
    if w_nz and not z_nz:
        j = int(np.nonzero(w)[0][0])
        q = (np.eye(rows, dtype=np.int64)[j] - matvec(pl.T, L[j], p)) \
            * pow(int(w[j]), -1, p) % p
        L2 = (L + np.outer(u, d)) % p
        pl2 = (pl - np.outer(c, q)) % p
        return RankFactorization(L2, R, pl2, pr, p)
    # u and v both inside the current column/row spaces
    s = (1 + dot(d, c, p)) % p
    if s != 0:
        R2 = (R + np.outer(c, v)) % p
        prc = matvec(pr, c, p)
        pr2 = (pr - np.outer(prc, d) % p * pow(s, -1, p)) % p
        return RankFactorization(L, R2, pl, pr2, p)
    # rank drops by one: I + c d^T is singular, compress along coordinate j
    j = int(np.nonzero(d)[0][0])
    dj_inv = pow(int(d[j]), -1, p)
    keep = np.arange(r) != j
    dk = d[keep] * dj_inv % p
    L2 = (L[:, keep] - np.outer(L[:, j], dk)) % p
    dR = matvec(R.T, d, p)
    dpl = matvec(pl.T, d, p)
    R2 = (R[keep, :] + np.outer(c[keep], dR)) % p
    pl2 = (pl[keep, :] + np.outer(c[keep], dpl)) % p
    pr2 = (pr[:, keep] - np.outer(matvec(pr, np.eye(r, dtype=np.int64)[j], p), dk)) % p
    return RankFactorization(L2, R2, pl2, pr2, p)


def rank2_update_factorization(F: RankFactorization, u1, v1, u2, v2) -> RankFactorization:
    """Factorization of M + u1 v1^T + u2 v2^T in O(n r) operations."""
    return _rank_one_update(_rank_one_update(F, np.asarray(u1, dtype=np.int64),
                                             np.asarray(v1, dtype=np.int64)),
                            np.asarray(u2, dtype=np.int64),
                            np.asarray(v2, dtype=np.int64))


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of same-shape matrices, eliminated in lockstep."""
    A = np.asarray(mats, dtype=np.int64) % p
    b, rows, cols = A.shape
    if b == 0 or rows == 0 or cols == 0:
        return np.zeros(b, dtype=np.int64)
    r = np.zeros(b, dtype=np.int64)
    rowidx = np.arange(rows)
    for c in range(cols):
        eligible = (A[:, :, c] != 0) & (rowidx[None, :] >= r[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        piv = np.argmax(eligible[idx], axis=1)
        rh = r[idx]
        tmp = A[idx, rh].copy()
        A[idx, rh] = A[idx, piv]
        A[idx, piv] = tmp
        pivvals = A[idx, rh, c]
        invs = np.array([pow(int(x), -1, p) for x in pivvals], dtype=np.int64)
        sub = A[idx]
        fac = sub[:, :, c] * invs[:, None] % p
        fac[rowidx[None, :] <= rh[:, None]] = 0
        sub = (sub - fac[:, :, None] * sub[np.arange(idx.size), rh][:, None, :] % p) % p
        A[idx] = sub
        r[idx] = rh + 1
    return r
