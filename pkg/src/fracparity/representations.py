"""Evaluated matrix representations of a line set.

Everything here substitutes seeded field samples for indeterminates; no
symbolic algebra.  An Evaluation pins all samples for one solver run so
that nested rank queries and low-rank updates are mutually consistent.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, ParseError
from .field import FieldSampler, derive_seed
from .instance import HalfVector, LineSet

DELTA = np.array([[0, 1], [-1, 0]], dtype=np.int64)


def wedge(a, b, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64).reshape(-1) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if a.shape != b.shape:
        raise DimensionMismatch("wedge needs equal-length vectors")
    return (np.outer(a, b) - np.outer(b, a)) % p


def line_matrix(B: np.ndarray, p: int) -> np.ndarray:
    """The rank-2 skew coefficient matrix of one line."""
    return wedge(B[:, 0], B[:, 1], p)


@dataclass(frozen=True)
class Evaluation:
    """Per-line sample tables shared by all builders of one run."""

    seed: int
    p: int
    u_tables: np.ndarray  # (m, 2, 2): columns of U_i for the constrained blow-up
    z_tables: np.ndarray  # (m, 2, 2): columns of U_i inside Z(y)
    x_tables: np.ndarray  # (m, 2, 2): generic blow-up points X_i
    x_scalars: np.ndarray  # (m,): nonzero scalars for first-order evaluations

    @classmethod
    def for_instance(cls, ls: LineSet, seed: int) -> "Evaluation":
        m, p = ls.m, ls.p
        u = FieldSampler(p, derive_seed(seed, "eval/u")).draw_array((m, 2, 2))
        z = FieldSampler(p, derive_seed(seed, "eval/z")).draw_array((m, 2, 2))
        x = FieldSampler(p, derive_seed(seed, "eval/x")).draw_array((m, 2, 2))
        s = FieldSampler(p, derive_seed(seed, "eval/s"))
        scal = np.array([s.nonzero() for _ in range(m)], dtype=np.int64)
        return cls(seed, p, u, z, x, scal)

    def u_cols(self, i: int, doubled: int) -> np.ndarray:
        """U_i as a 2 x doubled matrix; column 0 is dropped first."""
        if doubled == 2:
            return self.u_tables[i]
        if doubled == 1:
            return self.u_tables[i][:, 1:2]
        return self.u_tables[i][:, 2:2]

    def z_cols(self, i: int, doubled: int) -> np.ndarray:
        """U_i inside Z(y): 2 x 2(1 - y_i), shrinking as y_i grows."""
        if doubled == 0:
            return self.z_tables[i]
        if doubled == 1:
            return self.z_tables[i][:, 1:2]
        return self.z_tables[i][:, 2:2]


def lovasz_eval(ls: LineSet, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64) % ls.p
    A = np.zeros((ls.n, ls.n), dtype=np.int64)
    for i, B in enumerate(ls.gens):
        A = (A + int(x[i]) * line_matrix(B, ls.p)) % ls.p
    return A


def blowup2_eval(ls: LineSet, X) -> np.ndarray:
    """Second-order blow-up sum of X_i kron A_i (2n x 2n)."""
    out = np.zeros((2 * ls.n, 2 * ls.n), dtype=np.int64)
    for i, B in enumerate(ls.gens):
        out = (out + linalg.kronecker(np.asarray(X[i]), line_matrix(B, ls.p), ls.p)) % ls.p
    return out


def y_gram(ev: Evaluation, i: int, doubled: int) -> np.ndarray:
    """Y_i = U_i U_i^T of rank doubled_i."""
    U = ev.u_cols(i, doubled)
    return linalg.matmul(U, U.T, ev.p)


def constrained_blowup_eval(ls: LineSet, y: HalfVector, ev: Evaluation) -> np.ndarray:
    out = np.zeros((2 * ls.n, 2 * ls.n), dtype=np.int64)
    for i, B in enumerate(ls.gens):
        d = y.doubled[i]
        if d:
            out = (out + linalg.kronecker(y_gram(ev, i, d),
                                          line_matrix(B, ls.p), ls.p)) % ls.p
    return out


def b_matrix(ls: LineSet, y: HalfVector, ev: Evaluation) -> np.ndarray:
    """Certificate matrix [U_1 kron B_1 | ... ], 2n x 4|y| columns."""
    blocks = []
    for i, B in enumerate(ls.gens):
        d = y.doubled[i]
        if d:
            blocks.append(linalg.kronecker(ev.u_cols(i, d), B, ls.p))
    if not blocks:
        return np.zeros((2 * ls.n, 0), dtype=np.int64)
    return np.hstack(blocks)


def sparse_eval(ls: LineSet, x) -> np.ndarray:
    """(n+2m) x (n+2m) sparse representation with x_i Delta diagonal blocks."""
    x = np.asarray(x, dtype=np.int64) % ls.p
    n, m, p = ls.n, ls.m, ls.p
    Z = np.zeros((n + 2 * m, n + 2 * m), dtype=np.int64)
    for i, B in enumerate(ls.gens):
        c = n + 2 * i
        Z[:n, c:c + 2] = B
        Z[c:c + 2, :n] = -B.T % p
        Z[c:c + 2, c:c + 2] = int(x[i]) * DELTA % p
    return Z


def z_y_matrix(ls: LineSet, y: HalfVector, ev: Evaluation) -> np.ndarray:
    """(2n+4m) x (2n+4m) doubled sparse representation at the point y."""
    n, m, p = ls.n, ls.m, ls.p
    N = 2 * n + 4 * m
    Z = np.zeros((N, N), dtype=np.int64)
    eye2 = np.eye(2, dtype=np.int64)
    for i, B in enumerate(ls.gens):
        blk = linalg.kronecker(eye2, B, p)  # 2n x 4
        c = 2 * n + 4 * i
        Z[:2 * n, c:c + 4] = blk
        Z[c:c + 4, :2 * n] = -blk.T % p
        Z[c:c + 4, c:c + 4] = z_diag_block(ev, i, y.doubled[i])
    return Z


def z_diag_block(ev: Evaluation, i: int, doubled: int) -> np.ndarray:
    """Diagonal block Y_i kron Delta of Z(y), rank 2(2 - doubled)."""
    U = ev.z_cols(i, doubled)
    Y = linalg.matmul(U, U.T, ev.p)
    return linalg.kronecker(Y, DELTA, ev.p)


def blowup2_factored(ls: LineSet, X) -> tuple[np.ndarray, np.ndarray]:
    """Factor B E B^T of the blow-up in line-major order.

    B = [B_1 kron I_2 | ...] and E = blockdiag(Delta kron X_i); the
    product equals sum A_i kron X_i, the n-major twin of blowup2_eval.
    """
    n, m, p = ls.n, ls.m, ls.p
    eye2 = np.eye(2, dtype=np.int64)
    B = np.hstack([linalg.kronecker(g, eye2, p) for g in ls.gens]) \
        if m else np.zeros((2 * n, 0), dtype=np.int64)
    E = np.zeros((4 * m, 4 * m), dtype=np.int64)
    for i in range(m):
        E[4 * i:4 * i + 4, 4 * i:4 * i + 4] = \
            linalg.kronecker(DELTA, np.asarray(X[i]), p)
    return B, E


def blowup2_nmajor(ls: LineSet, X) -> np.ndarray:
    """sum A_i kron X_i via the factored form (flat index 2 j + k)."""
    B, E = blowup2_factored(ls, X)
    return linalg.matmul(linalg.matmul(B, E, ls.p), B.T, ls.p)


def parse_matrix(text: str, p: int) -> np.ndarray:
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
            if ln.strip()]
    if not rows:
        raise ParseError("empty matrix dump", 1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "matrix":
        raise ParseError("expected 'matrix <rows> <cols>'", lineno)
    r, c = int(parts[1]), int(parts[2])
    if len(rows) - 1 != r:
        raise ParseError(f"expected {r} rows", lineno)
    out = np.zeros((r, c), dtype=np.int64)
    for i, (rno, row) in enumerate(rows[1:]):
        vals = [int(t) for t in row.split()]
        if len(vals) != c:
            raise ParseError(f"expected {c} entries", rno)
        out[i] = vals
    return out % p


def serialize_matrix(M: np.ndarray) -> str:
    r, c = M.shape
    out = [f"matrix {r} {c}"]
    for row in M:
        out.append(" ".join(str(int(v)) for v in row))
    return "\n".join(out) + "\n"
