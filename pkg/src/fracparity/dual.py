"""Dual certificates: Wong sequences and the dominant 2-cover."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, representations, subspaces
from .errors import DimensionMismatch, MaxRankNotAttained, ParseError
from .field import FieldSampler, derive_seed
from .instance import LineSet
from .subspaces import Subspace


@dataclass(frozen=True)
class NestedTwoCover:
    S: Subspace
    T: Subspace

    @property
    def value(self) -> int:
        return self.S.dim + self.T.dim


@dataclass(frozen=True)
class CoverCheck:
    nested: bool
    covering: bool
    value: int

    @property
    def ok(self) -> bool:
        return self.nested and self.covering


def line_operators(ls: LineSet) -> list[np.ndarray]:
    """The rank-2 skew coefficient matrices A_i."""
    return [representations.line_matrix(B, ls.p) for B in ls.gens]


def blowup_generators(ls: LineSet) -> list[np.ndarray]:
    """Spanning set A_i kron E_kl of the blown-up matrix space (n-major)."""
    gens = []
    for A in line_operators(ls):
        for k in range(2):
            for l in range(2):
                E = np.zeros((2, 2), dtype=np.int64)
                E[k, l] = 1
                gens.append(linalg.kronecker(A, E, ls.p))
    return gens


def wong_limit(M: np.ndarray, generators, p: int) -> Subspace:
    """Limit of W_{i+1} = span{G u : G gen, u in preimage M(W_i)}.

    Starts from W_1 = span of generator images of ker M; stabilizes in at
    most dim(M) steps, each weakly increasing.
    """
    N = M.shape[0]
    U = subspaces.kernel_space(M, p)
    W = subspaces.apply_space(generators, U)
    for _ in range(N + 1):
        U2 = subspaces.preimage(M, W)
        W2 = subspaces.apply_space(generators, U2)
        assert W <= W2, "Wong sequence must be nondecreasing"
        if W2.dim == W.dim:
            return W
        W = W2
    raise MaxRankNotAttained("Wong sequence failed to stabilize")


def _selector(n: int, slot: int) -> np.ndarray:
    """Embedding u -> u kron e_slot under the flat index 2 j + k."""
    P = np.zeros((2 * n, n), dtype=np.int64)
    for j in range(n):
        P[2 * j + slot, j] = 1
    return P


def dominant_two_cover(ls: LineSet, seed: int) -> NestedTwoCover:
    n, m, p = ls.n, ls.m, ls.p
    ls.prime.require_capacity(m, n)
    X = FieldSampler(p, derive_seed(seed, "dual/X")).draw_array((m, 2, 2))
    M = representations.blowup2_nmajor(ls, X)
    gens = blowup_generators(ls)
    W = wong_limit(M, gens, p)
    if not (W <= subspaces.image(M, p)):
        raise MaxRankNotAttained("sampled point misses the maximum rank")
    U_star = subspaces.preimage(M, W)
    U0 = subspaces.intersection(subspaces.preimage(_selector(n, 0), U_star),
                                subspaces.preimage(_selector(n, 1), U_star))
    if U_star.dim != 2 * U0.dim:
        raise MaxRankNotAttained("shrunk subspace lost its tensor structure")
    S_star = subspaces.apply_space(line_operators(ls), U0) if U0.dim \
        else subspaces.zero_subspace(n, p)
    # the skew pairing sends the image of U0 inside its annihilator, which
    # is what makes the pair nested; a coordinate complement would not
    T_star = subspaces.orthogonal_complement(U0)
    return NestedTwoCover(S_star, T_star)


def line_subspace(ls: LineSet, i: int) -> Subspace:
    return subspaces.from_columns(ls.gens[i], ls.n, ls.p)


def verify_two_cover(ls: LineSet, cover: NestedTwoCover) -> CoverCheck:
    if cover.S.ambient_dim != ls.n or cover.T.ambient_dim != ls.n:
        raise DimensionMismatch("cover ambient dimension != instance n")
    nested = cover.S <= cover.T
    covering = True
    for i in range(ls.m):
        ell = line_subspace(ls, i)
        hit = 0
        for side in (cover.S, cover.T):
            # dim(V and ell) = dim V + 2 - dim(V + ell)
            hit += side.dim + 2 - subspaces.sum_spaces(side, ell).dim
        if hit < 2:
            covering = False
            break
    return CoverCheck(nested, covering, cover.value)


def serialize_cover(cover: NestedTwoCover) -> str:
    out = [f"cover n {cover.S.ambient_dim}"]
    for tag, space in (("S", cover.S), ("T", cover.T)):
        out.append(f"{tag} dim {space.dim}")
        for j in range(space.dim):
            out.append(" ".join(str(int(v)) for v in space.basis[:, j]))
    return "\n".join(out) + "\n"


def parse_cover(text: str, p: int) -> NestedTwoCover:
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
            if ln.strip()]
    if not rows or not rows[0][1].startswith("cover n "):
        raise ParseError("expected 'cover n <n>' header", 1)
    n = int(rows[0][1].split()[2])
    pos = 1
    spaces = {}
    for tag in ("S", "T"):
        lineno, header = rows[pos]
        parts = header.split()
        if len(parts) != 3 or parts[0] != tag or parts[1] != "dim":
            raise ParseError(f"expected '{tag} dim <k>'", lineno)
        k = int(parts[2])
        basis = np.zeros((n, k), dtype=np.int64)
        for j in range(k):
            rno, row = rows[pos + 1 + j]
            vals = [int(t) for t in row.split()]
            if len(vals) != n:
                raise ParseError(f"expected {n} entries", rno)
            basis[:, j] = vals
        spaces[tag] = subspaces.from_columns(basis, n, p)
        pos += 1 + k
    return NestedTwoCover(spaces["S"], spaces["T"])
