"""Primal solvers for fractional linear matroid parity.

Four routes to the optimum:
  - simple_solve: greedy descent from y = 1 with rank oracles on the
    constrained blow-up, maintained by rank-2 factorization updates
    (lex-min maximizer).
  - sparse_solve: divide-and-conquer on the doubled sparse matrix Z(y),
    driven by small-update nonsingularity tests (lex-max parity base).
  - faster_solve: same recursion run block by block against a one-time
    Schur complement of Z(0), with lines padded to a multiple of n.
  - max_matching_solve: drops the parity-base requirement; the Schur
    complement's rank fixes the optimum, and generic completion lines
    lift the instance to one whose lex-max parity base starts with the
    lex-max maximum matching.
All are Monte Carlo; las_vegas_solve certifies against the dual cover.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import linalg, representations
from .errors import IterationCap, MonteCarloFailure, NoParityBase, Singular
from .field import FieldSampler, derive_seed
from .instance import HalfVector, LineSet, validate
from .representations import Evaluation


@dataclass(frozen=True)
class SolveReport:
    y: HalfVector
    value_doubled: int
    algorithm: str
    seed: int
    rank_queries: int
    elapsed: float
    iterations: int = 1


def _finish(y: HalfVector, algorithm: str, seed: int, queries: int,
            t0: float, iterations: int = 1) -> SolveReport:
    return SolveReport(y, y.value_doubled, algorithm, seed, queries,
                       time.perf_counter() - t0, iterations)


class RhoEngine:
    """Rank oracle rho(y) = rank of the constrained blow-up at y.

    Holds a rank factorization of the current matrix; moving one
    coordinate down by 1/2 is a rank-2 update, so each query after the
    first costs O(n^2).
    """

    def __init__(self, ls: LineSet, ev: Evaluation):
        self.ls = ls
        self.ev = ev
        self.y = HalfVector((2,) * ls.m)
        M = representations.constrained_blowup_eval(ls, self.y, ev)
        self.fact = linalg.rank_factorization(M, ls.p)
        self.queries = 1

    @property
    def rank(self) -> int:
        return self.fact.rank

    def peek_decrease(self, i: int) -> linalg.RankFactorization:
        """Factorization at y - e_i/2 (not committed)."""
        d = self.y.doubled[i]
        assert d > 0
        p = self.ls.p
        # dropping a column u of U_i subtracts (u u^T) kron (a wedge b)
        u = self.ev.u_tables[i][:, 2 - d]
        a = self.ls.gens[i][:, 0]
        b = self.ls.gens[i][:, 1]
        ua = np.kron(u, a) % p
        ub = np.kron(u, b) % p
        self.queries += 1
        return linalg.rank2_update_factorization(self.fact, ua, -ub % p,
                                                 ub, ua)

    def commit(self, i: int, fact: linalg.RankFactorization) -> None:
        self.fact = fact
        self.y = self.y.replace(i, self.y.doubled[i] - 1)


def simple_solve(ls: LineSet, seed: int) -> SolveReport:
    t0 = time.perf_counter()
    validate(ls)
    ls.prime.require_capacity(ls.m, ls.n)
    ev = Evaluation.for_instance(ls, derive_seed(seed, "simple"))
    eng = RhoEngine(ls, ev)
    r = eng.rank
    for i in range(ls.m):
        for _ in range(2):
            cand = eng.peek_decrease(i)
            if cand.rank != r:
                break
            eng.commit(i, cand)
    return _finish(eng.y, "simple", seed, eng.queries, t0)


# --- Z(y)-based solvers ----------------------------------------------------


class ZContext:
    """Principal submatrices of Z(0)^{-1} through the Schur complement.

    With Z(0) = [[0, Q], [-Q^T, T]] and T nonsingular block diagonal,
    the bottom-right block of the inverse is T^{-1} + G M^{-1} G^T with
    G = T^{-1} Q^T and M = Q T^{-1} Q^T, so any line-block submatrix is
    available without forming the full inverse.
    """

    def __init__(self, ls: LineSet, ev: Evaluation):
        n, m, p = ls.n, ls.m, ls.p
        self.ls = ls
        self.ev = ev
        self.p = p
        self.tinv = np.empty((m, 4, 4), dtype=np.int64)
        for i in range(m):
            blk = representations.z_diag_block(ev, i, 0)
            try:
                self.tinv[i] = linalg.inverse(blk, p)
            except Singular:
                raise MonteCarloFailure(f"degenerate sample for line {i}")
        eye2 = np.eye(2, dtype=np.int64)
        Q = np.hstack([linalg.kronecker(eye2, B, p) for B in ls.gens])
        self.Q = Q
        # G = T^{-1} Q^T, assembled block row by block row
        G = np.empty((4 * m, Q.shape[0]), dtype=np.int64)
        for i in range(m):
            G[4 * i:4 * i + 4] = linalg.matmul(self.tinv[i],
                                               Q[:, 4 * i:4 * i + 4].T, p)
        self.G = G
        self.M = linalg.matmul(Q, G, p)
        self.Minv = None

    def invert_schur(self) -> None:
        try:
            self.Minv = linalg.inverse(self.M, self.p)
        except Singular:
            raise NoParityBase("Z(0) is singular")

    def _flat(self, lines) -> np.ndarray:
        lines = np.asarray(lines, dtype=np.intp)
        return (4 * lines[:, None] + np.arange(4)[None, :]).ravel()

    def block_sub(self, ilines, jlines) -> np.ndarray:
        """Z(0)^{-1} restricted to the given line blocks (bottom part)."""
        I = self._flat(ilines)
        J = self._flat(jlines)
        out = linalg.matmul(linalg.matmul(self.G[I], self.Minv, self.p),
                            self.G[J].T, self.p)
        jpos = {int(l): a for a, l in enumerate(jlines)}
        for a, l in enumerate(ilines):
            b = jpos.get(int(l))
            if b is not None:
                out[4 * a:4 * a + 4, 4 * b:4 * b + 4] = \
                    (out[4 * a:4 * a + 4, 4 * b:4 * b + 4] + self.tinv[l]) % self.p
        return out


def _delta_block(ev: Evaluation, i: int, doubled: int) -> np.ndarray:
    """D = Z' - Z on line i's block when y_i rises from 0 to doubled/2."""
    return (representations.z_diag_block(ev, i, doubled)
            - representations.z_diag_block(ev, i, 0)) % ev.p


def _delta_diag(ev: Evaluation, lines, y) -> np.ndarray:
    D = np.zeros((4 * len(lines), 4 * len(lines)), dtype=np.int64)
    for a, i in enumerate(lines):
        D[4 * a:4 * a + 4, 4 * a:4 * a + 4] = _delta_block(ev, i, y[i])
    return D


def _base_case(ev: Evaluation, i: int, M: np.ndarray, y) -> None:
    """Decide y_i in {1, 1/2, 0} by the two small nonsingularity tests."""
    p = ev.p
    for d in (2, 1):
        if linalg.update_is_nonsingular(M, _delta_block(ev, i, d), p):
            y[i] = d
            return
    y[i] = 0


def _parity_recursion(ev: Evaluation, lo: int, hi: int, y,
                      M: np.ndarray) -> None:
    """Fill y on [lo, hi) given M = Z(y)^{-1} on those line blocks."""
    if hi - lo == 1:
        _base_case(ev, lo, M, y)
        return
    mid = (lo + hi + 1) // 2
    k = 4 * (mid - lo)
    _parity_recursion(ev, lo, mid, y, M[:k, :k])
    raised = [i for i in range(lo, mid) if y[i] > 0]
    if raised:
        S = np.concatenate([np.arange(4 * (i - lo), 4 * (i - lo) + 4)
                            for i in raised])
        D = _delta_diag(ev, raised, y)
        T = np.arange(k, 4 * (hi - lo))
        try:
            M2 = linalg.low_rank_update_inverse(
                M[np.ix_(S, S)], M[np.ix_(S, T)], M[np.ix_(T, S)],
                M[np.ix_(T, T)], D, ev.p)
        except Singular:
            raise MonteCarloFailure("update invariant violated")
    else:
        M2 = M[k:, k:]
    _parity_recursion(ev, mid, hi, y, M2)


def _pad_lines(ls: LineSet, block: int) -> LineSet:
    """Append duplicate lines so the count is a positive multiple of block."""
    extra = (-ls.m) % block
    if ls.m == 0 or extra == 0:
        return ls
    gens = list(ls.gens) + [ls.gens[i % ls.m].copy() for i in range(extra)]
    return LineSet(ls.prime, ls.n, tuple(gens))


def _strip(y, m: int) -> HalfVector:
    return HalfVector(tuple(int(d) for d in y[:m]))


def sparse_solve(ls: LineSet, seed: int) -> SolveReport:
    t0 = time.perf_counter()
    validate(ls)
    ls.prime.require_capacity(ls.m, ls.n)
    ev = Evaluation.for_instance(ls, derive_seed(seed, "sparse"))
    ctx = ZContext(ls, ev)
    ctx.invert_schur()
    all_lines = list(range(ls.m))
    M = ctx.block_sub(all_lines, all_lines)
    y = [0] * ls.m
    _parity_recursion(ev, 0, ls.m, y, M)
    out = _strip(y, ls.m)
    if out.value_doubled != ls.n:
        raise MonteCarloFailure("recursion did not reach a parity base")
    return _finish(out, "sparse", seed, 0, t0)


def _blocked_sweep(ls_pad: LineSet, ev: Evaluation, ctx: ZContext,
                   block: int) -> list[int]:
    y = [0] * ls_pad.m
    for b in range(ls_pad.m // block):
        L = list(range(b * block, (b + 1) * block))
        raised = [i for i in range(b * block) if y[i] > 0]
        if raised:
            D = _delta_diag(ev, raised, y)
            try:
                M = linalg.low_rank_update_inverse(
                    ctx.block_sub(raised, raised), ctx.block_sub(raised, L),
                    ctx.block_sub(L, raised), ctx.block_sub(L, L), D, ev.p)
            except Singular:
                raise MonteCarloFailure("block update invariant violated")
        else:
            M = ctx.block_sub(L, L)
        _parity_recursion(ev, L[0], L[-1] + 1, y, M)
    return y


def _parity_lexmax(ls: LineSet, seed: int) -> list[int]:
    """Lex-max parity base (doubled values) via the blocked sweep."""
    ls_pad = _pad_lines(ls, ls.n)
    ev = Evaluation.for_instance(ls_pad, derive_seed(seed, "sparse"))
    ctx = ZContext(ls_pad, ev)
    ctx.invert_schur()
    y = _blocked_sweep(ls_pad, ev, ctx, ls.n)
    if sum(y[:ls.m]) != ls.n or any(y[ls.m:]):
        raise MonteCarloFailure("recursion did not reach a parity base")
    return y[:ls.m]


def faster_solve(ls: LineSet, seed: int) -> SolveReport:
    t0 = time.perf_counter()
    validate(ls)
    ls.prime.require_capacity(ls.m, ls.n)
    y = _parity_lexmax(ls, seed)
    return _finish(_strip(y, ls.m), "faster", seed, 0, t0)


def _completion_instance(ls: LineSet, opt_doubled: int, seed: int) -> LineSet:
    """Append generic lines (and, for odd deficiency, one ambient
    dimension) so the maximizers become exactly the prefixes of parity
    bases of the completed instance."""
    n_ext = ls.n + ((ls.n - opt_doubled) % 2)
    q = (n_ext - opt_doubled) // 2
    gens = list(ls.gens)
    if n_ext > ls.n:
        pad_row = np.zeros((n_ext - ls.n, 2), dtype=np.int64)
        gens = [np.vstack([B, pad_row]) for B in gens]
    sampler = FieldSampler(ls.p, derive_seed(seed, "completion"))
    for _ in range(q):
        while True:
            B = sampler.draw_array((n_ext, 2))
            if linalg.rank(B, ls.p) == 2:
                break
        gens.append(B)
    return LineSet(ls.prime, n_ext, tuple(gens))


def max_matching_solve(ls: LineSet, seed: int) -> SolveReport:
    t0 = time.perf_counter()
    validate(ls)
    ls.prime.require_capacity(ls.m, ls.n)
    ev = Evaluation.for_instance(ls, derive_seed(seed, "sparse"))
    probe = ZContext(ls, ev)
    opt_doubled = linalg.rank(probe.M, ls.p) // 2
    try:
        if opt_doubled == ls.n:
            y = _parity_lexmax(ls, seed)
        else:
            ext = _completion_instance(ls, opt_doubled,
                                       derive_seed(seed, "complete"))
            y = _parity_lexmax(ext, seed)[:ls.m]
    except NoParityBase:
        raise MonteCarloFailure("completed instance lost its parity base")
    out = _strip(y, ls.m)
    if out.value_doubled != opt_doubled:
        raise MonteCarloFailure("completion missed the optimum")
    return _finish(out, "maxmatch", seed, 0, t0)


def las_vegas_solve(ls: LineSet, seed: int, max_iterations: int = 64):
    from . import dual

    t0 = time.perf_counter()
    validate(ls)
    ls.prime.require_capacity(ls.m, ls.n)
    for it in range(1, max_iterations + 1):
        try:
            rep = max_matching_solve(ls, derive_seed(seed, f"lv/{it}/primal"))
            cover = dual.dominant_two_cover(ls, derive_seed(seed, f"lv/{it}/dual"))
        except MonteCarloFailure:
            continue
        check = dual.verify_two_cover(ls, cover)
        if check.nested and check.covering and check.value == rep.value_doubled:
            final = SolveReport(rep.y, rep.value_doubled, "lasvegas", seed,
                                rep.rank_queries, time.perf_counter() - t0, it)
            return final, cover
    raise IterationCap(f"no certified optimum in {max_iterations} attempts")
