"""Brute-force and combinatorial ground truths for desk-scale instances."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg, representations
from .errors import TooLarge
from .field import derive_seed
from .instance import Graph, HalfVector, LineSet

BRUTE_CAP = 10
INTEGRAL_CAP = 16
NUM_EVALUATIONS = 3
_CHUNK = 4096


@dataclass(frozen=True)
class OracleReport:
    optimum_doubled: int
    lex_min_maximizer: HalfVector
    lex_max_maximizer: HalfVector
    lex_max_parity_base: HalfVector | None
    max_integral_matching: int


def serialize_report(r: OracleReport) -> str:
    out = [f"optimum {r.optimum_doubled}/2",
           "lexmin " + " ".join(str(d) for d in r.lex_min_maximizer.doubled)]
    if r.lex_max_parity_base is not None:
        out.append("paritybase " +
                   " ".join(str(d) for d in r.lex_max_parity_base.doubled))
    else:
        out.append("paritybase none")
    out.append(f"integral {r.max_integral_matching}")
    return "\n".join(out) + "\n"


def certified_vectors(ls: LineSet, seed: int) -> list[tuple[int, ...]]:
    """All z whose certificate matrix has full column rank.

    Ranks are taken as the maximum over several independent sample sets,
    since random substitution can only underestimate.
    """
    if ls.m > BRUTE_CAP:
        raise TooLarge(f"m = {ls.m} exceeds brute-force cap {BRUTE_CAP}")
    m, n, p = ls.m, ls.n, ls.p
    evs = [representations.Evaluation.for_instance(ls, derive_seed(seed, f"oracle/{k}"))
           for k in range(NUM_EVALUATIONS)]
    # per evaluation, per line, the certificate blocks for doubled = 1 and 2
    blocks = [[(representations.b_matrix(ls, _unit(m, i, 1), ev),
                representations.b_matrix(ls, _unit(m, i, 2), ev))
               for i in range(m)] for ev in evs]
    by_cols: dict[int, list[tuple[int, ...]]] = {}
    for z in itertools.product((0, 1, 2), repeat=m):
        s2 = sum(z)
        if 2 * s2 > 2 * n:
            continue  # more columns than rows, never full column rank
        by_cols.setdefault(s2, []).append(z)
    certified = []
    for s2, zs in sorted(by_cols.items()):
        if s2 == 0:
            certified.extend(zs)
            continue
        for lo in range(0, len(zs), _CHUNK):
            chunk = zs[lo:lo + _CHUNK]
            best = np.zeros(len(chunk), dtype=np.int64)
            for e in range(NUM_EVALUATIONS):
                stack = np.empty((len(chunk), 2 * n, 2 * s2), dtype=np.int64)
                for t, z in enumerate(chunk):
                    parts = [blocks[e][i][d - 1] for i, d in enumerate(z) if d]
                    stack[t] = np.hstack(parts)
                np.maximum(best, linalg.batch_rank(stack, p), out=best)
            certified.extend(z for t, z in enumerate(chunk) if best[t] == 2 * s2)
    return certified


def _unit(m: int, i: int, d: int) -> HalfVector:
    doubled = [0] * m
    doubled[i] = d
    return HalfVector(tuple(doubled))


def brute_force(ls: LineSet, seed: int) -> OracleReport:
    certified = certified_vectors(ls, seed)
    opt = max((sum(z) for z in certified), default=0)
    maximizers = sorted(z for z in certified if sum(z) == opt)
    lex_min = HalfVector(maximizers[0]) if ls.m else HalfVector(())
    lex_max = HalfVector(maximizers[-1]) if ls.m else HalfVector(())
    base = lex_max if opt == ls.n else None
    return OracleReport(opt, lex_min, lex_max, base,
                        brute_force_integral(ls))


def brute_force_integral(ls: LineSet) -> int:
    if ls.m > INTEGRAL_CAP:
        raise TooLarge(f"m = {ls.m} exceeds integral cap {INTEGRAL_CAP}")
    best = 0
    for size in range(ls.m, 0, -1):
        if size <= best:
            break
        for subset in itertools.combinations(range(ls.m), size):
            cols = np.hstack([ls.gens[i] for i in subset])
            if linalg.rank(cols, ls.p) == 2 * size:
                best = size
                break
    return best


def double_cover_fractional_matching(g: Graph) -> int:
    """Doubled max fractional matching = max matching of the double cover."""
    V = g.vertices
    # left vertices v+, right vertices v-; adjacency as lists
    adj: list[list[int]] = [[] for _ in range(V)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    match_right = [-1] * V

    def augment(u: int, seen: list[bool]) -> bool:
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                if match_right[w] == -1 or augment(match_right[w], seen):
                    match_right[w] = u
                    return True
        return False

    size = 0
    for u in range(V):
        if augment(u, [False] * V):
            size += 1
    return size


@dataclass(frozen=True)
class RankCheckReport:
    lovasz_rank: int
    sparse_rank: int
    blowup_rank: int
    integral: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def rank_checks(ls: LineSet, seed: int) -> RankCheckReport:
    from .field import FieldSampler

    p = ls.p
    sampler = FieldSampler(p, derive_seed(seed, "rankcheck"))
    x = np.array([sampler.nonzero() for _ in range(ls.m)], dtype=np.int64)
    integral = brute_force_integral(ls)
    r_a = linalg.rank(representations.lovasz_eval(ls, x), p)
    r_z = linalg.rank(representations.sparse_eval(ls, x), p)
    X = FieldSampler(p, derive_seed(seed, "rankcheck/X")).draw_array((ls.m, 2, 2))
    r_b = linalg.rank(representations.blowup2_eval(ls, X), p)
    violations = []
    if r_a != 2 * integral:
        violations.append(f"first-order rank {r_a} != 2*{integral}")
    if r_z != 2 * integral + 2 * ls.m:
        violations.append(f"sparse rank {r_z} != 2*{integral} + 2m")
    if not (r_a <= r_b // 2 <= 2 * r_a) and integral > 0:
        violations.append(f"blow-up rank {r_b} outside the rank sandwich")
    return RankCheckReport(r_a, r_z, r_b, integral, tuple(violations))
