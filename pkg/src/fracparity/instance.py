"""Problem instances: lines over GF(p), generators, and text formats."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (AmbientTooLarge, DegenerateLine, LoopEdge, ParseError,
                     ValueOutOfField)
from .field import DEFAULT_PRIME, FieldSampler, Prime, derive_seed

FORMAT_TAG = "fracparity 1"


@dataclass(frozen=True)
class LineSet:
    prime: Prime
    n: int
    gens: tuple  # m arrays of shape (n, 2), each full column rank

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def m(self) -> int:
        return len(self.gens)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LineSet) and self.prime == other.prime
                and self.n == other.n and self.m == other.m
                and all(np.array_equal(a, b) for a, b in zip(self.gens, other.gens)))


@dataclass(frozen=True)
class Graph:
    vertices: int
    edges: tuple  # pairs of 0-based distinct endpoints

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise LoopEdge(f"loop at vertex {u + 1}")
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ParseError(f"edge ({u + 1},{v + 1}) out of range")


@dataclass(frozen=True)
class HalfVector:
    doubled: tuple  # m integers in {0, 1, 2}; entry i encodes y_i = doubled_i / 2

    def __post_init__(self):
        assert all(d in (0, 1, 2) for d in self.doubled)

    @property
    def m(self) -> int:
        return len(self.doubled)

    @property
    def value_doubled(self) -> int:
        return sum(self.doubled)

    def replace(self, i: int, d: int) -> "HalfVector":
        out = list(self.doubled)
        out[i] = d
        return HalfVector(tuple(out))


def zero_half_vector(m: int) -> HalfVector:
    return HalfVector((0,) * m)


def make_line_set(p: int, n: int, gens) -> LineSet:
    prime = p if isinstance(p, Prime) else Prime(p)
    arrs = tuple(np.asarray(g, dtype=np.int64).reshape(n, 2) % prime.p
                 for g in gens)
    return LineSet(prime, n, arrs)


def validate(ls: LineSet) -> None:
    for i, B in enumerate(ls.gens):
        if linalg.rank(B, ls.p) < 2:
            raise DegenerateLine(i + 1)
    if ls.n > 2 * ls.m:
        raise AmbientTooLarge(f"n = {ls.n} > 2m = {2 * ls.m}; restrict_to_span first")


def restrict_to_span(ls: LineSet) -> LineSet:
    """Rewrite the lines in coordinates of the subspace they span."""
    stacked = np.hstack(ls.gens) if ls.m else np.zeros((ls.n, 0), dtype=np.int64)
    R, pivots = linalg.rref(stacked.T, ls.p)
    d = len(pivots)
    C = R[:d, :].T.copy()  # n x d span basis, echelon form
    # solve C X = B_i using the pivot rows, where C restricted to them is I_d
    new_gens = [B[pivots, :].copy() for B in ls.gens]
    return LineSet(ls.prime, d, tuple(new_gens))


def from_graph(g: Graph, p: int = DEFAULT_PRIME) -> LineSet:
    gens = []
    eye = np.eye(g.vertices, dtype=np.int64)
    for u, v in g.edges:
        gens.append(np.column_stack([eye[u], eye[v]]))
    return make_line_set(p, g.vertices, gens)


def random_instance(n: int, m: int, seed: int, p: int = DEFAULT_PRIME) -> LineSet:
    sampler = FieldSampler(p, derive_seed(seed, f"instance/{n}/{m}"))
    gens = []
    for _ in range(m):
        while True:
            B = sampler.draw_array((n, 2))
            if linalg.rank(B, p) == 2:
                gens.append(B)
                break
    return make_line_set(p, n, gens)


def _int_fields(text: str, lineno: int, expect: int | None = None) -> list[int]:
    parts = text.split()
    try:
        vals = [int(t) for t in parts]
    except ValueError:
        raise ParseError("expected decimal integers", lineno)
    if expect is not None and len(vals) != expect:
        raise ParseError(f"expected {expect} integers, got {len(vals)}", lineno)
    return vals


def parse_line_set(text: str) -> LineSet:
    lines = [ln for ln in text.splitlines()]
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows or rows[0][1] != FORMAT_TAG:
        raise ParseError(f"missing '{FORMAT_TAG}' header", 1)
    if len(rows) < 2:
        raise ParseError("missing size header", 2)
    lineno, header = rows[1]
    parts = header.split()
    if len(parts) != 6 or parts[0] != "p" or parts[2] != "n" or parts[4] != "m":
        raise ParseError("expected 'p <prime> n <n> m <m>'", lineno)
    p, n, m = int(parts[1]), int(parts[3]), int(parts[5])
    body = rows[2:]
    if len(body) != 2 * m:
        raise ParseError(f"expected {2 * m} generator rows, got {len(body)}",
                         body[-1][0] if body else lineno)
    gens = []
    for i in range(m):
        cols = []
        for k in range(2):
            rno, row = body[2 * i + k]
            vals = _int_fields(row, rno, n)
            for v in vals:
                if not 0 <= v < p:
                    raise ValueOutOfField(f"entry {v} outside [0, {p})", rno)
            cols.append(vals)
        gens.append(np.array(cols, dtype=np.int64).T)
    return make_line_set(p, n, gens)


def serialize_line_set(ls: LineSet) -> str:
    out = [FORMAT_TAG, f"p {ls.p} n {ls.n} m {ls.m}"]
    for B in ls.gens:
        out.append(" ".join(str(int(v)) for v in B[:, 0]))
        out.append(" ".join(str(int(v)) for v in B[:, 1]))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
            if ln.strip()]
    if not rows:
        raise ParseError("empty graph file", 1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "graph":
        raise ParseError("expected 'graph <V> <E>'", lineno)
    V, E = int(parts[1]), int(parts[2])
    if len(rows) - 1 != E:
        raise ParseError(f"expected {E} edges, got {len(rows) - 1}", lineno)
    edges = []
    for rno, row in rows[1:]:
        u, v = _int_fields(row, rno, 2)
        if u == v:
            raise LoopEdge(f"loop at vertex {u} (line {rno})")
        edges.append((u - 1, v - 1))
    return Graph(V, tuple(edges))


def serialize_graph(g: Graph) -> str:
    out = [f"graph {g.vertices} {len(g.edges)}"]
    for u, v in g.edges:
        out.append(f"{u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def parse_half_vector(text: str) -> HalfVector:
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
            if ln.strip()]
    if not rows:
        raise ParseError("empty solution file", 1)
    lineno, row = rows[0]
    vals = _int_fields(row, lineno)
    for v in vals:
        if v not in (0, 1, 2):
            raise ParseError(f"doubled entry {v} not in {{0,1,2}}", lineno)
    hv = HalfVector(tuple(vals))
    if len(rows) > 1:
        rno, tail = rows[1]
        if tail != f"value {hv.value_doubled}/2":
            raise ParseError("value line does not match the vector", rno)
    return hv


def serialize_half_vector(hv: HalfVector) -> str:
    body = " ".join(str(d) for d in hv.doubled)
    return f"{body}\nvalue {hv.value_doubled}/2\n"
