"""Measurement oracle and exhaustive small-instance enumeration.

The Odometer simulates the only instrument the problem allows: it answers
the total weight of a closed non-backtracking walk submitted from its home
vertex, and counts how many measurements were taken. The enumerator walks
every closed non-backtracking walk from a vertex up to an edge-count cap,
which gives an independent way to check what is and is not recoverable on
small graphs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, NamedTuple, Sequence

from .errors import PreconditionError, RejectedWalkError
from .graph import Graph
from .walks import Walk, edge_multiplicities, is_valid_nb_walk, walk_weight


class Odometer:
    """Answers walk-weight queries against weights the caller never sees.

    Only closed non-backtracking walks that start and end at the home
    vertex are measurable; anything else is rejected without revealing
    anything about the weights. `query_count` counts successful
    measurements only: rejected trips never left the lot.
    """

    def __init__(self, g: Graph, home: int):
        if not g.is_weighted:
            raise PreconditionError("odometer needs a weighted graph")
        if not 0 <= home < g.vertex_count:
            raise PreconditionError(f"home vertex {home} out of range")
        self._g = g
        self._home = home
        self._count = 0

    @property
    def home(self) -> int:
        return self._home

    @property
    def query_count(self) -> int:
        return self._count

    @property
    def topology(self) -> Graph:
        """The graph with weights stripped; safe to hand to a solver."""
        return self._g.without_weights()

    def measure(self, w: Sequence[int]) -> Fraction:
        walk = tuple(w)
        if len(walk) < 2:
            raise RejectedWalkError("rejected: the trip never leaves the home vertex")
        if not is_valid_nb_walk(self._g, walk):
            raise RejectedWalkError(
                "rejected: not a non-backtracking walk on this graph"
            )
        if walk[0] != self._home or walk[-1] != self._home:
            raise RejectedWalkError(
                f"rejected: walk must start and end at home vertex {self._home}"
            )
        total = walk_weight(self._g, walk)
        self._count += 1
        return total


def iter_closed_nb_walks(g: Graph, home: int, max_edges: int) -> Iterator[Walk]:
    """Yield every closed non-backtracking walk from home, lexicographically.

    Walks use at most max_edges edges. The empty walk is not produced; in a
    simple graph the shortest closed non-backtracking walk has 3 edges.
    """
    if not 0 <= home < g.vertex_count:
        raise PreconditionError(f"vertex {home} out of range")
    if max_edges < 3:
        return
    walk = [home]
    iters = [iter(g.neighbors(home))]
    while iters:
        moved = False
        for y in iters[-1]:
            if len(walk) >= 2 and y == walk[-2]:
                continue
            walk.append(y)
            if y == home and len(walk) >= 4:
                yield tuple(walk)
            if len(walk) - 1 < max_edges:
                iters.append(iter(g.neighbors(y)))
                moved = True
                break
            walk.pop()
        if not moved:
            iters.pop()
            walk.pop()


def enumerate_closed_nb_walks(g: Graph, home: int, max_edges: int) -> list[Walk]:
    """All closed non-backtracking walks from home up to max_edges edges."""
    return list(iter_closed_nb_walks(g, home, max_edges))


class SpanReport(NamedTuple):
    """Rank of the walk matrix plus a basis of the invisible directions.

    Each relation is a primitive integer vector r indexed by edge id with
    r · usage(W) = 0 for every walk considered: shifting the weights along
    r changes no measurable walk weight, so those directions cannot be
    separated. Full rank means no relations.
    """

    rank: int
    relations: tuple[tuple[int, ...], ...]


def _relations_from_rows(edge_count: int, rows: Sequence[Sequence[int]]) -> SpanReport:
    """Exact RREF of the given usage rows; relations span their orthogonal
    complement, one primitive integer vector per free column."""
    reduced: list[tuple[int, list[Fraction]]] = []  # (pivot column, unit row)
    for raw in rows:
        row = [Fraction(x) for x in raw]
        for pc, unit in reduced:
            coeff = row[pc]
            if coeff:
                row = [a - coeff * b for a, b in zip(row, unit)]
        for j in range(edge_count):
            if row[j]:
                piv = row[j]
                reduced.append((j, [a / piv for a in row]))
                break
    reduced.sort(key=lambda t: t[0])
    for i in reversed(range(len(reduced))):
        pc_i, row_i = reduced[i]
        for k in range(i):
            pc_k, row_k = reduced[k]
            coeff = row_k[pc_i]
            if coeff:
                reduced[k] = (pc_k, [a - coeff * b for a, b in zip(row_k, row_i)])
    pivot_cols = {pc for pc, _ in reduced}
    relations = []
    for f in range(edge_count):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * edge_count
        vec[f] = Fraction(1)
        for pc, unit in reduced:
            vec[pc] = -unit[f]
        scale = lcm(*(x.denominator for x in vec))
        ints = [int(x * scale) for x in vec]
        shrink = gcd(*ints)
        if shrink > 1:
            ints = [x // shrink for x in ints]
        relations.append(tuple(ints))
    return SpanReport(len(reduced), tuple(relations))


def span_report(g: Graph, walks: Sequence[Walk]) -> SpanReport:
    """Rank and invisible directions for an explicit collection of walks."""
    unique: dict[tuple[int, ...], None] = {}
    for w in walks:
        unique.setdefault(tuple(edge_multiplicities(g, w)), None)
    return _relations_from_rows(g.edge_count, list(unique))


def revealable_span(
    g: Graph, home: int, max_edges: int, *, stop_at_full_rank: bool = True
) -> SpanReport:
    """Span of everything measurable from home within an edge-count cap.

    Enumerates closed non-backtracking walks from home up to max_edges
    edges and reports the rank of their usage matrix together with the
    directions no walk can see. With stop_at_full_rank the enumeration
    aborts as soon as the span provably fills all |E| directions; the
    reported rank is the same either way, since rank never decreases as
    walks are added.
    """
    m = g.edge_count
    p = (1 << 61) - 1
    echelon_rows: dict[int, list[int]] = {}
    rank_mod = 0
    unique: dict[tuple[int, ...], None] = {}
    for w in iter_closed_nb_walks(g, home, max_edges):
        vec = tuple(edge_multiplicities(g, w))
        if vec in unique:
            continue
        unique[vec] = None
        if rank_mod < m:
            v = [x % p for x in vec]
            for pivot, row in echelon_rows.items():
                coeff = v[pivot]
                if coeff:
                    v = [(a - coeff * b) % p for a, b in zip(v, row)]
            for idx, val in enumerate(v):
                if val:
                    inv = pow(val, p - 2, p)
                    echelon_rows[idx] = [(a * inv) % p for a in v]
                    rank_mod += 1
                    break
            if stop_at_full_rank and rank_mod == m:
                # modular independence certifies rational independence
                return SpanReport(m, ())
    return _relations_from_rows(m, list(unique))
