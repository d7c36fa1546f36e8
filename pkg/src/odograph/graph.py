"""Simple undirected graphs with exact rational edge weights.

Vertices are the integers ``0..n-1``. Edges are unordered pairs with stable
integer ids assigned by input order; every multiplicity vector and matrix row
elsewhere in the library is indexed by these ids. Weights, when present, are
:class:`fractions.Fraction` values so downstream identities stay bit-exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
"""Exact scalar type used for all weights and solved values."""


def _as_rational(value) -> Fraction:
    if isinstance(value, float):
        raise ValueError("floating point weights are not accepted; use a rational")
    return Fraction(value)


class Graph:
    """Immutable simple graph, optionally weighted.

    ``weights=None`` builds a bare topology, which is what the weight
    recovery solver is allowed to see. Construction rejects self-loops,
    duplicate edges, and out-of-range endpoints.
    """

    __slots__ = ("_n", "_edges", "_weights", "_ids", "_incident")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        weights: Sequence | None = None,
    ):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        self._n = int(vertex_count)
        normalized: list[tuple[int, int]] = []
        ids: dict[tuple[int, int], int] = {}
        incident: list[list[tuple[int, int]]] = [[] for _ in range(self._n)]
        for u, v in edges:
            if not (0 <= u < self._n and 0 <= v < self._n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{self._n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} is not allowed")
            key = (u, v) if u < v else (v, u)
            if key in ids:
                raise ValueError(f"duplicate edge {{{key[0]},{key[1]}}}")
            eid = len(normalized)
            ids[key] = eid
            normalized.append(key)
            incident[u].append((v, eid))
            incident[v].append((u, eid))
        self._edges = tuple(normalized)
        self._ids = ids
        self._incident = tuple(tuple(sorted(pairs)) for pairs in incident)
        if weights is None:
            self._weights = None
        else:
            ws = tuple(_as_rational(w) for w in weights)
            if len(ws) != len(self._edges):
                raise ValueError(
                    f"got {len(ws)} weights for {len(self._edges)} edges"
                )
            self._weights = ws

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def weights(self) -> tuple[Fraction, ...] | None:
        return self._weights

    @property
    def is_weighted(self) -> bool:
        return self._weights is not None

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._ids[key]
        except KeyError:
            raise KeyError(f"no edge {{{key[0]},{key[1]}}}") from None

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._ids

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        return self._edges[edge_id]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self._incident[v])

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """(neighbor, edge id) pairs in ascending neighbor order."""
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def weight(self, edge_id: int) -> Fraction:
        if self._weights is None:
            raise ValueError("graph has no weights")
        return self._weights[edge_id]

    def with_weights(self, weights: Sequence) -> "Graph":
        return Graph(self._n, self._edges, weights)

    def without_weights(self) -> "Graph":
        return Graph(self._n, self._edges, None)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        tag = "weighted" if self.is_weighted else "topology"
        return f"Graph({self._n} vertices, {len(self._edges)} edges, {tag})"


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = bytearray(g.vertex_count)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if not seen[u]:
                seen[u] = 1
                count += 1
                stack.append(u)
    return count == g.vertex_count


def low_degree_vertices(g: Graph) -> tuple[int, ...]:
    """Vertices of degree < 3, ascending."""
    return tuple(v for v in range(g.vertex_count) if g.degree(v) < 3)


def is_odometric(g: Graph) -> bool:
    """Whether every edge weight is recoverable from any single start vertex.

    Holds exactly when the graph is connected and every vertex has degree at
    least 3. A degree-1 edge is never traversed by a closed walk from
    elsewhere, and the two edges at a degree-2 vertex are only ever traversed
    together, so both defects are fatal; degree 3 everywhere is also enough.
    """
    if g.vertex_count == 0:
        return False
    return not low_degree_vertices(g) and is_connected(g)
