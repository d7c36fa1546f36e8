"""Walk algebra for non-backtracking walks.

A walk is a tuple of vertices; a single vertex ``(v,)`` is the empty walk at
``v``. Non-backtracking means no edge is immediately re-traversed, i.e. the
vertex two steps back never repeats. A closed walk only needs matching
endpoints: its first and last edges are allowed to coincide, because the
start vertex is the one place where turning around is permitted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import EndpointMismatchError, InvalidWalkError, JunctionBacktrackError
from .graph import Graph

Walk = tuple[int, ...]


def as_walk(vertices: Iterable[int]) -> Walk:
    w = tuple(vertices)
    if not w:
        raise ValueError("a walk needs at least one vertex")
    return w


def is_closed(w: Walk) -> bool:
    return w[0] == w[-1]


def is_valid_nb_walk(g: Graph, w: Walk) -> bool:
    """Total predicate: vertices in range, edges present, no backtracking."""
    if len(w) == 0:
        return False
    n = g.vertex_count
    if any(not (0 <= v < n) for v in w):
        return False
    for a, b in zip(w, w[1:]):
        if not g.has_edge(a, b):
            return False
    return all(w[i] != w[i + 2] for i in range(len(w) - 2))


def require_valid_walk(g: Graph, w: Walk) -> None:
    if not is_valid_nb_walk(g, w):
        raise InvalidWalkError(f"not a valid non-backtracking walk: {list(w)}")


def concat(w1: Walk, w2: Walk) -> Walk:
    """Join two walks at a shared endpoint.

    The junction must not backtrack: the last edge of ``w1`` and the first
    edge of ``w2`` may not be the same edge. Empty walks are identities.
    """
    if w1[-1] != w2[0]:
        raise EndpointMismatchError(
            f"walk ending at {w1[-1]} cannot continue a walk starting at {w2[0]}"
        )
    if len(w1) >= 2 and len(w2) >= 2 and w1[-2] == w2[1]:
        raise JunctionBacktrackError(
            f"junction at {w1[-1]} would immediately return to {w1[-2]}"
        )
    return w1 + w2[1:]


def reverse(w: Walk) -> Walk:
    return w[::-1]


def edge_multiplicities(g: Graph, w: Walk) -> list[int]:
    """How many times the walk uses each edge, indexed by edge id."""
    require_valid_walk(g, w)
    counts = [0] * g.edge_count
    for a, b in zip(w, w[1:]):
        counts[g.edge_id(a, b)] += 1
    return counts


def walk_weight(g: Graph, w: Walk) -> Fraction:
    """Total weight of the walk: the inner product of usage counts and weights."""
    require_valid_walk(g, w)
    if not g.is_weighted:
        raise ValueError("graph has no weights")
    total = Fraction(0)
    for a, b in zip(w, w[1:]):
        total += g.weight(g.edge_id(a, b))
    return total
