"""Constructive reveal certificates.

A quantity (an edge weight or the weight of an open walk) is *revealed* from
a start vertex when some integer combination of closed non-backtracking walk
weights equals an integer multiple of it. Everything here manufactures such
combinations explicitly, so the output is a checkable certificate rather
than a bare number.

The constructions lean on two facts used over and over:

* In a 2-connected block, every vertex u sits on a short closed walk (a
  "detour cycle") whose first and last edges differ, so the cycle can be
  traversed twice in a row without backtracking.
* Two distinct blocks meeting at a cut vertex u share no other vertex, so a
  walk entering u inside one block and leaving inside another can never
  backtrack at u. Junctions across blocks are therefore always safe.

The central identity: for a walk W from the start to u and a detour cycle C
at u whose junctions with W are safe,

    2 F(W) = 2 F(W.C.rev(W)) - F(W.C.C.rev(W))

because the detour contributes F(C) once on the left conjugate and twice on
the right. Everything else is bookkeeping that reduces the general case to
spots where this identity applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .decomposition import (
    BlockCutTree,
    _bfs_path,
    _escape_toward_leaf,
    approach_cut_vertex,
    block_cut_tree,
    leafward_escape,
    nearest_block_path,
    path_in_block_avoiding,
)
from .errors import (
    CyclicDependencyError,
    LibraryExhaustedError,
    MissingCertificateError,
    NotABridgeError,
    NotOdometricError,
    PreconditionError,
)
from .graph import Graph, is_connected, low_degree_vertices
from .walks import Walk, concat, edge_multiplicities, is_closed, require_valid_walk, reverse


@dataclass(frozen=True)
class RevealCertificate:
    """An integer identity proving a weight from closed-walk measurements.

    Semantics: with target T (an edge id, meaning its weight, or a walk,
    meaning its total weight),

        target_coefficient * value(T)
            = sum(c * F(walk) for c, walk in terms)
            + sum(d * weight(e) for d, e in edge_terms)

    and the identity holds for every weighting of the graph: the usage
    counts on each side agree edge by edge. Every walk in ``terms`` is a
    closed non-backtracking walk from ``home``. ``edge_terms`` reference
    other edges whose certificates must be substituted in (see ``flatten``)
    before the certificate is directly measurable.
    """

    target: int | Walk
    target_coefficient: int
    home: int
    terms: tuple[tuple[int, Walk], ...]
    edge_terms: tuple[tuple[int, int], ...] = ()

    @property
    def is_edge_target(self) -> bool:
        return isinstance(self.target, int)

    def target_multiplicities(self, g: Graph) -> list[int]:
        if isinstance(self.target, int):
            vec = [0] * g.edge_count
            vec[self.target] = 1
            return vec
        return edge_multiplicities(g, self.target)


@dataclass(frozen=True)
class DoublingRecord:
    """One instance of the doubling identity, kept for auditing."""

    base: Walk
    cycle: Walk
    conjugate_once: Walk
    conjugate_twice: Walk


@dataclass
class IdentityTrace:
    """Collects every doubling instance a reveal run constructs."""

    doublings: list[DoublingRecord] = field(default_factory=list)


# --- linear forms over closed-walk weights -------------------------------


class _Form:
    """denom * value == sum(walks[w] * F(w)) + sum(edges[e] * w_e).

    Coefficients are integers, denom is a positive integer, and the whole
    thing is kept gcd-reduced. This is the working representation while
    identities are being combined; certificates are its frozen rendering.
    """

    __slots__ = ("denom", "walks", "edges")

    def __init__(self, denom: int, walks: dict[Walk, int], edges: dict[int, int]):
        self.denom = denom
        self.walks = walks
        self.edges = edges


def _atom(walk: Walk) -> _Form:
    return _Form(1, {walk: 1}, {})


def _edge_atom(edge_id: int) -> _Form:
    return _Form(1, {}, {edge_id: 1})


def _combine(parts: Iterable[tuple[Fraction | int, _Form]]) -> _Form:
    walk_acc: dict[Walk, Fraction] = {}
    edge_acc: dict[int, Fraction] = {}
    for q, form in parts:
        scale = Fraction(q, form.denom)
        if not scale:
            continue
        for w, a in form.walks.items():
            walk_acc[w] = walk_acc.get(w, Fraction(0)) + a * scale
        for e, b in form.edges.items():
            edge_acc[e] = edge_acc.get(e, Fraction(0)) + b * scale
    walk_acc = {w: c for w, c in walk_acc.items() if c}
    edge_acc = {e: c for e, c in edge_acc.items() if c}
    denom = 1
    for c in walk_acc.values():
        denom = lcm(denom, c.denominator)
    for c in edge_acc.values():
        denom = lcm(denom, c.denominator)
    walks = {w: int(c * denom) for w, c in walk_acc.items()}
    edges = {e: int(c * denom) for e, c in edge_acc.items()}
    shrink = denom
    for v in walks.values():
        shrink = gcd(shrink, v)
    for v in edges.values():
        shrink = gcd(shrink, v)
    if shrink > 1:
        denom //= shrink
        walks = {w: v // shrink for w, v in walks.items()}
        edges = {e: v // shrink for e, v in edges.items()}
    return _Form(denom, walks, edges)


def _form_of(cert: RevealCertificate) -> _Form:
    return _Form(
        cert.target_coefficient,
        {w: c for c, w in cert.terms},
        {e: d for d, e in cert.edge_terms},
    )


def _freeze(target: int | Walk, home: int, form: _Form) -> RevealCertificate:
    terms = tuple(
        (c, w) for w, c in sorted(form.walks.items(), key=lambda kv: (len(kv[0]), kv[0]))
    )
    edge_terms = tuple((d, e) for e, d in sorted(form.edges.items()))
    return RevealCertificate(
        target=target,
        target_coefficient=form.denom,
        home=home,
        terms=terms,
        edge_terms=edge_terms,
    )


# --- approach library ------------------------------------------------------


@dataclass(frozen=True)
class ApproachEntry:
    walk: Walk
    final_edge: int
    certificate: RevealCertificate


class ApproachLibrary:
    """Per cut vertex, revealed walks from home arriving on distinct edges.

    Lifting a closed walk from a cut vertex u back to home conjugates it
    between two approach walks. The junctions each rule out at most one
    arrival edge, so keeping two walks with different final edges (one
    ending inside a chosen 2-connected block at u, one ending outside it)
    guarantees a compatible pair always exists.
    """

    def __init__(self, g: Graph, bct: BlockCutTree, home: int, trace: IdentityTrace | None = None):
        self.g = g
        self.bct = bct
        self.home = home
        self.trace = trace
        self._entries: dict[int, tuple[ApproachEntry, ...]] = {}

    def entries(self, u: int) -> tuple[ApproachEntry, ...]:
        if u not in self._entries:
            self._entries[u] = self._build(u)
        return self._entries[u]

    def pick(self, u: int, forbidden_edge: int) -> ApproachEntry:
        for entry in self.entries(u):
            if entry.final_edge != forbidden_edge:
                return entry
        raise LibraryExhaustedError(
            f"no approach walk to {u} avoids edge id {forbidden_edge}"
        )

    def _build(self, u: int) -> tuple[ApproachEntry, ...]:
        g, bct, home = self.g, self.bct, self.home
        if u == home:
            raise PreconditionError("approach walks are only built for u != home")
        two_conn = bct.two_connected_blocks_at(u)
        if not two_conn or not bct.is_cut_vertex(u):
            raise PreconditionError(
                f"vertex {u} is not a cut vertex of a 2-connected block"
            )
        block = two_conn[0]
        adj = {v: list(g.neighbors(v)) for v in range(g.vertex_count)}
        p = _bfs_path(adj, home, {u})
        assert p is not None, "graph is connected"
        last_in_block = bct.block_of_edge[g.edge_id(p[-2], p[-1])] == block
        if last_in_block:
            esc, u2, b2 = leafward_escape(g, bct, u, block)
            c2, _, _ = detour_cycle(g, bct, u2, b2)
            q = concat(concat(concat(p, esc), c2), reverse(esc))
        else:
            c, _, _ = detour_cycle(g, bct, u, block)
            q = concat(p, c)
        entries = []
        for walk in (p, q):
            cert = reveal_walk_to_cut(g, bct, home, walk, u, block, self)
            entries.append(
                ApproachEntry(walk, g.edge_id(walk[-2], walk[-1]), cert)
            )
        assert entries[0].final_edge != entries[1].final_edge
        return tuple(entries)


# --- elementary constructions ----------------------------------------------


def detour_cycle(
    g: Graph,
    bct: BlockCutTree,
    u: int,
    block: int,
    exclude_neighbor: int | None = None,
) -> tuple[Walk, int, int]:
    """Closed walk at u inside a 2-connected block with distinct end edges.

    Uses the two smallest block-neighbors of u (optionally skipping one
    excluded neighbor) joined by a path that avoids u. Because the first and
    last edges differ, the cycle may be traversed twice in succession.
    Returns (cycle, first edge id, last edge id).
    """
    blk = bct.blocks[block]
    if blk.is_bridge:
        raise PreconditionError("detour cycles live in 2-connected blocks")
    if u not in blk.vertices:
        raise PreconditionError(f"vertex {u} is not in block {block}")
    nbrs = [
        v
        for v, eid in g.incident(u)
        if bct.block_of_edge[eid] == block and v != exclude_neighbor
    ]
    if len(nbrs) < 2:
        raise PreconditionError(f"vertex {u} has too few usable neighbors in block {block}")
    x, y = nbrs[0], nbrs[1]
    path = path_in_block_avoiding(g, bct, block, x, y, u)
    cycle = concat(concat((u, x), path), (y, u))
    return cycle, g.edge_id(u, x), g.edge_id(y, u)


def _split_closed_walk(w: Walk, u: int) -> list[Walk]:
    """Cut a closed walk from u at every interior visit to u."""
    pieces: list[Walk] = []
    start = 0
    for i in range(1, len(w)):
        if w[i] == u:
            pieces.append(w[start : i + 1])
            start = i
    return pieces


def _record_doubling(
    lib_or_trace, base: Walk, cycle: Walk, once: Walk, twice: Walk
) -> None:
    trace = None
    if isinstance(lib_or_trace, IdentityTrace):
        trace = lib_or_trace
    elif lib_or_trace is not None:
        trace = lib_or_trace.trace
    if trace is not None:
        trace.doublings.append(DoublingRecord(base, cycle, once, twice))


def _doubling_forms(w: Walk, cycle: Walk, lib) -> tuple[_Form, _Form]:
    """Forms for F(w) and F(cycle) from the two conjugates of w around cycle."""
    once = concat(concat(w, cycle), reverse(w))
    twice = concat(concat(concat(w, cycle), cycle), reverse(w))
    _record_doubling(lib, w, cycle, once, twice)
    form_w = _combine([(1, _atom(once)), (Fraction(-1, 2), _atom(twice))])
    form_c = _combine([(1, _atom(twice)), (-1, _atom(once))])
    return form_w, form_c


# --- revealing open walks to cut vertices -----------------------------------


def reveal_walk_to_cut(
    g: Graph,
    bct: BlockCutTree,
    home: int,
    w: Walk,
    u: int,
    block: int,
    lib: "ApproachLibrary | IdentityTrace | None" = None,
) -> RevealCertificate:
    """Reveal an open walk from home to u, a cut vertex of a 2-connected block.

    If the walk arrives on an edge outside the block, a detour cycle at u
    inside the block conjugates safely and the doubling identity applies
    directly. Otherwise the walk first escapes leafward to another block
    where the direct case applies, and the escape is priced separately.
    """
    require_valid_walk(g, w)
    if len(w) < 2:
        raise PreconditionError("reveal_walk_to_cut needs a walk with at least one edge")
    if w[0] != home or w[-1] != u:
        raise PreconditionError(f"walk must run from {home} to {u}")
    blk = bct.blocks[block]
    if blk.is_bridge or u not in blk.vertices or not bct.is_cut_vertex(u):
        raise PreconditionError(f"vertex {u} must be a cut vertex of 2-connected block {block}")
    form = _reveal_walk_form(g, bct, w, u, block, lib)
    return _freeze(w, home, form)


def _reveal_walk_form(
    g: Graph, bct: BlockCutTree, w: Walk, u: int, block: int, lib
) -> _Form:
    last_edge = g.edge_id(w[-2], w[-1])
    if bct.block_of_edge[last_edge] != block:
        cycle, _, _ = detour_cycle(g, bct, u, block)
        form_w, _ = _doubling_forms(w, cycle, lib)
        return form_w
    # arrival edge inside the block: go around through a neighboring block
    esc, u2, b2 = leafward_escape(g, bct, u, block)
    c2, _, _ = detour_cycle(g, bct, u2, b2)
    ww = concat(w, esc)
    form_ww, form_c2 = _doubling_forms(ww, c2, lib)
    detoured = concat(concat(ww, c2), reverse(esc))
    cycle, _, _ = detour_cycle(g, bct, u, block)
    form_detoured, _ = _doubling_forms(detoured, cycle, lib)
    # F(esc) = F(detoured) - F(ww) - F(c2) and F(w) = F(ww) - F(esc)
    return _combine([(2, form_ww), (1, form_c2), (-1, form_detoured)])


def reveal_walk_to_any_cut(
    g: Graph,
    bct: BlockCutTree,
    home: int,
    w: Walk,
    u: int,
    lib: "ApproachLibrary | IdentityTrace | None" = None,
) -> RevealCertificate:
    """Reveal an open walk from home to any cut vertex u.

    When u touches a 2-connected block this defers to reveal_walk_to_cut.
    Otherwise every edge at u is a bridge; a closed detour through two
    different bridge-side components of u is stitched together from escape
    walks, and the doubling identity applies to it. Requires minimum
    degree 3 so u has two neighbors besides the walk's arrival vertex.
    """
    require_valid_walk(g, w)
    if len(w) < 2:
        raise PreconditionError("reveal_walk_to_any_cut needs a walk with at least one edge")
    if w[0] != home or w[-1] != u:
        raise PreconditionError(f"walk must run from {home} to {u}")
    if not bct.is_cut_vertex(u):
        raise PreconditionError(f"vertex {u} is not a cut vertex")
    two_conn = bct.two_connected_blocks_at(u)
    if two_conn:
        return reveal_walk_to_cut(g, bct, home, w, u, two_conn[0], lib)
    arrived_from = w[-2]
    others = [v for v in g.neighbors(u) if v != arrived_from]
    if len(others) < 2:
        raise PreconditionError(f"vertex {u} needs degree at least 3")
    x, y = others[0], others[1]
    cycle = concat(
        concat(concat((u, x), _bridge_side_loop(g, bct, u, x)), (x, u, y)),
        concat(_bridge_side_loop(g, bct, u, y), (y, u)),
    )
    form_w, _ = _doubling_forms(w, cycle, lib)
    return _freeze(w, home, form_w)


def _bridge_side_loop(g: Graph, bct: BlockCutTree, u: int, x: int) -> Walk:
    """Closed walk from x that never crosses the bridge {u,x}.

    x has degree >= 3 and its edge to u is a bridge, so x is itself a cut
    vertex; escape from the bridge block toward a leaf block and run its
    detour cycle there.
    """
    bridge_block = bct.block_of_edge[g.edge_id(u, x)]
    esc, u2, b2 = _escape_toward_leaf(g, bct, x, bridge_block)
    c2, _, _ = detour_cycle(g, bct, u2, b2)
    return concat(concat(esc, c2), reverse(esc))


# --- lifting closed walks to home -------------------------------------------


def lift_closed_walk(
    g: Graph,
    bct: BlockCutTree,
    home: int,
    u: int,
    w_closed: Walk,
    lib: ApproachLibrary,
) -> RevealCertificate:
    """Reveal a closed walk at a cut vertex u from home.

    The walk splits at every visit to u into pieces; each piece is
    conjugated between two approach walks whose arrival edges dodge the
    piece's first and last edges, which is always possible because the
    library keeps two distinct arrival edges per vertex.
    """
    require_valid_walk(g, w_closed)
    if not is_closed(w_closed) or w_closed[0] != u:
        raise PreconditionError(f"walk must be closed at {u}")
    if len(w_closed) < 2:
        raise PreconditionError("empty walks carry no information; refuse to lift")
    if u == home:
        return _freeze(w_closed, home, _atom(w_closed))
    parts: list[tuple[int, _Form]] = []
    for piece in _split_closed_walk(w_closed, u):
        left = lib.pick(u, g.edge_id(piece[0], piece[1]))
        right = lib.pick(u, g.edge_id(piece[-2], piece[-1]))
        conjugated = concat(concat(left.walk, piece), reverse(right.walk))
        piece_form = _combine(
            [
                (1, _atom(conjugated)),
                (-1, _form_of(left.certificate)),
                (-1, _form_of(right.certificate)),
            ]
        )
        parts.append((1, piece_form))
    return _freeze(w_closed, home, _combine(parts))


def _lift_form(
    g: Graph, bct: BlockCutTree, home: int, u: int, form: _Form, lib: ApproachLibrary
) -> _Form:
    """Rewrite a form anchored at u into one anchored at home."""
    if u == home:
        return form
    parts: list[tuple[Fraction, _Form]] = []
    for w, c in form.walks.items():
        lifted = lift_closed_walk(g, bct, home, u, w, lib)
        parts.append((Fraction(c, form.denom), _form_of(lifted)))
    for e, d in form.edges.items():
        parts.append((Fraction(d, form.denom), _edge_atom(e)))
    return _combine(parts)


# --- moving a certificate to a neighboring home ------------------------------


def transfer_neighbor_walk(
    g: Graph, home: int, u: int, f: int, w_closed: Walk
) -> tuple[Walk, int]:
    """Turn a closed walk at u into one at its neighbor home across edge f.

    Returns (walk, epsilon) with F(new) = F(old) + epsilon * weight(f) and
    epsilon in {-2, 0, +2}: wrap with f on both sides when home is not
    adjacent to the walk's ends, rotate when exactly one end touches home
    (the edge multiset is preserved), strip both end edges when both do.
    """
    a, b = g.endpoints(f)
    if {a, b} != {home, u}:
        raise PreconditionError(f"edge id {f} does not join {home} and {u}")
    require_valid_walk(g, w_closed)
    if not is_closed(w_closed) or w_closed[0] != u or len(w_closed) < 2:
        raise PreconditionError(f"need a nonempty closed walk at {u}")
    first_is_home = w_closed[1] == home
    last_is_home = w_closed[-2] == home
    if not first_is_home and not last_is_home:
        return (home,) + w_closed + (home,), 2
    if first_is_home and last_is_home:
        return w_closed[1:-1], -2
    if not first_is_home:
        w_closed = reverse(w_closed)
    return w_closed[1:] + (home,), 0


def _transfer_certificate(
    g: Graph, cert: RevealCertificate, new_home: int, f: int
) -> RevealCertificate:
    """Re-anchor a certificate one hop, pricing the corrections on edge f."""
    walks: dict[Walk, int] = {}
    edges: dict[int, int] = {e: d for d, e in cert.edge_terms}
    eps_total = 0
    for c, w in cert.terms:
        moved, eps = transfer_neighbor_walk(g, new_home, cert.home, f, w)
        walks[moved] = walks.get(moved, 0) + c
        eps_total += c * eps
    if eps_total:
        edges[f] = edges.get(f, 0) - eps_total
    form = _Form(
        cert.target_coefficient,
        {w: c for w, c in walks.items() if c},
        {e: d for e, d in edges.items() if d},
    )
    return _freeze(cert.target, new_home, _combine([(1, form)]))


# --- whole blocks, bridges, and the full graph ------------------------------


def reveal_block(
    g: Graph,
    bct: BlockCutTree,
    anchor: int,
    block: int,
    lib: "ApproachLibrary | IdentityTrace | None" = None,
) -> dict[int, RevealCertificate]:
    """Reveal every edge of a 2-connected block from an anchor vertex in it.

    Walks the block breadth-first from the anchor. Each vertex reveals its
    own incident block edges: through the cut-vertex machinery when the far
    endpoint is a cut vertex, else by doubling around a detour cycle at the
    far endpoint that avoids the edge. Certificates are then re-anchored
    hop by hop along the search tree back to the anchor; every hop's
    correction is priced against the tree edge it crosses, which was
    revealed earlier, producing edge references instead of recursion.
    """
    blk = bct.blocks[block]
    if blk.is_bridge:
        raise PreconditionError("reveal_block needs a 2-connected block")
    if anchor not in blk.vertices:
        raise PreconditionError(f"anchor {anchor} is not in block {block}")
    if low_degree_vertices(g) or not is_connected(g):
        raise PreconditionError("reveal_block requires a connected graph of minimum degree 3")

    adj: dict[int, list[int]] = {v: [] for v in blk.vertices}
    for eid in blk.edge_ids:
        a, b = g.endpoints(eid)
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort()

    parent: dict[int, int] = {anchor: anchor}
    order = [anchor]
    queue = [anchor]
    while queue:
        v = queue.pop(0)
        for nxt in adj[v]:
            if nxt not in parent:
                parent[nxt] = v
                order.append(nxt)
                queue.append(nxt)

    cuts = set(bct.cut_vertices)
    certs: dict[int, RevealCertificate] = {}
    for p in order:
        for q in adj[p]:
            e = g.edge_id(p, q)
            if e in certs:
                continue
            if q in cuts:
                walk_cert = reveal_walk_to_cut(g, bct, p, (p, q), q, block, lib)
                cert = RevealCertificate(
                    target=e,
                    target_coefficient=walk_cert.target_coefficient,
                    home=p,
                    terms=walk_cert.terms,
                    edge_terms=walk_cert.edge_terms,
                )
            else:
                cycle, _, _ = detour_cycle(g, bct, q, block, exclude_neighbor=p)
                form_w, _ = _doubling_forms((p, q), cycle, lib)
                cert = _freeze(e, p, form_w)
            hop = p
            while hop != anchor:
                cert = _transfer_certificate(g, cert, parent[hop], g.edge_id(parent[hop], hop))
                hop = parent[hop]
            certs[e] = cert
    return dict(sorted(certs.items()))


def reveal_bridge(
    g: Graph,
    bct: BlockCutTree,
    home: int,
    e: int,
    lib: ApproachLibrary,
) -> RevealCertificate:
    """Reveal a bridge edge from home.

    Both endpoints of a bridge are cut vertices (minimum degree 3). From the
    nearest cut vertex sitting in a 2-connected block, the bridge is the
    difference of two revealed open walks; the resulting closed walks are
    then lifted back to home.
    """
    if not bct.is_bridge_edge(e):
        u, v = g.endpoints(e)
        raise NotABridgeError(f"edge {{{u},{v}}} (id {e}) is not a bridge")
    path = nearest_block_path(g, bct, e)
    u = path[0]
    a, b = g.endpoints(e)
    other = b if u == a else a
    if len(path) == 1:
        cert = reveal_walk_to_any_cut(g, bct, u, (u, other), other, lib)
        form = _form_of(cert)
    else:
        anchor = path[-1]
        back = reverse(path)
        cert_back = reveal_walk_to_any_cut(g, bct, anchor, back, u, lib)
        cert_over = reveal_walk_to_any_cut(g, bct, anchor, concat(back, (u, other)), other, lib)
        form = _combine([(1, _form_of(cert_over)), (-1, _form_of(cert_back))])
        u = anchor
    lifted = _lift_form(g, bct, home, u, form, lib)
    return _freeze(e, home, lifted)


def reveal_all(
    g: Graph, start: int, trace: IdentityTrace | None = None
) -> dict[int, RevealCertificate]:
    """Reveal every edge of the graph from one start vertex.

    Requires a connected graph of minimum degree 3. Blocks containing the
    start are revealed in place; other 2-connected blocks are revealed at
    the cut vertex through which the block tree is entered from the start
    and lifted home; bridges get their dedicated construction. The result
    maps every edge id to a certificate whose walks are all closed
    non-backtracking walks from start (edge references may remain; see
    ``flatten``).
    """
    if not (0 <= start < g.vertex_count):
        raise PreconditionError(f"start vertex {start} is out of range")
    low = low_degree_vertices(g)
    if low:
        raise NotOdometricError(
            f"vertex {low[0]} has degree {g.degree(low[0])} < 3", vertex=low[0]
        )
    if not is_connected(g):
        raise NotOdometricError("graph is disconnected")
    bct = block_cut_tree(g)
    lib = ApproachLibrary(g, bct, start, trace)
    certs: dict[int, RevealCertificate] = {}
    for blk in bct.blocks:
        if blk.is_bridge:
            e = blk.edge_ids[0]
            certs[e] = reveal_bridge(g, bct, start, e, lib)
        elif start in blk.vertices:
            certs.update(reveal_block(g, bct, start, blk.index, lib))
        else:
            anchor = approach_cut_vertex(bct, start, blk.index)
            for e, cert in reveal_block(g, bct, anchor, blk.index, lib).items():
                lifted = _lift_form(g, bct, start, anchor, _form_of(cert), lib)
                certs[e] = _freeze(e, start, lifted)
    return dict(sorted(certs.items()))


# --- substitution of edge references ----------------------------------------


def flatten(
    cert: RevealCertificate, store: Mapping[int, RevealCertificate]
) -> RevealCertificate:
    """Substitute away edge references using certificates from the store.

    Scales by the referenced certificates' coefficients (via lcm) so all
    coefficients stay integral. Fails loudly on a missing certificate and
    on cyclic references; the constructions here only ever reference edges
    revealed strictly earlier, so a cycle means the store is corrupt.
    """
    resolved: dict[int, _Form] = {}
    in_progress: set[int] = set()

    def resolve(edge: int) -> _Form:
        if edge in resolved:
            return resolved[edge]
        if edge in in_progress:
            raise CyclicDependencyError(f"edge id {edge} participates in a reference cycle")
        if edge not in store:
            raise MissingCertificateError(f"no certificate for edge id {edge}")
        in_progress.add(edge)
        form = _substitute(_form_of(store[edge]))
        in_progress.discard(edge)
        resolved[edge] = form
        return form

    def _substitute(form: _Form) -> _Form:
        if not form.edges:
            return form
        parts: list[tuple[Fraction, _Form]] = [
            (Fraction(c, form.denom), _atom(w)) for w, c in form.walks.items()
        ]
        for e, d in form.edges.items():
            parts.append((Fraction(d, form.denom), resolve(e)))
        return _combine(parts)

    flat = _substitute(_form_of(cert))
    return _freeze(cert.target, cert.home, flat)
