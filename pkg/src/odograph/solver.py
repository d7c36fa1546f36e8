"""Exact linear algebra over walk usage counts.

Rows are edges (by id), columns are walks, entries are usage counts. Rank
and solving are exact: elimination is fraction-free over the integers, and
solved weights come back as Fractions. A modular pre-filter speeds up the
greedy basis selection; it only ever admits columns that are certainly
independent over the rationals, and a fully exact path takes over in the
(astronomically unlikely) case the filter under-selects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    InconsistentMeasurementsError,
    InvalidWalkError,
    PreconditionError,
    RankDeficientError,
)
from .graph import Graph
from .revealer import RevealCertificate
from .walks import Walk, edge_multiplicities

_FILTER_PRIME = (1 << 61) - 1


@dataclass(frozen=True)
class WalkMatrix:
    """Usage-count matrix: rows indexed by edge id, one column per walk."""

    edge_count: int
    walks: tuple[Walk, ...]
    columns: tuple[tuple[int, ...], ...]

    @property
    def walk_count(self) -> int:
        return len(self.walks)

    def rows(self) -> list[list[int]]:
        return [
            [self.columns[j][i] for j in range(len(self.columns))]
            for i in range(self.edge_count)
        ]


def build_walk_matrix(g: Graph, walks: Sequence[Walk]) -> WalkMatrix:
    columns = []
    for w in walks:
        if len(w) < 2:
            raise InvalidWalkError("empty walks have all-zero columns and are not admitted")
        columns.append(tuple(edge_multiplicities(g, w)))
    return WalkMatrix(g.edge_count, tuple(tuple(w) for w in walks), tuple(columns))


def _bareiss_rank(a: list[list[int]]) -> int:
    """Fraction-free elimination; pivots by magnitude then lowest row index."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = max(range(r, rows), key=lambda i: (abs(a[i][c]), -i))
        if a[piv][c] == 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            ai_c = a[i][c]
            ar = a[r]
            ai = a[i]
            for j in range(c + 1, cols):
                ai[j] = (ar[c] * ai[j] - ai_c * ar[j]) // prev
            ai[c] = 0
        prev = a[r][c]
        r += 1
    return r


def rational_rank(m: WalkMatrix) -> int:
    """Rank of the matrix over the rationals."""
    if m.edge_count == 0 or not m.columns:
        return 0
    return _bareiss_rank(m.rows())


class _ModEchelon:
    """Incremental independence test modulo a large prime.

    A vector accepted here is independent over the rationals as well; only
    rejections can be spurious, and then only when the prime divides the
    relevant minor.
    """

    def __init__(self, p: int = _FILTER_PRIME):
        self.p = p
        self.rows: dict[int, list[int]] = {}

    def try_add(self, vec: Sequence[int]) -> bool:
        p = self.p
        v = [x % p for x in vec]
        for pivot, row in self.rows.items():
            coeff = v[pivot]
            if coeff:
                v = [(a - coeff * b) % p for a, b in zip(v, row)]
        for idx, val in enumerate(v):
            if val:
                inv = pow(val, p - 2, p)
                self.rows[idx] = [(a * inv) % p for a in v]
                return True
        return False


class _FractionEchelon:
    """Exact incremental independence test."""

    def __init__(self):
        self.rows: dict[int, list[Fraction]] = {}

    def try_add(self, vec: Sequence[int]) -> bool:
        v = [Fraction(x) for x in vec]
        for pivot, row in self.rows.items():
            coeff = v[pivot]
            if coeff:
                v = [a - coeff * b for a, b in zip(v, row)]
        for idx, val in enumerate(v):
            if val:
                self.rows[idx] = [a / val for a in v]
                return True
        return False


def _pool_certificate_walks(certs: Mapping[int, RevealCertificate]) -> list[Walk]:
    pool: list[Walk] = []
    seen: set[Walk] = set()
    for edge in sorted(certs):
        cert = certs[edge]
        if cert.edge_terms:
            raise PreconditionError(
                f"certificate for edge id {edge} still has edge references; flatten first"
            )
        for _, w in cert.terms:
            if w not in seen:
                seen.add(w)
                pool.append(w)
    return pool


def extract_minimal_basis(g: Graph, certs: Mapping[int, RevealCertificate]) -> list[Walk]:
    """Greedily select |E| independent walks from flattened certificates.

    The pool is every certificate walk in edge-id order; columns that do not
    grow the rank are skipped. The result always has exactly |E| walks of
    full rank, or the pool is genuinely rank deficient and that is an error.
    """
    m = g.edge_count
    pool = _pool_certificate_walks(certs)
    vectors = {w: edge_multiplicities(g, w) for w in pool}

    def greedy(echelon) -> list[Walk]:
        chosen: list[Walk] = []
        for w in pool:
            if len(chosen) == m:
                break
            if echelon.try_add(vectors[w]):
                chosen.append(w)
        return chosen

    chosen = greedy(_ModEchelon())
    if len(chosen) < m:
        # the filter may have dropped a usable column; redo exactly
        chosen = greedy(_FractionEchelon())
    if len(chosen) < m:
        raise RankDeficientError(
            f"certificate walks span only {len(chosen)} of {m} directions"
        )
    return chosen


def recover_weights(
    g_topology: Graph, walks: Sequence[Walk], measurements: Sequence[Fraction]
) -> dict[int, Fraction]:
    """Solve for all edge weights from measured walk weights, exactly.

    Eliminates an integer-augmented system fraction-free and back
    substitutes into Fractions. Requires the walks to span all |E| edge
    directions; every given equation is checked against the solution, so
    inconsistent measurements are always reported for overdetermined
    systems.
    """
    if len(walks) != len(measurements):
        raise PreconditionError("walks and measurements must align one to one")
    m = g_topology.edge_count
    rows: list[list[int]] = []
    rhs: list[Fraction] = []
    for w, meas in zip(walks, measurements):
        rows.append(edge_multiplicities(g_topology, w))
        rhs.append(Fraction(meas))

    # scale each equation to integers, then eliminate fraction-free
    aug: list[list[int]] = []
    for row, b in zip(rows, rhs):
        d = b.denominator
        aug.append([x * d for x in row] + [b.numerator])

    n_rows = len(aug)
    r = 0
    prev = 1
    pivot_cols: list[int] = []
    for c in range(m):
        if r == n_rows:
            break
        piv = max(range(r, n_rows), key=lambda i: (abs(aug[i][c]), -i))
        if aug[piv][c] == 0:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(r + 1, n_rows):
            ai_c = aug[i][c]
            ar = aug[r]
            ai = aug[i]
            for j in range(c + 1, m + 1):
                ai[j] = (ar[c] * ai[j] - ai_c * ar[j]) // prev
            ai[c] = 0
        prev = aug[r][c]
        pivot_cols.append(c)
        r += 1

    if r < m:
        raise RankDeficientError(f"measuring walks span only {r} of {m} directions")
    for i in range(r, n_rows):
        if aug[i][m] != 0 and all(aug[i][j] == 0 for j in range(m)):
            raise InconsistentMeasurementsError("measurements admit no exact solution")

    solution = [Fraction(0)] * m
    for k in reversed(range(r)):
        c = pivot_cols[k]
        acc = Fraction(aug[k][m])
        for j in range(c + 1, m):
            acc -= aug[k][j] * solution[j]
        solution[c] = acc / aug[k][c]

    for row, b in zip(rows, rhs):
        total = sum((coeff * solution[j] for j, coeff in enumerate(row) if coeff), Fraction(0))
        if total != b:
            raise InconsistentMeasurementsError("measurements admit no exact solution")
    return {e: solution[e] for e in range(m)}


def verify_certificate(g: Graph, cert: RevealCertificate) -> bool:
    """Check the weight-independent identity behind a flattened certificate.

    True iff, for every edge, the summed usage counts of the certificate
    walks equal the target coefficient times the target's usage of that
    edge. This never looks at weights, so it certifies the identity for
    every weighting at once.
    """
    if cert.edge_terms:
        raise PreconditionError("verify_certificate needs a flattened certificate")
    acc = [0] * g.edge_count
    for c, w in cert.terms:
        for e, mult in enumerate(edge_multiplicities(g, w)):
            if mult:
                acc[e] += c * mult
    target = cert.target_multiplicities(g)
    coeff = cert.target_coefficient
    return all(acc[e] == coeff * target[e] for e in range(g.edge_count))
