"""Structural reports and mechanical lemma verifiers.

Verifiers never assume a lemma: they check its hypotheses, then test the
conclusion directly and report witnesses or counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .core import HypergraphError, PartiteHypergraph, VertexRef
from .cover import cover_number


class HypothesisError(HypergraphError):
    """A verifier's hypotheses do not hold; the message says which."""


# -- degree table ---------------------------------------------------------

@dataclass(frozen=True)
class DegreeTable:
    """Per part: vertices grouped by degree, each with its edge-id set."""

    rows: tuple  # per part: dict degree -> list of (VertexRef, tuple edge ids)
    max_degree: int

    def group(self, part: int, degree: int) -> list:
        return self.rows[part - 1].get(degree, [])


def degree_table(h: PartiteHypergraph) -> DegreeTable:
    rows = []
    maxd = 0
    for p in range(1, h.r + 1):
        groups: dict = {}
        for j in range(1, h.part_sizes[p - 1] + 1):
            v = VertexRef(p, j)
            ids = tuple(sorted(h.edges_through(v)))
            groups.setdefault(len(ids), []).append((v, ids))
            maxd = max(maxd, len(ids))
        rows.append(groups)
    return DegreeTable(tuple(rows), maxd)


def render_degree_table(h: PartiteHypergraph) -> str:
    """ASCII table: parts as rows, degrees as columns."""
    table = degree_table(h)
    degs = list(range(1, table.max_degree + 1))
    lines = []
    header = ["part"] + [f"deg {d}" for d in degs]
    cells = []
    for p in range(1, h.r + 1):
        row = [str(p)]
        for d in degs:
            entries = table.group(p, d)
            row.append("; ".join(
                f"E({v}) = {{{', '.join('E' + str(i) for i in ids)}}}"
                for v, ids in entries))
        cells.append(row)
    widths = [max(len(header[c]), max((len(row[c]) for row in cells), default=0))
              for c in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines.append(fmt.format(*header).rstrip())
    for row in cells:
        lines.append(fmt.format(*row).rstrip())
    return "\n".join(lines)


# -- linearity ------------------------------------------------------------

@dataclass(frozen=True)
class LinearityReport:
    """Edge pairs (outside `ignored`) whose intersection is not a
    singleton, with sizes; empty <=> the hypergraph is linear."""

    pairs: tuple  # of ((i, j), size), i < j, 1-based ids
    ignored: frozenset

    @property
    def is_linear(self) -> bool:
        return not self.pairs


def linearity_report(h: PartiteHypergraph,
                     ignore: Iterable[int] = ()) -> LinearityReport:
    ignored = frozenset(ignore)
    bad = []
    for i, j in combinations(range(1, h.m + 1), 2):
        if i in ignored or j in ignored:
            continue
        size = h.edge_intersection_size(i, j)
        if size != 1:
            bad.append(((i, j), size))
    return LinearityReport(tuple(bad), ignored)


# -- 8-edge lemma verifiers ------------------------------------------------

@dataclass(frozen=True)
class EightEdgeReport:
    deg3_in_every_part: bool
    deg3_vertices: tuple  # all degree-3 vertices
    heavy_pair: Optional[tuple]  # (i, j) sharing >= 2 degree-3 vertices


@dataclass(frozen=True)
class DegreeSchemeReport:
    """Per-part classification by nonzero-degree multiset.

    TypeA: {3,2,2,1}.  TypeB: {3,2,1,1,1} (one degree-3 and one degree-2
    vertex, the rest degree 1; degree-0 vertices are ignored).
    """

    kinds: tuple  # per part: "TypeA" | "TypeB" | "Other"
    multisets: tuple  # per part: nonzero degrees, sorted descending


def _check_8edge_hypotheses(h: PartiteHypergraph) -> None:
    if h.r != 6:
        raise HypothesisError(f"need 6 parts, got {h.r}")
    if h.m != 8:
        raise HypothesisError(f"need 8 edges, got {h.m}")
    ok, witness = h.is_intersecting()
    if not ok:
        raise HypothesisError(
            f"not intersecting: E{witness[0]} and E{witness[1]} are disjoint")
    tau, _ = cover_number(h)
    if tau != 4:
        raise HypothesisError(f"need cover number 4, got {tau}")


def check_8edge_lemma(h: PartiteHypergraph) -> EightEdgeReport:
    """For 6-partite, 8-edge, intersecting, tau=4 input: confirm a
    degree-3 vertex in every part and an edge pair sharing two of them.

    The reduced multiset hypergraph on the degree-3 vertices is
    materialized internally and its structural facts (six vertices, one
    per part, pairwise co-degree >= 1, every edge meets it) are
    asserted as part of the check.
    """
    _check_8edge_hypotheses(h)
    profile = h.degree_profile()
    deg3 = sorted(v for v, d in profile.degrees.items() if d == 3)
    parts_with = {v.part for v in deg3}
    all_parts = parts_with == set(range(1, 7))

    # reduced hypergraph K: each edge restricted to degree-3 vertices
    deg3_set = set(deg3)
    k_edges = []
    for i in range(1, h.m + 1):
        k_edges.append(frozenset(v for v in h.edge(i) if v in deg3_set))
    if profile.max_degree <= 3:
        assert all(e for e in k_edges), "an edge misses every degree-3 vertex"
        assert len(deg3) == 6, f"expected six degree-3 vertices, got {len(deg3)}"
        assert len(parts_with) == 6, "two degree-3 vertices share a part"
        for v, w in combinations(deg3, 2):
            assert h.codegree(v, w) >= 1, f"degree-3 pair {v},{w} disjoint"

    heavy = None
    for i, j in combinations(range(h.m), 2):
        if len(k_edges[i] & k_edges[j]) >= 2:
            heavy = (i + 1, j + 1)
            break
    return EightEdgeReport(all_parts, tuple(deg3), heavy)


def classify_degree_scheme(h: PartiteHypergraph) -> DegreeSchemeReport:
    """Classify each part of a 6-partite, 8-edge, intersecting, tau=4
    hypergraph as TypeA / TypeB / Other (classification only; never
    asserts the expected outcome)."""
    _check_8edge_hypotheses(h)
    profile = h.degree_profile()
    kinds = []
    multisets = []
    for ms in profile.part_multisets:
        nonzero = tuple(d for d in ms if d > 0)
        multisets.append(nonzero)
        if nonzero == (3, 2, 2, 1):
            kinds.append("TypeA")
        elif nonzero == (3, 2, 1, 1, 1):
            kinds.append("TypeB")
        else:
            kinds.append("Other")
    return DegreeSchemeReport(tuple(kinds), tuple(multisets))


# -- regular sub-hypergraphs -----------------------------------------------

def find_regular_subhypergraphs(h: PartiteHypergraph, d: int,
                                size: int) -> list:
    """All `size`-subsets of edges that are linear (every pair of chosen
    edges meets in exactly one vertex) with maximum induced degree d.

    Exhaustive over C(m, size) subsets; returns sorted tuples of 1-based
    edge ids.
    """
    if d < 1 or size < 1:
        raise HypergraphError("d and size must be positive")
    inter = {}
    for i, j in combinations(range(1, h.m + 1), 2):
        inter[(i, j)] = h.edge_intersection_size(i, j)
    out = []
    for subset in combinations(range(1, h.m + 1), size):
        if any(inter[(i, j)] != 1 for i, j in combinations(subset, 2)):
            continue
        counts: dict = {}
        for i in subset:
            for v in h.edge(i):
                counts[v] = counts.get(v, 0) + 1
        if max(counts.values()) == d:
            out.append(subset)
    return out


# -- co-degree coverage audit -----------------------------------------------

@dataclass(frozen=True)
class CodegreeAudit:
    """Which degree-3 vertices escape the stars of the given pivots.

    pivot_blockers: pivot v -> degree-3 vertices w with E(w) disjoint
    from E(v).  pair_blockers: (v, u) -> degree-3 vertices w with E(w)
    disjoint from E(v) | E(u).  pair_star_sizes: (v, u) ->
    (|E(v) & E(u)|, |E(v) | E(u)|), both reported, neither asserted.
    """

    pivot_blockers: dict
    pair_blockers: dict
    pair_star_sizes: dict


def codegree_coverage_audit(h: PartiteHypergraph,
                            pivots: Iterable[VertexRef]) -> CodegreeAudit:
    pivots = sorted(set(pivots))
    if not pivots:
        raise HypergraphError("at least one pivot required")
    profile = h.degree_profile()
    deg3 = sorted(v for v, d in profile.degrees.items() if d == 3)
    star = {v: h.incidence_mask(v) for v in set(pivots) | set(deg3)}
    pivot_blockers = {
        v: tuple(w for w in deg3 if not star[w] & star[v]) for v in pivots}
    pair_blockers = {}
    pair_sizes = {}
    for v, u in combinations(pivots, 2):
        union = star[v] | star[u]
        pair_blockers[(v, u)] = tuple(w for w in deg3 if not star[w] & union)
        pair_sizes[(v, u)] = ((star[v] & star[u]).bit_count(),
                              union.bit_count())
    return CodegreeAudit(pivot_blockers, pair_blockers, pair_sizes)


# -- extremality ratio -------------------------------------------------------

def ryser_ratio(h: PartiteHypergraph) -> Fraction:
    """tau / ((r-1) * nu), exactly; 1 marks an extremal instance."""
    if h.m < 1:
        raise HypergraphError("ratio undefined for the empty hypergraph")
    tau, _ = cover_number(h)
    nu = h.matching_number()
    return Fraction(tau, (h.r - 1) * nu)
