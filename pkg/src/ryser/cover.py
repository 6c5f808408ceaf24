"""Greedy and exact vertex covers with certificates.

The exact solver is iterative deepening over the cover size k, branching
on an uncovered edge (any cover must hit one of its r vertices) and
always choosing the uncovered edge whose vertices have the least
remaining coverage (fail-first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .core import HypergraphError, PartiteHypergraph, VertexRef


class NotIntersectingError(HypergraphError):
    """Raised when an operation requires an intersecting hypergraph."""


@dataclass(frozen=True)
class CoverCertificate:
    """A cover plus the evidence that came with it.

    kind 'exact-minimum' implies every smaller size was exhausted
    (exhausted_size == len(vertices) - 1); kind 'exhaustion-of-size-k'
    carries no cover, only the largest size proven impossible.
    """

    vertices: frozenset  # of VertexRef
    kind: str  # greedy | exact-minimum | exhaustion-of-size-k
    exhausted_size: Optional[int] = None

    def sorted_vertices(self) -> list:
        return sorted(self.vertices)

    def to_json(self) -> dict:
        out = {"cover": [[v.part, v.index] for v in self.sorted_vertices()],
               "kind": self.kind}
        if self.kind != "greedy":
            out["exhausted"] = self.exhausted_size
        return out


def is_cover(h: PartiteHypergraph, vertices: Iterable[VertexRef]):
    """(True, None) if S hits every edge, else (False, first uncovered id)."""
    covered = 0
    for v in vertices:
        covered |= h.incidence_mask(v)
    for i in range(h.m):
        if not covered >> i & 1:
            return False, i + 1
    return True, None


def greedy_cover(h: PartiteHypergraph) -> CoverCertificate:
    """Cover of size <= ceil(m/2), valid only on intersecting input.

    While two or more edges are uncovered, some vertex covers at least
    two of them; pick the vertex covering the most (ties broken by lowest
    (part, index)), then finish a lone edge with its first vertex.
    """
    ok, witness = h.is_intersecting()
    if not ok:
        raise NotIntersectingError(
            f"edges E{witness[0]} and E{witness[1]} are disjoint")
    uncovered = (1 << h.m) - 1
    chosen = []
    while uncovered.bit_count() >= 2:
        best_v = None
        best_gain = 0
        for v in h.vertices():
            gain = (h.incidence_mask(v) & uncovered).bit_count()
            if gain > best_gain:
                best_gain, best_v = gain, v
        chosen.append(best_v)
        uncovered &= ~h.incidence_mask(best_v)
    if uncovered:
        i = uncovered.bit_length()  # 1-based id of the remaining edge
        chosen.append(h.edge(i)[0])
    return CoverCertificate(frozenset(chosen), "greedy")


def _incidence_by_vid(h: PartiteHypergraph):
    refs = list(h.vertices())
    return refs, [h.incidence_mask(v) for v in refs]


def _pick_branch_edge(h, uncovered: int, inc, edge_vids) -> int:
    """Uncovered edge (0-based) minimizing remaining vertex coverage."""
    best, best_score = -1, None
    mask = uncovered
    while mask:
        i = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        score = sum((inc[v] & uncovered).bit_count() for v in edge_vids[i])
        if best_score is None or score < best_score:
            best, best_score = i, score
    return best


def _edge_vid_table(h: PartiteHypergraph):
    offs = h._offsets
    return [tuple(offs[p] + j for p, j in enumerate(h._edges[i]))
            for i in range(h.m)]


def cover_number(h: PartiteHypergraph, limit: Optional[int] = None):
    """Exact tau(H) with a minimum cover, or the exhaustion of `limit`.

    Returns (tau, certificate); when `limit` is given and tau would
    exceed it, returns (None, exhaustion certificate for `limit`).
    """
    if h.m == 0:
        return 0, CoverCertificate(frozenset(), "exact-minimum",
                                   exhausted_size=-1)
    refs, inc = _incidence_by_vid(h)
    edge_vids = _edge_vid_table(h)
    hard_cap = h.m  # one vertex per edge always covers

    def extend(uncovered: int, depth: int, chosen: list):
        if not uncovered:
            return list(chosen)
        if depth == 0:
            return None
        i = _pick_branch_edge(h, uncovered, inc, edge_vids)
        for v in edge_vids[i]:
            chosen.append(v)
            found = extend(uncovered & ~inc[v], depth - 1, chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    top = hard_cap if limit is None else min(limit, hard_cap)
    all_mask = (1 << h.m) - 1
    for k in range(top + 1):
        found = extend(all_mask, k, [])
        if found is not None:
            cover = frozenset(refs[v] for v in found)
            return k, CoverCertificate(cover, "exact-minimum",
                                       exhausted_size=k - 1)
    if limit is not None and limit < hard_cap:
        return None, CoverCertificate(frozenset(), "exhaustion-of-size-k",
                                      exhausted_size=limit)
    raise AssertionError("unreachable: one vertex per edge is a cover")


def enumerate_covers(h: PartiteHypergraph, k: int) -> list:
    """All covers of size exactly k, as sorted vertex tuples.

    Branches on an uncovered edge; once everything is covered, the
    remaining slots are filled with every completion, so supersets of
    smaller covers are included.  An empty result certifies tau > k.
    """
    if k < 0:
        raise HypergraphError("cover size must be non-negative")
    refs, inc = _incidence_by_vid(h)
    edge_vids = _edge_vid_table(h)
    all_mask = (1 << h.m) - 1
    results = set()

    def rec(uncovered: int, chosen: frozenset):
        if not uncovered:
            rest = [v for v in range(h.n_vertices) if v not in chosen]
            for extra in combinations(rest, k - len(chosen)):
                results.add(frozenset(chosen | set(extra)))
            return
        if len(chosen) == k:
            return
        i = (uncovered & -uncovered).bit_length() - 1
        for v in edge_vids[i]:
            if v not in chosen:
                rec(uncovered & ~inc[v], chosen | {v})

    rec(all_mask, frozenset())
    return sorted(tuple(sorted(refs[v] for v in s)) for s in results)


def greedy_bound(h: PartiteHypergraph) -> int:
    """The ceil(m/2) cover bound for intersecting hypergraphs."""
    return math.ceil(h.m / 2)
