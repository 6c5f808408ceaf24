"""Immutable r-partite hypergraph model with bitset incidence.

Vertices are named 1-based as (part, index) pairs in all public API and
file I/O; edge ids are 1-based (E_1 .. E_m).  Internally everything is
0-based.  Incidence is one arbitrary-width int bitmask of edge ids per
vertex, so all pair/cover queries are single AND/popcount operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class HypergraphError(ValueError):
    """Invalid hypergraph data (bad index, duplicate edge, ...)."""


class FormatError(HypergraphError):
    """Malformed instance text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class VertexRef:
    """One vertex, named (part, index), both 1-based."""

    part: int
    index: int

    def __str__(self) -> str:
        return f"({self.part},{self.index})"


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex degrees plus the per-part sorted degree multisets."""

    degrees: dict  # VertexRef -> int, every declared vertex present
    part_multisets: tuple  # per part: tuple of degrees, sorted descending
    max_degree: int


class PartiteHypergraph:
    """r parts of declared sizes; each edge picks one vertex per part.

    Immutable after construction and safe to share between workers.  Use
    :func:`build` (or `parse`/`load`) rather than the raw constructor.
    """

    __slots__ = ("r", "part_sizes", "_edges", "_offsets", "n_vertices",
                 "_inc", "_edge_masks", "_all_edges_mask")

    def __init__(self, part_sizes: Sequence[int], edges0: Sequence[tuple]):
        self.r = len(part_sizes)
        self.part_sizes = tuple(part_sizes)
        self._edges = tuple(tuple(e) for e in edges0)
        offsets = []
        total = 0
        for k in self.part_sizes:
            offsets.append(total)
            total += k
        self._offsets = tuple(offsets)
        self.n_vertices = total
        inc = [0] * total
        emasks = []
        for i, edge in enumerate(self._edges):
            bit = 1 << i
            mask = 0
            for p, j in enumerate(edge):
                vid = offsets[p] + j
                inc[vid] |= bit
                mask |= 1 << vid
            emasks.append(mask)
        self._inc = tuple(inc)
        self._edge_masks = tuple(emasks)
        self._all_edges_mask = (1 << len(self._edges)) - 1

    # -- basic accessors ------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge(self, i: int) -> tuple:
        """Edge E_i (1-based id) as a tuple of VertexRef."""
        e = self._edges[self._check_edge_id(i)]
        return tuple(VertexRef(p + 1, j + 1) for p, j in enumerate(e))

    def edge_row(self, i: int) -> tuple:
        """Edge E_i as the r-tuple of 1-based per-part indices."""
        return tuple(j + 1 for j in self._edges[self._check_edge_id(i)])

    def edge_rows(self) -> tuple:
        """All edges as 1-based index rows, in edge-id order."""
        return tuple(tuple(j + 1 for j in e) for e in self._edges)

    def vertices(self) -> Iterable[VertexRef]:
        for p, k in enumerate(self.part_sizes):
            for j in range(k):
                yield VertexRef(p + 1, j + 1)

    def _vid(self, v: VertexRef) -> int:
        if not (1 <= v.part <= self.r):
            raise HypergraphError(f"part {v.part} out of range 1..{self.r}")
        if not (1 <= v.index <= self.part_sizes[v.part - 1]):
            raise HypergraphError(
                f"index {v.index} out of range 1..{self.part_sizes[v.part - 1]}"
                f" in part {v.part}")
        return self._offsets[v.part - 1] + v.index - 1

    def _check_edge_id(self, i: int) -> int:
        if not (1 <= i <= self.m):
            raise HypergraphError(f"edge id {i} out of range 1..{self.m}")
        return i - 1

    def incidence_mask(self, v: VertexRef) -> int:
        """Bitmask of 0-based edge ids through v."""
        return self._inc[self._vid(v)]

    # -- paper-facing queries -------------------------------------------

    def degree(self, v: VertexRef) -> int:
        return self._inc[self._vid(v)].bit_count()

    def edges_through(self, v: VertexRef) -> frozenset:
        """Set of 1-based edge ids containing v."""
        mask = self._inc[self._vid(v)]
        return frozenset(i + 1 for i in range(self.m) if mask >> i & 1)

    def codegree(self, v: VertexRef, w: VertexRef) -> int:
        if v == w:
            raise HypergraphError("codegree requires two distinct vertices")
        return (self._inc[self._vid(v)] & self._inc[self._vid(w)]).bit_count()

    def edge_intersection_size(self, i: int, j: int) -> int:
        if i == j:
            raise HypergraphError("edge intersection requires distinct ids")
        a = self._edges[self._check_edge_id(i)]
        b = self._edges[self._check_edge_id(j)]
        return sum(1 for x, y in zip(a, b) if x == y)

    def is_intersecting(self):
        """(True, None) or (False, (i, j)) with the first disjoint pair."""
        masks = self._edge_masks
        for i in range(self.m):
            for j in range(i + 1, self.m):
                if not masks[i] & masks[j]:
                    return False, (i + 1, j + 1)
        return True, None

    def matching_number(self) -> int:
        """Exact nu(H) by branch and bound over disjoint edge sets."""
        m = self.m
        if m == 0:
            return 0
        masks = self._edge_masks
        # disjointness graph over edges; nu = max clique in it
        disj = []
        for i in range(m):
            d = 0
            for j in range(m):
                if j != i and not masks[i] & masks[j]:
                    d |= 1 << j
            disj.append(d)
        best = 0

        def extend(cands: int, size: int):
            nonlocal best
            if size > best:
                best = size
            while cands:
                if size + cands.bit_count() <= best:
                    return
                i = (cands & -cands).bit_length() - 1
                cands &= cands - 1
                extend(cands & disj[i], size + 1)

        extend(self._all_edges_mask, 0)
        return best

    def delete_star(self, v: VertexRef) -> "PartiteHypergraph":
        """Sub-hypergraph on the same parts keeping the edges avoiding v."""
        mask = self._inc[self._vid(v)]
        keep = [e for i, e in enumerate(self._edges) if not mask >> i & 1]
        return PartiteHypergraph(self.part_sizes, keep)

    def subhypergraph(self, edge_ids: Iterable[int]) -> "PartiteHypergraph":
        """Sub-hypergraph induced by the given 1-based edge ids."""
        idx = sorted(self._check_edge_id(i) for i in edge_ids)
        return PartiteHypergraph(self.part_sizes, [self._edges[i] for i in idx])

    def degree_profile(self) -> DegreeProfile:
        degrees = {}
        multisets = []
        for p, k in enumerate(self.part_sizes):
            ds = []
            for j in range(k):
                d = self._inc[self._offsets[p] + j].bit_count()
                degrees[VertexRef(p + 1, j + 1)] = d
                ds.append(d)
            multisets.append(tuple(sorted(ds, reverse=True)))
        maxd = max((d for d in degrees.values()), default=0)
        return DegreeProfile(degrees, tuple(multisets), maxd)

    def intersection_budget(self):
        """(available, required) for the pair-coverage counting prune.

        available = sum_v C(d(v), 2) counts edge-pair incidences with
        multiplicity; an intersecting hypergraph needs available >=
        required = C(m, 2).
        """
        available = sum(math.comb(mask.bit_count(), 2) for mask in self._inc)
        return available, math.comb(self.m, 2)

    # -- misc -----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PartiteHypergraph)
                and self.part_sizes == other.part_sizes
                and self._edges == other._edges)

    def __hash__(self):
        return hash((self.part_sizes, self._edges))

    def __repr__(self):
        return (f"PartiteHypergraph(r={self.r}, parts={list(self.part_sizes)},"
                f" m={self.m})")


def build(part_sizes: Sequence[int], edges: Sequence[Sequence[int]],
          allow_duplicates: bool = False) -> PartiteHypergraph:
    """Validate and construct; `edges` are rows of 1-based per-part indices.

    Duplicate edges are rejected unless `allow_duplicates` is set (needed
    only for multiset constructions).
    """
    if not part_sizes:
        raise HypergraphError("at least one part required")
    for p, k in enumerate(part_sizes):
        if k < 1:
            raise HypergraphError(f"part {p + 1} has non-positive size {k}")
    r = len(part_sizes)
    rows = []
    seen = set()
    for n, edge in enumerate(edges, start=1):
        edge = tuple(edge)
        if len(edge) != r:
            raise HypergraphError(
                f"edge {n} has {len(edge)} entries, expected {r}")
        for p, j in enumerate(edge):
            if not (1 <= j <= part_sizes[p]):
                raise HypergraphError(
                    f"edge {n}: index {j} out of range 1..{part_sizes[p]}"
                    f" in part {p + 1}")
        if edge in seen and not allow_duplicates:
            raise HypergraphError(f"edge {n} duplicates an earlier edge")
        seen.add(edge)
        rows.append(tuple(j - 1 for j in edge))
    return PartiteHypergraph(part_sizes, rows)


# -- canonical text format ----------------------------------------------
#
#   parts k_1 k_2 ... k_r
#   <r integers per line, one line per edge; entry i is the 1-based
#    vertex index in part i>
#
# '#'-prefixed lines are comments and may appear anywhere.


def parse(text: str, allow_duplicates: bool = False) -> PartiteHypergraph:
    part_sizes = None
    edges = []
    seen = set()
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if part_sizes is None:
            if fields[0] != "parts":
                raise FormatError("expected 'parts k_1 ... k_r' header", n)
            try:
                part_sizes = [int(x) for x in fields[1:]]
            except ValueError:
                raise FormatError("non-integer part size", n) from None
            if not part_sizes:
                raise FormatError("empty part list", n)
            continue
        try:
            row = [int(x) for x in fields]
        except ValueError:
            raise FormatError("non-integer edge entry", n) from None
        if len(row) != len(part_sizes):
            raise FormatError(
                f"edge has {len(row)} entries, expected {len(part_sizes)}", n)
        for p, j in enumerate(row):
            if not (1 <= j <= part_sizes[p]):
                raise FormatError(
                    f"index {j} out of range 1..{part_sizes[p]} in part {p + 1}",
                    n)
        key = tuple(row)
        if key in seen and not allow_duplicates:
            raise FormatError("duplicate edge", n)
        seen.add(key)
        edges.append(row)
    if part_sizes is None:
        raise FormatError("missing 'parts' header")
    try:
        return build(part_sizes, edges, allow_duplicates=allow_duplicates)
    except HypergraphError as exc:
        raise FormatError(str(exc)) from None


def render(h: PartiteHypergraph) -> str:
    lines = ["parts " + " ".join(str(k) for k in h.part_sizes)]
    for row in h.edge_rows():
        lines.append(" ".join(str(j) for j in row))
    return "\n".join(lines) + "\n"


def load(path, allow_duplicates: bool = False) -> PartiteHypergraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse(fh.read(), allow_duplicates=allow_duplicates)


def save(h: PartiteHypergraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(render(h))
