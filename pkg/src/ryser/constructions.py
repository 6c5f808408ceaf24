"""Generators: truncated projective planes, the built-in 13-edge 6-partite
and 22-edge 7-partite extremal instances, and the part-padding lift.

The plane lives over GF(q) for q in {2,3,4,5,7,8,9}; prime-power fields
use hard-coded reduction polynomials verified irreducible at
construction time.  q=6 is rejected: no projective plane of order 6
exists (Tarry / Bruck-Ryser).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import HypergraphError, PartiteHypergraph, build


class ConstructionError(HypergraphError):
    pass


# q -> (p, k, reduction polynomial coefficients, low degree first,
# for x^k = -(poly) reduction; only the degree < k part is stored)
_FIELDS = {
    2: (2, 1, ()),
    3: (3, 1, ()),
    4: (2, 2, (1, 1)),      # x^2 + x + 1
    5: (5, 1, ()),
    7: (7, 1, ()),
    8: (2, 3, (1, 1, 0)),   # x^3 + x + 1
    9: (3, 2, (1, 0)),      # x^2 + 1
}


class FiniteField:
    """GF(p^k) for tiny q; elements are ints 0..q-1 encoding base-p
    coefficient vectors (least significant digit = constant term)."""

    def __init__(self, q: int):
        if q not in _FIELDS:
            if q == 6:
                raise ConstructionError(
                    "q=6: no finite projective plane of order 6 exists")
            raise ConstructionError(
                f"q={q}: not a supported prime power "
                f"(supported: {sorted(_FIELDS)})")
        p, k, red = _FIELDS[q]
        self.q, self.p, self.k = q, p, k
        if k > 1:
            self._check_irreducible(p, k, red)
        self._mul = [[self._mul_slow(a, b) for b in range(q)]
                     for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    @staticmethod
    def _check_irreducible(p: int, k: int, red: tuple) -> None:
        # degree 2 or 3: irreducible iff no root in GF(p)
        for x in range(p):
            acc = pow(x, k, p)
            for i, c in enumerate(red):
                acc = (acc + c * pow(x, i, p)) % p
            if acc == 0:
                raise ConstructionError(
                    f"reduction polynomial for GF({p}^{k}) has root {x}")

    def _digits(self, a: int) -> list:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def add(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        red = _FIELDS[self.q][2]
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                # x^deg = x^(deg-k) * x^k = -x^(deg-k) * red(x)
                for i, rc in enumerate(red):
                    prod[deg - k + i] = (prod[deg - k + i] - c * rc) % p
        return self._undigits(prod[:k])

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return self._inv[a]

    @property
    def elements(self):
        return range(self.q)


def finite_field(q: int) -> FiniteField:
    return FiniteField(q)


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """Normalized homogeneous triple over GF(q): first nonzero coord is 1."""

    coords: tuple  # (x, y, z), field-element ints


def _normalize(field: FiniteField, triple) -> ProjectivePoint:
    for c in triple:
        if c != 0:
            s = field.inv(c)
            return ProjectivePoint(tuple(field.mul(s, x) for x in triple))
    raise ConstructionError("zero triple is not a projective point")


def _dot(field: FiniteField, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        acc = field.add(acc, field.mul(x, y))
    return acc


class ProjectivePlane:
    """PG(2,q): points and lines are dual normalized triples; a point
    lies on a line iff their dot product vanishes."""

    def __init__(self, q: int):
        self.field = finite_field(q)
        self.q = q
        pts = set()
        for triple in product(self.field.elements, repeat=3):
            if any(triple):
                pts.add(_normalize(self.field, triple))
        self.points = sorted(pts)
        self.lines = list(self.points)  # self-dual coordinates
        assert len(self.points) == q * q + q + 1

    def incident(self, point: ProjectivePoint, line: ProjectivePoint) -> bool:
        return _dot(self.field, point.coords, line.coords) == 0

    def points_on(self, line: ProjectivePoint) -> list:
        return [p for p in self.points if self.incident(p, line)]

    def lines_through(self, point: ProjectivePoint) -> list:
        return [l for l in self.lines if self.incident(point, l)]


def truncated_projective_plane(q: int) -> PartiteHypergraph:
    """(q+1)-partite intersecting hypergraph with q^2 edges and tau = q.

    Remove the canonical first point of PG(2,q) together with the q+1
    lines through it; those lines (minus the removed point) become the
    parts, the remaining q^2 lines become the edges.  Every vertex has
    degree q.
    """
    plane = ProjectivePlane(q)
    removed = plane.points[0]
    part_lines = plane.lines_through(removed)
    # vertex -> (part, index), canonical point order within each part
    place = {}
    for p, line in enumerate(part_lines):
        members = [pt for pt in plane.points_on(line) if pt != removed]
        for j, pt in enumerate(members):
            place[pt] = (p + 1, j + 1)
    edges = []
    for line in plane.lines:
        if plane.incident(removed, line):
            continue
        row = [0] * len(part_lines)
        for pt in plane.points_on(line):
            part, idx = place[pt]
            if row[part - 1]:
                raise AssertionError("two points of one edge in one part")
            row[part - 1] = idx
        if 0 in row:
            raise AssertionError("edge missing a part")
        edges.append(row)
    h = build([q] * (q + 1), edges)
    for v in h.vertices():
        # plane axioms give degree q per vertex; checked, not assumed
        if h.degree(v) != q:
            raise AssertionError(f"vertex {v} has degree {h.degree(v)} != {q}")
    return h


def pad_to(h: PartiteHypergraph, s: int) -> PartiteHypergraph:
    """Lift to s parts by giving edge j the fresh vertex j in each new
    part; preserves tau, nu and the intersecting property."""
    if s < h.r:
        raise ConstructionError(f"cannot pad {h.r}-partite down to {s} parts")
    if s == h.r:
        return h
    new_size = max(h.m, 1)
    sizes = list(h.part_sizes) + [new_size] * (s - h.r)
    edges = [list(row) + [j] * (s - h.r)
             for j, row in enumerate(h.edge_rows(), start=1)]
    return build(sizes, edges)


_F6_EDGES = [
    (1, 4, 4, 5, 3, 5),
    (2, 5, 2, 5, 5, 3),
    (3, 4, 5, 3, 4, 3),
    (4, 1, 5, 4, 5, 5),
    (4, 5, 4, 2, 4, 4),
    (5, 2, 5, 5, 1, 4),
    (5, 5, 1, 3, 2, 5),
    (5, 4, 3, 2, 5, 2),
    (5, 3, 4, 4, 3, 3),
    (6, 2, 4, 3, 5, 1),
    (6, 4, 2, 4, 2, 4),
    (6, 5, 5, 1, 3, 2),
    (6, 3, 3, 5, 4, 5),
]

_F7_EDGES = [
    (1, 1, 1, 1, 1, 1, 1),
    (1, 2, 2, 2, 2, 3, 3),
    (1, 3, 3, 3, 3, 4, 4),
    (1, 4, 4, 4, 4, 5, 5),
    (2, 1, 2, 3, 4, 6, 6),
    (3, 1, 2, 5, 5, 4, 5),
    (5, 3, 2, 6, 1, 5, 2),
    (4, 2, 6, 1, 4, 4, 2),
    (3, 5, 3, 1, 2, 5, 6),
    (3, 6, 4, 3, 2, 1, 2),
    (6, 2, 1, 3, 5, 5, 1),
    (3, 3, 5, 2, 4, 2, 1),
    (5, 3, 1, 4, 2, 4, 6),
    (1, 6, 6, 6, 5, 2, 6),
    (2, 3, 4, 1, 5, 3, 7),
    (4, 1, 4, 2, 3, 5, 6),
    (2, 5, 4, 6, 2, 4, 1),
    (3, 6, 4, 3, 1, 4, 3),
    (3, 1, 1, 6, 4, 3, 4),
    (4, 3, 1, 3, 2, 2, 5),
    (1, 3, 1, 3, 6, 4, 6),
    (4, 6, 2, 1, 4, 4, 1),
]


def paper_instance(name: str) -> PartiteHypergraph:
    """Built-in extremal instances: 'f6' (6-partite, 13 edges, tau=5)
    and 'f7' (7-partite, 22 edges, tau=6)."""
    if name == "f6":
        return build([6, 5, 5, 5, 5, 5], _F6_EDGES)
    if name == "f7":
        return build([6, 6, 6, 6, 6, 6, 7], _F7_EDGES)
    raise ConstructionError(f"unknown instance {name!r} (known: f6, f7)")
