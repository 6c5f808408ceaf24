import random

import pytest

from ryser.core import PartiteHypergraph, build
from ryser.constructions import paper_instance


@pytest.fixture(scope="session")
def f6() -> PartiteHypergraph:
    return paper_instance("f6")


@pytest.fixture(scope="session")
def f7() -> PartiteHypergraph:
    return paper_instance("f7")


def relabel(h: PartiteHypergraph, rng: random.Random) -> PartiteHypergraph:
    """A random isomorphic image: permute parts, vertex labels within
    each part, and edge order."""
    part_perm = list(range(h.r))
    rng.shuffle(part_perm)
    vperms = []
    for p in part_perm:
        perm = list(range(1, h.part_sizes[p] + 1))
        rng.shuffle(perm)
        vperms.append(perm)
    rows = [tuple(vperms[q][row[p] - 1]
                  for q, p in enumerate(part_perm))
            for row in h.edge_rows()]
    rng.shuffle(rows)
    return build([h.part_sizes[p] for p in part_perm], rows)


def random_instance(rng: random.Random, force_intersecting=False,
                    max_edges=10, max_vertices=12) -> PartiteHypergraph:
    """Small random instance: r in 2..4, total vertices <= max_vertices.

    With force_intersecting, rejection-sample a few times and finally
    fall back to routing every edge through vertex (1,1).
    """
    for attempt in range(8):
        r = rng.randint(2, 4)
        sizes = [rng.randint(1, 3) for _ in range(r)]
        while sum(sizes) > max_vertices:
            sizes[sizes.index(max(sizes))] -= 1
        m_target = rng.randint(1, max_edges)
        edges = set()
        for _ in range(4 * m_target):
            if len(edges) == m_target:
                break
            edges.add(tuple(rng.randint(1, k) for k in sizes))
        h = build(sizes, sorted(edges))
        if not force_intersecting or h.is_intersecting()[0]:
            return h
    # fall back: a star through (1,1) is always intersecting
    edges = set()
    for _ in range(4 * m_target):
        if len(edges) == m_target:
            break
        edges.add((1,) + tuple(rng.randint(1, k) for k in sizes[1:]))
    return build(sizes, sorted(edges))
