import math
import random
from itertools import combinations

import pytest

from ryser.core import (FormatError, HypergraphError, VertexRef, build,
                        load, parse, render, save)

from conftest import random_instance


def test_build_basic():
    h = build([2, 2], [(1, 1), (1, 2), (2, 1)])
    assert h.r == 2
    assert h.m == 3
    assert h.part_sizes == (2, 2)
    assert h.n_vertices == 4
    assert h.edge_row(1) == (1, 1)
    assert h.edge(2) == (VertexRef(1, 1), VertexRef(2, 2))
    assert h.edge_rows() == ((1, 1), (1, 2), (2, 1))


def test_build_rejects_bad_input():
    with pytest.raises(HypergraphError):
        build([], [])
    with pytest.raises(HypergraphError):
        build([2, 0], [])
    with pytest.raises(HypergraphError):
        build([2, 2], [(1,)])
    with pytest.raises(HypergraphError):
        build([2, 2], [(1, 3)])
    with pytest.raises(HypergraphError):
        build([2, 2], [(1, 1), (1, 1)])
    # duplicates allowed only on request
    h = build([2, 2], [(1, 1), (1, 1)], allow_duplicates=True)
    assert h.m == 2


def test_degree_and_star_queries():
    h = build([2, 3], [(1, 1), (1, 2), (2, 1), (2, 3)])
    v = VertexRef(1, 1)
    assert h.degree(v) == 2
    assert h.edges_through(v) == frozenset({1, 2})
    assert h.codegree(VertexRef(1, 1), VertexRef(2, 1)) == 1
    with pytest.raises(HypergraphError):
        h.codegree(v, v)
    assert h.edge_intersection_size(1, 2) == 1
    assert h.edge_intersection_size(1, 4) == 0
    with pytest.raises(HypergraphError):
        h.edge_intersection_size(2, 2)
    with pytest.raises(HypergraphError):
        h.degree(VertexRef(3, 1))
    with pytest.raises(HypergraphError):
        h.edge(5)


def test_is_intersecting_witness():
    h = build([2, 2], [(1, 1), (2, 2)])
    ok, witness = h.is_intersecting()
    assert not ok and witness == (1, 2)
    h2 = build([2, 2], [(1, 1), (1, 2)])
    assert h2.is_intersecting() == (True, None)


def test_matching_number_oracle():
    rng = random.Random(3)
    for _ in range(120):
        h = random_instance(rng)
        # brute force: largest set of pairwise disjoint edges
        best = 0
        ids = range(1, h.m + 1)
        for size in range(1, h.m + 1):
            if any(all(h.edge_intersection_size(i, j) == 0
                       for i, j in combinations(sub, 2))
                   for sub in combinations(ids, size)):
                best = size
        assert h.matching_number() == best


def test_nu_one_iff_intersecting():
    rng = random.Random(4)
    for _ in range(200):
        h = random_instance(rng)
        if h.m == 0:
            continue
        assert (h.matching_number() == 1) == h.is_intersecting()[0]


def test_delete_star_and_subhypergraph(f6):
    g = f6.delete_star(VertexRef(1, 6))
    assert g.m == 9  # E10..E13 removed
    assert g.edge_rows() == f6.edge_rows()[:9]
    sub = f6.subhypergraph([2, 5, 7])
    assert sub.m == 3
    assert sub.edge_rows() == tuple(f6.edge_rows()[i] for i in (1, 4, 6))


def test_degree_profile_and_budget():
    rng = random.Random(5)
    for _ in range(150):
        h = random_instance(rng)
        profile = h.degree_profile()
        assert sum(profile.degrees.values()) == h.m * h.r
        # handshake identity: sum_{i<j} |Ei cap Ej| = sum_v C(d(v), 2)
        available, required = h.intersection_budget()
        pair_sum = sum(h.edge_intersection_size(i, j)
                       for i, j in combinations(range(1, h.m + 1), 2))
        assert available == pair_sum
        assert required == math.comb(h.m, 2)


def test_parse_render_round_trip(f6, f7):
    for h in (f6, f7):
        text = render(h)
        again = parse(text)
        assert again == h
        assert render(again) == text


def test_parse_comments_and_blanks():
    text = "# a comment\n\nparts 2 2\n# another\n1 1\n 2 2 \n"
    h = parse(text)
    assert h.m == 2
    assert h.edge_rows() == ((1, 1), (2, 2))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as exc:
        parse("parts 2 2\n1 1\n1 3\n")
    assert exc.value.line == 3
    with pytest.raises(FormatError) as exc:
        parse("1 1\n")
    assert exc.value.line == 1
    with pytest.raises(FormatError) as exc:
        parse("parts 2 2\n1\n")
    assert exc.value.line == 2
    with pytest.raises(FormatError) as exc:
        parse("parts 2 x\n")
    assert exc.value.line == 1
    with pytest.raises(FormatError) as exc:
        parse("parts 2 2\n1 1\n1 1\n")
    assert exc.value.line == 3
    with pytest.raises(FormatError):
        parse("# only comments\n")


def test_save_load_round_trip(tmp_path, f6):
    path = tmp_path / "f6.txt"
    save(f6, path)
    assert load(path) == f6
    # byte-identical on a second write cycle
    path2 = tmp_path / "f6b.txt"
    save(load(path), path2)
    assert path.read_bytes() == path2.read_bytes()
