from fractions import Fraction

import pytest

from ryser.analysis import (HypothesisError, check_8edge_lemma,
                            classify_degree_scheme, codegree_coverage_audit,
                            degree_table, find_regular_subhypergraphs,
                            linearity_report, render_degree_table,
                            ryser_ratio)
from ryser.core import VertexRef, build
from ryser.cover import cover_number

# one representative of the 6-partite, 8-edge, intersecting, tau=4,
# four-vertices-per-part family (canonical labels, 1-based)
WITNESS_8EDGE_ROWS = [
    (1, 1, 1, 1, 1, 1),
    (1, 1, 2, 2, 2, 2),
    (1, 2, 3, 3, 3, 3),
    (2, 1, 3, 4, 4, 4),
    (2, 2, 4, 1, 1, 2),
    (3, 3, 1, 3, 4, 2),
    (3, 4, 2, 1, 3, 4),
    (4, 3, 2, 4, 1, 3),
]


@pytest.fixture(scope="module")
def witness8():
    return build([4] * 6, WITNESS_8EDGE_ROWS)


# golden copy of the published degree breakdown of the 13-edge instance:
# vertex -> the exact set of edge ids through it
F6_STARS = {
    (1, 1): {1}, (1, 2): {2}, (1, 3): {3}, (1, 4): {4, 5},
    (1, 5): {6, 7, 8, 9}, (1, 6): {10, 11, 12, 13},
    (2, 1): {4}, (2, 2): {6, 10}, (2, 3): {9, 13},
    (2, 4): {1, 3, 8, 11}, (2, 5): {2, 5, 7, 12},
    (3, 1): {7}, (3, 2): {2, 11}, (3, 3): {8, 13},
    (3, 4): {1, 5, 9, 10}, (3, 5): {3, 4, 6, 12},
    (4, 1): {12}, (4, 2): {5, 8}, (4, 3): {3, 7, 10},
    (4, 4): {4, 9, 11}, (4, 5): {1, 2, 6, 13},
    (5, 1): {6}, (5, 2): {7, 11}, (5, 3): {1, 9, 12},
    (5, 4): {3, 5, 13}, (5, 5): {2, 4, 8, 10},
    (6, 1): {10}, (6, 2): {8, 12}, (6, 3): {2, 3, 9},
    (6, 4): {5, 6, 11}, (6, 5): {1, 4, 7, 13},
}


def test_f6_degree_table_golden(f6):
    for (p, j), ids in F6_STARS.items():
        assert f6.edges_through(VertexRef(p, j)) == frozenset(ids)
    table = degree_table(f6)
    assert table.max_degree == 4
    for p in range(1, 7):
        for d in range(1, 5):
            expected = sorted((VertexRef(p, j), tuple(sorted(ids)))
                              for (pp, j), ids in F6_STARS.items()
                              if pp == p and len(ids) == d)
            assert sorted(table.group(p, d)) == expected


def test_render_degree_table(f6):
    text = render_degree_table(f6)
    lines = text.splitlines()
    assert lines[0].split() == ["part", "deg", "1", "deg", "2", "deg", "3",
                                "deg", "4"]
    assert len(lines) == 7
    assert "E((1,4)) = {E4, E5}" in text
    assert "E((6,5)) = {E1, E4, E7, E13}" in text


def test_f6_linearity(f6):
    rep = linearity_report(f6, ignore=[1])
    assert rep.is_linear
    rep = linearity_report(f6)
    assert rep.pairs == (((1, 9), 2), ((1, 13), 2))


def test_f7_linearity_not_required(f7):
    # documents behavior only: the 22-edge instance is not linear
    assert not linearity_report(f7).is_linear


# published degree-2 5-edge linear subhypergraphs of the 13-edge instance
S1 = (1, 2, 3, 4, 5)
S2 = (4, 6, 9, 10, 13)
S3 = (2, 7, 8, 11, 13)


def test_regular_subhypergraphs(f6):
    found = find_regular_subhypergraphs(f6, d=2, size=5)
    assert len(found) == 102
    for s in (S1, S2, S3):
        assert s in found
        sub = f6.subhypergraph(s)
        assert cover_number(sub)[0] == 3
    with pytest.raises(Exception):
        find_regular_subhypergraphs(f6, d=0, size=5)


def test_8edge_lemma_hypotheses(f6, f7):
    with pytest.raises(HypothesisError, match="6 parts"):
        check_8edge_lemma(f7)
    with pytest.raises(HypothesisError, match="8 edges"):
        check_8edge_lemma(f6)
    disjoint = build([2] * 6, [(1,) * 6, (2,) * 6] + [
        (1, 1, 1, 1, 1, 2), (1, 1, 1, 1, 2, 1), (1, 1, 1, 2, 1, 1),
        (1, 1, 2, 1, 1, 1), (1, 2, 1, 1, 1, 1), (2, 1, 1, 1, 1, 1)])
    with pytest.raises(HypothesisError, match="not intersecting"):
        check_8edge_lemma(disjoint)
    star = build([1, 8, 8, 8, 8, 8],
                 [(1, j, j, j, j, j) for j in range(1, 9)])
    with pytest.raises(HypothesisError, match="cover number 4"):
        check_8edge_lemma(star)
    with pytest.raises(HypothesisError):
        classify_degree_scheme(f6)


def test_8edge_lemma_on_witness(witness8):
    assert cover_number(witness8)[0] == 4
    report = check_8edge_lemma(witness8)
    assert report.deg3_in_every_part
    assert len(report.deg3_vertices) == 6
    assert len({v.part for v in report.deg3_vertices}) == 6
    assert report.heavy_pair == (1, 2)
    scheme = classify_degree_scheme(witness8)
    assert scheme.kinds == ("TypeA",) * 6
    assert scheme.multisets == ((3, 2, 2, 1),) * 6


def test_codegree_audit_golden(f6):
    pivots = [VertexRef(4, 5), VertexRef(5, 5), VertexRef(6, 5)]
    audit = codegree_coverage_audit(f6, pivots)
    assert audit.pivot_blockers == {
        VertexRef(4, 5): (VertexRef(4, 3), VertexRef(4, 4)),
        VertexRef(5, 5): (VertexRef(5, 3), VertexRef(5, 4), VertexRef(6, 4)),
        VertexRef(6, 5): (VertexRef(6, 3), VertexRef(6, 4)),
    }
    p4, p5, p6 = pivots
    assert audit.pair_blockers == {
        (p4, p5): (), (p4, p6): (), (p5, p6): (VertexRef(6, 4),)}
    # union stars of pivot pairs stay within 7 edges
    for pair, (inter, union) in audit.pair_star_sizes.items():
        assert union <= 7
        assert inter >= 1
    with pytest.raises(Exception):
        codegree_coverage_audit(f6, [])


def test_ryser_ratio(f6, f7, witness8):
    assert ryser_ratio(f6) == 1
    assert ryser_ratio(f7) == 1
    assert ryser_ratio(witness8) == Fraction(4, 5)
