from fractions import Fraction

import pytest

from kzbraid.circles import CircleDiagram, CircleSeries, enumerate_circle_diagrams
from kzbraid.relations import (
    circle_relations,
    horizontal_relations,
    quotient_dimension,
    reduce,
)
from kzbraid.words import HorizontalSeries, HorizontalWord


def word(n, *chords):
    return HorizontalWord(n, tuple(chords))


def row_series(relation_set, row, n_strands=None, n_circles=None):
    terms = {relation_set.basis[col]: float(coeff) for col, coeff in row}
    if n_strands is not None:
        return HorizontalSeries(n_strands, relation_set.degree, terms)
    return CircleSeries(n_circles, relation_set.degree, terms)


def test_four_term_row_present_n3():
    # the pictured relation on strands 1,2,3 must hold in the quotient
    s = HorizontalSeries(
        3,
        2,
        {
            word(3, (1, 2), (2, 3)): 1.0,
            word(3, (1, 2), (1, 3)): 1.0,
            word(3, (2, 3), (1, 2)): -1.0,
            word(3, (1, 3), (1, 2)): -1.0,
        },
    )
    assert reduce(s).sup_norm() == 0.0


def test_disjoint_commutation_row_n4():
    s = HorizontalSeries(
        4,
        2,
        {word(4, (1, 2), (3, 4)): 1.0, word(4, (3, 4), (1, 2)): -1.0},
    )
    assert reduce(s).sup_norm() == 0.0


def test_two_strand_relations_empty():
    for m in (2, 3, 4):
        assert horizontal_relations(2, m).rows == ()


def test_relation_entries_are_unit_rationals():
    rs = horizontal_relations(3, 3)
    for row in rs.rows:
        for _col, coeff in row:
            assert isinstance(coeff, Fraction)
            assert coeff in (Fraction(1), Fraction(-1))


def test_all_rows_reduce_to_zero():
    for n, m in ((3, 2), (3, 3), (4, 2), (4, 3)):
        rs = horizontal_relations(n, m)
        for row in rs.rows:
            assert reduce(row_series(rs, row, n_strands=n)).sup_norm() == 0.0
    for q, m in ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2)):
        rs = circle_relations(q, m)
        for row in rs.rows:
            assert reduce(row_series(rs, row, n_circles=q)).sup_norm() == 0.0


def test_reduce_zero_series():
    z = HorizontalSeries(3, 3)
    assert reduce(z).sup_norm() == 0.0


def test_reduce_idempotent():
    s = HorizontalSeries(
        3,
        3,
        {
            word(3, (1, 2), (2, 3)): 1.5,
            word(3, (2, 3), (1, 2), (1, 3)): -2j,
            word(3, (1, 3)): 0.25,
        },
    )
    nf = reduce(s)
    again = reduce(nf.to_series())
    assert nf.sup_diff(again) == 0.0


def test_reduce_rejects_foreign_words():
    # a supplied relation set whose basis cannot express the series
    rs = horizontal_relations(3, 2)
    bad = HorizontalSeries(4, 2, {word(4, (1, 4), (1, 4)): 1.0})
    with pytest.raises(ValueError):
        reduce(bad, [rs])


def test_circle_dimensions():
    assert quotient_dimension(0, circles=1) == 1
    assert quotient_dimension(1, circles=1) == 0
    assert quotient_dimension(2, circles=1) == 1
    assert quotient_dimension(3, circles=1) == 1


def test_circle_degree_two_structure():
    diagrams = enumerate_circle_diagrams(1, 2)
    assert len(diagrams) == 2
    killed = [d for d in diagrams if d.has_isolated_chord()]
    assert len(killed) == 1


def test_horizontal_dimensions_match_sympy_rank():
    sympy = pytest.importorskip("sympy")
    for n, m in ((3, 2), (3, 3), (4, 2)):
        rs = horizontal_relations(n, m)
        dense = [[0] * len(rs.basis) for _ in rs.rows]
        for r, row in enumerate(rs.rows):
            for col, coeff in row:
                dense[r][col] = coeff
        assert rs.rank == sympy.Matrix(dense).rank()
        assert quotient_dimension(m, strands=n) == len(rs.basis) - rs.rank


def test_prequotient_two_strand_dims():
    assert [quotient_dimension(m, strands=2) for m in range(4)] == [1, 1, 1, 1]


def test_circle_canonicalization_rotation_invariant():
    base = CircleDiagram((4,), (((0, 0), (0, 2)), ((0, 1), (0, 3))))
    rotated = CircleDiagram((4,), (((0, 1), (0, 3)), ((0, 2), (0, 0))))
    shifted = CircleDiagram((4,), (((0, 3), (0, 1)), ((0, 0), (0, 2))))
    assert base == rotated == shifted


def test_circle_two_circle_rotations_independent():
    a = CircleDiagram((2, 2), (((0, 0), (1, 0)), ((0, 1), (1, 1))))
    b = CircleDiagram((2, 2), (((0, 1), (1, 1)), ((0, 0), (1, 0))))
    c = CircleDiagram((2, 2), (((0, 1), (1, 0)), ((0, 0), (1, 1))))
    assert a == b == c  # rotating one circle by one step maps the matchings onto each other


def test_quotient_dimension_argument_check():
    with pytest.raises(ValueError):
        quotient_dimension(2)
    with pytest.raises(ValueError):
        quotient_dimension(2, strands=3, circles=1)
