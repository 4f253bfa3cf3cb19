"""Partitions, pyramids, alignments, adjacency chains, neutral gradings.

Oracles: hand-transcribed coordinate tables for small pyramids; the
structural definitions (good-grading inequalities, isotropic pair
dimensions) recomputed inline from first principles.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wgen.pyramid import (Partition, build_pyramid, grading_difference,
                          is_adjacent_right, is_neutral, lagrangian_pair,
                          m_pairs, neutral_h, p_pairs, right_aligned_chain)

partitions = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(Partition)


# ---------------------------------------------------------------------------
# Partition
# ---------------------------------------------------------------------------

def test_partition_sorts_and_validates():
    p = Partition([1, 3, 2])
    assert p.parts == (3, 2, 1)
    assert (p.n, p.r, p.p1, p.r1) == (6, 3, 3, 1)
    with pytest.raises(ValueError):
        Partition([])
    with pytest.raises(ValueError):
        Partition([2, 0])


def test_partition_groups():
    assert Partition([3, 3, 2, 1]).groups() == [(3, 2), (2, 1), (1, 1)]
    assert Partition([2, 2]).groups() == [(2, 2)]


# ---------------------------------------------------------------------------
# alignments: x-coordinates
# ---------------------------------------------------------------------------

def test_alignment_coordinates_2_1():
    # hand values: longest row spans x in {-1/2, 1/2} doubled to {-1, 1}
    p = Partition([2, 1])
    right = build_pyramid(p, "right")
    left = build_pyramid(p, "left")
    dyn = build_pyramid(p, "dynkin")
    assert right.rowx2 == (1, 1)
    assert left.rowx2 == (1, -1)
    assert dyn.rowx2 == (1, 0)


def test_alignment_coordinates_3_3_2_1_dynkin():
    # rows of equal length share the right edge; shorter rows centred:
    # length-3 rows end at x=1, the length-2 row at 1/2, the length-1 at 0
    v = build_pyramid(Partition([3, 3, 2, 1]), "dynkin")
    xs = {(v.box_row(b), v.box_k(b)): Fraction(v.x2_of(b), 2)
          for b in v.boxes}
    assert xs[(0, 0)] == 1 and xs[(0, 2)] == -1
    assert xs[(2, 0)] == Fraction(1, 2) and xs[(2, 1)] == Fraction(-1, 2)
    assert xs[(3, 0)] == 0


def test_box_numbering_is_alignment_independent():
    p = Partition([3, 2, 1])
    vr = build_pyramid(p, "right")
    vd = build_pyramid(p, "dynkin")
    assert vr.boxes == vd.boxes
    assert all(vr.box_row(b) == vd.box_row(b) and
               vr.box_k(b) == vd.box_k(b) for b in vr.boxes)
    # canonical order: k ascending, row ascending within k
    keys = [(vr.box_k(b), vr.box_row(b)) for b in vr.boxes]
    assert keys == sorted(keys)


def test_custom_offsets():
    p = Partition([2, 1])
    v = build_pyramid(p, offsets=[0, Fraction(1, 2)])
    assert v.rowx2 == (1, 0)  # equals the dynkin placement
    with pytest.raises(ValueError):
        build_pyramid(p, offsets=[0])
    with pytest.raises(ValueError):
        build_pyramid(p, offsets=[0, Fraction(1, 3)])
    with pytest.raises(ValueError):
        build_pyramid(p, "diagonal")


def test_good_grading_validation():
    # shifting the short row two steps off the long one is not a pyramid
    with pytest.raises(ValueError):
        build_pyramid(Partition([3, 1]), offsets=[0, 3])


@given(partitions)
def test_builtin_alignments_are_good_gradings(p):
    for al in ("right", "left", "dynkin"):
        v = build_pyramid(p, al)     # construction validates
        assert v.partition() == p
        assert len(v.boxes) == p.n


# ---------------------------------------------------------------------------
# neighbor structure and subspaces
# ---------------------------------------------------------------------------

def test_neighbors_and_subspaces_2_1():
    v = build_pyramid(Partition([2, 1]), "right")
    # boxes: 1 = (row 0, k 0), 2 = (row 1, k 0), 3 = (row 0, k 1);
    # k counts from the right, so k = 0 boxes are the rightmost
    assert v.left_neighbor(1) == 3 and v.right_neighbor(3) == 1
    assert v.left_neighbor(3) is None and v.right_neighbor(1) is None
    assert v.v_minus() == frozenset({2, 3})    # ker F: leftmost boxes
    assert v.v_plus() == frozenset({1, 2})     # ker F^t: rightmost boxes
    assert v.v_minus_d() == frozenset({3})     # restricted to longest rows
    assert v.v_plus_d() == frozenset({1})
    assert v.ft_v_minus_d() == frozenset({1})


def test_f_matrix_shifts_right_to_left():
    v = build_pyramid(Partition([3, 1]), "right")
    f = v.f_matrix()
    # F sends each box to its left neighbor (k -> k + 1 within a row)
    pairs = {(ln, b) for b in v.boxes
             for ln in [v.left_neighbor(b)] if ln is not None}
    assert set(f.d) == pairs and all(v == 1 for v in f.d.values())
    # F has doubled degree -2 in every alignment of the pyramid
    for al in ("right", "left", "dynkin"):
        va = build_pyramid(Partition([3, 1]), al)
        for (b, c) in va.f_matrix().d:
            assert va.x2_of(b) - va.x2_of(c) == -2


# ---------------------------------------------------------------------------
# adjacency chains and isotropic pairs
# ---------------------------------------------------------------------------

def test_chain_reaches_right_and_is_adjacent():
    for parts in [(2, 1), (3, 1), (3, 2, 1), (2, 1, 1)]:
        for al in ("left", "dynkin"):
            v = build_pyramid(Partition(list(parts)), al)
            chain = right_aligned_chain(v)
            assert chain[0].rowx2 == v.rowx2
            assert chain[-1].is_right_aligned()
            for g1, g2 in zip(chain, chain[1:]):
                assert is_adjacent_right(g1, g2)


def test_chain_lengths():
    p = Partition([2, 1])
    assert len(right_aligned_chain(build_pyramid(p, "dynkin"))) == 2
    assert len(right_aligned_chain(build_pyramid(p, "left"))) == 3
    assert len(right_aligned_chain(build_pyramid(p, "right"))) == 1


def test_lagrangian_pair_dimensions_and_m_equality():
    # 2 dim l = dim g[1] (doubled degree 1) on each side, and
    # l + g1[>=1] = lt + g2[>=1] as sets of matrix-unit positions
    for parts in [(2, 1), (3, 2, 1), (2, 1, 1)]:
        v = build_pyramid(Partition(list(parts)), "left")
        chain = right_aligned_chain(v)
        for g1, g2 in zip(chain, chain[1:]):
            iso, iso_t = lagrangian_pair(g1, g2)
            odd1 = sum(1 for a in g1.boxes for b in g1.boxes
                       if g1.deg2(a, b) == 1)
            odd2 = sum(1 for a in g2.boxes for b in g2.boxes
                       if g2.deg2(a, b) == 1)
            assert 2 * len(iso) == odd1
            assert 2 * len(iso_t) == odd2
            assert m_pairs(g1, iso) == m_pairs(g2, iso_t)


def test_m_and_p_pairs_partition_all_positions():
    v = build_pyramid(Partition([2, 1]), "dynkin")
    odd = [(a, b) for a in v.boxes for b in v.boxes if v.deg2(a, b) == 1]
    iso = frozenset({odd[0]})
    m = set(m_pairs(v, iso))
    p = set(p_pairs(v, iso))
    assert not (m & p)
    deg2plus = {(a, b) for a in v.boxes for b in v.boxes
                if v.deg2(a, b) >= 2}
    assert deg2plus <= m
    assert set(odd) - iso <= p | m


# ---------------------------------------------------------------------------
# neutral gradings
# ---------------------------------------------------------------------------

def test_grading_difference_is_neutral_on_chain():
    for al in ("left", "dynkin"):
        v = build_pyramid(Partition([3, 2, 1]), al)
        r = right_aligned_chain(v)[-1]
        h = grading_difference(v, r)
        assert is_neutral(v, h)
        assert is_neutral(r, h)


def test_neutral_h_constant_per_row_length():
    v = build_pyramid(Partition([3, 2, 1]), "right")
    h = neutral_h(v, [Fraction(1), Fraction(-2), Fraction(1, 2)])
    assert is_neutral(v, h)
    for b in v.boxes:
        const = {3: Fraction(1), 2: Fraction(-2), 1: Fraction(1, 2)}
        assert h[b] == const[v.rowlen[v.box_row(b)]]
    with pytest.raises(ValueError):
        neutral_h(v, [Fraction(1)])


def test_non_neutral_detected():
    v = build_pyramid(Partition([2, 1]), "right")
    h = {b: Fraction(b) for b in v.boxes}  # distinguishes equal-length rows
    assert not is_neutral(v, h)
