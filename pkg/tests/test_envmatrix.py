"""Laurent-series matrices over U(gl_N): inversion and quasideterminants.

Oracles:

* for scalar matrices (entries in Q[z]), the series inverse and the
  quasideterminant are recomputed with exact rational-function linear
  algebra over Q(z) (a fully independent code path), Laurent-expanded, and
  compared coefficient by coefficient;
* for noncommutative entries, the complementary-block quasideterminant is
  compared against the defining formula (1_U M^{-1} 1_W)^{-1}, and the
  hereditary property is checked on nested keep-sets.
"""

import random
from fractions import Fraction

import pytest

from wgen.ratlin import (F0, F1, rf_add, rf_from_poly, rf_laurent_coeffs,
                         rf_mat_inverse, rf_mul)
from wgen.uea import Env
from wgen.envmatrix import (EMat, ZSeries, inverse, mat_series_equal,
                            quasidet, quasidet_definitional, series_equal)


def zs(*pairs):
    """ZSeries from (exponent, scalar) pairs."""
    return ZSeries({m: Env.scalar(v) for m, v in pairs})


def rand_scalar_lead(rng, n, boxes=None):
    """Random n x n matrix z*1 + A0 with A0 rational: invertible leading
    term, entries as both EMat and rational functions."""
    boxes = boxes or tuple(range(1, n + 1))
    emat = {}
    rf = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            a0 = Fraction(rng.randint(-2, 2))
            lead = F1 if i == j else F0
            poly = [a0, lead]
            rf[i][j] = rf_from_poly(poly)
            z = ZSeries({m: Env.scalar(c) for m, c in enumerate(poly) if c})
            if z.c:
                emat[(boxes[i], boxes[j])] = z
    return EMat(emat), rf, boxes


def laurent_of_rf(x, floor):
    return rf_laurent_coeffs(x, floor)


# ---------------------------------------------------------------------------
# ZSeries basics
# ---------------------------------------------------------------------------

def test_zseries_arithmetic_and_floor():
    a = zs((1, 1), (0, 2))               # z + 2
    b = zs((0, 3), (-1, 1))              # 3 + z^-1
    assert (a + b).c[0] == Env.scalar(5)
    prod = a * b
    assert prod.coeff(1).scalar_part() == 3
    assert prod.coeff(0).scalar_part() == 7
    assert prod.coeff(-1).scalar_part() == 2
    t = ZSeries({0: Env.scalar(1)}, floor=-2)
    assert (a * t).floor == -1           # floor rises by a's top exponent
    assert t.truncate(0).floor == 0


def test_zseries_known_vs_exact_zero():
    assert ZSeries.zero().is_exact_zero()
    z = ZSeries({}, floor=-3)
    assert z.is_known_zero() and not z.is_exact_zero()


def test_series_equal_reports_floor():
    a = zs((0, 1))
    b = ZSeries({0: Env.scalar(1)}, floor=-2)
    eq, fl = series_equal(a, b)
    assert eq and fl == -2
    eq, fl = series_equal(a, zs((0, 1)))
    assert eq and fl is None


def test_emat_matmul_blocks():
    a = EMat({(1, 2): zs((0, 1))})
    b = EMat({(2, 3): zs((1, 5))})
    p = a @ b
    assert p.entry(1, 3).coeff(1).scalar_part() == 5
    assert (b @ a).is_known_zero()


def test_bracket1_mixes_bracket_and_product():
    # entries e_12 and e_21 at matching matrix slots: bracket1 gives
    # [e_12, e_21] = e_11 - e_22 at the product slot
    x = EMat({(1, 1): ZSeries.of(Env.gen(1, 2))})
    y = EMat({(1, 1): ZSeries.of(Env.gen(2, 1))})
    out = x.bracket1(y)
    assert out.entry(1, 1).coeff(0) == Env.gen(1, 1) - Env.gen(2, 2)


# ---------------------------------------------------------------------------
# inverse vs rational-function oracle
# ---------------------------------------------------------------------------

def test_inverse_matches_rational_functions():
    rng = random.Random(17)
    floor = -6
    for _ in range(12):
        n = rng.randint(1, 3)
        m, rf, boxes = rand_scalar_lead(rng, n)
        inv = inverse(m, boxes, boxes, floor=floor)
        oracle = rf_mat_inverse(rf)
        for i in range(n):
            for j in range(n):
                want = laurent_of_rf(oracle[i][j], floor)
                got = inv.entry(boxes[i], boxes[j])
                for e in range(floor, 3):
                    assert got.coeff(e).scalar_part() == want.get(e, F0), \
                        (n, i, j, e)


def test_inverse_two_sided_identity():
    rng = random.Random(19)
    m, _, boxes = rand_scalar_lead(rng, 3)
    inv = inverse(m, boxes, boxes, floor=-5)
    prod = m @ inv
    ident = EMat.identity(boxes)
    ok, fl = mat_series_equal(prod, ident)
    assert ok and fl is not None and fl <= -4
    ok, _ = mat_series_equal(inv @ m, ident)
    assert ok


def test_inverse_rejects_bad_shapes():
    m = EMat({(1, 1): zs((1, 1)), (2, 2): zs((1, 1))})
    with pytest.raises(ValueError):
        inverse(m, [1, 2], [1], floor=-2)
    with pytest.raises(ValueError):
        inverse(m, [1], [1], floor=-2)  # supported outside rows x cols


def test_inverse_with_nilpotent_generator_part():
    # z + e_12 (nilpotent in no sense, but the Neumann series in z^-1
    # converges formally): (z + a)^-1 = z^-1 - z^-2 a + z^-3 a a - ...
    a = Env.gen(1, 2)
    m = EMat({(1, 1): ZSeries({1: Env.scalar(1), 0: a})})
    inv = inverse(m, [1], [1], floor=-3)
    assert inv.entry(1, 1).coeff(-1) == Env.scalar(1)
    assert inv.entry(1, 1).coeff(-2) == -a
    assert inv.entry(1, 1).coeff(-3) == a * a


# ---------------------------------------------------------------------------
# quasideterminants
# ---------------------------------------------------------------------------

def test_quasidet_matches_rational_function_oracle():
    """|M|_{U,W} = (1_U M^{-1} 1_W)^{-1} computed exactly over Q(z)."""
    rng = random.Random(23)
    floor = -5
    for _ in range(10):
        n = rng.randint(2, 4)
        m, rf, boxes = rand_scalar_lead(rng, n)
        k = rng.randint(1, n - 1)
        keep = sorted(rng.sample(range(n), k))
        keep_boxes = [boxes[i] for i in keep]
        qd = quasidet(m, boxes, boxes, keep_cols=set(keep_boxes),
                      keep_rows=set(keep_boxes), floor=floor)
        minv = rf_mat_inverse(rf)
        block = [[minv[i][j] for j in keep] for i in keep]
        want = rf_mat_inverse(block)
        if want is None:
            continue
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                coeffs = laurent_of_rf(want[a][b], floor)
                got = qd.entry(boxes[i], boxes[j])
                for e in range(floor, 4):
                    assert got.coeff(e).scalar_part() == coeffs.get(e, F0)


def test_quasidet_hereditary_on_scalar_matrices():
    """|(|M|_{U1,W1})|_{U2,W2} = |M|_{U2,W2} for U2 in U1, W2 in W1."""
    rng = random.Random(29)
    floor = -4
    for _ in range(8):
        n = 4
        m, _, boxes = rand_scalar_lead(rng, n)
        big = sorted(rng.sample(boxes, 3))
        small = sorted(rng.sample(big, 2))
        outer = quasidet(m, boxes, boxes, keep_cols=set(big),
                         keep_rows=set(big), floor=floor - 4)
        two_step = quasidet(outer, big, big, keep_cols=set(small),
                            keep_rows=set(small), floor=floor)
        one_step = quasidet(m, boxes, boxes, keep_cols=set(small),
                            keep_rows=set(small), floor=floor)
        ok, fl = mat_series_equal(two_step.truncate(floor),
                                  one_step.truncate(floor))
        assert ok and (fl is None or fl <= floor)


def test_quasidet_against_defining_formula_noncommutative():
    # off-diagonal entries are genuine U(gl_2) generators
    e = Env.gen
    m = EMat({
        (1, 1): ZSeries({1: Env.scalar(1)}),
        (1, 2): ZSeries.of(e(1, 2)),
        (2, 1): ZSeries.of(e(2, 1)),
        (2, 2): ZSeries({1: Env.scalar(1)}),
    })
    floor = -3
    a = quasidet(m, [1, 2], [1, 2], keep_cols={1}, keep_rows={1},
                 floor=floor)
    b = quasidet_definitional(m, [1, 2], [1, 2], keep_cols={1},
                              keep_rows={1}, floor=floor)
    ok, fl = mat_series_equal(a.truncate(floor), b.truncate(floor))
    assert ok and fl is not None and fl <= floor
    # leading behaviour: |M|_11 = z - e_12 z^-1 e_21 + ...
    assert a.coeff_smat(1).d == {(1, 1): F1}
    assert a.entry(1, 1).coeff(0) == Env.zero()
    assert a.entry(1, 1).coeff(-1) == -(e(1, 2) * e(2, 1))


def test_quasidet_full_keep_is_identity():
    m = EMat({(1, 1): zs((1, 1), (0, 2)), (1, 2): zs((0, 1)),
              (2, 1): zs((0, 3)), (2, 2): zs((1, 1))})
    qd = quasidet(m, [1, 2], [1, 2], keep_cols={1, 2}, keep_rows={1, 2},
                  floor=None)
    ok, fl = mat_series_equal(qd, m)
    assert ok and fl is None
