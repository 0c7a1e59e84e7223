from fractions import Fraction as F

import pytest

from bsshift.errors import (
    IntegerShiftableRoot,
    M1Violation,
    NotSolitary,
    PreconditionFailed,
    RegimeViolation,
)
from bsshift.shifts import (
    _check_integer_shiftable,
    j_for_root,
    max_root_shift_check,
    root_distribution_text,
    shift_vector,
    shiftable_roots,
    shifts_at_point,
    solitude,
    unshift_subspace,
)
from bsshift.singularity import make_singularity

from conftest import cls, g1, poly


def test_shiftable_roots_count_matches_j():
    for s in (cls("bp", (9, 4)), cls("loop", (6, 5)), cls("chain", (7, 5)), cls("bp", (8, 7))):
        roots = shiftable_roots(s)
        assert len(roots) == len(s.J)
        assert roots == {s.alphas[e.spectral_rank - 1] for e in s.J}


def test_bp87_subspaces_for_five_roots():
    # golden: subspaces for the roots 83, 82, 81, 76, 75 over 56
    s = cls("bp", (8, 7))
    expected_solved = {
        83: {3: "5/16*u1^2", 4: "5/8*u1*u2", 7: "1/3584*u1^6 + 15/1792*u1^3*u2^2 + 65/1792*u2^4 + 5/8*u1*u5"},
        82: {2: "0", 3: "3/8*u1^2", 6: "-5/112*u1^3*u4"},
        81: {1: "0", 2: "0", 5: "2/7*u4^2"},
        76: {4: "1/2*u1*u2"},
        75: {3: "5/16*u1^2"},
    }
    for root, solved in expected_solved.items():
        system = unshift_subspace(s, j_for_root(s, F(root, 56)))
        assert set(system.constrained) == set(solved)
        for j, text in solved.items():
            assert system.solved[j] == poly(s, text), (root, j)


def test_triangular_equation_is_g1_plus_linear_term():
    s = cls("bp", (8, 7))
    table = g1("bp", (8, 7))
    system = unshift_subspace(s, 6)
    for jp, k in system.sources.items():
        assert system.triangular[jp] == table[(k, system.target_rank)] + poly(s, f"u{jp}")
    assert system.sources[6] == 1 and system.target_rank == 38


def test_bp76_constant_c3():
    # golden: c''' = -5/16464 and c'' = 5/14 from the root of j = 5
    s = cls("bp", (7, 6))
    system = unshift_subspace(s, 5)
    assert system.solved[5] == poly(s, "-5/16464*u1^5")
    assert system.solved[3] == poly(s, "5/14*u1^2")
    assert system.solved[2] == poly(s, "0")


def test_bp94_constants():
    # golden: c' = 1/3 (j = 2), c'' = 7/18 and c''' = 2429/1259712 (j = 3)
    s = cls("bp", (9, 4))
    assert unshift_subspace(s, 2).solved[2] == poly(s, "1/3*u1^2")
    sys3 = unshift_subspace(s, 3)
    assert sys3.solved[2] == poly(s, "7/18*u1^2")
    assert sys3.solved[3] == poly(s, "2429/1259712*u1^6")
    s75 = cls("bp", (7, 5))
    assert unshift_subspace(s75, 2).solved[2] == poly(s75, "6/175*u1^4")


def test_bp97_solved_forms():
    # golden: the three polynomials for the root 92/63 (reciprocal coefficients)
    s = cls("bp", (9, 7), "reciprocal")
    system = unshift_subspace(s, j_for_root(s, F(92, 63)))
    assert system.constrained == (3, 4, 7)
    u3 = poly(s, "44/3*u1^4 + 4*u1*u2")
    assert system.triangular[3] == u3
    u4_ref = poly(s, "748/5*u1^6 + 176/3*u1^3*u2 - 16*u1^2*u3 + 2*u2^2")
    assert system.solved[4] == u4_ref.substitute({3: u3})
    u7_ref = poly(
        s,
        "-1444507328/14175*u1^13 - 20975504/945*u1^10*u2 - 11696/15*u1^7*u2^2 + 676/9*u1^4*u2^3"
        " + 6424/15*u1^5*u5 + 8/3*u1*u2^4 + 48*u1^2*u2*u5 + 176/3*u1^3*u6 + 4*u2*u6",
    )
    assert system.solved[7] == u7_ref


def test_bp753_u10_polynomial():
    # golden: the 24-term polynomial for the root 202/105
    s = cls("bp", (7, 5, 3), "reciprocal")
    system = unshift_subspace(s, 10)
    assert system.constrained == (3, 5, 10)
    assert system.solved[3] == poly(s, "2*u1*u2")
    # the reference u5 equation has a stray "- u5" term; the consistent one omits it
    assert system.triangular[5] == poly(s, "-7*u1^4*u2 + 4*u1^3*u3 + 14*u1*u2^3 - 6*u2^2*u3 + 2*u2*u4")
    u10 = poly(
        s,
        "-374/27*u1^13 + 162*u1^10*u2^2 - 678*u1^7*u2^4 + 4176/5*u1^4*u2^6 + 442/9*u1^9*u4"
        " - 2223/5*u1*u2^8 - 285*u1^6*u2^2*u4 + 366*u1^3*u2^4*u4 + 26*u1^7*u6 - 91*u2^6*u4"
        " - 42*u1^5*u4^2 - 142*u1^4*u2^2*u6 + 60*u1^2*u2^2*u4^2 + 158*u1*u2^4*u6"
        " - 28*u1^3*u4*u6 - 4*u1^3*u2*u7 - 7*u1^4*u8 + 14/3*u1*u4^3 + 18*u2^2*u4*u6"
        " + 14*u2^3*u7 + 18*u1*u2^2*u8 - 6*u1*u6^2 + 2*u4*u8 + 2*u2*u9",
    )
    assert len(u10.terms) == 24
    assert system.solved[10] == u10


def test_specialize_and_full_point():
    s = cls("loop", (6, 5), "reciprocal")
    system = unshift_subspace(s, j_for_root(s, F(45, 29)))
    assert system.constrained == (2, 3, 5)
    special = system.specialize({1: 1})
    assert special == {2: F(60, 29), 3: F(1320, 841), 5: F(-9504000, 594823321)}
    pt = system.full_point({1: 1})
    assert pt == (1, F(60, 29), F(1320, 841), 0, F(-9504000, 594823321), 0)
    assert system.codimension == 3


def test_bp94_diagram_point():
    # golden: roots 50, 51, 59 shifted, 55 unshifted (all over 36), SR = 1/2, SD = 2/9
    s = cls("bp", (9, 4))
    rep = shifts_at_point(s, [1, F(7, 18), F(2429, 1259712), 0])
    assert rep.shifted == {F(50, 36), F(51, 36), F(59, 36)}
    assert rep.unshifted_shiftable == {F(55, 36)}
    assert solitude(s, rep.roots, F(55, 36)) == (F(1, 2), F(2, 9))
    text = root_distribution_text(s, rep)
    assert text.startswith("13/36 ") and "●55/36" in text and "○59/36" in text


def test_shift_vector_symbolic_and_point_modes_agree():
    s = cls("bp", (8, 7))
    table = g1("bp", (8, 7))
    pts = [
        [1, 2, F(5, 16), F(5, 4), 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        [F(-1, 2), 0, 3, 0, 1, 0, F(2, 3), 0, 0, 1],
    ]
    for pt in pts:
        assert shift_vector(s, pt) == shift_vector(s, pt, table)


def test_mapping_points():
    s = cls("bp", (9, 4))
    assert shifts_at_point(s, {1: 1}).r == shifts_at_point(s, [1, 0, 0, 0]).r
    with pytest.raises(PreconditionFailed):
        shifts_at_point(s, [1, 2])


def test_zero_point_is_unshifted():
    s = cls("bp", (7, 6))
    rep = shifts_at_point(s, [0] * len(s.J))
    assert not any(rep.r)
    assert rep.roots == set(s.alphas)


def test_max_root_shift_check():
    s = cls("bp", (7, 5))
    assert max_root_shift_check(s, [0, 0, 0, 1])
    assert max_root_shift_check(s, [0, 0, 0, 0])


def test_solitude_errors():
    s = cls("bp", (7, 5))
    rep = shifts_at_point(s, [0] * len(s.J))
    with pytest.raises(NotSolitary):
        solitude(s, rep.roots, max(rep.shiftable))


def test_gates():
    with pytest.raises(M1Violation):
        shifts_at_point(make_singularity("bp", (10, 10), "reciprocal"), {9: 8})
    with pytest.raises(RegimeViolation):
        shiftable_roots(make_singularity("bp", (7, 7, 7)))
    with pytest.raises(IntegerShiftableRoot):
        _check_integer_shiftable(make_singularity("bp", (4, 4, 4)))
    with pytest.raises(PreconditionFailed):
        j_for_root(cls("bp", (9, 4)), F(1, 2))
    with pytest.raises(PreconditionFailed):
        unshift_subspace(cls("bp", (9, 4)), 9)
