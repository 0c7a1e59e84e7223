from fractions import Fraction as F

import pytest

from bsshift.errors import ExponentTooSmall, UnsupportedArity
from bsshift.singularity import (
    check_m1,
    eigenvalue_multiplicities,
    is_over_or_equal,
    make_singularity,
    milnor_number,
    parse_descriptor,
    partial_order,
    regime_check,
    spectrum,
    spectrum_from_generating_function,
)

from conftest import cls


def test_weights_and_milnor_numbers():
    assert cls("bp", (9, 4)).weights == (F(1, 9), F(1, 4))
    assert cls("chain", (7, 5)).weights == (F(1, 7), F(6, 35))
    assert cls("loop", (6, 5)).weights == (F(4, 29), F(5, 29))
    assert cls("loop3", (2, 3, 4)).weights == (F(9, 25), F(7, 25), F(4, 25))
    assert milnor_number(cls("bp", (8, 7))) == 42
    assert milnor_number(cls("chain", (7, 5))) == 29
    assert milnor_number(cls("loop", (6, 5))) == 30
    assert milnor_number(cls("loop3", (2, 3, 4))) == 24


@pytest.mark.parametrize("kind,e", [("bp", (9, 4)), ("chain", (7, 5)), ("loop", (6, 5)), ("loop3", (3, 2, 2))])
def test_basis_size_equals_milnor_number(kind, e):
    s = cls(kind, e)
    assert s.mu == milnor_number(s)
    assert all(s.in_basis_lattice(b.nu) for b in s.basis)


@pytest.mark.parametrize("kind,e", [("bp", (9, 4, 3)), ("chain", (7, 5)), ("loop", (6, 5)), ("loop3", (2, 3, 4))])
def test_leading_part_is_weighted_homogeneous(kind, e):
    s = cls(kind, e)
    for _, expo in s.f1_terms():
        assert sum(w * x for w, x in zip(s.weights, expo)) == 1


def test_basis_order_and_minimal_spectral_number():
    s = cls("bp", (9, 4))
    assert s.basis[0].nu == (1, 1)
    assert s.min_alpha == F(13, 36)
    assert s.alphas == tuple(sorted(s.alphas))
    assert s.alphas[-1] == F(59, 36)


def test_j_entries_bp94():
    s = cls("bp", (9, 4))
    assert [(e.exponent, e.gamma) for e in s.J] == [
        ((7, 1), F(1, 36)),
        ((5, 2), F(1, 18)),
        ((6, 2), F(1, 6)),
        ((7, 2), F(5, 18)),
    ]
    assert s.delta == 20


def test_j_entries_loop65_and_chain75():
    loop = cls("loop", (6, 5), "reciprocal")
    assert [e.exponent for e in loop.J] == [(5, 2), (4, 3), (3, 4), (5, 3), (4, 4), (5, 4)]
    assert [e.gamma * 29 for e in loop.J] == [1, 2, 3, 6, 7, 11]
    chain = cls("chain", (7, 5), "reciprocal")
    assert [e.exponent for e in chain.J] == [(6, 1), (5, 2), (4, 3), (6, 2), (5, 3), (6, 3)]
    assert [e.gamma * 35 for e in chain.J] == [1, 2, 3, 7, 8, 13]


def test_j_bp87_weights_table():
    s = cls("bp", (8, 7))
    assert [e.gamma * 56 for e in s.J] == [2, 3, 4, 5, 10, 11, 12, 18, 19, 26]
    assert s.J[6].exponent == (4, 5)


def test_j_bp753_weights():
    s = cls("bp", (7, 5, 3))
    assert len(s.J) == 16
    assert s.J[9].gamma == F(26, 105)
    assert s.alphas[s.J[9].spectral_rank - 1] == F(202, 105)


def test_spectrum_symmetry_exact():
    for s in (cls("bp", (8, 7)), cls("loop", (6, 5)), cls("chain", (7, 5)), cls("bp", (7, 5, 3))):
        sp = spectrum(s)
        assert sp == tuple(sorted(s.n - a for a in sp))


def test_generating_function_matches_basis():
    for s in (cls("bp", (9, 7)), cls("loop", (6, 5)), cls("chain", (4, 6)), cls("loop3", (3, 2, 2))):
        assert spectrum_from_generating_function(s) == spectrum(s)


def test_m1():
    assert check_m1(cls("bp", (8, 7))).holds
    assert check_m1(cls("loop", (6, 5))).holds
    bad = check_m1(cls("bp", (10, 10)))
    assert not bad.holds and F(11, 10) in bad.violations
    # unrestricted also flags integer ties
    s = cls("bp", (4, 4))
    assert check_m1(s, restricted=True).holds is False
    assert 1 in check_m1(s, restricted=False).violations


def test_eigenvalue_multiplicities_sum_to_mu():
    s = cls("bp", (9, 4))
    mult = eigenvalue_multiplicities(s)
    assert sum(mult.values()) == s.mu
    assert all(0 <= k < 1 for k in mult)


def test_regime():
    assert regime_check(cls("bp", (9, 4)))
    assert regime_check(cls("bp", (7, 5, 3)))
    assert not regime_check(cls("bp", (7, 7, 7, 7)))


def test_partial_order():
    assert partial_order((3, 4), (3, 4)) == "equal"
    assert partial_order((4, 4), (3, 4)) == "over"
    assert partial_order((3, 3), (3, 4)) == "under"
    assert partial_order((5, 2), (3, 4)) == "incomparable"
    assert is_over_or_equal((5, 5), (5, 2))


def test_validation_errors():
    with pytest.raises(ExponentTooSmall):
        make_singularity("bp", (2, 3))
    with pytest.raises(ExponentTooSmall):
        make_singularity("loop", (1, 3))
    with pytest.raises(UnsupportedArity):
        make_singularity("chain", (3, 4, 5))
    with pytest.raises(ValueError):
        make_singularity("bp", (3, 4), "half")
    with pytest.raises(ValueError):
        parse_descriptor("quux:3,4")


def test_parse_descriptor_default_reciprocal():
    s = parse_descriptor("bp:9,7")
    assert s.normalization == "reciprocal" and s.exponents == (9, 7)
    assert parse_descriptor("loop:6,5", "unit").normalization == "unit"


def test_f1_terms():
    assert cls("bp", (9, 7), "reciprocal").f1_terms() == [(F(1, 9), (9, 0)), (F(1, 7), (0, 7))]
    assert cls("loop", (6, 5)).f1_terms() == [(F(1), (6, 1)), (F(1), (1, 5))]
