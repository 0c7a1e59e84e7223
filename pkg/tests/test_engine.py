from fractions import Fraction as F

import pytest

from bsshift.engine import (
    _jacobian_relation,
    build_gm_table,
    g1_at_point,
    g1_by_monomials,
    g1_entry,
    g1_matrix,
    graded_dt_step,
    graded_reduce,
    multisets_of_degree,
    coefficient_law_audit,
)
from bsshift.errors import PreconditionFailed, UnsupportedArity
from bsshift.polynomial import ParamPolynomial

from conftest import cls, g1, poly


# graded steps [DERIVED: hand-derived from the dt t action on the leading part]

def test_bp_step_unit_and_reciprocal():
    assert graded_dt_step(cls("bp", (9, 4)), (10, 1), 0) == ((1, 1), F(1, 9))
    assert graded_dt_step(cls("bp", (9, 4), "reciprocal"), (10, 1), "x") == ((1, 1), F(1))
    assert graded_dt_step(cls("bp", (9, 4)), (2, 7), "y") == ((2, 3), F(3, 4))
    with pytest.raises(PreconditionFailed):
        graded_dt_step(cls("bp", (9, 4)), (9, 1), 0)


def test_chain_steps():
    s = cls("chain", (7, 5))
    assert graded_dt_step(s, (8, 1), 0) == ((1, 1), F(4, 35))
    assert graded_dt_step(s, (2, 6), 1) == ((1, 1), F(1, 5))
    assert graded_dt_step(cls("chain", (7, 5), "reciprocal"), (8, 1), 0) == ((1, 1), F(4, 5))
    with pytest.raises(PreconditionFailed):
        graded_dt_step(s, (1, 6), 1)


def test_loop_steps():
    s = cls("loop", (6, 5))
    assert graded_dt_step(s, (7, 2), 0) == ((1, 1), F(4, 29))
    assert graded_dt_step(s, (2, 6), 1) == ((1, 1), F(5, 29))
    r = cls("loop", (6, 5), "reciprocal")
    assert graded_dt_step(r, (7, 2), 0) == ((1, 1), F(24, 29))
    assert graded_dt_step(r, (2, 6), 1) == ((1, 1), F(25, 29))


def test_step_lowers_spectral_number_by_one():
    for s in (cls("bp", (9, 4)), cls("chain", (7, 5)), cls("loop", (6, 5))):
        for nu in [(x, y) for x in range(1, 15) for y in range(1, 12)]:
            for axis in (0, 1):
                try:
                    out = graded_dt_step(s, nu, axis)
                except PreconditionFailed:
                    continue
                if out is not None:
                    assert s.alpha(out[0]) == s.alpha(nu) - 1


def test_jacobian_relations():
    # y^(b+k) = -a x^(a-1) y^(k+1) modulo the x-partial of x^a y + x y^b
    assert _jacobian_relation(cls("loop", (6, 5)), (1, 7)) == ((6, 3), F(-6))
    assert _jacobian_relation(cls("loop", (6, 5), "reciprocal"), (1, 7)) == ((6, 3), F(-5))
    assert _jacobian_relation(cls("loop", (6, 5)), (8, 1)) == ((3, 5), F(-5))
    assert _jacobian_relation(cls("chain", (7, 5)), (1, 6)) == ((7, 1), F(-7))
    assert _jacobian_relation(cls("chain", (7, 5)), (3, 5)) is None
    assert _jacobian_relation(cls("chain", (7, 5)), (3, 3)) is False


def test_graded_reduce():
    s = cls("bp", (9, 4))
    red = graded_reduce(s, (10, 1))
    assert (red.rank, red.steps, red.coeff) == (1, 1, F(1, 9))
    red = graded_reduce(s, (19, 1))
    assert (red.rank, red.steps, red.coeff) == (1, 2, F(10, 81))
    assert graded_reduce(s, (9, 1)) is None
    assert graded_reduce(s, (3, 2)).steps == 0
    with pytest.raises(PreconditionFailed):
        graded_reduce(s, (0, 1))
    with pytest.raises(UnsupportedArity):
        graded_reduce(cls("loop3", (3, 2, 2)), (1, 1, 1))


def test_rule_choice_does_not_matter_on_loop():
    # both applicable steps reach the same basis element with equal coefficient
    s = cls("loop", (6, 5))
    for nu in [(x, y) for x in range(7, 13) for y in range(6, 11)]:
        red = graded_reduce(s, nu)
        paths = []
        for axis in (0, 1):
            step = graded_dt_step(s, nu, axis)
            if step is None:
                paths.append(None)
                continue
            rest = graded_reduce(s, step[0])
            paths.append(None if rest is None else (rest.rank, rest.steps + 1, rest.coeff * step[1]))
        got = None if red is None else (red.rank, red.steps, red.coeff)
        assert paths[0] == paths[1] == got


def test_g1_entries_vanish_below_degree():
    s = cls("bp", (7, 5))
    for (k, l) in g1("bp", (7, 5)):
        assert s.alphas[l - 1] - s.alphas[k - 1] > 1


def test_g1_entry_and_monomial_addressing():
    s = cls("bp", (9, 4))
    assert g1_entry(s, 1, 22) == poly(s, "-u2 + 1/3*u1^2")
    assert g1_by_monomials(s, (1, 1), s.basis[21].nu) == g1_entry(s, 1, 22)
    assert g1_entry(s, 1, 2) == ParamPolynomial.zero(4)


def test_point_mode_matches_symbolic():
    s = cls("bp", (8, 7))
    pt = [F(2, 3), F(-1), F(1, 2), 0, F(3), F(1, 5), F(-2, 7), 0, F(1), F(4)]
    sym = g1("bp", (8, 7))
    num = g1_at_point(s, pt)
    expected = {kl: p.evaluate(pt) for kl, p in sym.items() if p.evaluate(pt)}
    assert num == expected


def test_table_records_order_and_targets():
    s = cls("bp", (7, 5))
    table = build_gm_table(s, targets=[s.mu])
    assert table.targets == (s.mu,)
    assert table.regime
    term = table.basis_entry(1, s.mu)
    assert term.order == 1 and term.poly
    assert table.basis_entry(s.mu, s.mu).order == 0


def test_slack_must_be_on_lattice():
    with pytest.raises(ValueError):
        build_gm_table(cls("bp", (7, 5)), slack=F(1, 3))


def test_homogeneous_manual_mode_bp10_10():
    s = cls("bp", (10, 10), "reciprocal")
    keep = {1, 6, 9, 17}
    zero_rest = {e.j: 0 for e in s.J if e.j not in keep}
    a = g1_by_monomials(s, (2, 2), (8, 8)).substitute(zero_rest)
    b = g1_by_monomials(s, (1, 1), (8, 8)).substitute(zero_rest)
    assert a == poly(s, "-u9 + 4*u6^2 + 4*u1^2")
    assert b == poly(s, "-u17 - 64*u1*u6*u9 + 192*u1*u6^3 + 192*u1^3*u6")


def test_multisets_of_degree():
    assert sorted(multisets_of_degree((1, 2), 4)) == [(0, 2), (2, 1), (4, 0)]
    assert multisets_of_degree((1, 2), 0) == []


def test_audit_detects_a_tampered_entry():
    s = cls("bp", (9, 4))
    good = dict(g1("bp", (9, 4)))
    assert coefficient_law_audit(s, good).passed
    bad = dict(good)
    bad[(1, 22)] = poly(s, "-u2 - 1/3*u1^2")
    report = coefficient_law_audit(s, bad)
    assert not report.passed and any("sign" in v for v in report.violations)
    bad[(1, 22)] = poly(s, "-2*u2 + 1/3*u1^2")
    assert any("linear" in v for v in coefficient_law_audit(s, bad).violations)
    bad[(1, 22)] = poly(s, "-u2")
    assert any("misses" in v for v in coefficient_law_audit(s, bad).violations)
