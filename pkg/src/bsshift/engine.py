"""Leading asymptotic terms of monomial forms and the order-one matrix ``g1``.

For the deformation ``f = f1 + sum_j u_j h_j`` every monomial form
``omega^nu`` expands in the elementary sections ``v_l`` of the leading part
as ``sum_l sum_o c_{l,o}(u) dt^o v_l``.  The relation

    (dt t - alpha(nu)) omega^nu = - sum_j gamma_j u_j dt omega^(nu + nu_j)

fixes every coefficient off the graded piece, so the table is filled by
decreasing weighted degree of ``nu``: the graded piece comes from
``graded_reduce`` and the rest is folded in from ``nu + nu_j``.

Columns (targets ``l``) never interact, so the table is built one column at a
time over the monomials that can still reach a basis form with nonnegative
parameter-degree budget.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import (
    NonTerminating,
    PreconditionFailed,
    RegimeViolation,
    ResonantDenominator,
    UnsupportedArity,
)
from .polynomial import ParamPolynomial
from .singularity import SingularityClass

Nu = tuple[int, ...]

_MAX_REDUCTION_STEPS = 100_000


@dataclass(frozen=True)
class Reduction:
    """``Gr[omega^nu] = coeff * dt^(-steps) * v_rank``."""
    rank: int
    steps: int
    coeff: Fraction


@dataclass(frozen=True)
class LeadingTerm:
    order: int
    poly: ParamPolynomial


@dataclass
class GMTable:
    singularity: SingularityClass
    entries: dict[tuple[Nu, int], LeadingTerm]
    targets: tuple[int, ...]
    point: tuple[Fraction, ...] | None
    slack: Fraction
    regime: bool

    def basis_entry(self, k: int, l: int) -> LeadingTerm | None:
        return self.entries.get((self.singularity.basis[k - 1].nu, l))


def _require_engine_kind(s: SingularityClass) -> None:
    if s.kind == "loop3":
        raise UnsupportedArity("the recursion handles bp, chain and loop classes only")


def _axis_index(axis) -> int:
    if isinstance(axis, str):
        return "xyz".index(axis)
    return int(axis)


def graded_dt_step(s: SingularityClass, nu: Nu, axis) -> tuple[Nu, Fraction] | None:
    """One graded ``dt`` step ``omega^nu = c dt^(-1) omega^nu'`` along ``axis``.

    Returns ``None`` when the coefficient vanishes.  Raises PreconditionFailed
    when the rule does not apply to ``nu``.
    """
    _require_engine_kind(s)
    i = _axis_index(axis)
    e = s.exponents
    recip = s.normalization == "reciprocal"
    nu = tuple(nu)
    if s.kind == "bp":
        if nu[i] <= e[i]:
            raise PreconditionFailed(f"axis {i} needs nu_{i} > {e[i]}, got {nu}")
        c = Fraction(nu[i] - e[i])
        if not recip:
            c /= e[i]
        target = nu[:i] + (nu[i] - e[i],) + nu[i + 1:]
    elif s.kind == "chain":
        a, b = e
        x, y = nu
        if i == 0:
            if x <= a:
                raise PreconditionFailed(f"chain x-step needs i > {a}, got {nu}")
            c = Fraction(x - a) - Fraction(y, b)
            if not recip:
                c /= a
            target = (x - a, y)
        else:
            if y <= b or x < 2:
                raise PreconditionFailed(f"chain y-step needs j > {b} and i >= 2, got {nu}")
            c = Fraction(y - b)
            if not recip:
                c /= b
            target = (x - 1, y - b)
    else:
        a, b = e
        x, y = nu
        if i == 0:
            if x <= a or y < 2:
                raise PreconditionFailed(f"loop x-step needs i > {a} and j >= 2, got {nu}")
            c = Fraction(b * (x - a) - y + 1, a * b - 1)
            if recip:
                c *= a
            target = (x - a, y - 1)
        else:
            if y <= b or x < 2:
                raise PreconditionFailed(f"loop y-step needs j > {b} and i >= 2, got {nu}")
            c = Fraction(a * (y - b) - x + 1, a * b - 1)
            if recip:
                c *= b
            target = (x - 1, y - b)
    if not c:
        return None
    return target, c


def _jacobian_relation(s: SingularityClass, nu: Nu) -> tuple[Nu, Fraction] | None | bool:
    """Degree-preserving rewrite for pure powers that no ``dt`` step reaches.

    Uses ``[g * df/dx_i dx] = 0`` when ``g`` is free of the other variable.
    Returns False when no relation applies.
    """
    a, b = s.exponents
    x, y = nu
    recip = s.normalization == "reciprocal"
    if s.kind == "chain":
        if x == 1 and y > b:
            # y^b = -a x^(a-1) mod df/dx (unit), -b x^(a-1) (reciprocal)
            return (a, y - b), Fraction(-(b if recip else a))
        if 2 <= x <= a and y == b:
            # x y^(b-1) is a multiple of df/dy: the form is zero
            return None
        return False
    if s.kind == "loop":
        if x > a and y == 1:
            return (x - a + 1, b), Fraction(-(a if recip else b))
        if x == 1 and y > b:
            return (a, y - b + 1), Fraction(-(b if recip else a))
    return False


@lru_cache(maxsize=None)
def _graded_reduce_cached(s: SingularityClass, nu: Nu) -> Reduction | None:
    coeff = Fraction(1)
    steps = 0
    rank_of = s.rank_of
    for _ in range(_MAX_REDUCTION_STEPS):
        rank = rank_of.get(nu)
        if rank is not None:
            return Reduction(rank, steps, coeff)
        if s.kind == "bp":
            axis = next((i for i, (v, k) in enumerate(zip(nu, s.exponents)) if v >= k), None)
            if axis is None or nu[axis] == s.exponents[axis]:
                return None
            nxt = graded_dt_step(s, nu, axis)
            if nxt is None:
                return None
            nu, c = nxt
            coeff *= c
            steps += 1
            continue
        try_steps = []
        for axis in range(2):
            try:
                try_steps.append(graded_dt_step(s, nu, axis))
            except PreconditionFailed:
                pass
        if try_steps:
            # a zero coefficient kills the form whichever rule is used
            if any(t is None for t in try_steps):
                return None
            nonneg = [t for t in try_steps if t[1] > 0]
            nu, c = (nonneg or try_steps)[0]
            coeff *= c
            steps += 1
            continue
        rel = _jacobian_relation(s, nu)
        if rel is False:
            raise NonTerminating(f"no reduction rule applies to {nu} for {s}")
        if rel is None:
            return None
        nu, c = rel
        coeff *= c
    raise NonTerminating(f"reduction of {nu} did not terminate for {s}")


def graded_reduce(s: SingularityClass, nu: Iterable[int]) -> Reduction | None:
    """Reduce ``omega^nu`` to ``coeff * dt^(-steps) * v_rank`` in the graded module."""
    _require_engine_kind(s)
    nu = tuple(nu)
    if len(nu) != s.n or min(nu) < 1:
        raise PreconditionFailed(f"nu must have {s.n} positive entries, got {nu}")
    return _graded_reduce_cached(s, nu)


def _normalize_point(s: SingularityClass, params) -> tuple[Fraction, ...] | None:
    if params is None:
        return None
    if isinstance(params, Mapping):
        vals = [Fraction(0)] * len(s.J)
        for j, v in params.items():
            vals[j - 1] = Fraction(v)
        return tuple(vals)
    vals = tuple(Fraction(v) for v in params)
    if len(vals) != len(s.J):
        raise ValueError(f"expected {len(s.J)} parameter values, got {len(vals)}")
    return vals


def _column(s: SingularityClass, l: int, point, slack_scaled: int) -> dict[Nu, LeadingTerm]:
    m = s.common_denominator
    basis = s.basis
    a_l = s.scaled_alpha(basis[l - 1].nu)
    gam = s.scaled_gammas
    exps = [e.exponent for e in s.J]
    nvars = len(s.J)
    if point is None:
        active = list(range(1, nvars + 1))
    else:
        active = [j for j in range(1, nvars + 1) if point[j - 1]]

    # reachable monomials with the largest remaining parameter-degree budget
    budget: dict[Nu, int] = {}
    heap: list[tuple[int, Nu]] = []
    for b in basis:
        rem = a_l - m - s.scaled_alpha(b.nu) + slack_scaled
        if rem >= 0:
            budget[b.nu] = rem
            heapq.heappush(heap, (s.scaled_alpha(b.nu), b.nu))
    while heap:
        _, nu = heapq.heappop(heap)
        rem = budget[nu]
        for j in active:
            g = gam[j - 1]
            if g > rem:
                continue
            nxt = tuple(x + y for x, y in zip(nu, exps[j - 1]))
            if nxt not in budget:
                heapq.heappush(heap, (s.scaled_alpha(nxt), nxt))
                budget[nxt] = rem - g
            elif rem - g > budget[nxt]:
                budget[nxt] = rem - g

    order = sorted(budget, key=lambda nu: (-s.scaled_alpha(nu), nu))
    rank_of = s.rank_of
    entries: dict[Nu, LeadingTerm] = {}
    for nu in order:
        a_nu = s.scaled_alpha(nu)
        acc: dict[int, ParamPolynomial] = {}
        red = _graded_reduce_cached(s, nu)
        if red is not None and red.rank == l:
            acc[-red.steps] = ParamPolynomial.constant(0 if point is not None else nvars, red.coeff)
        for j in active:
            src = entries.get(tuple(x + y for x, y in zip(nu, exps[j - 1])))
            if src is None:
                continue
            o1 = src.order + 1
            d = a_l - o1 * m - a_nu
            if d <= 0:
                raise ResonantDenominator(f"denominator {d}/{m} at {nu}, column {l}")
            factor = Fraction(-gam[j - 1], d)
            if point is None:
                contrib = src.poly.mul_var(j, factor)
            else:
                contrib = src.poly.scale(factor * point[j - 1])
            acc[o1] = acc[o1] + contrib if o1 in acc else contrib
        lead = max((o for o, p in acc.items() if p), default=None)
        if lead is None:
            continue
        if a_l - lead * m - a_nu > budget[nu]:
            continue
        if lead > 1 and nu in rank_of:
            raise RegimeViolation(
                f"basis form {nu} has order {lead} in column {l}; outside the order-one regime"
            )
        entries[nu] = LeadingTerm(lead, acc[lead])
    return entries


def build_gm_table(
    s: SingularityClass,
    params=None,
    targets: Iterable[int] | None = None,
    slack: Fraction | int = 0,
) -> GMTable:
    """Leading terms for every reachable ``(nu, l)``.

    ``params`` is None for formal parameters, else a point (sequence over J or
    a mapping from 1-based j to value).  ``targets`` restricts the columns.
    ``slack`` enlarges the parameter-degree budget (for stability checks).
    """
    _require_engine_kind(s)
    from .singularity import regime_check

    point = _normalize_point(s, params)
    cols = tuple(range(1, s.mu + 1)) if targets is None else tuple(sorted(set(targets)))
    slack = Fraction(slack)
    slack_scaled = int(slack * s.common_denominator)
    if slack_scaled != slack * s.common_denominator:
        raise ValueError("slack must be a multiple of 1/M")
    entries: dict[tuple[Nu, int], LeadingTerm] = {}
    for l in cols:
        for nu, term in _column(s, l, point, slack_scaled).items():
            entries[(nu, l)] = term
    return GMTable(s, entries, cols, point, slack, regime_check(s))


def g1_matrix(
    s: SingularityClass,
    table: GMTable | None = None,
    targets: Iterable[int] | None = None,
    slack: Fraction | int = 0,
) -> dict[tuple[int, int], ParamPolynomial]:
    """Nonzero order-one coefficients ``g1[k, l]`` as parameter polynomials."""
    if table is None:
        table = build_gm_table(s, None, targets, slack)
    out: dict[tuple[int, int], ParamPolynomial] = {}
    for l in table.targets:
        for b in s.basis:
            term = table.entries.get((b.nu, l))
            if term is not None and term.order == 1 and term.poly:
                out[(b.rank, l)] = term.poly
    return out


def g1_at_point(s: SingularityClass, point, targets: Iterable[int] | None = None) -> dict[tuple[int, int], Fraction]:
    """Order-one coefficients built directly at a rational point."""
    table = build_gm_table(s, point, targets)
    out: dict[tuple[int, int], Fraction] = {}
    for l in table.targets:
        for b in s.basis:
            term = table.entries.get((b.nu, l))
            if term is not None and term.order == 1 and term.poly:
                out[(b.rank, l)] = term.poly.coefficient(())
    return out


def g1_entry(s: SingularityClass, k: int, l: int) -> ParamPolynomial:
    return g1_matrix(s, targets=[l]).get((k, l), ParamPolynomial.zero(len(s.J)))


def g1_by_monomials(s: SingularityClass, source_nu: Nu, target_nu: Nu) -> ParamPolynomial:
    """Entry addressed by source and target basis exponents (manual mode)."""
    k = s.rank_of[tuple(source_nu)]
    l = s.rank_of[tuple(target_nu)]
    return g1_entry(s, k, l)


# audit ------------------------------------------------------------------


@dataclass
class AuditReport:
    checked_entries: int = 0
    checked_terms: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def multisets_of_degree(scaled_gammas: tuple[int, ...], target: int) -> list[tuple[int, ...]]:
    """Exponent vectors ``m`` over J with ``sum m_j g_j == target``."""
    out: list[tuple[int, ...]] = []
    n = len(scaled_gammas)

    def rec(i: int, rem: int, acc: list[int]) -> None:
        if rem == 0:
            out.append(tuple(acc) + (0,) * (n - i))
            return
        if i == n:
            return
        g = scaled_gammas[i]
        for e in range(rem // g, -1, -1):
            acc.append(e)
            rec(i + 1, rem - e * g, acc)
            acc.pop()

    if target > 0:
        rec(0, target, [])
    return out


def realizable_coefficient(s: SingularityClass, k: int, l: int, mono: tuple[int, ...]) -> Fraction:
    """Graded coefficient when ``nu_k + sum m_j nu_j`` reduces onto ``v_l`` with the right order."""
    nu = list(s.basis[k - 1].nu)
    for e, entry in zip(mono, s.J):
        if e:
            nu = [x + e * y for x, y in zip(nu, entry.exponent)]
    red = graded_reduce(s, nu)
    if red is None or red.rank != l or red.steps != sum(mono) - 1:
        return Fraction(0)
    return red.coeff


def coefficient_law_audit(s: SingularityClass, g1: Mapping[tuple[int, int], ParamPolynomial]) -> AuditReport:
    """Check degree, sign, linear-coefficient and fullness laws on every entry."""
    report = AuditReport()
    gammas = [e.gamma for e in s.J]
    m = s.common_denominator
    for l in range(1, s.mu + 1):
        for k in range(1, s.mu + 1):
            deg = s.alphas[l - 1] - s.alphas[k - 1] - 1
            poly = g1.get((k, l))
            if deg <= 0:
                if poly:
                    report.violations.append(f"g1[{k},{l}] nonzero with degree {deg}")
                continue
            report.checked_entries += 1
            expected = {
                mono
                for mono in multisets_of_degree(s.scaled_gammas, int(deg * m))
                if realizable_coefficient(s, k, l, mono)
            }
            present = dict(poly.terms) if poly else {}
            for mono, c in present.items():
                report.checked_terms += 1
                wd = sum((g * e for g, e in zip(gammas, mono)), Fraction(0))
                if wd != deg:
                    report.violations.append(f"g1[{k},{l}] term {mono} has degree {wd}, expected {deg}")
                total = sum(mono)
                if (c > 0) != (total % 2 == 0):
                    report.violations.append(f"g1[{k},{l}] term {mono} has sign of {c} at total degree {total}")
                if total == 1 and c != -1:
                    report.violations.append(f"g1[{k},{l}] linear term {mono} has coefficient {c}")
                if mono not in expected:
                    report.violations.append(f"g1[{k},{l}] term {mono} is not path-realizable")
            for mono in expected - set(present):
                report.violations.append(f"g1[{k},{l}] misses realizable monomial {mono}")
    return report
