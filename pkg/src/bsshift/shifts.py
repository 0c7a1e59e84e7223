"""Root shifts at parameter points, unshift subspaces and solitude statistics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .engine import build_gm_table, g1_matrix
from .errors import (
    IntegerShiftableRoot,
    M1Violation,
    NotSolitary,
    PreconditionFailed,
    RegimeViolation,
)
from .polynomial import ParamPolynomial
from .singularity import SingularityClass, check_m1, is_over_or_equal, regime_check


@dataclass(frozen=True)
class ShiftReport:
    r: tuple[int, ...]
    roots: frozenset[Fraction]
    shiftable: frozenset[Fraction]
    point: tuple[Fraction, ...]

    @property
    def shifted(self) -> frozenset[Fraction]:
        return self.shiftable - self.roots

    @property
    def unshifted_shiftable(self) -> frozenset[Fraction]:
        return self.shiftable & self.roots


@dataclass(frozen=True)
class SubspaceSystem:
    j: int
    target_rank: int
    constrained: tuple[int, ...]
    sources: dict[int, int]
    triangular: dict[int, ParamPolynomial]
    solved: dict[int, ParamPolynomial]

    @property
    def codimension(self) -> int:
        return len(self.constrained)

    def specialize(self, free_values: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        """Values of the constrained parameters at given free values (missing free ones are 0)."""
        nvars = next(iter(self.solved.values())).nvars
        point = [Fraction(free_values.get(i, 0)) for i in range(1, nvars + 1)]
        out: dict[int, Fraction] = {}
        for jp in self.constrained:
            out[jp] = self.solved[jp].evaluate(point)
        return out

    def full_point(self, free_values: Mapping[int, Fraction | int]) -> tuple[Fraction, ...]:
        nvars = next(iter(self.solved.values())).nvars
        vals = {i: Fraction(free_values.get(i, 0)) for i in range(1, nvars + 1)}
        vals.update(self.specialize(free_values))
        return tuple(vals[i] for i in range(1, nvars + 1))


def _gate(s: SingularityClass) -> None:
    if not regime_check(s):
        raise RegimeViolation(f"{s} has minimal spectral number {s.min_alpha} < n/2 - 1")
    m1 = check_m1(s, restricted=True)
    if not m1.holds:
        raise M1Violation(f"{s} has repeated non-integer spectral numbers {list(map(str, m1.violations))}")


def shiftable_roots(s: SingularityClass) -> frozenset[Fraction]:
    _gate(s)
    bound = s.min_alpha + 1
    return frozenset(a for a in s.alphas if a > bound)


def _check_integer_shiftable(s: SingularityClass) -> None:
    bound = s.min_alpha + 1
    bad = sorted({a for a in s.alphas if a > bound and a.denominator == 1})
    if bad:
        raise IntegerShiftableRoot(f"integer shiftable spectral numbers {list(map(str, bad))}")


def _point_tuple(s: SingularityClass, u) -> tuple[Fraction, ...]:
    if isinstance(u, Mapping):
        vals = [Fraction(0)] * len(s.J)
        for j, v in u.items():
            vals[j - 1] = Fraction(v)
        return tuple(vals)
    vals = tuple(Fraction(v) for v in u)
    if len(vals) != len(s.J):
        raise PreconditionFailed(f"expected {len(s.J)} parameter values, got {len(vals)}")
    return vals


def shift_vector(
    s: SingularityClass,
    u,
    g1: Mapping[tuple[int, int], ParamPolynomial] | None = None,
) -> tuple[int, ...]:
    """``r_l = 1`` iff some ``g1[k, l]`` is nonzero at ``u`` (no gating)."""
    point = _point_tuple(s, u)
    shiftable_cols = [l for l in range(s.delta + 1, s.mu + 1) if s.alphas[l - 1] > s.min_alpha + 1]
    r = [0] * s.mu
    if not any(point):
        return tuple(r)
    if g1 is None:
        table = build_gm_table(s, point, shiftable_cols)
        for l in shiftable_cols:
            for b in s.basis:
                term = table.entries.get((b.nu, l))
                if term is not None and term.order == 1 and term.poly:
                    r[l - 1] = 1
                    break
    else:
        for (k, l), poly in g1.items():
            if l in shiftable_cols and not r[l - 1] and poly.evaluate(point):
                r[l - 1] = 1
    return tuple(r)


def shifts_at_point(
    s: SingularityClass,
    u,
    g1: Mapping[tuple[int, int], ParamPolynomial] | None = None,
) -> ShiftReport:
    """Shift vector and root set up to sign at a rational parameter point."""
    _gate(s)
    _check_integer_shiftable(s)
    point = _point_tuple(s, u)
    r = shift_vector(s, point, g1)
    roots = frozenset(a - x for a, x in zip(s.alphas, r))
    return ShiftReport(r=r, roots=roots, shiftable=shiftable_roots(s), point=point)


def j_for_root(s: SingularityClass, alpha: Fraction) -> int:
    """Deformation index whose spectral rank carries ``alpha``."""
    for e in s.J:
        if s.alphas[e.spectral_rank - 1] == alpha:
            return e.j
    raise PreconditionFailed(f"{alpha} is not a shiftable spectral number of {s}")


def unshift_subspace(s: SingularityClass, j: int) -> SubspaceSystem:
    """Equations of the locus where the spectral number of rank ``j + delta`` stays a root."""
    _gate(s)
    if not 1 <= j <= len(s.J):
        raise PreconditionFailed(f"j must be in [1, {len(s.J)}]")
    target = s.J[j - 1]
    l = target.spectral_rank
    lower = [e for e in s.J if is_over_or_equal(target.exponent, e.exponent)]
    g1 = g1_matrix(s, targets=[l])
    nvars = len(s.J)
    triangular: dict[int, ParamPolynomial] = {}
    sources: dict[int, int] = {}
    for e in lower:
        src = tuple(x - y + 1 for x, y in zip(target.exponent, e.exponent))
        k = s.rank_of[src]
        poly = g1.get((k, l), ParamPolynomial.zero(nvars))
        var = ParamPolynomial.var(nvars, e.j)
        lin = poly.coefficient(var.sorted_terms()[0][0])
        if lin != -1:
            raise ArithmeticError(f"g1[{k},{l}] has coefficient {lin} on u{e.j}, expected -1")
        rhs = poly + var
        if e.j in rhs.variables():
            raise ArithmeticError(f"u{e.j} survives in its own equation")
        triangular[e.j] = rhs
        sources[e.j] = k
    order = sorted(triangular, key=lambda jp: (s.J[jp - 1].gamma, jp))
    solved: dict[int, ParamPolynomial] = {}
    for jp in order:
        solved[jp] = triangular[jp].substitute(solved) if solved else triangular[jp]
    return SubspaceSystem(
        j=j,
        target_rank=l,
        constrained=tuple(order),
        sources=sources,
        triangular=triangular,
        solved=solved,
    )


def solitude(s: SingularityClass, roots, alpha: Fraction) -> tuple[Fraction, Fraction]:
    """Solitude ratio and distance of the unique unshifted shiftable root ``alpha``."""
    roots = frozenset(roots)
    shiftable = shiftable_roots(s)
    unshifted = shiftable & roots
    if alpha not in roots or unshifted != {alpha}:
        raise NotSolitary(
            f"{alpha} is not the unique unshifted shiftable root (unshifted: {sorted(map(str, unshifted))})"
        )
    sr = Fraction(sum(1 for x in shiftable if 0 < x < alpha), len(shiftable))
    sd = min(abs(alpha - x) for x in roots if x != alpha)
    return sr, sd


def max_root_shift_check(
    s: SingularityClass,
    u,
    g1: Mapping[tuple[int, int], ParamPolynomial] | None = None,
) -> bool:
    """If any parameter is nonzero, the largest spectral number must be shifted."""
    point = _point_tuple(s, u)
    if not any(point):
        return True
    report = shifts_at_point(s, point, g1)
    return report.r[s.mu - 1] == 1


def root_distribution_text(s: SingularityClass, report: ShiftReport) -> str:
    """One slot per ``1/M`` step from the minimal to the maximal spectral number.

    ``●`` marks a root up to sign, ``○`` a spectral number that is shifted
    away, ``·`` anything else.
    """
    m = s.common_denominator
    spectral = set(s.alphas)
    lo = min(min(report.roots), min(spectral))
    hi = max(max(report.roots), max(spectral))
    lo_i, hi_i = int(lo * m), int(hi * m)
    chars = []
    for t in range(lo_i, hi_i + 1):
        v = Fraction(t, m)
        if v in report.roots:
            chars.append("●")
        elif v in spectral:
            chars.append("○")
        else:
            chars.append("·")
    line = "".join(chars)
    marks = []
    for v in sorted(report.shifted):
        marks.append(f"○{v.numerator * (m // v.denominator)}/{m}")
    for v in sorted(report.unshifted_shiftable):
        marks.append(f"●{v.numerator * (m // v.denominator)}/{m}")
    return f"{lo_i}/{m} {line} {hi_i}/{m}\n" + " ".join(marks)
