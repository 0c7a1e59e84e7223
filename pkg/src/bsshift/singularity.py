"""Singularity classes: weights, Milnor bases, spectra and deformation monomials.

A class is the weighted homogeneous leading part ``f1`` of the deformation
``f = f1 + sum_j u_j h_j``.  Supported shapes:

* ``bp``    x1^e1 + ... + xn^en
* ``chain`` x^a + x y^b
* ``loop``  x^a y + x y^b
* ``loop3`` x^a y + y^b z + x z^c

A form ``[x^(nu - 1) dx]`` is addressed by its exponent vector ``nu`` with
all entries >= 1, so ``nu = (1, 1)`` is ``dx dy``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Literal

from .errors import ExponentTooSmall, UnsupportedArity

Kind = Literal["bp", "chain", "loop", "loop3"]
Normalization = Literal["unit", "reciprocal"]

KINDS: tuple[str, ...] = ("bp", "chain", "loop", "loop3")
NORMALIZATIONS: tuple[str, ...] = ("unit", "reciprocal")


@dataclass(frozen=True)
class BasisElement:
    nu: tuple[int, ...]
    alpha: Fraction
    rank: int


@dataclass(frozen=True)
class JEntry:
    j: int
    exponent: tuple[int, ...]
    gamma: Fraction
    spectral_rank: int


@dataclass(frozen=True)
class M1Report:
    holds: bool
    violations: tuple[Fraction, ...]


@dataclass(frozen=True)
class SingularityClass:
    kind: str
    exponents: tuple[int, ...]
    normalization: str = "unit"

    @property
    def n(self) -> int:
        return len(self.exponents)

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(map(str, self.exponents))} ({self.normalization})"

    @property
    def descriptor(self) -> str:
        return f"{self.kind}:{','.join(map(str, self.exponents))}"

    # weights -------------------------------------------------------------

    @cached_property
    def weights(self) -> tuple[Fraction, ...]:
        e = self.exponents
        if self.kind == "bp":
            return tuple(Fraction(1, x) for x in e)
        if self.kind == "chain":
            a, b = e
            return (Fraction(1, a), Fraction(a - 1, a * b))
        if self.kind == "loop":
            a, b = e
            return (Fraction(b - 1, a * b - 1), Fraction(a - 1, a * b - 1))
        a, b, c = e
        d = a * b * c + 1
        return (
            Fraction((b - 1) * c + 1, d),
            Fraction((c - 1) * a + 1, d),
            Fraction((a - 1) * b + 1, d),
        )

    @cached_property
    def common_denominator(self) -> int:
        return math.lcm(*(w.denominator for w in self.weights))

    @cached_property
    def scaled_weights(self) -> tuple[int, ...]:
        m = self.common_denominator
        return tuple(int(w * m) for w in self.weights)

    def scaled_alpha(self, nu: tuple[int, ...]) -> int:
        """``alpha(nu) * M`` as an integer."""
        return sum(a * w for a, w in zip(nu, self.scaled_weights))

    def alpha(self, nu: tuple[int, ...]) -> Fraction:
        return Fraction(self.scaled_alpha(nu), self.common_denominator)

    # Milnor basis ----------------------------------------------------------

    def in_basis_lattice(self, nu: tuple[int, ...]) -> bool:
        e = self.exponents
        if any(x < 1 for x in nu):
            return False
        if self.kind == "bp":
            return all(x <= k - 1 for x, k in zip(nu, e))
        if self.kind == "chain":
            a, b = e
            i, j = nu
            return (i <= a and j <= b - 1) or (i, j) == (1, b)
        return all(x <= k for x, k in zip(nu, e))

    @cached_property
    def basis(self) -> tuple[BasisElement, ...]:
        e = self.exponents
        if self.kind == "bp":
            ranges = [range(1, k) for k in e]
        elif self.kind == "chain":
            ranges = [range(1, e[0] + 1), range(1, e[1] + 1)]
        else:
            ranges = [range(1, k + 1) for k in e]
        nus = [nu for nu in product(*ranges) if self.in_basis_lattice(nu)]
        nus.sort(key=lambda nu: (self.scaled_alpha(nu), nu))
        return tuple(
            BasisElement(nu=nu, alpha=self.alpha(nu), rank=r)
            for r, nu in enumerate(nus, start=1)
        )

    @cached_property
    def rank_of(self) -> dict[tuple[int, ...], int]:
        return {b.nu: b.rank for b in self.basis}

    @property
    def mu(self) -> int:
        return len(self.basis)

    @cached_property
    def alphas(self) -> tuple[Fraction, ...]:
        """Spectral numbers indexed by rank - 1."""
        return tuple(b.alpha for b in self.basis)

    @property
    def min_alpha(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    # deformation monomials -------------------------------------------------

    @cached_property
    def J(self) -> tuple[JEntry, ...]:
        cands = []
        for b in self.basis:
            expo = tuple(x - 1 for x in b.nu)
            gamma = self.alpha(expo) - 1
            if gamma > 0:
                cands.append((gamma, expo))
        cands.sort()
        delta = self.mu - len(cands)
        return tuple(
            JEntry(j=j, exponent=expo, gamma=g, spectral_rank=j + delta)
            for j, (g, expo) in enumerate(cands, start=1)
        )

    @property
    def delta(self) -> int:
        return self.mu - len(self.J)

    @cached_property
    def scaled_gammas(self) -> tuple[int, ...]:
        m = self.common_denominator
        return tuple(int(e.gamma * m) for e in self.J)

    @cached_property
    def j_of_exponent(self) -> dict[tuple[int, ...], int]:
        return {e.exponent: e.j for e in self.J}

    @property
    def gamma_max(self) -> Fraction:
        """Largest relevant parameter degree, ``n - 2*min_alpha - 1``."""
        return self.n - 2 * self.min_alpha - 1

    def f1_terms(self) -> list[tuple[Fraction, tuple[int, ...]]]:
        """Monomials of the leading part with their coefficients."""
        e = self.exponents
        n = self.n
        recip = self.normalization == "reciprocal"
        terms: list[tuple[Fraction, tuple[int, ...]]] = []
        if self.kind == "bp":
            for i, k in enumerate(e):
                expo = tuple(k if t == i else 0 for t in range(n))
                terms.append((Fraction(1, k) if recip else Fraction(1), expo))
        elif self.kind == "chain":
            a, b = e
            terms.append((Fraction(1, a) if recip else Fraction(1), (a, 0)))
            terms.append((Fraction(1, b) if recip else Fraction(1), (1, b)))
        elif self.kind == "loop":
            a, b = e
            terms.append((Fraction(1, a) if recip else Fraction(1), (a, 1)))
            terms.append((Fraction(1, b) if recip else Fraction(1), (1, b)))
        else:
            a, b, c = e
            terms.append((Fraction(1, a) if recip else Fraction(1), (a, 1, 0)))
            terms.append((Fraction(1, b) if recip else Fraction(1), (0, b, 1)))
            terms.append((Fraction(1, c) if recip else Fraction(1), (1, 0, c)))
        return terms


def make_singularity(kind: str, exponents, normalization: str = "unit") -> SingularityClass:
    """Validate and build a singularity class."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    exps = tuple(int(x) for x in exponents)
    arity = {"chain": 2, "loop": 2, "loop3": 3}
    if kind in arity and len(exps) != arity[kind]:
        raise UnsupportedArity(f"{kind} needs exactly {arity[kind]} exponents, got {len(exps)}")
    if kind == "bp":
        if len(exps) < 1:
            raise UnsupportedArity("bp needs at least one exponent")
        if min(exps) < 3:
            raise ExponentTooSmall(f"bp exponents must be >= 3, got {exps}")
    elif min(exps) < 2:
        raise ExponentTooSmall(f"{kind} exponents must be >= 2, got {exps}")
    return SingularityClass(kind, exps, normalization)


def milnor_number(s: SingularityClass) -> int:
    e = s.exponents
    if s.kind == "bp":
        return math.prod(k - 1 for k in e)
    if s.kind == "chain":
        a, b = e
        return a * (b - 1) + 1
    return math.prod(e)


def jacobian_basis(s: SingularityClass) -> tuple[BasisElement, ...]:
    return s.basis


def spectrum(s: SingularityClass) -> tuple[Fraction, ...]:
    return s.alphas


def spectrum_from_generating_function(s: SingularityClass) -> tuple[Fraction, ...]:
    """Expand ``prod (t^w - t) / (1 - t^w)`` exactly and read off exponents.

    Works with ``T = t^(1/M)``; each factor is ``(T^a - T^M) * sum_k T^(a k)``
    truncated above degree ``n M``, where the product is a polynomial.
    """
    m = s.common_denominator
    top = s.n * m
    series = {0: 1}
    for a in s.scaled_weights:
        factor: dict[int, int] = {}
        k = 0
        while a * k + a <= top:
            factor[a * k + a] = factor.get(a * k + a, 0) + 1
            if a * k + m <= top:
                factor[a * k + m] = factor.get(a * k + m, 0) - 1
            k += 1
        nxt: dict[int, int] = {}
        for d1, c1 in series.items():
            for d2, c2 in factor.items():
                if d1 + d2 <= top:
                    nxt[d1 + d2] = nxt.get(d1 + d2, 0) + c1 * c2
        series = {d: c for d, c in nxt.items() if c}
    out: list[Fraction] = []
    for d in sorted(series):
        c = series[d]
        if c < 0:
            raise ArithmeticError("generating function has a negative coefficient")
        out.extend([Fraction(d, m)] * c)
    return tuple(out)


def eigenvalue_multiplicities(s: SingularityClass) -> dict[Fraction, int]:
    """Spectral-number count per residue class ``alpha mod 1``."""
    counts = Counter(a - math.floor(a) for a in s.alphas)
    return dict(sorted(counts.items()))


def check_m1(s: SingularityClass, restricted: bool = True) -> M1Report:
    """Multiplicity-one condition; restricted ignores ties at integers."""
    counts = Counter(s.alphas)
    bad = tuple(
        a for a, c in sorted(counts.items())
        if c > 1 and not (restricted and a.denominator == 1)
    )
    return M1Report(holds=not bad, violations=bad)


def deformation_monomials(s: SingularityClass) -> tuple[tuple[JEntry, ...], int]:
    return s.J, s.delta


def regime_check(s: SingularityClass) -> bool:
    return 2 * s.min_alpha >= s.n - 2


def partial_order(nu, other) -> str:
    """Componentwise comparison: ``over``, ``under``, ``equal`` or ``incomparable``."""
    if tuple(nu) == tuple(other):
        return "equal"
    if all(x >= y for x, y in zip(nu, other)):
        return "over"
    if all(x <= y for x, y in zip(nu, other)):
        return "under"
    return "incomparable"


def is_over_or_equal(nu, other) -> bool:
    return all(x >= y for x, y in zip(nu, other))


def parse_descriptor(text: str, normalization: str = "reciprocal") -> SingularityClass:
    """``bp:E1,E2[,...]``, ``chain:A,B``, ``loop:A,B`` or ``loop3:A,B,C``."""
    kind, sep, rest = text.partition(":")
    if not sep or kind not in KINDS:
        raise ValueError(f"bad class descriptor {text!r}")
    try:
        exps = [int(x) for x in rest.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad exponents in {text!r}") from exc
    return make_singularity(kind, exps, normalization)
