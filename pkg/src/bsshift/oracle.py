"""Path-sum computation of ``g1`` for two-variable Brieskorn-Pham classes.

Independent of the engine: an ordered sequence ``(j_1, ..., j_r)`` of
deformation monomials contributes

    (-1)^r * prod_i gamma_{j_i} / (gamma_{j_i} + ... + gamma_{j_r})

times the graded factor of the accumulated monomial ``x^p y^q``, namely
``prod_{s>=1} (p+1-s a)/a`` over ``s <= (p+1)//a`` and likewise in ``y``
(no division by ``a``, ``b`` for reciprocal coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import PreconditionFailed, SizeLimit
from .polynomial import ParamPolynomial
from .singularity import SingularityClass

MAX_EXPONENT_SUM = 16


@dataclass(frozen=True)
class PathSequence:
    seq: tuple[int, ...]
    monomial: tuple[int, int]


def _require_bp2(s: SingularityClass) -> None:
    if s.kind != "bp" or s.n != 2:
        raise PreconditionFailed("the path-sum oracle covers two-variable bp classes only")


def graded_factor(s: SingularityClass, monomial: tuple[int, int]) -> Fraction:
    """The product over both variables; zero when some ``p+1`` is a multiple of its exponent."""
    recip = s.normalization == "reciprocal"
    out = Fraction(1)
    for p, a in zip(monomial, s.exponents):
        top = p + 1
        for step in range(1, top // a + 1):
            f = Fraction(top - step * a)
            out *= f if recip else f / a
    return out


def reduced_target(s: SingularityClass, monomial: tuple[int, int]) -> tuple[int, int] | None:
    """Basis exponent reached from ``x^p y^q`` (``None`` when it vanishes)."""
    out = []
    for p, a in zip(monomial, s.exponents):
        r = (p + 1) % a
        if r == 0:
            return None
        out.append(r)
    return tuple(out)


def accumulated_monomial(s: SingularityClass, seq: Sequence[int], source_nu: tuple[int, int]) -> tuple[int, int]:
    p, q = (x - 1 for x in source_nu)
    for j in seq:
        e = s.J[j - 1].exponent
        p += e[0]
        q += e[1]
    return (p, q)


def sequence_weight(s: SingularityClass, seq: Sequence[int]) -> Fraction:
    """``(-1)^r prod_i gamma_{j_i} / sum_{t>=i} gamma_{j_t}``."""
    gam = [s.J[j - 1].gamma for j in seq]
    w = Fraction((-1) ** len(seq))
    tail = sum(gam, Fraction(0))
    for g in gam:
        w *= g / tail
        tail -= g
    return w


def path_weight(s: SingularityClass, seq: Sequence[int], source_nu: tuple[int, int]) -> Fraction:
    _require_bp2(s)
    mono = accumulated_monomial(s, seq, source_nu)
    return sequence_weight(s, seq) * graded_factor(s, mono)


def sequences(s: SingularityClass, degree: Fraction) -> Iterator[tuple[int, ...]]:
    """All ordered sequences of J indices whose weights sum to ``degree``."""
    m = s.common_denominator
    g = s.scaled_gammas
    target = degree * m
    if target.denominator != 1 or target <= 0:
        return
    def rec(rem: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield tuple(acc)
            return
        for j, w in enumerate(g, start=1):
            if w <= rem:
                acc.append(j)
                yield from rec(rem - w, acc)
                acc.pop()
    yield from rec(int(target), [])


def g1_oracle_bruteforce(s: SingularityClass, k: int, l: int) -> ParamPolynomial:
    """Literal sum over ordered sequences (exponential; for small cases)."""
    _require_bp2(s)
    nvars = len(s.J)
    src = s.basis[k - 1].nu
    tgt = s.basis[l - 1].nu
    deg = s.alphas[l - 1] - s.alphas[k - 1] - 1
    out: dict[tuple[int, ...], Fraction] = {}
    for seq in sequences(s, deg):
        mono = accumulated_monomial(s, seq, src)
        if reduced_target(s, mono) != tgt:
            continue
        key = [0] * nvars
        for j in seq:
            key[j - 1] += 1
        key = tuple(key)
        out[key] = out.get(key, 0) + path_weight(s, seq, src)
    return ParamPolynomial(nvars, out)


def g1_oracle(s: SingularityClass, k: int, l: int) -> ParamPolynomial:
    """Sum of path weights over all sequences from source ``k`` to target ``l``.

    Orderings of one multiset share the accumulated monomial, so the sequence
    weights are summed by a recursion over sub-multisets: extending a prefix
    by ``j`` multiplies by ``-gamma_j / (remaining degree)``.
    """
    _require_bp2(s)
    if sum(s.exponents) > MAX_EXPONENT_SUM:
        raise SizeLimit(f"oracle limited to exponent sum <= {MAX_EXPONENT_SUM}")
    nvars = len(s.J)
    m = s.common_denominator
    g = s.scaled_gammas
    src = s.basis[k - 1].nu
    tgt = s.basis[l - 1].nu
    deg = s.alphas[l - 1] - s.alphas[k - 1] - 1
    total = deg * m
    if total <= 0 or total.denominator != 1:
        return ParamPolynomial.zero(nvars)
    total = int(total)
    # prefix weights keyed by multiset; layer r holds prefixes of length r
    layer: dict[tuple[int, ...], Fraction] = {(0,) * nvars: Fraction(1)}
    used = {(0,) * nvars: 0}
    out: dict[tuple[int, ...], Fraction] = {}
    while layer:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for mono, w in layer.items():
            rem = total - used[mono]
            for j in range(1, nvars + 1):
                gj = g[j - 1]
                if gj > rem:
                    continue
                new = mono[: j - 1] + (mono[j - 1] + 1,) + mono[j:]
                nxt[new] = nxt.get(new, 0) + w * Fraction(-gj, rem)
                used[new] = used[mono] + gj
        finished = {mono: w for mono, w in nxt.items() if used[mono] == total}
        for mono, w in finished.items():
            acc = [x - 1 for x in src]
            for j, e in enumerate(mono, start=1):
                if e:
                    acc[0] += e * s.J[j - 1].exponent[0]
                    acc[1] += e * s.J[j - 1].exponent[1]
            acc = tuple(acc)
            if reduced_target(s, acc) == tgt:
                out[mono] = w * graded_factor(s, acc)
        layer = {mono: w for mono, w in nxt.items() if used[mono] < total}
    return ParamPolynomial(nvars, out)


def g1_oracle_matrix(s: SingularityClass) -> dict[tuple[int, int], ParamPolynomial]:
    out = {}
    for l in range(1, s.mu + 1):
        for k in range(1, s.mu + 1):
            if s.alphas[l - 1] - s.alphas[k - 1] - 1 > 0:
                p = g1_oracle(s, k, l)
                if p:
                    out[(k, l)] = p
    return out
