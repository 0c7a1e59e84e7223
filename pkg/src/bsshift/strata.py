"""Semigroup combinatorics of the parameter weights and bistable subsets.

Subsets of J are frozensets of 1-based indices.  Weights are handled as
integers ``g_j = gamma_j * M``; semigroup membership is a bounded
unbounded-knapsack reachability table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import NotBistable, PreconditionFailed
from .singularity import SingularityClass, is_over_or_equal


@dataclass(frozen=True)
class ScaledWeights:
    g: tuple[int, ...]
    bound: int
    scale: int


@dataclass(frozen=True)
class BistableSet:
    subset: frozenset[int]
    removable: frozenset[int]
    is_proper: bool


def scaled_weights(s: SingularityClass) -> ScaledWeights:
    m = s.common_denominator
    bound = int(s.gamma_max * m)
    return ScaledWeights(g=s.scaled_gammas, bound=max(bound, 0), scale=m)


def semigroup_table(generators: Iterable[int], bound: int) -> list[bool]:
    """``table[t]`` is True iff ``t`` is a sum of >= 1 generators (t <= bound)."""
    reach = [False] * (bound + 1)
    reach[0] = True
    for g in sorted(set(generators)):
        for t in range(g, bound + 1):
            if reach[t - g]:
                reach[t] = True
    reach[0] = False
    return reach


def _table(s: SingularityClass, K: Iterable[int]) -> list[bool]:
    sw = scaled_weights(s)
    return semigroup_table((sw.g[j - 1] for j in K), sw.bound)


def sg_membership(s: SingularityClass, K: Iterable[int], target: Fraction) -> bool:
    """Whether ``target`` is a sum of weights ``gamma_k`` (k in K), with repetition."""
    sw = scaled_weights(s)
    t = Fraction(target) * sw.scale
    if t.denominator != 1:
        raise PreconditionFailed(f"{target} is not a multiple of 1/{sw.scale}")
    t = int(t)
    if t <= 0:
        return False
    bound = max(sw.bound, t)
    return semigroup_table((sw.g[j - 1] for j in K), bound)[t]


def is_bistable(s: SingularityClass, K: Iterable[int]) -> bool:
    """Upper closure under the componentwise order and semigroup closure of weights."""
    K = frozenset(K)
    entries = s.J
    for k in K:
        for e in entries:
            if e.j not in K and is_over_or_equal(e.exponent, entries[k - 1].exponent):
                return False
    if K:
        table = _table(s, K)
        sw = scaled_weights(s)
        for e in entries:
            if e.j not in K and table[sw.g[e.j - 1]]:
                return False
    return True


def removable_elements(s: SingularityClass, K: Iterable[int]) -> frozenset[int]:
    K = frozenset(K)
    return frozenset(j for j in K if is_bistable(s, K - {j}))


def enumerate_bistable(s: SingularityClass) -> list[BistableSet]:
    """All bistable subsets, ordered by decreasing size, then by sorted index tuple.

    Removing the minimal-weight layer of a nonempty bistable set leaves a
    bistable set, so every one arises from a smaller one by adjoining a
    nonempty set of equal-weight parameters lighter than all its members.
    """
    full = frozenset(e.j for e in s.J)
    g = scaled_weights(s).g
    layers: dict[int, list[int]] = {}
    for e in s.J:
        layers.setdefault(g[e.j - 1], []).append(e.j)
    found: set[frozenset[int]] = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for K in frontier:
            floor = min((g[j - 1] for j in K), default=None)
            for w, members in layers.items():
                if floor is not None and w >= floor:
                    continue
                for r in range(1, len(members) + 1):
                    for L in combinations(members, r):
                        cand = K | frozenset(L)
                        if cand not in found and is_bistable(s, cand):
                            found.add(cand)
                            nxt.append(cand)
        frontier = nxt
    return [
        BistableSet(subset=K, removable=removable_elements(s, K), is_proper=K != full)
        for K in sorted(found, key=lambda K: (-len(K), sorted(K)))
    ]


def enumerate_bistable_brute_force(s: SingularityClass) -> list[frozenset[int]]:
    idx = [e.j for e in s.J]
    out = []
    for r in range(len(idx), -1, -1):
        for combo in combinations(idx, r):
            if is_bistable(s, combo):
                out.append(frozenset(combo))
    return out


def size_profile(sets: Iterable[BistableSet | frozenset[int]], total: int) -> list[int]:
    """Counts of nonempty bistable subsets with ``|K| = total, total-1, ..., 1``."""
    counts = [0] * (total + 1)
    for K in sets:
        sub = K.subset if isinstance(K, BistableSet) else K
        counts[len(sub)] += 1
    return [counts[i] for i in range(total, 0, -1)]


def minimal_generators(s: SingularityClass) -> frozenset[int]:
    """Minimal generating subset of the weight semigroup, by increasing weight."""
    sw = scaled_weights(s)
    chosen: list[int] = []
    for e in s.J:
        g = sw.g[e.j - 1]
        table = semigroup_table((sw.g[j - 1] for j in chosen), g)
        if not table[g]:
            chosen.append(e.j)
    return frozenset(chosen)


def classify_parameter(s: SingularityClass, K: Iterable[int], j: int) -> frozenset[str]:
    """Which of the cases (i), (ii), (iii) apply to ``j`` inside ``K``.

    (i)   gamma_j is not generated by K without j: a nonzero u_j forces the
          shift for every j' over j in K;
    (ii)  gamma_j is generated by the rest of K: the shift is generic only;
    (iii) as (ii) with j minimal in K for the componentwise order, so an
          unshift witness exists.
    """
    K = frozenset(K)
    if j not in K:
        raise PreconditionFailed(f"{j} is not in K")
    rest = K - {j}
    if not sg_membership(s, rest, s.J[j - 1].gamma):
        return frozenset({"i"})
    tags = {"ii"}
    minimal = all(
        not is_over_or_equal(s.J[j - 1].exponent, s.J[k - 1].exponent) for k in rest
    )
    if minimal:
        tags.add("iii")
    return frozenset(tags)


def generic_shift_pattern(s: SingularityClass, K: Iterable[int]) -> tuple[int, ...]:
    """Shift vector at a general point of the coordinate subspace ``V_K``."""
    K = frozenset(K)
    if not is_bistable(s, K):
        raise NotBistable(f"{sorted(K)} is not bistable")
    r = [0] * s.mu
    for j in K:
        r[s.J[j - 1].spectral_rank - 1] = 1
    return tuple(r)


def random_point_on(s: SingularityClass, K: Iterable[int], rng: random.Random) -> tuple[Fraction, ...]:
    """Parameters nonzero exactly on K, numerators in [-9, 9] minus 0, denominators in [1, 9]."""
    K = frozenset(K)
    vals = []
    for e in s.J:
        if e.j in K:
            num = rng.choice([x for x in range(-9, 10) if x])
            vals.append(Fraction(num, rng.randint(1, 9)))
        else:
            vals.append(Fraction(0))
    return tuple(vals)


def poset_edges(sets: Iterable[BistableSet]) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Cover relations ``K' < K`` of the stratification poset (removing one removable element)."""
    sets = list(sets)
    present = {b.subset for b in sets}
    edges = []
    for b in sets:
        for j in sorted(b.removable):
            if b.subset - {j} in present:
                edges.append((b.subset - {j}, b.subset))
    return edges
