"""Recompute the worked examples and print roots, subspaces and solitude data."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from fractions import Fraction

from bsshift import fmt, make_singularity, root_distribution_text, shifts_at_point, solitude, unshift_subspace
from bsshift.shifts import j_for_root


@dataclass(frozen=True)
class Example:
    name: str
    kind: str
    exponents: tuple[int, ...]
    normalization: str
    root: Fraction
    free_values: dict[int, Fraction] = field(default_factory=dict)


EXAMPLES = (
    Example("bp 9,4", "bp", (9, 4), "unit", Fraction(55, 36), {1: Fraction(1)}),
    Example("bp 8,7", "bp", (8, 7), "unit", Fraction(83, 56), {j: Fraction(2, 3) for j in (1, 2, 5, 6, 8, 9, 10)}),
    Example("bp 9,7", "bp", (9, 7), "reciprocal", Fraction(92, 63), {j: Fraction(1) for j in (1, 2, 5, 6)}),
    Example("loop 6,5", "loop", (6, 5), "reciprocal", Fraction(45, 29), {1: Fraction(1)}),
    Example("chain 7,5", "chain", (7, 5), "reciprocal", Fraction(54, 35), {1: Fraction(1)}),
    Example("bp 7,5,3", "bp", (7, 5, 3), "reciprocal", Fraction(202, 105), {1: Fraction(1), 2: Fraction(1)}),
)


def run(example: Example, show_diagram: bool) -> None:
    s = make_singularity(example.kind, example.exponents, example.normalization)
    start = time.perf_counter()
    system = unshift_subspace(s, j_for_root(s, example.root))
    names = [f"u{e.j}" for e in s.J]
    point = system.full_point(example.free_values)
    report = shifts_at_point(s, point)
    elapsed = time.perf_counter() - start
    print(f"== {example.name} ({example.normalization}), root {fmt(example.root)}  [{elapsed:.2f} s]")
    for j in system.constrained:
        print(f"   u{j} = {system.solved[j].to_string(names)}")
    values = ", ".join(f"u{j}={fmt(v)}" for j, v in enumerate(point, start=1) if v)
    print(f"   point: {values}")
    print(f"   shifted: {' '.join(fmt(x) for x in sorted(report.shifted))}")
    print(f"   unshifted shiftable: {' '.join(fmt(x) for x in sorted(report.unshifted_shiftable))}")
    if report.unshifted_shiftable == {example.root}:
        sr, sd = solitude(s, report.roots, example.root)
        print(f"   SR = {fmt(sr)}, SD = {fmt(sd)}")
    if show_diagram:
        print("   " + root_distribution_text(s, report).replace("\n", "\n   "))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--diagram", action="store_true", help="print root distribution diagrams")
    parser.add_argument("--only", help="run examples whose name contains this text")
    args = parser.parse_args()
    for example in EXAMPLES:
        if args.only and args.only not in example.name:
            continue
        run(example, args.diagram)


if __name__ == "__main__":
    main()
