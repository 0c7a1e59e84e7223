"""Count bistable subsets over a grid of two-variable Brieskorn-Pham classes."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from bsshift import enumerate_bistable, make_singularity, minimal_generators
from bsshift.strata import enumerate_bistable_brute_force, size_profile


@dataclass(frozen=True)
class SurveyConfig:
    min_exponent: int = 4
    max_exponent: int = 9
    brute_force_limit: int = 12


def survey(cfg: SurveyConfig) -> None:
    print(f"{'class':<10} {'|J|':>4} {'nonempty':>9} {'J_mg':<10} {'brute':>6} {'sec':>6}  profile")
    for a in range(cfg.min_exponent, cfg.max_exponent + 1):
        for b in range(cfg.min_exponent, a + 1):
            s = make_singularity("bp", (a, b))
            start = time.perf_counter()
            sets = enumerate_bistable(s)
            elapsed = time.perf_counter() - start
            nonempty = [x for x in sets if x.subset]
            brute = "-"
            if len(s.J) <= cfg.brute_force_limit:
                brute = "ok" if set(enumerate_bistable_brute_force(s)) == {x.subset for x in sets} else "DIFF"
            mg = ",".join(map(str, sorted(minimal_generators(s))))
            profile = " ".join(map(str, size_profile(nonempty, len(s.J))))
            print(f"bp:{a},{b:<5} {len(s.J):>4} {len(nonempty):>9} {mg:<10} {brute:>6} {elapsed:>6.2f}  {profile}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min", type=int, default=SurveyConfig.min_exponent)
    parser.add_argument("--max", type=int, default=SurveyConfig.max_exponent)
    parser.add_argument("--brute-force-limit", type=int, default=SurveyConfig.brute_force_limit)
    args = parser.parse_args()
    survey(SurveyConfig(args.min, args.max, args.brute_force_limit))


if __name__ == "__main__":
    main()
