"""Command-line front end.

    bsshift SUBCOMMAND DESCRIPTOR [u_j=p/q | u[e1,e2]=p/q ...] [options]

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .engine import g1_matrix, coefficient_law_audit
from .errors import BsshiftError, NotSolitary, PreconditionFailed, UnknownParameter
from .oracle import g1_oracle_matrix
from .polynomial import ParamPolynomial
from .rational import fmt, parse_rational
from .shifts import (
    j_for_root,
    root_distribution_text,
    shifts_at_point,
    solitude,
    unshift_subspace,
)
from .singularity import SingularityClass, check_m1, parse_descriptor, regime_check
from .strata import enumerate_bistable, minimal_generators, size_profile

COMMANDS = ("spectrum", "params", "g1", "shifts", "subspace", "strata", "roots", "singular", "oracle-check")

_DESCRIPTOR = re.compile(r"^(bp|chain|loop|loop3):\d+(,\d+)*$")
_ASSIGNMENT = re.compile(r"^u(?:_?(\d+)|\[(\d+(?:,\d+)*)\])=(.+)$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    descriptor: str
    normalization: str
    assignments: tuple[tuple[str, Fraction], ...]
    json: bool = False
    out: str | None = None
    root: Fraction | None = None
    j: int | None = None
    source: tuple[int, ...] | None = None
    target: tuple[int, ...] | None = None
    only: tuple[int, ...] | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational p/q, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bsshift", description="Exact Bernstein-Sato root shifts from spectral data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "spectrum": "weights, Milnor number and spectrum",
        "params": "deformation monomials u_j with weights and ranks",
        "g1": "order-one Gauss-Manin coefficients (symbolic)",
        "shifts": "shift vector, roots and solitude at a parameter point",
        "subspace": "equations keeping one shiftable root unshifted",
        "strata": "bistable subsets of the parameters",
        "roots": "roots up to sign at a parameter point",
        "singular": "emit a Singular script computing the b-function",
        "oracle-check": "compare the engine with the path-sum oracle",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("descriptor", help="bp:E1,E2[,...] | chain:A,B | loop:A,B | loop3:A,B,C")
        p.add_argument("assignments", nargs="*", help="u_j=p/q or u[e1,e2]=p/q")
        norm = p.add_mutually_exclusive_group()
        norm.add_argument("--unit", dest="normalization", action="store_const", const="unit")
        norm.add_argument("--reciprocal", dest="normalization", action="store_const", const="reciprocal")
        p.set_defaults(normalization="reciprocal")
        p.add_argument("--json", action="store_true", help="canonical JSON output")
        p.add_argument("--out", metavar="FILE", help="write the report to FILE")
        if name in ("subspace", "singular"):
            target = p.add_mutually_exclusive_group(required=name == "subspace")
            target.add_argument("--root", type=_rational, help="shiftable spectral number to keep")
            target.add_argument("--j", type=int, help="deformation index of that root")
        if name == "g1":
            p.add_argument("--source", type=_int_tuple, help="source basis exponent nu (manual mode)")
            p.add_argument("--target", type=_int_tuple, help="target basis exponent nu (manual mode)")
            p.add_argument("--only", type=_int_tuple, help="keep only these u_j (others set to 0)")
    return parser


def parse_job(argv: Sequence[str]) -> JobSpec:
    # assignments may follow options, so argparse leaves them unrecognized
    ns, extra = build_parser().parse_known_args(list(argv))
    if not _DESCRIPTOR.match(ns.descriptor):
        raise UsageError(f"bad class descriptor {ns.descriptor!r}")
    assignments = []
    for text in list(ns.assignments) + extra:
        m = _ASSIGNMENT.match(text)
        if not m:
            raise UsageError(f"unrecognized argument {text!r}")
        name = f"u_{m.group(1)}" if m.group(1) else f"u[{m.group(2)}]"
        try:
            value = parse_rational(m.group(3))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational in {text!r}")
        assignments.append((name, value))
    source = getattr(ns, "source", None)
    target = getattr(ns, "target", None)
    if (source is None) != (target is None):
        raise UsageError("--source and --target go together")
    return JobSpec(
        command=ns.command,
        descriptor=ns.descriptor,
        normalization=ns.normalization,
        assignments=tuple(assignments),
        json=ns.json,
        out=ns.out,
        root=getattr(ns, "root", None),
        j=getattr(ns, "j", None),
        source=source,
        target=target,
        only=getattr(ns, "only", None),
    )


# helpers ------------------------------------------------------------------


def resolve_assignments(s: SingularityClass, assignments: Sequence[tuple[str, Fraction]]) -> dict[int, Fraction]:
    """Map ``u_j`` / ``u[e1,e2]`` names to 1-based J indices."""
    out: dict[int, Fraction] = {}
    for name, value in assignments:
        if name.startswith("u["):
            expo = tuple(int(x) for x in name[2:-1].split(","))
            if expo not in s.j_of_exponent:
                raise UnknownParameter(f"{name}: no deformation monomial with exponent {expo}")
            j = s.j_of_exponent[expo]
        else:
            j = int(name[2:])
            if not 1 <= j <= len(s.J):
                raise UnknownParameter(f"{name}: parameters are u_1..u_{len(s.J)} for {s.descriptor}")
        out[j] = value
    return out


def _names(s: SingularityClass) -> list[str]:
    return [f"u_{e.j}" for e in s.J]


def _vec(nu) -> str:
    return "(" + ",".join(map(str, nu)) + ")"


def _terms_json(poly: ParamPolynomial) -> list[dict]:
    return [
        {"coeff": fmt(c), "powers": [[i + 1, e] for i, e in enumerate(m) if e]}
        for m, c in poly.sorted_terms()
    ]


def _class_json(s: SingularityClass) -> dict:
    return {
        "descriptor": s.descriptor,
        "kind": s.kind,
        "exponents": list(s.exponents),
        "normalization": s.normalization,
        "mu": s.mu,
        "delta": s.delta,
        "min_alpha": fmt(s.min_alpha),
        "M": s.common_denominator,
    }


def _j_json(s: SingularityClass) -> list[dict]:
    return [
        {"j": e.j, "exponent": list(e.exponent), "gamma": fmt(e.gamma), "rank": e.spectral_rank}
        for e in s.J
    ]


def _header(s: SingularityClass) -> list[str]:
    return [
        f"class {s}",
        f"weights {' '.join(fmt(w) for w in s.weights)}  M={s.common_denominator}"
        f"  mu={s.mu}  delta={s.delta}  min spectral number {fmt(s.min_alpha)}",
    ]


def _fracs(values) -> list[str]:
    return [fmt(v) for v in sorted(values)]


def _root_for(s: SingularityClass, job: JobSpec) -> int:
    if job.j is not None:
        if not 1 <= job.j <= len(s.J):
            raise UnknownParameter(f"--j must be in 1..{len(s.J)}")
        return job.j
    return j_for_root(s, job.root)


def _point(s: SingularityClass, values: Mapping[int, Fraction]) -> tuple[Fraction, ...]:
    return tuple(values.get(e.j, Fraction(0)) for e in s.J)


# verification script ------------------------------------------------------


def _ring_vars(n: int) -> list[str]:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x({i})" for i in range(1, n + 1)]


def _monomial(names: Sequence[str], expo: Sequence[int]) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, expo) if e]
    return "*".join(parts) if parts else "1"


def emit_verification_script(
    s: SingularityClass,
    values: Mapping[int, Fraction],
    constrained: Mapping[int, ParamPolynomial] | None = None,
) -> str:
    """Singular script: ring, one line per parameter, ``f`` and ``bernstein(f)``.

    ``constrained`` maps indices to polynomials in the free parameters; those
    lines follow the free ones so every name is defined before use.
    """
    constrained = dict(constrained or {})
    xs = _ring_vars(s.n)
    names = _names(s)
    lines = [f'LIB "gmssing.lib"; ring R=0,({",".join(xs)}),ds;']
    free = [e.j for e in s.J if e.j not in constrained]
    live = []
    for j in free:
        v = Fraction(values.get(j, 0))
        lines.append(f"poly u_{j}={fmt(v)};")
        if v:
            live.append(j)
    for j, poly in constrained.items():
        lines.append(f"poly u_{j}={poly.to_string(names).replace(' ', '')};")
        if poly:
            live.append(j)
    f_terms = []
    for c, expo in s.f1_terms():
        mono = _monomial(xs, expo)
        f_terms.append(mono if c == 1 else f"{fmt(c)}*{mono}")
    for j in sorted(live):
        f_terms.append(f"u_{j}*{_monomial(xs, s.J[j - 1].exponent)}")
    lines.append(f"poly f={'+'.join(f_terms)};")
    lines.append("bernstein(f);")
    return "\n".join(lines) + "\n"


# commands -----------------------------------------------------------------


def _cmd_spectrum(s, job, values, report, text):
    m1 = check_m1(s, restricted=True)
    report["spectrum"] = [fmt(a) for a in s.alphas]
    report["m1"] = {"holds": m1.holds, "violations": [fmt(v) for v in m1.violations]}
    report["regime"] = regime_check(s)
    text.append(f"regime {'ok' if report['regime'] else 'violated'}"
                f"  restricted M1 {'holds' if m1.holds else 'fails at ' + ' '.join(report['m1']['violations'])}")
    text.append("spectrum " + " ".join(report["spectrum"]))


def _cmd_params(s, job, values, report, text):
    report["J"] = _j_json(s)
    text.append(f"{len(s.J)} parameters")
    for e in s.J:
        text.append(f"u_{e.j}  exponent {_vec(e.exponent)}  gamma {fmt(e.gamma)}"
                    f"  rank {e.spectral_rank}  alpha {fmt(s.alphas[e.spectral_rank - 1])}")


def _restrict(poly: ParamPolynomial, s: SingularityClass, only) -> ParamPolynomial:
    if only is None:
        return poly
    keep = set(only)
    return poly.substitute({e.j: 0 for e in s.J if e.j not in keep})


def _cmd_g1(s, job, values, report, text):
    names = _names(s)
    report["J"] = _j_json(s)
    if job.only is not None:
        for j in job.only:
            if not 1 <= j <= len(s.J):
                raise UnknownParameter(f"--only index {j} outside 1..{len(s.J)}")
    if job.source is not None:
        for nu in (job.source, job.target):
            if nu not in s.rank_of:
                raise PreconditionFailed(f"{_vec(nu)} is not a basis exponent of {s.descriptor}")
        k, l = s.rank_of[job.source], s.rank_of[job.target]
        entries = {(k, l): g1_matrix(s, targets=[l]).get((k, l), ParamPolynomial.zero(len(s.J)))}
    else:
        entries = g1_matrix(s)
    entries = {kl: _restrict(p, s, job.only) for kl, p in entries.items()}
    if job.source is None:
        entries = {kl: p for kl, p in entries.items() if p}
    report["g1"] = {}
    for (k, l) in sorted(entries, key=lambda kl: (kl[1], kl[0])):
        poly = entries[(k, l)]
        report["g1"][f"{k},{l}"] = _terms_json(poly)
        src, tgt = s.basis[k - 1].nu, s.basis[l - 1].nu
        text.append(f"[{k},{l}] {_vec(src)}->{_vec(tgt)}: {poly.to_string(names)}")
    if values and job.source is not None:
        (k, l), poly = next(iter(entries.items()))
        text.append(f"value at point: {fmt(poly.evaluate(_point(s, values)))}")


def _shift_report(s, values, report, text, full: bool):
    rep = shifts_at_point(s, _point(s, values))
    report["J"] = _j_json(s)
    report["shifts"] = {
        "r": list(rep.r),
        "roots": _fracs(rep.roots),
        "shifted": _fracs(rep.shifted),
        "unshifted_shiftable": _fracs(rep.unshifted_shiftable),
    }
    if len(rep.unshifted_shiftable) == 1:
        (alpha,) = rep.unshifted_shiftable
        try:
            sr, sd = solitude(s, rep.roots, alpha)
        except NotSolitary:
            pass
        else:
            report["solitude"] = {"root": fmt(alpha), "sr": fmt(sr), "sd": fmt(sd)}
    if full:
        text.append("r " + "".join(map(str, rep.r)))
        text.append("shifted " + (" ".join(report["shifts"]["shifted"]) or "none"))
        text.append("unshifted shiftable " + (" ".join(report["shifts"]["unshifted_shiftable"]) or "none"))
    text.append("roots " + " ".join(report["shifts"]["roots"]))
    if full:
        text.append(root_distribution_text(s, rep))
        if "solitude" in report:
            sol = report["solitude"]
            text.append(f"solitude of {sol['root']}: SR={sol['sr']} SD={sol['sd']}")


def _cmd_shifts(s, job, values, report, text):
    _shift_report(s, values, report, text, full=True)


def _cmd_roots(s, job, values, report, text):
    _shift_report(s, values, report, text, full=False)


def _cmd_subspace(s, job, values, report, text):
    names = _names(s)
    j = _root_for(s, job)
    system = unshift_subspace(s, j)
    alpha = s.alphas[system.target_rank - 1]
    sub = {
        "j": j,
        "root": fmt(alpha),
        "rank": system.target_rank,
        "constrained": list(system.constrained),
        "triangular": {f"u_{jp}": system.triangular[jp].to_string(names) for jp in system.constrained},
        "solved": {f"u_{jp}": system.solved[jp].to_string(names) for jp in system.constrained},
    }
    text.append(f"root {fmt(alpha)}  j={j}  rank {system.target_rank}  codimension {system.codimension}")
    text.append("triangular")
    for jp in system.constrained:
        text.append(f"  u_{jp} = {sub['triangular'][f'u_{jp}']}")
    text.append("solved")
    for jp in system.constrained:
        text.append(f"  u_{jp} = {sub['solved'][f'u_{jp}']}")
    if values:
        special = system.specialize(values)
        sub["specialized"] = {f"u_{jp}": fmt(v) for jp, v in special.items()}
        text.append("specialized")
        for jp, v in special.items():
            text.append(f"  u_{jp} = {fmt(v)}")
    report["subspace"] = sub


def _cmd_strata(s, job, values, report, text):
    sets = enumerate_bistable(s)
    nonempty = [b for b in sets if b.subset]
    profile = size_profile(nonempty, len(s.J))
    report["strata"] = {
        "nonempty": len(nonempty),
        "proper_nonempty": sum(1 for b in nonempty if b.is_proper),
        "profile": profile,
        "subsets": [sorted(b.subset) for b in nonempty],
        "minimal_generators": sorted(minimal_generators(s)),
    }
    text.append(f"{len(nonempty)} nonempty bistable subsets")
    text.append("per size " + " ".join(f"{len(s.J) - i}:{c}" for i, c in enumerate(profile)))
    text.append("minimal generators " + " ".join(f"u_{j}" for j in report["strata"]["minimal_generators"]))
    for b in nonempty:
        text.append("{" + ",".join(map(str, sorted(b.subset))) + "}")


def _cmd_singular(s, job, values, report, text):
    constrained = None
    if job.root is not None or job.j is not None:
        system = unshift_subspace(s, _root_for(s, job))
        constrained = {jp: system.solved[jp] for jp in system.constrained}
        for jp in constrained:
            values.pop(jp, None)
    script = emit_verification_script(s, values, constrained)
    report["script"] = script
    text.append(script.rstrip("\n"))


def _cmd_oracle_check(s, job, values, report, text):
    engine = g1_matrix(s)
    oracle = g1_oracle_matrix(s)
    keys = sorted(set(engine) | set(oracle), key=lambda kl: (kl[1], kl[0]))
    zero = ParamPolynomial.zero(len(s.J))
    mismatches = [f"{k},{l}" for k, l in keys if engine.get((k, l), zero) != oracle.get((k, l), zero)]
    audit = coefficient_law_audit(s, engine)
    report["oracle_check"] = {
        "entries": len(keys),
        "agree": not mismatches,
        "mismatches": mismatches,
        "audit_passed": audit.passed,
    }
    text.append(f"{len(keys)} nonzero entries; oracle {'agrees' if not mismatches else 'disagrees'}"
                f"; degree/sign/linear audit {'passed' if audit.passed else 'failed'}")
    for key in mismatches:
        text.append(f"mismatch [{key}]")


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "params": _cmd_params,
    "g1": _cmd_g1,
    "shifts": _cmd_shifts,
    "subspace": _cmd_subspace,
    "strata": _cmd_strata,
    "roots": _cmd_roots,
    "singular": _cmd_singular,
    "oracle-check": _cmd_oracle_check,
}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(job: JobSpec) -> str:
    return run_job(job)[0]


def run_job(job: JobSpec) -> tuple[str, int]:
    """Rendered output and exit status (1 when an oracle check disagrees)."""
    s = parse_descriptor(job.descriptor, job.normalization)
    values = resolve_assignments(s, job.assignments)
    report: dict = {"class": _class_json(s), "weights": [fmt(w) for w in s.weights]}
    text = _header(s)
    _HANDLERS[job.command](s, job, values, report, text)
    check = report.get("oracle_check")
    status = 1 if check and not (check["agree"] and check["audit_passed"]) else 0
    if job.json:
        return dumps(report), status
    if job.command == "singular":
        return report["script"], status
    return "\n".join(text) + "\n", status


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        job = parse_job(argv)
    except UsageError as exc:
        print(f"bsshift: usage error: {exc}", file=sys.stderr)
        return 2
    try:
        output, status = run_job(job)
    except BsshiftError as exc:
        print(f"bsshift: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
