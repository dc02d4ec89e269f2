"""Command line interface.

Every subcommand is deterministic: the same invocation produces byte-identical
output (no timestamps, no environment echoes).  Values print per --format:
``exact`` shows full decimal digits for exactly represented values and the
tower/saturated forms otherwise; ``log2`` shows a base-2 logarithm rounded up
at six decimals (iterated for deep towers).  --json switches to a structured
report.  The working bit budget can be set per invocation with --bit-budget
or the KODAIRABOUND_BIT_BUDGET environment variable (flag wins).

Exit codes: 0 success, 2 usage or domain error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bignum import (
    BoundValue,
    BudgetError,
    DomainError,
    format_fraction_up,
    format_log2,
    iterated_log2_view,
    local_bit_budget,
)
from .counting import (
    complement_count_bound,
    hall_count,
    hall_upper,
    literal_out_product_report,
    out_order_elementary_2,
)
from .extension import closed_form_compare, index_bound
from .groups import FiniteAbelianGroup, GenusProfile, genus_bound
from .oracles import (
    count_free_subgroups_bruteforce,
    count_gl2_bruteforce,
    count_sections_bruteforce,
    euler_char_cover_oracle,
)
from .pipeline import (
    OVERRIDE_KEYS,
    PipelineInputs,
    RankPreset,
    closed_form_dim2,
    dim3_literal,
    dim4_literal,
    pipeline_example_compare,
    total_degree_bound,
)

ENV_BUDGET = "KODAIRABOUND_BIT_BUDGET"


def _human(v: BoundValue) -> str:
    # compact display: plain digits when short, 2^... / 2^^k(...) when not
    if v.is_beyond:
        return str(v)
    if v.is_exact and v.value < 10**18:
        return str(v.value)
    depth, x = iterated_log2_view(v)
    s = format_fraction_up(x)
    return f"2^{s}" if depth == 1 else f"2^^{depth}({s})"


def _formatted(v: BoundValue, fmt: str) -> str:
    return format_log2(v) if fmt == "log2" else str(v)


def _emit(args, payload: dict, text_lines: list[str]) -> int:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)
    return 0


# --------------------------------------------------------------------------
# subcommand handlers


def _cmd_hall(args) -> int:
    value = (hall_upper if args.upper else hall_count)(args.index, args.rank)
    payload = {
        "index": args.index,
        "rank": args.rank,
        "upper_bound_only": bool(args.upper),
        "count": value.to_json(),
    }
    return _emit(args, payload, [_formatted(value, args.fmt)])


def _cmd_gl_order(args) -> int:
    if args.literal_out_product:
        rep = literal_out_product_report(args.rank)
        lines = [
            f"rank: {rep['rank']}",
            f"written factor count: 2^{rep['rank']}",
            f"positive factors: {rep['positive_factors']}",
            f"zero factor at index: {rep['zero_factor_index']}",
            f"negative factors from index: {rep['negative_factors_from']}",
            f"positive prefix product log2 <= {rep['positive_prefix_log2_upper']}",
            f"exact evaluation: {rep['exact_evaluation']}",
        ]
        return _emit(args, rep, lines)
    value = out_order_elementary_2(args.rank)
    payload = {"rank": args.rank, "order": value.to_json()}
    return _emit(args, payload, [_formatted(value, args.fmt)])


def _cmd_genus_bound(args) -> int:
    value = genus_bound(args.genus, args.degree)
    payload = {"genus": args.genus, "degree": args.degree, "bound": value.to_json()}
    return _emit(args, payload, [_formatted(value, args.fmt)])


def _trace_lines(trace, depth=0):
    pad = "  " * depth
    prof = ", ".join(_human(g) for g in trace.profile)
    yield f"{pad}profile [{prof}]: total {_human(trace.total)}"
    if trace.sub_j is not None:
        yield (
            f"{pad}  base factor {_human(trace.base_factor)}, "
            f"layer index {_human(trace.layer_index)}"
        )
        yield from _trace_lines(trace.sub_j, depth + 1)
        yield from _trace_lines(trace.sub_k, depth + 1)


def _cmd_ibound(args) -> int:
    group = FiniteAbelianGroup.parse(args.invariant_factors)
    profile = GenusProfile.parse(args.profile)
    trace = index_bound(group, profile)
    payload = {
        "group": list(group.invariant_factors),
        "profile": list(profile.genera),
        "total": trace.total.to_json(),
    }
    lines = [_formatted(trace.total, args.fmt)]
    if args.trace:
        payload["trace"] = trace.to_json()
        lines.extend(_trace_lines(trace))
    return _emit(args, payload, lines)


def _cmd_compare_closed_forms(args) -> int:
    group = FiniteAbelianGroup.parse(args.invariant_factors)
    profile = GenusProfile.parse(args.profile)
    genera = profile.genera
    if args.which == "i2" and len(genera) != 2:
        raise DomainError("the length-2 comparison needs a profile of exactly 2 genera")
    if args.which == "i3":
        if len(genera) == 3 and genera[1] != genera[2]:
            raise DomainError(
                "the expanded length-3 form assumes equal second and third genera"
            )
        if len(genera) not in (2, 3):
            raise DomainError("the length-3 comparison needs 2 or 3 genera")
    rep = closed_form_compare(group, args.which, genera[0], genera[1])
    disc = rep.log2_discrepancy
    if disc.get("saturated"):
        disc_line = f"log2 discrepancy: sign={disc['sign']} saturated"
    else:
        disc_line = (
            f"log2 discrepancy: sign={disc['sign']} "
            f"depth={disc['depth']} delta={disc['delta']}"
        )
    lines = [
        f"verdict: {rep.verdict}",
        f"recursive: {_human(rep.recursive)}",
        f"closed form: {_human(rep.literal)}",
        disc_line,
    ]
    return _emit(args, rep.to_json(), lines)


def _parse_overrides(pairs: list[str]) -> dict:
    out = {}
    for item in pairs:
        key, sep, val = item.partition("=")
        if not sep or key not in OVERRIDE_KEYS:
            raise DomainError(
                f"override must look like key=value with key in {OVERRIDE_KEYS}, got {item!r}"
            )
        try:
            out[key] = int(val)
        except ValueError:
            raise DomainError(f"override value must be an integer, got {item!r}") from None
    return out


def _cmd_cover_degree(args) -> int:
    profile = GenusProfile.parse(args.base_profile) if args.base_profile else None
    inputs = PipelineInputs(
        dim=args.dim,
        fiber_genus=args.genus,
        base_profile=profile,
        preset=RankPreset(args.preset),
        genus_overrides=_parse_overrides(args.override or []),
    )
    report = total_degree_bound(inputs)
    payload = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")
        return 0
    lines = []
    for stage in report.stages:
        lines.append(f"{stage.name}: {_human(stage.factor)}  [{stage.formula_ref}]")
    lines.append(f"total: {_formatted(report.total, args.fmt)}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return _emit(args, payload, lines)


def _cmd_example(args) -> int:
    if args.compare:
        rep = pipeline_example_compare(
            args.dim, args.genus, args.genus_ker_mu, args.genus_ker_mu_a, args.genus_ker_rho
        )
        disc = rep.log2_discrepancy
        if disc.get("saturated"):
            disc_line = f"log2 discrepancy: sign={disc['sign']} saturated"
        else:
            disc_line = (
                f"log2 discrepancy: sign={disc['sign']} "
                f"depth={disc['depth']} delta={disc['delta']}"
            )
        lines = [
            f"verdict: {rep.verdict}",
            f"pipeline: {_human(rep.pipeline_total)}",
            f"expanded form: {_human(rep.literal_total)}",
            disc_line,
        ]
        return _emit(args, rep.to_json(), lines)
    if args.dim == 2:
        value = closed_form_dim2(args.genus, RankPreset(args.preset))
        payload = {
            "dim": 2,
            "fiber_genus": args.genus,
            "preset": args.preset,
            "total": value.to_json(),
        }
        return _emit(args, payload, [_formatted(value, args.fmt)])
    lit = (dim3_literal if args.dim == 3 else dim4_literal)(
        args.genus, args.genus_ker_mu, args.genus_ker_mu_a, args.genus_ker_rho
    )
    lines = [
        f"aggregated exponent: {lit.exponent}",
        f"total: {_formatted(lit.total, args.fmt)}",
    ]
    for key, val in lit.subfactor_exponents.items():
        lines.append(f"{key}: {val}")
    return _emit(args, lit.to_json(), lines)


# --------------------------------------------------------------------------
# verification suites (formula vs independent enumeration)


def _suite_hall(max_index: int):
    mismatches = []
    cases = 0
    for rank in range(1, 4):
        for index in range(1, max_index + 1):
            cases += 1
            got = hall_count(index, rank)
            want = count_free_subgroups_bruteforce(index, rank)
            if not (got.is_exact and got.value == want):
                mismatches.append(f"hall index={index} rank={rank}: {got} != {want}")
    return cases, mismatches


def _suite_gl(max_rank: int):
    mismatches = []
    cases = 0
    for rank in range(1, min(max_rank, 4) + 1):
        cases += 1
        got = out_order_elementary_2(rank)
        want = count_gl2_bruteforce(rank)
        if not (got.is_exact and got.value == want):
            mismatches.append(f"gl rank={rank}: {got} != {want}")
    return cases, mismatches


_SECTION_SHAPES = ((2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2))


def _suite_sections(cap: int):
    mismatches = []
    cases = 0
    for shape in _SECTION_SHAPES:
        group = FiniteAbelianGroup(shape)
        for rank2g in range(0, 7):
            if group.order**rank2g > cap:
                break
            cases += 1
            got = complement_count_bound(group, rank2g)
            want = count_sections_bruteforce(group, rank2g)
            if not (got.is_exact and got.value == want):
                mismatches.append(f"sections shape={shape} rank2g={rank2g}: {got} != {want}")
    return cases, mismatches


def _suite_euler(max_degree: int):
    mismatches = []
    cases = 0
    for g in range(2, 11):
        for d in range(1, max_degree + 1):
            cases += 1
            got = genus_bound(g, d)
            want = euler_char_cover_oracle(g, d)
            if not (got.is_exact and got.value == want):
                mismatches.append(f"euler g={g} d={d}: {got} != {want}")
    return cases, mismatches


_SUITES = {
    "hall": (_suite_hall, 5),
    "gl": (_suite_gl, 4),
    "sections": (_suite_sections, 32768),
    "euler": (_suite_euler, 100),
}


def _cmd_verify(args) -> int:
    fn, default_max = _SUITES[args.suite]
    limit = args.max if args.max is not None else default_max
    cases, mismatches = fn(limit)
    payload = {"suite": args.suite, "cases": cases, "mismatches": mismatches}
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for m in mismatches:
            print(f"MISMATCH {m}")
        print(f"{args.suite}: {cases} cases, {len(mismatches)} mismatches")
    return 3 if mismatches else 0


# --------------------------------------------------------------------------
# parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument(
        "--format",
        dest="fmt",
        choices=("exact", "log2"),
        default="exact",
        help="value rendering: full digits / tower form, or log2 at 6 decimals",
    )
    common.add_argument(
        "--bit-budget",
        type=_positive_int,
        default=None,
        metavar="BITS",
        help=f"exact-arithmetic size cap in bits (overrides ${ENV_BUDGET})",
    )

    top = argparse.ArgumentParser(
        prog="kodairabound",
        description="Rigorous upper bounds for splitting indices of central "
        "extensions over surface-bundle groups and for the cover degrees of "
        "doubly fibered constructions.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hall", parents=[common], help="count index-d subgroups of a free group")
    p.add_argument("--index", type=_positive_int, required=True, help="subgroup index d")
    p.add_argument("--rank", type=_positive_int, required=True, help="free group rank n")
    p.add_argument("--upper", action="store_true", help="print the bound d*(d!)^(n-1) instead")
    p.set_defaults(handler=_cmd_hall)

    p = sub.add_parser("gl-order", parents=[common], help="order of GL(m, F2)")
    p.add_argument("--rank", type=_positive_int, required=True, help="rank m")
    p.add_argument(
        "--literal-out-product",
        action="store_true",
        help="analyze the degenerate product written with 2^m factors",
    )
    p.set_defaults(handler=_cmd_gl_order)

    p = sub.add_parser(
        "genus-bound", parents=[common], help="worst-case genus d(g-1)+1 of a degree-d cover"
    )
    p.add_argument("--genus", type=_positive_int, required=True)
    p.add_argument("--degree", type=_positive_int, required=True)
    p.set_defaults(handler=_cmd_genus_bound)

    p = sub.add_parser(
        "ibound", parents=[common], help="splitting-index bound for a central extension"
    )
    p.add_argument(
        "--invariant-factors",
        required=True,
        metavar="D1,D2,...",
        help="invariant factors of the center, each dividing the next",
    )
    p.add_argument(
        "--profile", required=True, metavar="G1,G2,...", help="genus profile of the base group"
    )
    p.add_argument("--trace", action="store_true", help="include the recursion tree")
    p.set_defaults(handler=_cmd_ibound)

    p = sub.add_parser(
        "compare-closed-forms",
        parents=[common],
        help="recursion vs closed form at profile length 2 or 3",
    )
    p.add_argument("--which", choices=("i2", "i3"), required=True)
    p.add_argument("--invariant-factors", required=True, metavar="D1,D2,...")
    p.add_argument("--profile", required=True, metavar="G1,G2")
    p.set_defaults(handler=_cmd_compare_closed_forms)

    p = sub.add_parser(
        "cover-degree", parents=[common], help="degree bound for the second fibration cover"
    )
    p.add_argument("--dim", type=_positive_int, required=True, help="complex dimension >= 2")
    p.add_argument("--genus", type=_positive_int, required=True, help="fiber genus >= 2")
    p.add_argument(
        "--preset",
        choices=tuple(r.value for r in RankPreset),
        default=RankPreset.PROOF.value,
        help="local-system rank reading (default: proof)",
    )
    p.add_argument(
        "--base-profile",
        metavar="G2,...,GN",
        help="genus profile of the base, length dim-1 (default: all 2s)",
    )
    p.add_argument(
        "--override",
        action="append",
        metavar="KEY=GENUS",
        help=f"pin a kernel genus; keys: {', '.join(OVERRIDE_KEYS)} (repeatable)",
    )
    p.add_argument("--out", metavar="FILE", help="write the JSON report to FILE instead of stdout")
    p.set_defaults(handler=_cmd_cover_degree)

    p = sub.add_parser(
        "example",
        parents=[common],
        help="closed/expanded forms for dimensions 2, 3, 4",
    )
    p.add_argument("--dim", type=int, choices=(2, 3, 4), required=True)
    p.add_argument("--genus", type=_positive_int, required=True)
    p.add_argument(
        "--preset",
        choices=tuple(r.value for r in RankPreset),
        default=RankPreset.PROOF.value,
        help="rank reading for the dimension-2 closed form",
    )
    p.add_argument("--genus-ker-mu", type=int, default=2, metavar="G")
    p.add_argument("--genus-ker-mu-a", type=int, default=2, metavar="G")
    p.add_argument("--genus-ker-rho", type=int, default=2, metavar="G")
    p.add_argument(
        "--compare", action="store_true", help="also run the stagewise pipeline and compare"
    )
    p.set_defaults(handler=_cmd_example)

    p = sub.add_parser(
        "verify", parents=[common], help="cross-check formulas against brute-force enumeration"
    )
    p.add_argument("--suite", choices=tuple(_SUITES), required=True)
    p.add_argument(
        "--max",
        type=_positive_int,
        default=None,
        help="suite size limit: max index (hall), rank (gl), assignments (sections), degree (euler)",
    )
    p.set_defaults(handler=_cmd_verify)

    return top


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = args.bit_budget
    if budget is None:
        env = os.environ.get(ENV_BUDGET)
        if env is not None:
            try:
                budget = int(env)
            except ValueError:
                print(f"error: ${ENV_BUDGET} must be an integer, got {env!r}", file=sys.stderr)
                return 2
    try:
        if budget is not None:
            with local_bit_budget(budget):
                return args.handler(args)
        return args.handler(args)
    except (DomainError, BudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
