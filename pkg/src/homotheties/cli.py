"""Command-line front end.

Exit status: 0 on success, 1 on a domain/resource error or verification
failure (with an error report on stdout), 2 on a usage or input-file error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .errors import DomainError, InputError, ResourceError
from .fp import check_modulus
from .gl2 import Mat2
from .irreducible import (
    UNRAMIFIED_EXCEPTIONAL_BOUND,
    FieldProfile,
    exceptional_exclusion_threshold,
)
from .oracle import SUPPORTED, default_mode, verify_classification, verify_homothety_props
from .reducible import (
    ApFamily,
    classify_ap_family,
    combine_ap_pair,
    corollary_threshold,
    lemma39_bound,
    oesterle_torsion_bound,
    orbit_lower_bound,
    render_ap_table_json,
    render_ap_table_text,
    uniform_bound_reducible,
)
from .subgroups import NAMED_BUILDERS, classify, generate


class UsageError(Exception):
    pass


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dump_text(obj: dict) -> str:
    return "".join(f"{k}: {_text_value(v)}\n" for k, v in sorted(obj.items()))


def _text_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return ", ".join(_text_value(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_text_value(x)}" for k, x in sorted(v.items()))
    return str(v)


def read_generator_file(text: str) -> tuple[int, list[Mat2]]:
    """Parse the generator format: line 1 is p, then one 'a b c d' line per generator."""
    if not text.endswith("\n"):
        raise UsageError("generator file must be newline-terminated")
    lines = text[:-1].split("\n")
    head = lines[0]
    if not head.isdigit():
        raise UsageError(f"line 1 must be a decimal prime, got {head!r}")
    p = check_modulus(int(head))
    gens = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            gens.append(Mat2.parse(line, p))
        except InputError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    return p, gens


def write_generator_file(p: int, gens) -> str:
    return f"{p}\n" + "".join(g.literal() + "\n" for g in gens)


def cmd_classify(args) -> tuple[dict | str, int]:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    p, gens = read_generator_file(text)
    return classify(generate(p, gens)).to_dict(), 0


def cmd_build(args) -> tuple[dict | str, int]:
    group = NAMED_BUILDERS[args.kind](check_modulus(args.p))
    if args.format == "text":
        return write_generator_file(group.p, group.generators), 0
    return {
        "kind": args.kind,
        "p": group.p,
        "order": group.order,
        "generators": [g.literal() for g in group.generators],
    }, 0


def cmd_bound(args) -> tuple[dict | str, int]:
    d, h, e = args.d, args.h, args.e
    FieldProfile(d, h, e)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        reducible = uniform_bound_reducible(d, h)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return {
        "d": d,
        "h": h,
        "e": e,
        "degree_threshold": str(exceptional_exclusion_threshold(d)),
        "exceptional_threshold": str(exceptional_exclusion_threshold(e)),
        "unramified_threshold": str(UNRAMIFIED_EXCEPTIONAL_BOUND) if e == 1 else None,
        "torsion_bound": str(oesterle_torsion_bound(12 * d * h)),
        "norm_bound": str(lemma39_bound(d, h)),
        "reducible_bound": str(reducible),
        "corollary_threshold": str(corollary_threshold(d)),
    }, 0


def cmd_ap_table(args) -> tuple[dict | str, int]:
    if args.format == "json":
        return json.loads(render_ap_table_json()), 0
    return render_ap_table_text(), 0


def cmd_combine(args) -> tuple[dict | str, int]:
    out = combine_ap_pair(args.a1, args.a2, args.p).to_dict()
    return {"a1": args.a1, "a2": args.a2, "p": args.p, "outcome": out}, 0


def cmd_family(args) -> tuple[dict | str, int]:
    fam = ApFamily.parse(args.values)
    out = classify_ap_family(fam, args.p, FieldProfile(args.d, args.h))
    return {"family": list(fam.values), "p": args.p, "d": args.d, "h": args.h, "outcome": out.to_dict()}, 0


def cmd_verify(args) -> tuple[dict | str, int]:
    p = int(check_modulus(args.p))
    mode = args.mode or default_mode(p)
    result = verify_classification(p, mode).merge(verify_homothety_props(p, mode))
    return result.to_dict(), 0 if result.ok else 1


def cmd_orbit(args) -> tuple[dict | str, int]:
    return {"p": args.p, "orbit_lower_bound": orbit_lower_bound(args.p)}, 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="homotheties",
        description="Homotheties in mod-p Galois images: subgroups of GL_2(F_p), bounds and casework.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[fmt], help="classify the subgroup spanned by a generator file")
    p.add_argument("--input", required=True, help="generator file: p on line 1, then 'a b c d' lines")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", parents=[fmt], help="generators of a named subgroup")
    p.add_argument("--kind", required=True, choices=sorted(NAMED_BUILDERS))
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("bound", parents=[fmt], help="thresholds and bounds for degree d, class number h")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--e", type=int, default=1, help="least ramification index above p")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("ap-table", parents=[fmt], help="the (e, r) -> a table with congruence conditions")
    p.set_defaults(func=cmd_ap_table)

    p = sub.add_parser("combine", parents=[fmt], help="homothety exponent forced by two distinct a values")
    p.add_argument("a1", type=int)
    p.add_argument("a2", type=int)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("family", parents=[fmt], help="outcome for a family of a values, e.g. 0,4,8")
    p.add_argument("values")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--h", type=int, default=1)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", parents=[fmt], help="exhaustive subgroup checks at a small prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--mode", choices=sorted(SUPPORTED))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbit", parents=[fmt], help="ceil((p-1)/12) lower bound on the orbit overlap")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_orbit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, status = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (DomainError, InputError, ResourceError) as exc:
        sys.stdout.write(dump_json({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1
    if isinstance(payload, str):
        sys.stdout.write(payload)
    elif args.format == "json":
        sys.stdout.write(dump_json(payload))
    else:
        sys.stdout.write(dump_text(payload))
    return status


if __name__ == "__main__":
    sys.exit(main())
