"""Command-line interface; every command prints one JSON document."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import ZeroPolynomialError, all_exponents
from .catalog import UnknownEntryError, catalog_export, catalog_get, catalog_names, catalog_verify_all, verify_entry
from .discriminant import (
    WhollySingularPencilError,
    classify_discriminant,
    discriminant_net,
    discriminant_pencil,
    segre_symbol,
)
from .divisor import divisor_report
from .flags import flag_predicates, flag_scan, normalized_basis_conditions
from .fuzz import MIXES, fuzz
from .net import InvalidNetError, Net, Pencil, VertexUndefinedError
from .parser import InhomogeneousError, ParseError, format_span, parse_net, parse_pencil
from .stability import OneParamSubgroup, one_param_limit, state_polytope_check, twelve_type_check
from .triples import enumerate_candidate_triples, refine_triples_by_cross_elimination

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_UNDEFINED = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read_span(source: str, kind):
    """Expression text, or a path to a JSON file or a text file with an expression."""
    if os.path.isfile(source):
        with open(source) as fh:
            text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("{") or stripped.startswith("["):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, text) from None
            try:
                return kind.from_json(data)
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                if isinstance(exc, InvalidNetError):
                    raise
                raise ParseError(f"malformed quadric data: {exc}", 0, text) from None
        source = text.strip()
    return parse_net(source) if kind is Net else parse_pencil(source)


def _span_dict(span) -> dict:
    return {"expression": format_span(span), **span.to_json()}


def _weights(text: str) -> OneParamSubgroup:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"weights must be comma-separated integers, got {text!r}") from None
    try:
        return OneParamSubgroup(tuple(values))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_analyze(args) -> dict:
    net = _read_span(args.net, Net)
    everything = args.permutations == "all"
    if args.method == "twelve-type":
        return twelve_type_check(net, all_permutations=everything).to_dict()
    if args.method == "polytope":
        return state_polytope_check(net).to_dict()
    torus = twelve_type_check(net, all_permutations=everything)
    poly = state_polytope_check(net)
    return {
        "twelve_type": torus.to_dict(),
        "polytope": poly.to_dict(),
        "agree": torus.semistable == poly.semistable,
        "status_agree": torus.status == poly.status,
    }


def cmd_discriminant(args) -> dict:
    net = _read_span(args.net, Net)
    quintic = discriminant_net(net)
    monomials = ["x^%d*y^%d*z^%d" % e for e in all_exponents(3, 5)]
    return {
        "net": format_span(net.normalized_basis()),
        "quintic": str(quintic),
        "monomials": monomials,
        "coefficients": [int(quintic.coefficient(e)) for e in all_exponents(3, 5)],
        "class": classify_discriminant(net),
    }


def cmd_segre(args) -> dict:
    pencil = _read_span(args.pencil, Pencil)
    symbol = segre_symbol(pencil)
    return {
        "pencil": format_span(pencil),
        "discriminant": str(discriminant_pencil(pencil)),
        "symbol": str(symbol),
        "entries": symbol.to_dict(),
    }


def cmd_limit(args) -> dict:
    net = _read_span(args.net, Net)
    rho = _weights(args.ops)
    limit = one_param_limit(net, rho, args.direction)
    return {"weights": list(rho.weights), "direction": args.direction, "limit": _span_dict(limit.normalized_basis())}


def cmd_flags(args) -> dict:
    net = _read_span(args.net, Net)
    out = {"standard": flag_predicates(net).to_dict(), "normalized_basis": normalized_basis_conditions(net)}
    if args.scan_permutations:
        out["scan"] = [{"permutation": list(p), **r.to_dict()} for p, r in flag_scan(net)]
    return out


def cmd_triples(args) -> dict:
    if not 1 <= args.type <= 12:
        raise UsageError("--type must be between 1 and 12")
    from .stability import TWELVE_TYPES

    rho = TWELVE_TYPES[args.type - 1]
    candidates = enumerate_candidate_triples(rho)
    out = {"type": args.type, "weights": list(rho), "candidates": [list(t) for t in candidates]}
    if args.refine:
        if args.type < 5:
            raise UsageError("--refine applies to types 5..12")
        refined = refine_triples_by_cross_elimination(args.type, candidates, seeds=args.seeds)
        out.update(refined=[list(t) for t in refined.triples],
                   eliminated_by={",".join(map(str, t)): j for t, j in refined.eliminated.items()},
                   seeds=refined.seeds, probabilistic=refined.probabilistic)
    return out


def cmd_catalog(args) -> dict:
    if args.name:
        entry = catalog_get(args.name)
        out = entry.to_dict()
        if args.verify:
            out["verification"] = verify_entry(entry)
        return out
    if args.verify:
        return catalog_verify_all()
    if args.export:
        return catalog_export()
    return {"names": catalog_names()}


def cmd_divisor(args) -> dict:
    return divisor_report()


def cmd_fuzz(args) -> dict:
    mix = [m.strip() for m in args.mix.split(",") if m.strip()]
    bad = [m for m in mix if m not in MIXES]
    if bad or not mix:
        raise UsageError(f"unknown mix {bad}; choose from {', '.join(MIXES)}")
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    return fuzz(args.count, args.seed, mix, workers=max(1, args.workers))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadnets", description="Stability and discriminants of nets of quadrics in P^4.")
    parser.add_argument("--pretty", action="store_true", help="indented, human-readable output")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("analyze", help="stability verdict")
    p.add_argument("--net", required=True, help="expression such as 'ad-bc, ae+bd-c^2, be-cd', or a file")
    p.add_argument("--method", choices=("twelve-type", "polytope", "both"), default="twelve-type")
    p.add_argument("--permutations", choices=("all", "identity"), default="all")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("discriminant", help="discriminant quintic of a net")
    p.add_argument("--net", required=True)
    p.set_defaults(run=cmd_discriminant)

    p = sub.add_parser("segre", help="Segre symbol of a pencil")
    p.add_argument("--pencil", required=True)
    p.set_defaults(run=cmd_segre)

    p = sub.add_parser("limit", help="limit under a one-parameter subgroup")
    p.add_argument("--net", required=True)
    p.add_argument("--ops", required=True, help="five comma-separated integer weights summing to 0")
    p.add_argument("--direction", choices=("to-zero", "to-infinity"), default="to-infinity")
    p.set_defaults(run=cmd_limit)

    p = sub.add_parser("flags", help="flag instability predicates")
    p.add_argument("--net", required=True)
    p.add_argument("--scan-permutations", action="store_true")
    p.set_defaults(run=cmd_flags)

    p = sub.add_parser("triples", help="initial-weight triples for a numerical type")
    p.add_argument("--type", type=int, required=True)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--seeds", type=int, default=8)
    p.set_defaults(run=cmd_triples)

    p = sub.add_parser("catalog", help="named nets and pencils")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--export", action="store_true")
    p.add_argument("--name")
    p.set_defaults(run=cmd_catalog)

    p = sub.add_parser("divisor-check", help="divisor class numerology")
    p.set_defaults(run=cmd_divisor)

    p = sub.add_parser("fuzz", help="agreement of the two stability criteria on random nets")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mix", default=",".join(MIXES))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_fuzz)
    return parser


def _emit(payload, pretty: bool, stream) -> None:
    text = json.dumps(payload, indent=2 if pretty else None, default=_json_default)
    print(text, file=stream)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.run(args)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)}, args.pretty, sys.stderr)
        return EXIT_USAGE
    except (ParseError, InhomogeneousError) as exc:
        payload = {"error": "parse", "message": str(exc)}
        if isinstance(exc, ParseError):
            payload["position"] = exc.position
        _emit(payload, args.pretty, sys.stderr)
        return EXIT_PARSE
    except InvalidNetError as exc:
        _emit({"error": "invalid", "message": str(exc)}, args.pretty, sys.stderr)
        return EXIT_INVALID
    except (WhollySingularPencilError, VertexUndefinedError, ZeroPolynomialError) as exc:
        _emit({"error": "undefined", "message": str(exc)}, args.pretty, sys.stderr)
        return EXIT_UNDEFINED
    except UnknownEntryError as exc:
        _emit({"error": "usage", "message": str(exc), "available": exc.available}, args.pretty, sys.stderr)
        return EXIT_USAGE
    _emit(result, args.pretty, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
