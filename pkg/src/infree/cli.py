"""Command-line front end: one verb per library operation, JSON in and out.

Exit codes: 0 success, 1 usage error, 2 domain error (bad values, schema
violations, non-invertible elements), 3 I/O failure.  "-" reads standard
input; output goes to --out or standard output.
"""
from __future__ import annotations

import argparse
import json
import sys

from .ck import CkScalar, NotInvertible
from .convolve import (
    additive_convolve,
    boxed_conv_ck,
    boxed_conv_type_b,
    boxed_conv_type_k,
    example_law,
    multiplicative_convolve,
)
from .cumulants import cumulants_to_moments, moments_to_cumulants
from .freeness import check_inf_freeness, derivative_of_convolution, upgraded_law
from .jsonio import (
    SchemaError,
    decode_coloring,
    decode_cumulant_table,
    decode_derivation,
    decode_law,
    decode_partition,
    decode_series,
    encode,
)
from .partitions import enumerate_nc, kreweras, mobius_to_top
from .typek import enumerate_type_k


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(path if path != "-" else "stdin", f"invalid JSON: {e}") from e


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_nc_enum(args) -> str:
    return encode(list(enumerate_nc(args.n)))


def _cmd_nck_enum(args) -> str:
    return encode(list(enumerate_type_k(args.n, args.k)))


def _cmd_kreweras(args) -> str:
    p = decode_partition(_read_json(args.lhs))
    direction = "inverse" if args.inverse else "forward"
    return encode(kreweras(p, direction))


def _cmd_mobius(args) -> str:
    p = decode_partition(_read_json(args.lhs))
    return encode({"mobius": mobius_to_top(p)})


def _cmd_m2c(args) -> str:
    law = decode_law(_read_json(args.law))
    return encode(moments_to_cumulants(law))


def _cmd_c2m(args) -> str:
    table = decode_cumulant_table(_read_json(args.law))
    return encode(cumulants_to_moments(table))


def _cmd_boxconv(args) -> str:
    f = decode_series(_read_json(args.lhs), "lhs")
    g = decode_series(_read_json(args.rhs), "rhs")
    if args.k is not None and (f.k != args.k or g.k != args.k):
        raise ValueError(f"series have k={f.k},{g.k}, flag says k={args.k}")
    if args.type == "a":
        return encode(boxed_conv_ck(f, g))
    if args.type == "b":
        return encode(boxed_conv_type_b(f, g))
    return encode(boxed_conv_type_k(f, g))


def _cmd_convolve_add(args) -> str:
    mu = decode_law(_read_json(args.lhs), "lhs")
    nu = decode_law(_read_json(args.rhs), "rhs")
    return encode(additive_convolve(mu, nu))


def _cmd_convolve_mul(args) -> str:
    mu = decode_law(_read_json(args.lhs), "lhs")
    nu = decode_law(_read_json(args.rhs), "rhs")
    return encode(multiplicative_convolve(mu, nu))


def _cmd_check_freeness(args) -> str:
    law = decode_law(_read_json(args.law), "law")
    coloring = decode_coloring(_read_json(args.colors), "colors")
    max_len = args.max_len if args.max_len is not None else law.max_len
    return encode(check_inf_freeness(law, coloring, max_len))


def _cmd_upgrade(args) -> str:
    base = decode_law(_read_json(args.base), "base")
    d = decode_derivation(_read_json(args.derivation), "derivation")
    return encode(upgraded_law(base, d, args.k, args.max_len))


def _cmd_deriv_demo(args) -> str:
    """Built-in one-parameter families: semicircular(1+t) with
    free_poisson(2+t) under addition, free_poisson(2+t) with
    free_poisson(3) under multiplication."""
    k, L = args.k, args.max_len
    with_t = CkScalar(k, [1, 1] + [0] * (k - 1)) if k >= 1 else CkScalar(k, [1])

    def shifted(c0):
        return CkScalar.from_rational(k, c0) + with_t - CkScalar.one(k)

    if args.mode == "additive":
        mu = example_law("semicircular", shifted(1), k, L)
        nu = example_law("free_poisson", shifted(2), k, L)
    else:
        mu = example_law("free_poisson", shifted(2), k, L)
        nu = example_law("free_poisson", CkScalar.from_rational(k, 3), k, L)
    return encode(derivative_of_convolution(mu, nu, args.mode))


def build_parser() -> _Parser:
    parser = _Parser(prog="infree", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("nc-enum", help="enumerate non-crossing partitions of [n]")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_nc_enum)

    p = sub.add_parser("nck-enum", help="enumerate non-crossing partitions of type k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_nck_enum)

    p = sub.add_parser("kreweras", help="Kreweras complement of a partition document")
    p.add_argument("--lhs", required=True, help="partition JSON path or -")
    p.add_argument("--inverse", action="store_true", help="inverse complement")
    p.set_defaults(func=_cmd_kreweras)

    p = sub.add_parser("mobius", help="Mobius value of [p, top] in the NC lattice")
    p.add_argument("--lhs", required=True, help="partition JSON path or -")
    p.set_defaults(func=_cmd_mobius)

    p = sub.add_parser("m2c", help="moments to cumulants")
    p.add_argument("--law", required=True, help="law JSON path or -")
    p.set_defaults(func=_cmd_m2c)

    p = sub.add_parser("c2m", help="cumulants to moments")
    p.add_argument("--law", required=True, help="cumulant table JSON path or -")
    p.set_defaults(func=_cmd_c2m)

    p = sub.add_parser("boxconv", help="boxed convolution of two series")
    p.add_argument("--type", choices=("a", "b", "k"), default="a")
    p.add_argument("--k", type=int, default=None, help="validate the series order")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_boxconv)

    p = sub.add_parser("convolve-add", help="free additive convolution of two laws")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_convolve_add)

    p = sub.add_parser("convolve-mul", help="free multiplicative convolution of two laws")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_convolve_mul)

    p = sub.add_parser("check-freeness", help="moment test of infinitesimal freeness")
    p.add_argument("--law", required=True)
    p.add_argument("--colors", required=True)
    p.add_argument("--max-len", type=int, default=None)
    p.set_defaults(func=_cmd_check_freeness)

    p = sub.add_parser("upgrade", help="order-k law from an order-0 law and a derivation")
    p.add_argument("--base", required=True)
    p.add_argument("--derivation", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=_cmd_upgrade)

    p = sub.add_parser("deriv-demo", help="derivative of a convolution of built-in families")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--mode", choices=("additive", "multiplicative"), default="additive")
    p.set_defaults(func=_cmd_deriv_demo)

    for sp in sub.choices.values():
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else 1
    try:
        text = args.func(args)
        _write(text, args.out)
        return 0
    except (SchemaError, NotInvertible, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
