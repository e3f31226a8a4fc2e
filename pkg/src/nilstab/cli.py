"""Command-line front end.

Subcommands: witt, lyndon, mul, inv, comm, verify, aut-lift, kernel-iso,
scan, snf.  Exit codes: 0 on success, 1 on a failed verification or an
unstabilized scan, 2 on usage errors (bad bounds, parse errors).  Output is
deterministic for a fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import intlinalg, verify
from .autos import endo_from_json, endo_to_json, is_automorphism, lift_to_class, project
from .group import comm as group_comm
from .group import element_to_json, element_to_text, inv as group_inv
from .group import magnus_embed, mul as group_mul, parse_element
from .modules import parse_module_spec
from .series import poly_group_commutator, poly_mul, poly_unit_inverse
from .stability import stability_scan
from .verify import check_action_remark, check_aut_extension
from .words import lyndon_words, witt_rank

DEFAULT_MAX_RANK = 6
DEFAULT_MAX_CLASS = 6


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    """Validated bounds shared by the subcommands."""

    rank: int = 1
    class_bound: int = 1
    unsafe_bounds: bool = False
    max_class: int = DEFAULT_MAX_CLASS

    def __post_init__(self):
        if self.rank < 1:
            raise UsageError("rank must be >= 1")
        if self.class_bound < 1:
            raise UsageError("class must be >= 1")
        if not self.unsafe_bounds:
            if self.rank > DEFAULT_MAX_RANK:
                raise UsageError(
                    f"rank {self.rank} exceeds the bound {DEFAULT_MAX_RANK}; "
                    "use --unsafe-bounds to override"
                )
            if self.class_bound > self.max_class:
                raise UsageError(
                    f"class {self.class_bound} exceeds the bound {self.max_class}; "
                    "use --unsafe-bounds or NILSTAB_MAX_CLASS to override"
                )


def _max_class_from_env() -> int:
    raw = os.environ.get("NILSTAB_MAX_CLASS")
    if raw is None:
        return DEFAULT_MAX_CLASS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"NILSTAB_MAX_CLASS must be an integer, got {raw!r}") from None


def _config(args, need_class: bool = True) -> CommandConfig:
    return CommandConfig(
        rank=args.rank,
        class_bound=args.class_bound if need_class else 1,
        unsafe_bounds=getattr(args, "unsafe_bounds", False),
        max_class=_max_class_from_env(),
    )


def _parse_range(text: str) -> list:
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _emit_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_json_arg(text: str) -> dict:
    if text == "-":
        return json.loads(sys.stdin.read())
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.loads(fh.read())
    return json.loads(text)


# --- subcommand bodies ----------------------------------------------------


def cmd_witt(args) -> int:
    if args.rank < 1 or args.degree < 1:
        raise UsageError("witt needs -r >= 1 and -n >= 1")
    if not args.unsafe_bounds:
        limit = max(DEFAULT_MAX_RANK, _max_class_from_env())
        if args.rank > DEFAULT_MAX_RANK or args.degree > limit:
            raise UsageError(
                "witt bounds exceeded; use --unsafe-bounds to enumerate further"
            )
    rows = []
    for r in range(1, args.rank + 1):
        for n in range(1, args.degree + 1):
            rank = witt_rank(r, n)
            if rank != len(lyndon_words(r, n)):
                print(f"cross-check failed at r={r}, n={n}", file=sys.stderr)
                return 1
            rows.append((r, n, rank))
    if args.format == "csv":
        print("r,n,rank")
        for r, n, rank in rows:
            print(f"{r},{n},{rank}")
    elif args.format == "json":
        print(_emit_json([{"r": r, "n": n, "rank": rank} for r, n, rank in rows]))
    else:
        for r in range(1, args.rank + 1):
            line = " ".join(str(witt_rank(r, n)) for n in range(1, args.degree + 1))
            print(f"r={r}: {line}")
    return 0


def cmd_lyndon(args) -> int:
    _config(args, need_class=False)
    if args.degree < 1:
        raise UsageError("lyndon needs -n >= 1")
    if args.degree > _max_class_from_env() and not args.unsafe_bounds:
        raise UsageError("lyndon degree exceeds the bound; use --unsafe-bounds")
    words = lyndon_words(args.rank, args.degree)
    letters = "abcdefghijklmnopqrstuvwxyz"
    texts = ["".join(letters[x - 1] for x in w) for w in words]
    if args.format == "csv":
        print("r,n,word")
        for t in texts:
            print(f"{args.rank},{args.degree},{t}")
    elif args.format == "json":
        print(_emit_json(texts))
    else:
        for t in texts:
            print(t)
    return 0


def _element_command(args, operation) -> int:
    cfg = _config(args)
    r, c = cfg.rank, cfg.class_bound
    operands = [parse_element(text, r, c) for text in args.elements]
    result, oracle_series = operation(r, c, operands)
    if args.oracle and oracle_series is not None:
        fresh = magnus_embed(
            parse_element(element_to_text(result), r, c)
        ).coefficients
        if fresh != oracle_series:
            print("oracle disagreement: collected form does not match series", file=sys.stderr)
            return 1
    if args.format == "json":
        print(_emit_json(element_to_json(result)))
    else:
        print(element_to_text(result))
    return 0


def cmd_mul(args) -> int:
    def op(r, c, operands):
        g, h = operands
        series = poly_mul(magnus_embed(g).coefficients, magnus_embed(h).coefficients, c)
        return group_mul(g, h), series

    return _element_command(args, op)


def cmd_inv(args) -> int:
    def op(r, c, operands):
        (g,) = operands
        series = poly_unit_inverse(magnus_embed(g).coefficients, c)
        return group_inv(g), series

    return _element_command(args, op)


def cmd_comm(args) -> int:
    def op(r, c, operands):
        g, h = operands
        series = poly_group_commutator(
            magnus_embed(g).coefficients, magnus_embed(h).coefficients, c
        )
        return group_comm(g, h), series

    return _element_command(args, op)


def cmd_verify(args) -> int:
    cfg = _config(args)
    results = verify.run_suite(cfg.rank, cfg.class_bound, args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        detail = f" ({res.detail})" if res.detail and not res.passed else ""
        print(f"{status} {res.name}{detail}")
        failed += 0 if res.passed else 1
    if failed:
        print(f"{failed} of {len(results)} checks failed", file=sys.stderr)
        return 1
    return 0


def cmd_aut_lift(args) -> int:
    if args.images is not None:
        if args.rank is None or args.class_bound is None:
            raise UsageError("--images needs -r and -c for the source endomorphism")
        if len(args.images) != args.rank:
            raise UsageError("need exactly one image per generator")
        from .autos import endo_from_images

        endo = endo_from_images(
            parse_element(text, args.rank, args.class_bound) for text in args.images
        )
    elif args.endo is not None:
        endo = endo_from_json(_read_json_arg(args.endo))
    else:
        raise UsageError("give an endomorphism JSON or --images")
    if not is_automorphism(endo):
        print("input endomorphism is not an automorphism", file=sys.stderr)
        return 1
    target = args.to_class if args.to_class is not None else endo.class_bound + 1
    if target < endo.class_bound:
        raise UsageError("target class is below the input class")
    CommandConfig(
        rank=endo.rank,
        class_bound=target,
        unsafe_bounds=args.unsafe_bounds,
        max_class=_max_class_from_env(),
    )
    lifted = lift_to_class(endo, target)
    check = lifted
    while check.class_bound > endo.class_bound:
        check = project(check)
    if check != endo:
        print("internal error: projection of the lift is not the input", file=sys.stderr)
        return 1
    print(_emit_json(endo_to_json(lifted)))
    return 0


def cmd_kernel_iso(args) -> int:
    cfg = _config(args)
    if cfg.class_bound < 2:
        raise UsageError("kernel-iso needs -c >= 2")
    import random as random_module

    rng = random_module.Random(args.seed)
    res = check_aut_extension(cfg.rank, cfg.class_bound, rng, trials=args.trials)
    res2 = check_action_remark(cfg.rank, cfg.class_bound, rng)
    ok = res.passed and res2.passed
    for r in (res, res2):
        status = "PASS" if r.passed else "FAIL"
        detail = f" ({r.detail})" if r.detail and not r.passed else ""
        print(f"{status} {r.name}{detail}")
    return 0 if ok else 1


def cmd_scan(args) -> int:
    try:
        spec = parse_module_spec(args.spec)
    except ValueError as err:
        raise UsageError(f"bad module spec: {err}") from None
    ranks = _parse_range(args.range)
    CommandConfig(
        rank=max(ranks),
        class_bound=args.class_bound,
        unsafe_bounds=args.unsafe_bounds,
        max_class=_max_class_from_env(),
    )
    report = stability_scan(spec, args.class_bound, ranks)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print(report.to_csv())
    else:
        print(report.to_text())
    if not report.stabilized() and not args.allow_unstable:
        return 1
    return 0


def cmd_snf(args) -> int:
    obj = _read_json_arg(args.matrix)
    if not isinstance(obj, list) or not all(isinstance(row, list) for row in obj):
        raise UsageError("snf expects a JSON list of rows")
    matrix = intlinalg.freeze(obj)
    res = intlinalg.snf(matrix)
    if args.format == "json":
        print(
            _emit_json(
                {
                    "U": [list(row) for row in res.U],
                    "D": [list(row) for row in res.D],
                    "V": [list(row) for row in res.V],
                    "invariant_factors": list(res.invariant_factors()),
                }
            )
        )
    else:
        print("invariant factors:", list(res.invariant_factors()))
        for name, mat in (("U", res.U), ("D", res.D), ("V", res.V)):
            print(f"{name}:")
            for row in mat:
                print(" ", list(row))
    return 0


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilstab",
        description="Exact arithmetic for free nilpotent groups and their automorphisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, rank=True, klass=True, seed=False, fmt=True, oracle=False):
        if rank:
            p.add_argument("-r", "--rank", type=int, default=2)
        if klass:
            p.add_argument("-c", "--class", dest="class_bound", type=int, default=2)
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if fmt:
            p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        if oracle:
            p.add_argument("--oracle", action="store_true")
        p.add_argument("--unsafe-bounds", action="store_true")

    p = sub.add_parser("witt", help="table of free Lie ring layer ranks")
    p.add_argument("-r", "--rank", type=int, required=True, help="maximum rank")
    p.add_argument("-n", "--degree", type=int, required=True, help="maximum degree")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--unsafe-bounds", action="store_true")
    p.set_defaults(func=cmd_witt)

    p = sub.add_parser("lyndon", help="Lyndon words of one degree")
    p.add_argument("-r", "--rank", type=int, required=True)
    p.add_argument("-n", "--degree", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--unsafe-bounds", action="store_true")
    p.set_defaults(func=cmd_lyndon)

    p = sub.add_parser("mul", help="product of two elements in collected form")
    add_common(p, oracle=True)
    p.add_argument("elements", nargs=2)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("inv", help="inverse of an element")
    add_common(p, oracle=True)
    p.add_argument("elements", nargs=1)
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("comm", help="group commutator of two elements")
    add_common(p, oracle=True)
    p.add_argument("elements", nargs=2)
    p.set_defaults(func=cmd_comm)

    p = sub.add_parser("verify", help="run the invariant suite at one rank and class")
    add_common(p, seed=True, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("aut-lift", help="lift an automorphism to a higher class")
    p.add_argument("endo", nargs="?", default=None, help="endomorphism JSON, @file, or - for stdin")
    p.add_argument("--images", nargs="+", default=None, help="generator images in element syntax")
    p.add_argument("-r", "--rank", type=int, default=None)
    p.add_argument("-c", "--class", dest="class_bound", type=int, default=None)
    p.add_argument("--to-class", type=int, default=None)
    p.add_argument("--unsafe-bounds", action="store_true")
    p.set_defaults(func=cmd_aut_lift)

    p = sub.add_parser("kernel-iso", help="verify the kernel/maps correspondence")
    add_common(p, seed=True, fmt=False)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(func=cmd_kernel_iso)

    p = sub.add_parser("scan", help="degree-0 stability scan over a rank range")
    p.add_argument("--spec", required=True, help="module spec, e.g. 'hom(std, ext(2, dual))'")
    p.add_argument("-c", "--class", dest="class_bound", type=int, required=True)
    p.add_argument("-r", "--range", required=True, help="rank range like 1..5")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--allow-unstable", action="store_true")
    p.add_argument("--unsafe-bounds", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("matrix", help="matrix JSON, @file, or - for stdin")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_snf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as err:
        print(f"error: bad JSON input ({err})", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
