"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import sys

from .config import RunConfig, load_config
from .contraction import fixed_point_affine, iterate_fixed_point
from .errors import BudgetExceeded, ConfigError, PadicError
from .export import distance_matrix_text, export_points, write_atomic
from .family import SymbolWord, component_map
from .gallery import PxSystem, closed_form_fp, lambda_member
from .limitset import enumerate_lambda0, lambda0_point, extension_pair
from .padic import PadicInt, from_digits
from .verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _agreement(x: PadicInt, y: PadicInt) -> int:
    return (x - y).valuation()


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(cfg: RunConfig, args) -> int:
    sample = enumerate_lambda0(cfg.system, cfg.family, cfg.depth, cfg.budget)
    _emit(sample.to_text(), args.out or cfg.output)
    return EXIT_OK


def cmd_export(cfg: RunConfig, args) -> int:
    sample = enumerate_lambda0(cfg.system, cfg.family, cfg.depth, cfg.budget)
    _emit(export_points(sample, args.format), args.out or cfg.output)
    return EXIT_OK


def cmd_distmatrix(cfg: RunConfig, args) -> int:
    sample = enumerate_lambda0(cfg.system, cfg.family, cfg.depth, cfg.budget)
    _emit(distance_matrix_text(sample), args.out or cfg.output)
    return EXIT_OK


def cmd_member(cfg: RunConfig, args) -> int:
    x = from_digits(cfg.prime, [int(t) for t in args.digits.split(",")])
    verdict = "in" if lambda_member(x) else "not in"
    print(f"{verdict} Λ (at precision {x.precision})")
    return EXIT_OK


def cmd_fixedpoint(cfg: RunConfig, args) -> int:
    S = cfg.system
    word = SymbolWord.parse(args.word, S.N)
    n = args.depth or (len(word.prefix) if word.is_finite else cfg.depth)
    K = S.precision
    worst = K
    for i, row in enumerate(cfg.family.rows, start=1):
        for j, xi in enumerate(row, start=1):
            F = component_map(S, xi, word, n)
            closed = fixed_point_affine(F)
            iterated, steps = iterate_fixed_point(F, PadicInt.zero(S.prime, K))
            agree = _agreement(closed, iterated)
            worst = min(worst, agree)
            print(f"component {i},{j} [{xi.label}]: closed-form {closed}  iterative {iterated} "
                  f"({steps} steps)  agree mod p^{agree}")
    if isinstance(S, PxSystem):
        plain = closed_form_fp(S, word, n)
        print(f"plain fixed point (closed form): {plain}")
    print(f"depth-{n} point: {lambda0_point(S, cfg.family, word, n)}")
    return EXIT_OK if worst == K else EXIT_FAIL


def cmd_ftilde(cfg: RunConfig, args) -> int:
    S = cfg.system
    alpha = SymbolWord.parse(args.alpha, S.N)
    beta = SymbolWord.parse(args.beta, S.N)
    lhs, rhs, k = extension_pair(S, cfg.family, alpha, args.n, beta, args.m)
    agree = _agreement(lhs, rhs)
    ok = agree >= k
    print(f"F~[x_beta] at depth {args.m}: {lhs}")
    print(f"x of alpha^[{args.n}] v beta at depth {args.n + args.m}: {rhs}")
    print(f"agree mod p^{agree}, required p^{k}: {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(cfg: RunConfig, args) -> int:
    reports = run_all(cfg)
    text = "\n\n".join(r.to_text() for r in reports) + "\n"
    failed = [r for r in reports if not r.passed]
    text += f"\n{len(reports) - len(failed)}/{len(reports)} reports pass\n"
    _emit(text, args.out)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "member": cmd_member,
    "fixedpoint": cmd_fixedpoint,
    "ftilde": cmd_ftilde,
    "verify": cmd_verify,
    "distmatrix": cmd_distmatrix,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="run configuration file")
    common.add_argument("--depth", type=int, help="enumeration depth (overrides the config)")
    common.add_argument("--precision", type=int, help="digit count K (overrides the config)")
    common.add_argument("--seed", type=int, help="RNG seed for sampled suites")
    common.add_argument("--budget", type=int, help="maximum number of words to enumerate")
    common.add_argument("--out", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="padic-limits",
        description="Unconventional limit sets of contractive maps on Z_p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="write a limit-set sample")
    p = sub.add_parser("member", parents=[common], help="digit test for the two-map set Lambda")
    p.add_argument("digits", help="little-endian digits, e.g. 0,1,2,0")
    p = sub.add_parser("fixedpoint", parents=[common], help="closed-form vs iterated fixed points")
    p.add_argument("word", help="word such as 1,2 or 2:1 (prefix:periodic tail)")
    p = sub.add_parser("ftilde", parents=[common], help="compare F~[x_beta] with x_(alpha^[n] v beta)")
    p.add_argument("alpha")
    p.add_argument("n", type=int)
    p.add_argument("beta")
    p.add_argument("m", type=int)
    sub.add_parser("verify", parents=[common], help="run the invariant suites")
    sub.add_parser("distmatrix", parents=[common], help="pairwise valuations of a sample")
    p = sub.add_parser("export", parents=[common], help="export sample points")
    p.add_argument("--format", choices=("digits", "monna"), default="digits")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.precision, args.depth)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.budget is not None:
            cfg.budget = args.budget
        return COMMANDS[args.command](cfg, args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, PadicError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
