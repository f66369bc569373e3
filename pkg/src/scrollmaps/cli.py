"""Command line: ``scrollmaps <command> ...``; exit 0 iff no check fails, 2 on usage errors."""

from __future__ import annotations

import argparse
import logging
import sys

from . import cache
from .config import CACHE_ENV, DEFAULT_PRIME, ConfigError, RunConfig

log = logging.getLogger("scrollmaps")

VARIETIES = ("bordiga", "palatini")


def _field(text: str):
    if text.lower() in ("q", "qq", "rationals"):
        return "q"
    raise argparse.ArgumentTypeError("--field accepts only 'q' (use --prime for finite fields)")


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--prime", type=int, default=None, help=f"work over GF(p) (default {DEFAULT_PRIME})")
    g.add_argument("--field", type=_field, default=None, help="'q' to work over the rationals")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--retries", type=int, default=20, help="retry budget for random draws")
    p.add_argument("--cache-dir", default=None, help=f"Gröbner basis cache (default ${CACHE_ENV})")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--two-prime", action="store_true", help="repeat at a second prime and compare integers")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scrollmaps", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)
    p = vsub.add_parser("prop11", help="projection of the Segre threefold from a line")
    _common(p)
    p = vsub.add_parser("thm31", help="the web Σ of a scroll and its base locus")
    p.add_argument("--variety", choices=VARIETIES, required=True)
    p.add_argument("--mode", default="", help="Palatini: two-skew-lines (default) or blowdown6")
    _common(p)

    p = sub.add_parser("build", help="build and check a scroll")
    p.add_argument("variety", choices=VARIETIES)
    _common(p)
    p = sub.add_parser("table", help="the summary table row of a scroll")
    p.add_argument("variety", choices=VARIETIES)
    _common(p)
    p = sub.add_parser("cremona", help="Cremona transformation through a Bordiga scroll")
    p.add_argument("--special", action="store_true", help="put the line L' inside Λ")
    _common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "verify":
        pipeline = args.suite
    else:
        pipeline = args.command
    if args.field == "q":
        prime = None
    elif args.prime is not None:
        prime = args.prime
    else:
        prime = DEFAULT_PRIME if pipeline != "prop11" else None
    mode = getattr(args, "mode", "") or ""
    variety = getattr(args, "variety", "") or ""
    if pipeline in ("thm31", "build", "table", "cremona") and prime is None:
        raise ConfigError(f"{pipeline} runs over a prime field; pass --prime")
    if mode and variety == "bordiga":
        raise ConfigError("the Bordiga scroll has no modes")
    if mode and mode not in ("two-skew-lines", "blowdown6"):
        raise ConfigError(f"unknown mode {mode!r}")
    return RunConfig(pipeline=pipeline, prime=prime, seed=args.seed, mode=mode, variety=variety,
                     special=getattr(args, "special", False), retries=args.retries, cache_dir=args.cache_dir,
                     out=args.out, verbosity=args.verbose, second_prime=args.two_prime)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"scrollmaps: error: {exc}", file=sys.stderr)
        return 2
    from .scrolls.instances import GenericityError
    from .scrolls.pipelines import run

    bc = cache.activate(cfg.cache_dir)
    try:
        rep = run(cfg)
    except GenericityError as exc:
        print(f"scrollmaps: no generic configuration found: {exc}", file=sys.stderr)
        return 1
    finally:
        cache.activate(None)
    if bc is not None:
        rep.record("cache", bc.stats())
    for line in rep.summary_lines():
        print(line)
    print(f"{rep.pipeline}: {'PASS' if rep.ok else 'FAIL'} "
          f"({sum(c.status == 'pass' for c in rep.checks)} passed, {len(rep.failures)} failed, "
          f"{sum(c.status == 'skipped' for c in rep.checks)} skipped) in {rep.timings.get('total', 0):.1f}s")
    if cfg.out:
        rep.write(cfg.out)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
