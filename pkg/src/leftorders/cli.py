"""Command line front end.

Exit codes:
  0  success
  1  usage error (bad flags, unknown group, unparseable element)
  2  search budget or oracle cap exhausted
  3  dichotomy verdict INCONCLUSIVE
  4  radius too small to decide the request
  5  a cross-check failed (oracle mismatch, sampled property violation)
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .cantor import INCONCLUSIVE, dichotomy_report
from .cones import check_axioms
from .dynamics import act, default_generators, orbits_at_level, orbits_to_dict, required_radius, verify_cocycle
from .errors import BudgetExceeded, ChainError, GroupSpecError, OracleCapExceeded, RadiusError
from .groups import parse_group_spec
from .orderspace import (
    DEFAULT_NODE_LIMIT,
    DEFAULT_ORACLE_CAP,
    build_tree,
    oracle_enumerate,
    tree_to_dot,
    tree_to_json,
)
from .subgroups import SubgroupSpec, restriction_to_dict

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_INCONCLUSIVE = 3
EXIT_RADIUS = 4
EXIT_CHECK_FAILED = 5


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    group: str
    radius: int | None = None
    horizon: int | None = None
    window: int = 3
    node_limit: int = DEFAULT_NODE_LIMIT
    oracle_cap: int = DEFAULT_ORACLE_CAP
    format: str = "table"
    seed: int = 0
    jobs: int = 1

    def validate(self):
        if self.radius is not None and self.radius < 0:
            raise UsageError("--radius must be nonnegative")
        if self.radius is not None and self.horizon is not None and self.horizon < self.radius:
            raise UsageError("--horizon must be at least --radius")
        if self.node_limit <= 0 or self.oracle_cap <= 0:
            raise UsageError("budgets must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.window < 1:
            raise UsageError("--window must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--group", required=True, help='group descriptor: 1, C<n>, S3, Z, Z^<d>, F<k>, KB, H3')
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT,
                   help="search nodes allowed per level (default: %(default)s)")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP,
                   help="raw assignments the brute-force oracle may scan (default: %(default)s)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="leftorders",
        description="Enumerate and analyse left orders of small groups via ball-restricted positive cones.",
        epilog="exit codes: 0 ok, 1 usage, 2 budget exhausted, 3 inconclusive, 4 radius too small, 5 check failed",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="admissible cones on a ball")
    _common(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--format", choices=("table", "json", "dot"), default="table",
                   help="output format (default: %(default)s)")
    p.add_argument("--all-levels", action="store_true", help="print counts for every radius up to --radius")
    p.add_argument("--show-cones", action="store_true", help="list positive elements of each cone")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force enumeration")

    p = sub.add_parser("dichotomy", help="finite-or-Cantor evidence report")
    _common(p)
    p.add_argument("--radius", type=int, default=4, help="analysis level (default: %(default)s)")
    p.add_argument("--horizon", type=int, default=8, help="horizon radius (default: %(default)s)")
    p.add_argument("--window", type=int, default=3, help="stability window in levels (default: %(default)s)")
    p.add_argument("--format", choices=("table", "json"), default="table",
                   help="output format (default: %(default)s)")

    p = sub.add_parser("orbits", help="orbits of the conjugation action on a level")
    _common(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--depth", type=int, default=None,
                   help="tree depth (default: deep enough for exact lifted joins)")

    p = sub.add_parser("restrict", help="restrict every level cone to a subgroup")
    _common(p)
    p.add_argument("--subgroup", required=True, help='comma separated generator words, e.g. "e1" or "ab,b^2"')
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--subradius", type=int, required=True)

    p = sub.add_parser("export", help="export the prefix tree")
    _common(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json",
                   help="output format (default: %(default)s)")

    p = sub.add_parser("check", help="oracle comparison and sampled action checks on one level")
    _common(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--samples", type=int, default=200, help="random triples (default: %(default)s)")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(
        group=args.group,
        radius=getattr(args, "radius", None),
        horizon=getattr(args, "horizon", None),
        window=getattr(args, "window", 3),
        node_limit=args.node_limit,
        oracle_cap=args.oracle_cap,
        format=getattr(args, "format", "table"),
        seed=args.seed,
        jobs=args.jobs,
    )
    cfg.validate()
    return cfg


def cmd_enumerate(args, cfg, out):
    ctx = parse_group_spec(cfg.group)
    tree = build_tree(ctx, cfg.radius, cfg.node_limit, cfg.jobs)
    cones = tree.levels[cfg.radius]
    if args.oracle and oracle_enumerate(ctx, cfg.radius, cfg.oracle_cap) != cones:
        print("oracle mismatch", file=out)
        return EXIT_CHECK_FAILED
    if cfg.format == "json":
        print(json.dumps([c.to_dict() for c in cones], indent=2), file=out)
    elif cfg.format == "dot":
        out.write(tree_to_dot(tree))
    else:
        radii = range(cfg.radius + 1) if args.all_levels else [cfg.radius]
        for r in radii:
            n = len(tree.levels[r])
            print(f"radius {r}: {n} cone{'' if n == 1 else 's'}", file=out)
        if args.show_cones:
            for i, c in enumerate(cones):
                print(f"  {tree.node_id(cfg.radius, i)} positive {c.describe()}", file=out)
        if args.oracle:
            print("oracle: match", file=out)
    return EXIT_OK


def cmd_dichotomy(args, cfg, out):
    ctx = parse_group_spec(cfg.group)
    report = dichotomy_report(ctx, cfg.radius, cfg.horizon, cfg.window, cfg.node_limit, cfg.jobs)
    if cfg.format == "json":
        print(report.to_json(), file=out)
    else:
        print(report.table(), file=out)
    return EXIT_INCONCLUSIVE if report.verdict == INCONCLUSIVE else EXIT_OK


def cmd_orbits(args, cfg, out):
    ctx = parse_group_spec(cfg.group)
    if args.level < 0:
        raise UsageError("--level must be nonnegative")
    depth = args.depth
    if depth is None:
        depth = max([args.level] + [required_radius(ctx, args.level, s) for s in default_generators(ctx)])
    tree = build_tree(ctx, max(depth, args.level), cfg.node_limit, cfg.jobs)
    partition = orbits_at_level(tree, args.level)
    print(json.dumps(orbits_to_dict(tree, partition), indent=2), file=out)
    return EXIT_OK


def cmd_restrict(args, cfg, out):
    ctx = parse_group_spec(cfg.group)
    spec = SubgroupSpec.parse(ctx, args.subgroup)
    if args.subradius < 0:
        raise UsageError("--subradius must be nonnegative")
    tree = build_tree(ctx, cfg.radius, cfg.node_limit, cfg.jobs)
    print(json.dumps(restriction_to_dict(tree, spec, cfg.radius, args.subradius), indent=2), file=out)
    return EXIT_OK


def cmd_export(args, cfg, out):
    ctx = parse_group_spec(cfg.group)
    tree = build_tree(ctx, cfg.radius, cfg.node_limit, cfg.jobs)
    if cfg.format == "dot":
        out.write(tree_to_dot(tree))
    else:
        print(tree_to_json(tree), file=out)
    return EXIT_OK


def cmd_check(args, cfg, out):
    ctx = parse_group_spec(cfg.group)
    tree = build_tree(ctx, cfg.radius, cfg.node_limit, cfg.jobs)
    cones = tree.levels[cfg.radius]
    ok = True
    try:
        same = oracle_enumerate(ctx, cfg.radius, cfg.oracle_cap) == cones
        print(f"{'PASS' if same else 'FAIL'} oracle equivalence ({len(cones)} cones)", file=out)
        ok = ok and same
    except OracleCapExceeded:
        print("SKIP oracle equivalence (cap exceeded)", file=out)
    rng = random.Random(cfg.seed)
    # acting twice by elements of norm <= radius/4 keeps every check decidable
    ball = ctx.ball(cfg.radius // 4)
    tried = admissible = cocycle = inverse = 0
    for _ in range(args.samples if cones else 0):
        cone = rng.choice(cones)
        g, h = rng.choice(ball), rng.choice(ball)
        try:
            moved = act(cone, g)
            ok_cocycle = verify_cocycle(cone, g, h)
            back = act(moved, ctx.invert(g))
        except RadiusError:
            continue
        tried += 1
        admissible += not check_axioms(moved)
        cocycle += ok_cocycle
        inverse += back == cone.restrict(back.radius)
    for name, passed in (("action admissible", admissible), ("cocycle", cocycle), ("inverse action", inverse)):
        verdict = "PASS" if passed == tried else "FAIL"
        ok = ok and passed == tried
        print(f"{verdict} {name} ({passed}/{tried} sampled)", file=out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "enumerate": cmd_enumerate,
    "dichotomy": cmd_dichotomy,
    "orbits": cmd_orbits,
    "restrict": cmd_restrict,
    "export": cmd_export,
    "check": cmd_check,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, GroupSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, OracleCapExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RadiusError, ChainError) as exc:
        print(f"radius error: {exc}", file=sys.stderr)
        return EXIT_RADIUS


if __name__ == "__main__":
    sys.exit(main())
