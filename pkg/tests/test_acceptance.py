"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with the measured
quantities; run ``pytest tests/test_acceptance.py -s`` to see them.
Tolerances are exact everywhere except the runtime bound of criterion 1.
"""

import io
import random
import time

from conftest import FIXTURE_GROUPS, group, tree
from leftorders.cantor import FINITE, PERFECT, derivative_at_horizon, dichotomy_report
from leftorders.cli import main
from leftorders.cones import NEG, POS, check_axioms, less_than, propagate, right_less_than
from leftorders.dynamics import act, verify_cocycle
from leftorders.orderspace import PrefixTree, enumerate_level, oracle_enumerate
from leftorders.subgroups import SubgroupSpec, subgroup_ball, verify_restriction_continuity

ORACLE_LIMIT = 20  # 2^(|B_r| - 1) <= 2^20
RUNTIME_LIMIT = 300.0  # seconds, criterion 1
SEED = 20240101
CASES = 1000


def verdict(number, name, passed, detail):
    print(f"\n{'PASS' if passed else 'FAIL'} [{number}] {name}: {detail}")
    assert passed, detail


def test_1_oracle_equivalence():
    start = time.perf_counter()
    checked, bad = [], []
    for spec in FIXTURE_GROUPS:
        ctx = group(spec)
        for r in range(9):
            if len(ctx.ball(r)) - 1 > ORACLE_LIMIT:
                break
            if enumerate_level(ctx, r) != oracle_enumerate(ctx, r):
                bad.append((spec, r))
            checked.append((spec, r))
    elapsed = time.perf_counter() - start
    verdict(
        1,
        "oracle equivalence",
        not bad and elapsed < RUNTIME_LIMIT,
        f"{len(checked)} (group, radius) pairs, mismatches {bad}, {elapsed:.1f}s < {RUNTIME_LIMIT:.0f}s",
    )


def test_2_exact_counts():
    got = {
        "1": [len(enumerate_level(group("1"), r)) for r in range(9)],
        "C2/C3/S3 covering": [len(enumerate_level(group(g), r)) for g, r in (("C2", 1), ("C3", 1), ("S3", 3))],
        "Z": tree("Z", 6).counts()[1:],
        "Z^2": tree("Z^2", 2).counts()[1:],
        "Z^2 oracle r2": len(oracle_enumerate(group("Z^2"), 2)),
        "F2": tree("F2", 4).counts()[1:],
        "KB h8": dichotomy_report(group("KB"), 4, 8).label,
        "KB h9": dichotomy_report(group("KB"), 4, 9).label,
    }
    assert len(group("S3").ball(3)) == 6 and len(group("C3").ball(1)) == 3
    f2 = got["F2"]
    ok = (
        got["1"] == [1] * 9
        and got["C2/C3/S3 covering"] == [0, 0, 0]
        and got["Z"] == [2] * 6
        and got["Z^2"] == [4, 8]
        and got["Z^2 oracle r2"] == 8
        and f2[0] == 4
        and all(a < b for a, b in zip(f2, f2[1:]))
        and got["KB h8"] == got["KB h9"] == "FINITE_EVIDENCE(4)"
    )
    verdict(2, "exact counts", ok, str(got))


DICHOTOMY_CASES = [
    ("1", 2, 4),
    ("C2", 2, 4),
    ("C3", 2, 4),
    ("S3", 2, 4),
    ("Z", 3, 6),
    ("Z^2", 2, 4),
    ("F2", 3, 5),
    ("KB", 4, 8),
    ("H3", 2, 4),
]


def test_3_dichotomy_echo():
    labels = {g: dichotomy_report(group(g), r, h).label for g, r, h in DICHOTOMY_CASES}
    ok = set(labels) == set(FIXTURE_GROUPS) and all(
        lab.startswith(FINITE) or lab == PERFECT for lab in labels.values()
    )
    verdict(3, "dichotomy echo", ok, str(labels))


PROPERTY_TREES = [("Z", 6), ("Z^2", 6), ("F2", 4), ("KB", 6), ("H3", 4)]


def test_4_property_suites():
    rng = random.Random(SEED)
    counts = dict.fromkeys(
        ["order", "right order", "propagate", "admissible action", "cocycle", "inverse action", "antipodal"], 0
    )
    failures = []

    def pick():
        spec, r = PROPERTY_TREES[rng.randrange(len(PROPERTY_TREES))]
        return group(spec), r, rng.choice(tree(spec, r).levels[r])

    # cone <-> order: irreflexive, antisymmetric, transitive and left invariant where decided
    while counts["order"] < CASES:
        ctx, r, cone = pick()
        small = ctx.ball(r // 2)
        x, y, z, g = (rng.choice(small) for _ in range(4))
        if len({x, y, z}) < 3 or less_than(cone, x, y) is None:
            continue
        counts["order"] += 1
        if cone.sign(ctx.multiply(ctx.invert(x), x)) != 0:
            failures.append(("irreflexive", x))
        xy, yx = less_than(cone, x, y), less_than(cone, y, x)
        if yx is None or xy == yx:
            failures.append(("antisymmetric", x, y))
        a, b, c = less_than(cone, x, y), less_than(cone, y, z), less_than(cone, x, z)
        if a and b and c is False:
            failures.append(("transitive", x, y, z))
        moved = less_than(cone, ctx.multiply(g, x), ctx.multiply(g, y))
        if moved is not None and moved != xy:
            failures.append(("left invariant", g, x, y))

    while counts["right order"] < CASES:
        ctx, r, cone = pick()
        small = ctx.ball(r // 2)
        x, y, g = (rng.choice(small) for _ in range(3))
        if x == y:
            continue
        before = right_less_than(cone, x, y)
        after = right_less_than(cone, ctx.multiply(x, g), ctx.multiply(y, g))
        if before is None or after is None:
            continue  # Heisenberg balls are not closed under these products
        counts["right order"] += 1
        if after != before:
            failures.append(("right invariant", g, x, y))

    while counts["propagate"] < CASES:
        ctx, r, _ = pick()
        r = min(r, 3)
        elements = ctx.ball(r)[1:]
        partial = {rng.choice(elements): rng.choice((POS, NEG)) for _ in range(rng.randint(0, 5))}
        out = propagate(ctx, partial, r)
        counts["propagate"] += 1
        if out.refuted:
            continue
        if any(out.signs[g] != s for g, s in partial.items()):
            failures.append(("propagate monotone", partial))
        if propagate(ctx, out.signs, r).signs != out.signs:
            failures.append(("propagate idempotent", partial))

    while counts["cocycle"] < CASES:
        ctx, r, cone = pick()
        small = ctx.ball(1)
        g, h = rng.choice(small), rng.choice(small)
        moved = act(cone, g)
        counts["admissible action"] += 1
        counts["cocycle"] += 1
        counts["inverse action"] += 1
        if check_axioms(moved):
            failures.append(("admissible action", g))
        if not verify_cocycle(cone, g, h):
            failures.append(("cocycle", g, h))
        back = act(moved, ctx.invert(g))
        if back != cone.restrict(back.radius):
            failures.append(("inverse action", g))

    for spec, r in PROPERTY_TREES + [("1", 3), ("C2", 2)]:
        for level in tree(spec, r).levels:
            members = set(level)
            for cone in level:
                counts["antipodal"] += 1
                if cone.radius > 0 and cone.flip() not in members:
                    failures.append(("antipodal", spec, cone.radius))

    ok = not failures and all(n >= CASES for n in counts.values())
    verdict(4, "property suites", ok, f"cases {counts}, failures {failures[:5]}")


CONTINUITY = [("Z^2", "e1", 2), ("Z", "a^2", 4), ("F2", "ab", 4)]


def test_5_restriction_continuity():
    checked = {}
    ok = True
    for spec, words, level in CONTINUITY:
        ctx = group(spec)
        sub = SubgroupSpec.parse(ctx, words)
        hs = [h for _, h in subgroup_ball(sub, 2)[1:]]
        results = [verify_restriction_continuity(tree(spec, level), sub, h, level) for h in hs]
        checked[f"{spec} <{words}>"] = f"{sum(results)}/{len(hs)}"
        ok = ok and all(results)
    verdict(5, "restriction continuity", ok, str(checked))


def test_6_derivative_fixed_point():
    traces = {}
    ok = True
    for spec, level, horizon in [("Z", 2, 6), ("KB", 3, 6), ("Z^2", 2, 5), ("F2", 2, 4), ("H3", 2, 4)]:
        t = tree(spec, horizon)
        trace = derivative_at_horizon(t, level, horizon, iterations=len(t.levels[level]) + 1)
        traces[spec] = trace[:4]
        ok = ok and all(a >= b for a, b in zip(trace, trace[1:])) and trace[-1] == trace[-2]
    z = derivative_at_horizon(tree("Z", 6), 2, 6, iterations=1)
    binary = PrefixTree.from_parents([[-1]] + [[i // 2 for i in range(2**r)] for r in range(1, 6)])
    full = derivative_at_horizon(binary, 2, 5, iterations=5)
    ok = ok and z == [2, 0] and len(set(full)) == 1
    verdict(6, "derivative fixed point", ok, f"traces {traces}, Z {z}, binary {full}")


CLI_RUNS = [
    ["enumerate", "--group", "Z", "--radius", "3"],
    ["enumerate", "--group", "C2", "--radius", "1"],
    ["enumerate", "--group", "Z^2", "--radius", "1", "--format", "json"],
    ["enumerate", "--group", "F2", "--radius", "4", "--all-levels"],
    ["dichotomy", "--group", "KB", "--radius", "4", "--horizon", "8"],
    ["dichotomy", "--group", "F2", "--radius", "3", "--horizon", "5"],
    ["dichotomy", "--group", "1", "--radius", "2", "--horizon", "4"],
    ["orbits", "--group", "KB", "--level", "5"],
    ["restrict", "--group", "Z^2", "--subgroup", "e1", "--radius", "4", "--subradius", "2"],
    ["export", "--group", "Z", "--radius", "3", "--format", "dot"],
    ["export", "--group", "H3", "--radius", "3", "--format", "json"],
    ["check", "--group", "KB", "--radius", "4", "--samples", "100", "--seed", "3"],
]


def test_7_determinism_across_jobs():
    differing = []
    for argv in CLI_RUNS:
        outputs = []
        for jobs in ("1", "4"):
            buf = io.StringIO()
            code = main(argv + ["--jobs", jobs], out=buf)
            outputs.append((code, buf.getvalue().encode()))
        if outputs[0] != outputs[1]:
            differing.append(" ".join(argv))
    verdict(7, "determinism across --jobs 1 and 4", not differing, f"{len(CLI_RUNS)} commands, differing {differing}")
