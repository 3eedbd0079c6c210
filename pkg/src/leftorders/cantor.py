"""Finite-horizon Cantor-Bendixson analysis of the order space.

Points of the order space are branches of the prefix tree.  A level-``n``
node stands for the basic neighbourhood of orders extending its cone; if
only one horizon-``m`` cone lies above it, the node is *rigid to horizon*,
the computable stand-in for an isolated point.  The stand-in is one-sided:
a rigid node may still branch past the horizon, and every verdict carries
its horizon.

:func:`dichotomy_report` does not build the horizon level.  It counts the
extensions of each level-``n`` node with a capped search (cap 2 is enough
to tell rigid from branching), which keeps free groups tractable.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

from .cones import SCHEMA_VERSION
from .errors import BudgetExceeded, RadiusError
from .groups import GroupCtx
from .orderspace import DEFAULT_NODE_LIMIT, PrefixTree, build_tree, count_extensions

FINITE = "FINITE_EVIDENCE"
PERFECT = "PERFECT_KERNEL_EVIDENCE"
INCONCLUSIVE = "INCONCLUSIVE"


class RigidityClass(NamedTuple):
    node_id: str
    level: int
    horizon: int
    descendant_count: int

    @property
    def rigid(self) -> bool:
        return self.descendant_count == 1


def classify_rigidity(tree: PrefixTree, level: int, horizon: int) -> list[RigidityClass]:
    """Horizon descendant counts for the level nodes that have any."""
    if level > horizon:
        raise RadiusError(f"level {level} is above horizon {horizon}")
    counts = tree.descendant_counts(level, horizon)
    return [
        RigidityClass(tree.node_id(level, i), level, horizon, c) for i, c in enumerate(counts) if c > 0
    ]


def derivative_at_horizon(tree: PrefixTree, level: int, horizon: int, iterations: int = 1) -> list[int]:
    """Surviving level-node counts under repeated removal of rigid branches.

    Entry 0 counts level nodes with a horizon descendant; entry ``k`` counts
    those left after ``k`` rounds.  Each round deletes the horizon leaves
    lying above a node with exactly one live leaf, then re-counts.
    """
    if level > horizon:
        raise RadiusError(f"level {level} is above horizon {horizon}")
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    owner = [tree.ancestor(horizon, j, level) for j in range(len(tree.levels[horizon]))]
    alive = [True] * len(owner)

    def live_counts():
        counts = [0] * len(tree.levels[level])
        for j, o in enumerate(owner):
            if alive[j]:
                counts[o] += 1
        return counts

    counts = live_counts()
    trace = [sum(1 for c in counts if c > 0)]
    for _ in range(iterations):
        for j, o in enumerate(owner):
            if alive[j] and counts[o] == 1:
                alive[j] = False
        counts = live_counts()
        trace.append(sum(1 for c in counts if c > 0))
    return trace


def _trace_from_counts(counts: list[int], iterations: int) -> list[int]:
    # level-n subtrees are disjoint, so removing rigid ones leaves the rest intact
    live = [c for c in counts if c > 0]
    trace = [len(live)]
    for _ in range(iterations):
        live = [c for c in live if c != 1]
        trace.append(len(live))
    return trace


@dataclass
class DichotomyReport:
    group: str
    max_radius: int
    horizon: int
    window: int
    admissible_counts: list = field(default_factory=list)
    pruned_counts: list = field(default_factory=list)
    rigid_counts: list = field(default_factory=list)
    stable_branch_count: object = "not stabilized"
    verdict: str = INCONCLUSIVE
    k: int | None = None
    derivative_trace: list = field(default_factory=list)
    note: str = ""

    @property
    def label(self) -> str:
        return f"{FINITE}({self.k})" if self.verdict == FINITE else self.verdict

    def to_dict(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION}
        out.update(asdict(self))
        out["label"] = self.label
        out["evidence"] = f"evidence at horizon {self.horizon}"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def table(self) -> str:
        lines = [
            f"group {self.group}  radius {self.max_radius}  horizon {self.horizon}  window {self.window}",
            f"{'level':>5} {'admissible':>11} {'pruned':>8} {'rigid':>7}",
        ]
        for r, a in enumerate(self.admissible_counts):
            p = self.pruned_counts[r] if r < len(self.pruned_counts) else "-"
            g = self.rigid_counts[r] if r < len(self.rigid_counts) else "-"
            lines.append(f"{r:>5} {a:>11} {p:>8} {g:>7}")
        lines.append(f"stable branch count: {self.stable_branch_count}")
        lines.append(f"derivative trace: {self.derivative_trace}")
        if self.note:
            lines.append(f"note: {self.note}")
        lines.append(f"{self.label} (evidence at horizon {self.horizon})")
        return "\n".join(lines)


def dichotomy_report(
    ctx: GroupCtx,
    max_radius: int,
    horizon: int,
    window: int = 3,
    node_limit: int = DEFAULT_NODE_LIMIT,
    jobs: int = 1,
    iterations: int = 3,
) -> DichotomyReport:
    """Classify the order space as finite-looking or Cantor-looking at a horizon.

    FINITE_EVIDENCE(k): on each of the last ``window`` levels the horizon
    pruned count is ``k`` and every node is rigid.  PERFECT_KERNEL_EVIDENCE:
    the top level is nonempty and each of its surviving nodes has at least
    two horizon extensions.  Anything else, including an exhausted search
    budget, is INCONCLUSIVE.
    """
    if horizon < max_radius:
        raise RadiusError(f"horizon {horizon} is below radius {max_radius}")
    if window < 1:
        raise ValueError("window must be at least 1")
    report = DichotomyReport(ctx.spec, max_radius, horizon, window)
    try:
        tree = build_tree(ctx, max_radius, node_limit, jobs)
    except BudgetExceeded as exc:
        report.admissible_counts = exc.partial.counts()
        report.note = f"search budget exhausted while building the tree: {exc}"
        return report
    report.admissible_counts = tree.counts()
    top = tree.levels[max_radius]
    try:
        ext, _ = count_extensions(ctx, top, horizon, cap=2, node_limit=node_limit, jobs=jobs)
    except BudgetExceeded as exc:
        report.note = f"search budget exhausted while extending to the horizon: {exc}"
        return report

    # capped horizon counts for every level, summed up the tree
    per_level = [None] * (max_radius + 1)
    per_level[max_radius] = ext
    for r in range(max_radius, 0, -1):
        up = [0] * len(tree.levels[r - 1])
        for j, p in enumerate(tree.parents[r]):
            up[p] = min(2, up[p] + per_level[r][j])
        per_level[r - 1] = up
    report.pruned_counts = [sum(1 for c in counts if c > 0) for counts in per_level]
    report.rigid_counts = [sum(1 for c in counts if c == 1) for counts in per_level]
    report.derivative_trace = _trace_from_counts(ext, iterations)

    lo = max_radius - window + 1
    if lo >= 0:
        span = report.pruned_counts[lo:]
        if len(set(span)) == 1:
            report.stable_branch_count = span[0]
    all_rigid = lo >= 0 and all(
        report.rigid_counts[r] == report.pruned_counts[r] for r in range(lo, max_radius + 1)
    )
    live = [c for c in ext if c > 0]
    if isinstance(report.stable_branch_count, int) and all_rigid:
        report.verdict = FINITE
        report.k = report.stable_branch_count
    elif live and all(c >= 2 for c in live):
        report.verdict = PERFECT
    elif lo < 0:
        report.note = f"radius {max_radius} is shorter than the stability window {window}"
    return report
