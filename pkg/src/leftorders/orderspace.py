"""Finite approximations of the space of left orders.

Level ``r`` of a :class:`PrefixTree` holds every admissible cone on
``ball(r)``; a node's parent is its restriction to ``ball(r - 1)``.  The
infinite branches of the full tree are the left orders of the group, so
each level over-approximates the projection of the order space.

Levels are built by extending every parent with a depth-first search that
branches on the first undecided ball element (positive first) and runs
:func:`~leftorders.cones.propagate_indices` after each decision.
Parallel runs split the work by parent, which keeps output and node counts
identical for any number of workers.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Sequence

import numpy as np

from .cones import (
    NEG,
    POS,
    SCHEMA_VERSION,
    ChainCondition,
    PartialCone,
    assign_positive,
    constraints,
    satisfies_chain,
)
from .errors import BudgetExceeded, OracleCapExceeded, RadiusError
from .groups import GroupCtx, parse_group_spec

DEFAULT_NODE_LIMIT = 10**7
DEFAULT_ORACLE_CAP = 2**24


# -- search core -------------------------------------------------------------


def _seeded_state(cons, fixed: Sequence[int]):
    """Signs/positives after asserting ``fixed`` (a prefix sign vector) and propagating."""
    signs = [0] * cons.n
    pos: list[int] = []
    for i, s in enumerate(fixed):
        lit = i if s == POS else cons.inv[i]
        if assign_positive(cons, signs, pos, lit) is not None:
            return None
    return signs, pos


def _dfs(cons, signs, pos, start, max_solutions, node_limit):
    """Depth-first completion of a propagated partial state.

    Returns ``(solutions, nodes, complete)``; ``complete`` is False when
    the node limit stopped the search early.
    """
    inv = cons.inv
    n = cons.n
    out = []
    nodes = 0
    stack = [(signs, pos, start)]
    while stack:
        s, p, i = stack.pop()
        while i < n and s[i] != 0:
            i += 1
        if i == n:
            out.append(tuple(s))
            if max_solutions is not None and len(out) >= max_solutions:
                return out, nodes, True
            continue
        # pushed negative first so the positive branch is explored first
        for lit in (inv[i], i):
            nodes += 1
            if nodes > node_limit:
                return out, nodes, False
            s2 = list(s)
            p2 = list(p)
            if assign_positive(cons, s2, p2, lit) is None:
                stack.append((s2, p2, i + 1))
    return out, nodes, True


def _extend_chunk(spec, radius, parents, max_solutions, node_limit):
    """Worker: extend every parent sign vector to ``radius``.

    Returns ``(children per parent, nodes, complete)``.
    """
    ctx = parse_group_spec(spec)
    cons = constraints(ctx, radius)
    results = []
    nodes = 0
    for parent in parents:
        state = _seeded_state(cons, parent)
        if state is None:
            results.append([])
            continue
        found, used, complete = _dfs(cons, *state, len(parent), max_solutions, node_limit - nodes)
        nodes += used
        results.append(found)
        if not complete:
            return results, nodes, False
    return results, nodes, True


def _map_chunks(spec, radius, parents, max_solutions, node_limit, jobs):
    """Extend ``parents`` in deterministic chunks; returns (children lists, nodes, complete)."""
    if jobs <= 1 or len(parents) < 2:
        return _extend_chunk(spec, radius, parents, max_solutions, node_limit)
    nchunks = min(len(parents), 4 * jobs)
    size = -(-len(parents) // nchunks)
    chunks = [parents[k : k + size] for k in range(0, len(parents), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_extend_chunk, spec, radius, chunk, max_solutions, node_limit)
            for chunk in chunks
        ]
        parts = [f.result() for f in futures]
    children: list = []
    nodes = 0
    complete = True
    for found, used, ok in parts:
        children.extend(found)
        nodes += used
        complete = complete and ok
    return children, nodes, complete and nodes <= node_limit


def extend_cone(cone: PartialCone, radius: int, max_solutions=None, node_limit=DEFAULT_NODE_LIMIT):
    """Admissible cones on ``ball(radius)`` restricting to ``cone``, canonically sorted."""
    if radius < cone.radius:
        raise RadiusError(f"cannot extend a radius-{cone.radius} cone to radius {radius}")
    found, nodes, complete = _extend_chunk(
        cone.ctx.spec, radius, [cone.signs], max_solutions, node_limit
    )
    if not complete:
        raise BudgetExceeded(f"node limit {node_limit} exceeded", nodes, found[0] if found else [])
    out = [PartialCone(cone.ctx, radius, s) for s in found[0]]
    out.sort(key=lambda c: c.sort_key)
    return out


def count_extensions(ctx: GroupCtx, cones, radius, cap=2, node_limit=DEFAULT_NODE_LIMIT, jobs=1):
    """For each cone, ``min(cap, number of admissible extensions to radius)``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    parents = [c.signs for c in cones]
    found, nodes, complete = _map_chunks(ctx.spec, radius, parents, cap, node_limit, jobs)
    if not complete:
        raise BudgetExceeded(f"node limit {node_limit} exceeded while searching to radius {radius}", nodes)
    return [len(f) for f in found], nodes


# -- prefix tree -------------------------------------------------------------


@dataclass
class PrefixTree:
    """Levels ``0..max_radius`` of admissible cones with restriction edges.

    ``parents[r][i]`` is the index in ``levels[r - 1]`` of the parent of
    ``levels[r][i]`` (-1 at level 0).  Synthetic trees used for testing
    the analysis code may carry arbitrary node labels and ``ctx=None``.
    """

    ctx: GroupCtx | None
    max_radius: int
    levels: list[list[Any]]
    parents: list[list[int]]
    nodes_visited: list[int] = field(default_factory=list)

    @classmethod
    def from_parents(cls, parents: Sequence[Sequence[int]]) -> "PrefixTree":
        """Synthetic tree from parent index lists; ``parents[0]`` is the root level."""
        levels = [[f"{r}:{i}" for i in range(len(p))] for r, p in enumerate(parents)]
        return cls(None, len(parents) - 1, levels, [list(p) for p in parents])

    def node_id(self, level: int, index: int) -> str:
        return f"{level}:{index}"

    def children(self, level: int) -> list[list[int]]:
        """Child index lists for every node of ``level``."""
        out: list[list[int]] = [[] for _ in self.levels[level]]
        if level < self.max_radius:
            for j, p in enumerate(self.parents[level + 1]):
                out[p].append(j)
        return out

    def counts(self) -> list[int]:
        return [len(level) for level in self.levels]

    def ancestor(self, level: int, index: int, target: int) -> int:
        while level > target:
            index = self.parents[level][index]
            level -= 1
        return index

    def descendant_counts(self, level: int, horizon: int) -> list[int]:
        """Number of ``horizon``-level descendants of every node of ``level``."""
        if not 0 <= level <= horizon <= self.max_radius:
            raise RadiusError(f"need 0 <= level {level} <= horizon {horizon} <= {self.max_radius}")
        counts = [1] * len(self.levels[horizon])
        for r in range(horizon, level, -1):
            up = [0] * len(self.levels[r - 1])
            for j, p in enumerate(self.parents[r]):
                up[p] += counts[j]
            counts = up
        return counts


class LevelSummary(NamedTuple):
    radius: int
    node_count: int
    child_counts: tuple


def level_summaries(tree: PrefixTree) -> list[LevelSummary]:
    return [
        LevelSummary(r, len(tree.levels[r]), tuple(len(c) for c in tree.children(r)))
        for r in range(tree.max_radius + 1)
    ]


def build_tree(ctx: GroupCtx, max_radius: int, node_limit=DEFAULT_NODE_LIMIT, jobs=1) -> PrefixTree:
    """All admissible cones on balls of radius ``0..max_radius``.

    ``node_limit`` bounds the search nodes spent on each level.  On
    exhaustion :class:`BudgetExceeded` carries the completed levels as a
    tree in ``partial``.
    """
    if max_radius < 0:
        raise ValueError("max_radius must be nonnegative")
    root = PartialCone(ctx, 0, ())
    tree = PrefixTree(ctx, 0, [[root]], [[-1]], [0])
    for r in range(1, max_radius + 1):
        prev = tree.levels[r - 1]
        found, nodes, complete = _map_chunks(ctx.spec, r, [c.signs for c in prev], None, node_limit, jobs)
        if not complete:
            raise BudgetExceeded(
                f"node limit {node_limit} exceeded at radius {r}", nodes, tree
            )
        level = []
        parents = []
        for p, kids in enumerate(found):
            kids = sorted(kids, key=lambda s: tuple(x == NEG for x in s))
            level.extend(PartialCone(ctx, r, s) for s in kids)
            parents.extend([p] * len(kids))
        tree.levels.append(level)
        tree.parents.append(parents)
        tree.nodes_visited.append(nodes)
        tree.max_radius = r
    return tree


def enumerate_level(ctx: GroupCtx, radius: int, node_limit=DEFAULT_NODE_LIMIT, jobs=1) -> list[PartialCone]:
    """Every admissible cone on ``ball(radius)``, canonically sorted."""
    return build_tree(ctx, radius, node_limit, jobs).levels[radius]


def prune_to_horizon(tree: PrefixTree, horizon: int) -> PrefixTree:
    """Drop nodes below ``horizon`` that have no descendant at ``horizon``."""
    if not 0 <= horizon <= tree.max_radius:
        raise RadiusError(f"horizon {horizon} outside 0..{tree.max_radius}")
    keep = [None] * (tree.max_radius + 1)
    keep[horizon] = [True] * len(tree.levels[horizon])
    for r in range(horizon + 1, tree.max_radius + 1):
        keep[r] = [True] * len(tree.levels[r])
    for r in range(horizon, 0, -1):
        up = [False] * len(tree.levels[r - 1])
        for j, p in enumerate(tree.parents[r]):
            if keep[r][j]:
                up[p] = True
        keep[r - 1] = up
    levels, parents = [], []
    remap_prev: dict[int, int] = {}
    for r in range(tree.max_radius + 1):
        remap: dict[int, int] = {}
        level, par = [], []
        for i, node in enumerate(tree.levels[r]):
            if keep[r][i]:
                remap[i] = len(level)
                level.append(node)
                par.append(-1 if r == 0 else remap_prev[tree.parents[r][i]])
        levels.append(level)
        parents.append(par)
        remap_prev = remap
    return PrefixTree(tree.ctx, tree.max_radius, levels, parents, list(tree.nodes_visited))


def select_by_chain(tree: PrefixTree, level: int, chain: ChainCondition) -> list[int]:
    """Indices of level nodes whose cone satisfies ``chain``.

    Raises :class:`RadiusError` when the chain cannot be decided at this
    radius.
    """
    ctx = tree.ctx
    for h, g in zip(chain.elements, chain.elements[1:]):
        if not ctx.in_ball(ctx.multiply(ctx.invert(h), g), level):
            raise RadiusError(
                f"chain step {ctx.format(h)} < {ctx.format(g)} is undecidable at radius {level}"
            )
    return [i for i, cone in enumerate(tree.levels[level]) if satisfies_chain(cone, chain)]


# -- brute-force oracle -------------------------------------------------------


def oracle_enumerate(ctx: GroupCtx, radius: int, cap=DEFAULT_ORACLE_CAP) -> list[PartialCone]:
    """Admissible cones by filtering all ``2^(|ball| - 1)`` sign assignments.

    Shares nothing with the search path: products come straight from the
    group arithmetic and every axiom is checked pairwise on a vector of
    bitmasks (bit ``i`` set means element ``i`` is positive).
    """
    elements = list(ctx.ball(radius)[1:])
    n = len(elements)
    if 2**n > cap:
        raise OracleCapExceeded(f"2^{n} raw assignments exceed the cap {cap}")
    where = {g: i for i, g in enumerate(elements)}
    masks = np.arange(2**n, dtype=np.int64)

    def bit(i):
        return (masks >> i) & 1

    for i, g in enumerate(elements):
        j = where[ctx.invert(g)]
        # exactly one of g, g^-1 positive
        masks = masks[bit(i) != bit(j)] if i != j else masks[:0]
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            k = where.get(ctx.multiply(g, h))
            if k is None:
                continue
            masks = masks[(bit(i) & bit(j) & (1 - bit(k))) == 0]
    out = [
        PartialCone(ctx, radius, [POS if (int(m) >> i) & 1 else NEG for i in range(n)])
        for m in masks
    ]
    out.sort(key=lambda c: c.sort_key)
    return out


# -- export ------------------------------------------------------------------


def tree_to_dict(tree: PrefixTree) -> dict:
    levels = []
    for r, level in enumerate(tree.levels):
        nodes = []
        for i, cone in enumerate(level):
            nodes.append(
                {
                    "id": tree.node_id(r, i),
                    "signs": cone.to_dict()["signs"],
                    "parent_id": None if r == 0 else tree.node_id(r - 1, tree.parents[r][i]),
                }
            )
        levels.append({"radius": r, "nodes": nodes})
    return {
        "schema_version": SCHEMA_VERSION,
        "group": tree.ctx.spec,
        "max_radius": tree.max_radius,
        "levels": levels,
    }


def tree_to_json(tree: PrefixTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2)


def tree_to_dot(tree: PrefixTree) -> str:
    name = tree.ctx.spec if tree.ctx is not None else "synthetic"
    lines = [f'digraph "{name}" {{', "  rankdir=TB;"]
    for r, level in enumerate(tree.levels):
        for i in range(len(level)):
            nid = tree.node_id(r, i)
            lines.append(f'  "{nid}" [label="{nid}\\nlevel {r}"];')
    for r in range(1, tree.max_radius + 1):
        for i, p in enumerate(tree.parents[r]):
            lines.append(f'  "{tree.node_id(r - 1, p)}" -> "{tree.node_id(r, i)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
