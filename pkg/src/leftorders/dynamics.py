"""Right action of the group on cones by conjugation.

For an order ``<`` and ``g`` in G, ``x <_g y`` iff ``g x g^-1 < g y g^-1``.
On cones this reads ``sign_g(x) = sign(g x g^-1)``.  Conjugating by ``g``
moves ``ball(r')`` into ``ball(r' + 2|g|)`` for subadditive norms, so a
radius-``r`` cone acts to a radius ``r - 2|g|`` cone.  Heisenberg norms
are not subadditive; :func:`action_radius` checks the inclusion directly
and shrinks further when needed.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

from .cones import SCHEMA_VERSION, PartialCone
from .errors import RadiusError
from .groups import GroupCtx, GroupElement
from .orderspace import PrefixTree


class ActionResult(NamedTuple):
    input_radius: int
    element: GroupElement
    norm: int
    output_radius: int
    cone: PartialCone


@lru_cache(maxsize=4096)
def action_radius(ctx: GroupCtx, radius: int, g: GroupElement) -> int:
    """Largest ``r' <= radius - 2|g|`` with ``g ball(r') g^-1`` inside ``ball(radius)``."""
    out = radius - 2 * ctx.effective_norm(g)
    while out >= 0:
        if all(ctx.in_ball(ctx.conjugate(x, g), radius) for x in ctx.ball(out)):
            return out
        out -= 1
    raise RadiusError(f"radius {radius} is too small to act by {ctx.format(g)}")


def required_radius(ctx: GroupCtx, target: int, g: GroupElement) -> int:
    """Smallest radius whose cones act by ``g`` to cones of radius ``target``."""
    r = target + 2 * ctx.effective_norm(g)
    while True:
        try:
            if action_radius(ctx, r, g) >= target:
                return r
        except RadiusError:
            pass
        r += 1


def act_detailed(cone: PartialCone, g: GroupElement) -> ActionResult:
    ctx = cone.ctx
    r = action_radius(ctx, cone.radius, g)
    signs = [cone.sign(ctx.conjugate(x, g)) for x in ctx.ball(r)[1:]]
    out = PartialCone(ctx, r, signs)
    return ActionResult(cone.radius, g, ctx.effective_norm(g), r, out)


def act(cone: PartialCone, g: GroupElement) -> PartialCone:
    """Cone of ``<_g``: ``x`` is positive iff ``g x g^-1`` was."""
    return act_detailed(cone, g).cone


def verify_cocycle(cone: PartialCone, g: GroupElement, h: GroupElement) -> bool:
    """``<_{gh} = (<_g)_h`` compared on the largest common ball."""
    twice = act(act(cone, g), h)
    once = act(cone, cone.ctx.multiply(g, h))
    r = min(twice.radius, once.radius)
    return twice.restrict(r) == once.restrict(r)


def default_generators(ctx: GroupCtx) -> list[GroupElement]:
    """Generators followed by their inverses, duplicates removed."""
    out = []
    for g in list(ctx.generators) + [ctx.invert(s) for s in ctx.generators]:
        if g != ctx.identity and g not in out:
            out.append(g)
    return out


def is_biorder_candidate(cone: PartialCone, generators: Sequence[GroupElement] | None = None) -> bool:
    """Every generator fixes the cone on the ball where its action is decided.

    A necessary condition for the cone to come from a bi-order.
    """
    if generators is None:
        generators = default_generators(cone.ctx)
    for s in generators:
        image = act(cone, s)
        if image != cone.restrict(image.radius):
            return False
    return True


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller index becomes the root, so the partition is order independent
            if y < x:
                x, y = y, x
            self.parent[y] = x


class OrbitPartition(NamedTuple):
    """Orbits as sorted lists of level indices, plus approximation caveats.

    ``mode`` is ``"lifted"`` when every join was read off a deeper tree
    level, so both ends are genuine level cones, or ``"restricted"`` when
    joins only match after restricting to the shrunk action radius.
    """

    level: int
    orbits: list
    caveats: list
    mode: str


def orbits_at_level(tree: PrefixTree, level: int, generators: Sequence[GroupElement] | None = None) -> OrbitPartition:
    """Partition the level's cones into orbits of the conjugation action.

    Lifted mode (tree deep enough): a cone ``Q`` on a larger ball joins
    ``Q|level`` with ``(Q acted on by s)|level``.  Restricted mode: a level
    cone ``P`` joins every level cone whose restriction to the shrunk
    radius equals ``P`` acted on by ``s``; each such join is flagged.
    """
    ctx = tree.ctx
    if generators is None:
        generators = default_generators(ctx)
    if level > tree.max_radius:
        raise RadiusError(f"level {level} beyond tree depth {tree.max_radius}")
    nodes = tree.levels[level]
    index = {cone: i for i, cone in enumerate(nodes)}
    uf = _UnionFind(len(nodes))
    caveats = []
    needed = {s: required_radius(ctx, level, s) for s in generators}
    if all(r <= tree.max_radius for r in needed.values()):
        mode = "lifted"
        for s in generators:
            r = needed[s]
            for q in tree.levels[r]:
                src = index.get(q.restrict(level))
                dst = index.get(act(q, s).restrict(level))
                if src is not None and dst is not None:
                    uf.union(src, dst)
        caveats.append(
            f"joins witnessed by admissible cones up to radius {max(needed.values(), default=level)}; "
            "extendability to full orders is not verified"
        )
    else:
        mode = "restricted"
        for s in generators:
            shrunk = action_radius(ctx, level, s)
            by_restriction: dict[PartialCone, list[int]] = {}
            for j, cone in enumerate(nodes):
                by_restriction.setdefault(cone.restrict(shrunk), []).append(j)
            for i, cone in enumerate(nodes):
                for j in by_restriction.get(act(cone, s), []):
                    if j != i and uf.find(i) != uf.find(j):
                        caveats.append(
                            {
                                "source": tree.node_id(level, i),
                                "target": tree.node_id(level, j),
                                "generator": ctx.format(s),
                                "matched_radius": shrunk,
                            }
                        )
                    uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(nodes)):
        groups.setdefault(uf.find(i), []).append(i)
    orbits = sorted(groups.values())
    return OrbitPartition(level, orbits, caveats, mode)


def orbits_to_dict(tree: PrefixTree, partition: OrbitPartition) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "group": tree.ctx.spec,
        "level": partition.level,
        "mode": partition.mode,
        "orbits": {
            str(k): [tree.node_id(partition.level, i) for i in orbit]
            for k, orbit in enumerate(partition.orbits)
        },
        "cones": {
            tree.node_id(partition.level, i): tree.levels[partition.level][i].describe()
            for orbit in partition.orbits
            for i in orbit
        },
        "caveats": partition.caveats,
    }

