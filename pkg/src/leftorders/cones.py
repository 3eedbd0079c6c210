"""Positive cones restricted to a ball, and the orders they define.

A left order is determined by its positive cone ``P = {g : g > 1}``, which
satisfies

    (a) ``g, h in P`` implies ``gh in P``;
    (b) ``g in P`` implies ``g^-1 not in P``;
    (c) ``g != 1`` implies ``g in P`` or ``g^-1 in P``.

Here a cone only sees ``ball(radius)``: (a) is required only when ``gh``
lies in the ball.  Comparisons whose quotient leaves the ball are
undecidable and return ``None`` instead of a boolean.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import ChainError, FamilyMismatchError, RadiusError
from .groups import GroupCtx, GroupElement, parse_group_spec

POS = 1
NEG = -1

SCHEMA_VERSION = 1


class Constraints:
    """Index tables for ``ball(radius) \\ {1}``.

    ``elements[i]`` is the i-th non-identity ball element, ``inv[i]`` the
    index of its inverse and ``mul[i][j]`` the index of the product, or -1
    when the product is the identity or leaves the ball.
    """

    def __init__(self, ctx: GroupCtx, radius: int):
        self.ctx = ctx
        self.radius = radius
        ball = ctx.ball(radius)
        self.elements = ball[1:]
        self.n = len(self.elements)
        index = {g.nf: i for i, g in enumerate(self.elements)}
        self.index = index
        nfs = [g.nf for g in self.elements]
        self.inv = [index[ctx._inv(a)] for a in nfs]
        mul_nf = ctx._mul
        self.mul = [[index.get(mul_nf(a, b), -1) for b in nfs] for a in nfs]


_constraint_cache: dict[tuple[str, int], Constraints] = {}


def constraints(ctx: GroupCtx, radius: int) -> Constraints:
    key = (ctx.spec, radius)
    cons = _constraint_cache.get(key)
    if cons is None:
        cons = _constraint_cache[key] = Constraints(ctx, radius)
    return cons


class Conflict(NamedTuple):
    """A refuted constraint: ``rule`` is "inverse" or "closure"."""

    rule: str
    elements: tuple


def propagate_indices(cons: Constraints, signs: list, pos: list, queue: list):
    """Run the deduction rules to a fixed point, mutating ``signs``/``pos``.

    ``signs`` holds POS, NEG or 0 per index; ``pos`` lists the positive
    indices; ``queue`` holds positive indices whose consequences are not
    yet drawn.  Returns a :class:`Conflict` or ``None``.
    """
    inv = cons.inv
    mul = cons.mul
    while queue:
        i = queue.pop()
        row = mul[i]
        for j in pos:
            for k in (row[j], mul[j][i]):
                if k < 0:
                    continue
                s = signs[k]
                if s == POS:
                    continue
                if s == NEG:
                    return Conflict("closure", (i, j, k))
                ik = inv[k]
                if ik == k:
                    return Conflict("inverse", (k,))
                signs[k] = POS
                signs[ik] = NEG
                pos.append(k)
                queue.append(k)
    return None


def assign_positive(cons: Constraints, signs: list, pos: list, i: int):
    """Set index ``i`` positive and propagate.  Returns a Conflict or None."""
    s = signs[i]
    if s == POS:
        return None
    if s == NEG:
        return Conflict("inverse", (i, cons.inv[i]))
    ii = cons.inv[i]
    if ii == i:
        return Conflict("inverse", (i,))
    signs[i] = POS
    signs[ii] = NEG
    pos.append(i)
    return propagate_indices(cons, signs, pos, [i])


class PartialCone:
    """Total sign assignment on ``ball(radius) \\ {1}``.

    ``signs`` is aligned with ``ctx.ball(radius)[1:]``; because balls are
    prefixes of larger balls, restriction is truncation.
    """

    __slots__ = ("ctx", "radius", "signs")

    def __init__(self, ctx: GroupCtx, radius: int, signs):
        signs = tuple(signs)
        expected = len(ctx.ball(radius)) - 1
        if len(signs) != expected:
            raise RadiusError(
                f"{len(signs)} signs given for a radius-{radius} ball with {expected} non-identity elements"
            )
        if any(s not in (POS, NEG) for s in signs):
            raise ValueError("signs must be +1 or -1")
        self.ctx = ctx
        self.radius = radius
        self.signs = signs

    @classmethod
    def from_mapping(cls, ctx: GroupCtx, radius: int, mapping: Mapping[GroupElement, int]):
        ball = ctx.ball(radius)
        for g in mapping:
            ctx.check(g)
        extra = set(mapping) - set(ball[1:])
        if extra:
            raise RadiusError(f"elements outside ball({radius}): {sorted(map(ctx.format, extra))}")
        missing = [g for g in ball[1:] if g not in mapping]
        if missing:
            raise RadiusError(f"no sign for {', '.join(map(ctx.format, missing))}")
        return cls(ctx, radius, [mapping[g] for g in ball[1:]])

    @classmethod
    def from_positive(cls, ctx: GroupCtx, radius: int, is_positive):
        """Cone from a predicate on ball elements, e.g. a closed-form order."""
        return cls(ctx, radius, [POS if is_positive(g) else NEG for g in ctx.ball(radius)[1:]])

    def __eq__(self, other):
        return (
            isinstance(other, PartialCone)
            and other.ctx == self.ctx
            and other.radius == self.radius
            and other.signs == self.signs
        )

    def __hash__(self):
        return hash((self.ctx.spec, self.radius, self.signs))

    def __repr__(self):
        return f"PartialCone({self.ctx.spec!r}, radius={self.radius}, positive={self.describe()})"

    def describe(self) -> str:
        return "{" + ", ".join(self.ctx.format(g) for g in self.positive()) + "}"

    @property
    def sort_key(self):
        return tuple(s == NEG for s in self.signs)

    def sign(self, g: GroupElement):
        """POS or NEG for ball elements, 0 for the identity, None outside the ball."""
        self.ctx.check(g)
        if g == self.ctx.identity:
            return 0
        i = self.ctx.ball_positions(self.radius).get(g)
        if i is None:
            return None
        return self.signs[i - 1]

    def positive(self) -> list[GroupElement]:
        elements = self.ctx.ball(self.radius)[1:]
        return [g for g, s in zip(elements, self.signs) if s == POS]

    def items(self):
        return zip(self.ctx.ball(self.radius)[1:], self.signs)

    def restrict(self, radius: int) -> "PartialCone":
        if radius > self.radius:
            raise RadiusError(f"cannot restrict a radius-{self.radius} cone to radius {radius}")
        n = len(self.ctx.ball(radius)) - 1
        return PartialCone(self.ctx, radius, self.signs[:n])

    def flip(self) -> "PartialCone":
        """Cone of the reversed order."""
        return PartialCone(self.ctx, self.radius, [-s for s in self.signs])

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.ctx.spec,
            "radius": self.radius,
            "signs": {self.ctx.format(g): "+" if s == POS else "-" for g, s in self.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def cone_from_dict(data: dict, ctx: GroupCtx | None = None) -> PartialCone:
    if ctx is None:
        ctx = parse_group_spec(data["group"])
    elif ctx.spec != data["group"]:
        raise FamilyMismatchError(f"cone is for {data['group']}, not {ctx.spec}")
    mapping = {}
    for text, s in data["signs"].items():
        if s not in ("+", "-"):
            raise ValueError(f"bad sign {s!r} for {text}")
        mapping[ctx.parse_element(text)] = POS if s == "+" else NEG
    return PartialCone.from_mapping(ctx, int(data["radius"]), mapping)


def cone_from_json(text: str, ctx: GroupCtx | None = None) -> PartialCone:
    return cone_from_dict(json.loads(text), ctx)


class Violation(NamedTuple):
    axiom: str
    witnesses: tuple


def check_axioms(cone: PartialCone) -> list[Violation]:
    """List every violated cone axiom; an empty list means admissible."""
    cons = constraints(cone.ctx, cone.radius)
    if len(cone.signs) != cons.n:
        raise RadiusError("sign vector does not match the ball")
    els = cons.elements
    signs = cone.signs
    out = []
    for i in range(cons.n):
        j = cons.inv[i]
        if j == i:
            out.append(Violation("b", (els[i],)))
        elif i < j and signs[i] == signs[j]:
            out.append(Violation("b" if signs[i] == POS else "c", (els[i], els[j])))
    positives = [i for i in range(cons.n) if signs[i] == POS]
    for i in positives:
        row = cons.mul[i]
        for j in positives:
            k = row[j]
            if k >= 0 and signs[k] == NEG:
                out.append(Violation("a", (els[i], els[j], els[k])))
    return out


def is_admissible(cone: PartialCone) -> bool:
    return not check_axioms(cone)


def less_than(cone: PartialCone, h: GroupElement, g: GroupElement):
    """``h < g`` iff ``h^-1 g`` is positive; ``None`` when undecidable."""
    if h == g:
        raise ChainError("less_than needs two distinct elements")
    s = cone.sign(cone.ctx.multiply(cone.ctx.invert(h), g))
    return None if s is None else s == POS


def right_less_than(cone: PartialCone, h: GroupElement, g: GroupElement):
    """Right order: ``h < g`` iff ``g h^-1`` is positive; ``None`` when undecidable."""
    if h == g:
        raise ChainError("right_less_than needs two distinct elements")
    s = cone.sign(cone.ctx.multiply(g, cone.ctx.invert(h)))
    return None if s is None else s == POS


@dataclass(frozen=True)
class ChainCondition:
    """``g_1 < g_2 < ... < g_n``; the basic open set of orders satisfying it."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ChainError("a chain needs at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise ChainError("chain elements must be pairwise distinct")

    @classmethod
    def positive(cls, ctx: GroupCtx, g: GroupElement) -> "ChainCondition":
        """The chain ``1 < g``."""
        if g == ctx.identity:
            raise ChainError("the identity is never positive")
        return cls((ctx.identity, g))


def satisfies_chain(cone: PartialCone, chain: ChainCondition):
    """True/False, or ``None`` when some consecutive quotient leaves the ball."""
    verdict = True
    for h, g in zip(chain.elements, chain.elements[1:]):
        r = less_than(cone, h, g)
        if r is None:
            return None
        verdict = verdict and r
    return verdict


def in_v_set(cone: PartialCone, elements) -> bool | None:
    """Membership in ``V_{g_1..g_n}``: every listed element positive."""
    verdict = True
    for g in elements:
        r = satisfies_chain(cone, ChainCondition.positive(cone.ctx, g))
        if r is None:
            return None
        verdict = verdict and r
    return verdict


class PropagationResult(NamedTuple):
    """``signs`` maps decided elements to POS/NEG; ``conflict`` is set on refutation."""

    signs: dict | None
    conflict: tuple | None

    @property
    def refuted(self) -> bool:
        return self.conflict is not None


def propagate(ctx: GroupCtx, partial: Mapping[GroupElement, int], radius: int) -> PropagationResult:
    """Close a partial sign mapping under the deduction rules.

    Rules: a sign on ``g`` forces the opposite sign on ``g^-1``; positive
    ``g, h`` with ``gh`` in the ball force ``gh`` positive.  Because balls
    are inverse-closed, this also yields every other unit consequence of
    the closure axiom.
    """
    cons = constraints(ctx, radius)
    signs = [0] * cons.n
    pos: list[int] = []
    for g, s in partial.items():
        ctx.check(g)
        if s not in (POS, NEG):
            raise ValueError(f"bad sign {s!r}")
        i = cons.index.get(g.nf)
        if i is None:
            raise RadiusError(f"{ctx.format(g)} is not a non-identity element of ball({radius})")
        if s == NEG:
            i = cons.inv[i]
        conflict = assign_positive(cons, signs, pos, i)
        if conflict is not None:
            return PropagationResult(None, _named(cons, conflict))
    return PropagationResult({cons.elements[i]: s for i, s in enumerate(signs) if s}, None)


def _named(cons: Constraints, conflict: Conflict) -> tuple:
    return (conflict.rule,) + tuple(cons.elements[i] for i in conflict.elements)
