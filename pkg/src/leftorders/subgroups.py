"""Restricting orders from a group to a finitely generated subgroup.

A subgroup ``H`` is given by generator words in the ambient group.  Its
ball of radius ``s`` is the set of products of at most ``s`` generators
and inverses, identified by ambient normal form.  Restriction keeps the
ambient signs on that ball, and ``V(H)_h`` pulls back to ``V(G)_h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

from .cones import NEG, POS, SCHEMA_VERSION, ChainCondition, PartialCone, Violation, satisfies_chain
from .errors import ChainError, RadiusError
from .groups import GroupCtx, GroupElement
from .orderspace import PrefixTree


@dataclass(frozen=True)
class SubgroupSpec:
    ctx: GroupCtx
    generators: tuple
    max_word_norm: int = field(init=False)
    trivial_generators: tuple = field(init=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a subgroup needs at least one generator")
        for g in gens:
            self.ctx.check(g)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "max_word_norm", max(self.ctx.effective_norm(g) for g in gens))
        object.__setattr__(
            self, "trivial_generators", tuple(i for i, g in enumerate(gens) if g == self.ctx.identity)
        )

    @classmethod
    def parse(cls, ctx: GroupCtx, words: str) -> "SubgroupSpec":
        """From a comma separated list of ambient words, e.g. ``"ab, b^2"``."""
        return cls(ctx, tuple(ctx.parse_element(w) for w in words.split(",") if w.strip()))

    def word_name(self, word: tuple) -> str:
        """Format a word in the subgroup generators ``h1, h2, ...``."""
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            letter, run = word[i], j - i
            exp = run if letter > 0 else -run
            parts.append(f"h{abs(letter)}" + ("" if exp == 1 else f"^{exp}"))
            i = j
        return "".join(parts)


class SubgroupBallEntry(NamedTuple):
    word: tuple
    element: GroupElement


@lru_cache(maxsize=256)
def subgroup_ball(spec: SubgroupSpec, s: int) -> tuple[SubgroupBallEntry, ...]:
    """Products of at most ``s`` subgroup generators, first word per element.

    Breadth-first over reduced words, generators in the given order with
    each generator before its inverse; the first word reaching an ambient
    element is kept.
    """
    if s < 0:
        raise ValueError("subgroup radius must be nonnegative")
    ctx = spec.ctx
    letters = []
    for k, g in enumerate(spec.generators, start=1):
        letters.append((k, g))
        letters.append((-k, ctx.invert(g)))
    seen = {ctx.identity: ()}
    out = [SubgroupBallEntry((), ctx.identity)]
    frontier = [((), ctx.identity)]
    for _ in range(s):
        nxt = []
        for word, g in frontier:
            for letter, x in letters:
                if word and word[-1] == -letter:
                    continue
                w2 = word + (letter,)
                h = ctx.multiply(g, x)
                nxt.append((w2, h))
                if h not in seen:
                    seen[h] = w2
                    out.append(SubgroupBallEntry(w2, h))
        frontier = nxt
    return tuple(out)


class SubgroupCone:
    """Signs on the nontrivial elements of a subgroup ball."""

    def __init__(self, spec: SubgroupSpec, radius: int, entries: Sequence[tuple]):
        self.spec = spec
        self.radius = radius
        self.entries = list(entries)  # (word, element, sign)
        self._signs = {g: sgn for _, g, sgn in self.entries}

    def __eq__(self, other):
        return isinstance(other, SubgroupCone) and self._signs == other._signs

    def __repr__(self):
        pos = [self.spec.ctx.format(g) for _, g, s in self.entries if s == POS]
        return f"SubgroupCone(radius={self.radius}, positive={{{', '.join(pos)}}})"

    def sign(self, g: GroupElement):
        if g == self.spec.ctx.identity:
            return 0
        return self._signs.get(g)

    def elements(self):
        return [g for _, g, _ in self.entries]

    def to_dict(self) -> dict:
        ctx = self.spec.ctx
        return {
            "subradius": self.radius,
            "signs": {ctx.format(g): "+" if sgn == POS else "-" for _, g, sgn in self.entries},
            "words": {ctx.format(g): self.spec.word_name(w) for w, g, _ in self.entries},
        }


def subset_violations(ctx: GroupCtx, signs: dict) -> list[Violation]:
    """Cone axioms on an arbitrary finite domain of non-identity elements.

    Closure is only required when the product lies in the domain.
    """
    out = []
    seen = set()
    for g, s in signs.items():
        gi = ctx.invert(g)
        if gi == g:
            out.append(Violation("b", (g,)))
            continue
        if g in seen or gi not in signs:
            continue
        seen.add(gi)
        if signs[gi] == s:
            out.append(Violation("b" if s == POS else "c", (g, gi)))
    positives = [g for g, s in signs.items() if s == POS]
    for g in positives:
        for h in positives:
            gh = ctx.multiply(g, h)
            if signs.get(gh) == NEG:
                out.append(Violation("a", (g, h, gh)))
    return out


def restrict_order(cone, spec: SubgroupSpec, s: int) -> SubgroupCone:
    """Ambient signs on the subgroup ball of radius ``s``.

    ``cone`` is a :class:`PartialCone` on the ambient group or a
    :class:`SubgroupCone` of a larger subgroup.
    """
    ctx = spec.ctx
    if isinstance(cone, PartialCone):
        if s * spec.max_word_norm > cone.radius:
            raise RadiusError(
                f"subradius {s} times generator norm {spec.max_word_norm} exceeds radius {cone.radius}"
            )
    entries = []
    for word, g in subgroup_ball(spec, s)[1:]:
        sgn = cone.sign(g)
        if sgn is None:
            raise RadiusError(f"{ctx.format(g)} is outside the domain of the source cone")
        entries.append((word, g, sgn))
    return SubgroupCone(spec, s, entries)


def subgroup_radius_of(spec: SubgroupSpec, h: GroupElement, max_radius: int):
    """Shortest word length of ``h`` in the subgroup generators, searched up to ``max_radius``."""
    for s in range(max_radius + 1):
        if any(g == h for _, g in subgroup_ball(spec, s)):
            return s
    return None


def verify_restriction_continuity(tree: PrefixTree, spec: SubgroupSpec, h: GroupElement, level: int) -> bool:
    """Nodes whose restriction makes ``h`` positive are exactly the level nodes in ``V(G)_h``."""
    ctx = spec.ctx
    if h == ctx.identity:
        raise ChainError("V-sets are defined for non-identity elements only")
    reach = level // spec.max_word_norm if spec.max_word_norm else 0
    s = subgroup_radius_of(spec, h, reach)
    if s is None or not ctx.in_ball(h, level):
        raise RadiusError(f"{ctx.format(h)} is not decidable in the subgroup at level {level}")
    chain = ChainCondition.positive(ctx, h)
    pulled_back = set()
    v_ambient = set()
    for i, cone in enumerate(tree.levels[level]):
        if restrict_order(cone, spec, s).sign(h) == POS:
            pulled_back.add(i)
        if satisfies_chain(cone, chain):
            v_ambient.add(i)
    return pulled_back == v_ambient


def restriction_to_dict(tree: PrefixTree, spec: SubgroupSpec, level: int, s: int) -> dict:
    ctx = spec.ctx
    return {
        "schema_version": SCHEMA_VERSION,
        "group": ctx.spec,
        "subgroup": [ctx.format(g) for g in spec.generators],
        "radius": level,
        "subradius": s,
        "nodes": [
            {"id": tree.node_id(level, i), **restrict_order(cone, spec, s).to_dict()}
            for i, cone in enumerate(tree.levels[level])
        ],
    }
