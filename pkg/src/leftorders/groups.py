"""Concrete groups with canonical normal forms and a symmetric ball filtration.

Supported families, selected by a short descriptor::

    "1"      trivial group
    "C<n>"   cyclic group of order n, generator a
    "S3"     symmetric group on three points, generators s=(0 1), t=(1 2)
    "Z"      infinite cyclic group, generator a
    "Z^<d>"  free abelian group of rank d, generators e1..ed
    "F<k>"   free group of rank k, generators a, b, c, ...
    "KB"     Klein bottle group <x, y | x y x^-1 = y^-1>
    "H3"     integer Heisenberg group, x^a y^b z^c with z central and yx = xyz^-1

Every family has a nonnegative norm ``N`` on normal forms; the filtration
uses ``min(N(g), N(g^-1))`` so balls are inverse-closed.  Balls are sorted
by ``(effective_norm, normal_form)``, which makes ``ball(r)`` a prefix of
``ball(r + 1)``.  Several modules rely on that prefix property.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import FamilyMismatchError, GroupSpecError


@dataclass(frozen=True)
class GroupElement:
    """A group element as ``(family tag, normal form)``.

    Equality is equality of normal forms, so two elements compare equal
    exactly when they are the same group element.
    """

    family: str
    nf: tuple

    def __repr__(self):
        return f"GroupElement({self.family!r}, {self.nf!r})"


_TOKEN = re.compile(r"\s*(?:(1)|([A-Za-z][0-9]*)(?:\^\(?(-?[0-9]+)\)?)?)\s*[*.]?")


class GroupCtx:
    """Base class for a group family.  Subclasses supply the arithmetic."""

    family = ""
    generator_names: tuple[str, ...] = ()

    def __init__(self, spec: str):
        self.spec = spec
        self.identity = GroupElement(spec, self._identity_nf())
        self.generators = tuple(
            GroupElement(spec, nf) for nf in self._generator_nfs()
        )
        self._balls: dict[int, tuple[GroupElement, ...]] = {}
        self._positions: dict[int, dict[GroupElement, int]] = {}

    def __repr__(self):
        return f"GroupCtx({self.spec!r})"

    def __eq__(self, other):
        return isinstance(other, GroupCtx) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __reduce__(self):
        return (parse_group_spec, (self.spec,))

    # -- family hooks -------------------------------------------------------

    def _identity_nf(self) -> tuple:
        raise NotImplementedError

    def _generator_nfs(self) -> list[tuple]:
        raise NotImplementedError

    def _mul(self, a: tuple, b: tuple) -> tuple:
        raise NotImplementedError

    def _inv(self, a: tuple) -> tuple:
        raise NotImplementedError

    def _norm(self, a: tuple) -> int:
        raise NotImplementedError

    def _raw_ball(self, r: int) -> Iterable[tuple]:
        """Every normal form with ``_norm <= r`` (inverses are added later)."""
        raise NotImplementedError

    def _format(self, a: tuple) -> str:
        raise NotImplementedError

    # -- public arithmetic --------------------------------------------------

    def check(self, g: GroupElement) -> None:
        if not isinstance(g, GroupElement) or g.family != self.spec:
            raise FamilyMismatchError(f"{g!r} is not an element of {self.spec}")

    def element(self, nf) -> GroupElement:
        return GroupElement(self.spec, tuple(nf))

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self.check(g)
        self.check(h)
        return GroupElement(self.spec, self._mul(g.nf, h.nf))

    def invert(self, g: GroupElement) -> GroupElement:
        self.check(g)
        return GroupElement(self.spec, self._inv(g.nf))

    def conjugate(self, a: GroupElement, g: GroupElement) -> GroupElement:
        """``g a g^-1``."""
        self.check(a)
        self.check(g)
        return GroupElement(self.spec, self._mul(self._mul(g.nf, a.nf), self._inv(g.nf)))

    def power(self, g: GroupElement, n: int) -> GroupElement:
        self.check(g)
        base = g.nf if n >= 0 else self._inv(g.nf)
        out = self.identity.nf
        for _ in range(abs(n)):
            out = self._mul(out, base)
        return GroupElement(self.spec, out)

    def product(self, elements: Iterable[GroupElement]) -> GroupElement:
        out = self.identity
        for g in elements:
            out = self.multiply(out, g)
        return out

    def norm(self, g: GroupElement) -> int:
        self.check(g)
        return self._norm(g.nf)

    def effective_norm(self, g: GroupElement) -> int:
        self.check(g)
        return min(self._norm(g.nf), self._norm(self._inv(g.nf)))

    def sort_key(self, g: GroupElement):
        return (self.effective_norm(g), g.nf)

    # -- filtration ---------------------------------------------------------

    def ball(self, r: int) -> tuple[GroupElement, ...]:
        """All elements of effective norm at most ``r``, identity first."""
        if r < 0:
            raise ValueError(f"negative radius {r}")
        if r not in self._balls:
            nfs = set()
            for a in self._raw_ball(r):
                nfs.add(a)
                nfs.add(self._inv(a))
            elements = [GroupElement(self.spec, a) for a in nfs]
            elements.sort(key=self.sort_key)
            self._balls[r] = tuple(elements)
        return self._balls[r]

    def ball_positions(self, r: int) -> dict[GroupElement, int]:
        if r not in self._positions:
            self._positions[r] = {g: i for i, g in enumerate(self.ball(r))}
        return self._positions[r]

    def in_ball(self, g: GroupElement, r: int) -> bool:
        return self.effective_norm(g) <= r

    # -- text ---------------------------------------------------------------

    def format(self, g: GroupElement) -> str:
        self.check(g)
        return self._format(g.nf)

    def parse_element(self, text: str) -> GroupElement:
        """Parse a word such as ``"x^2y^-1"``, ``"aB"`` or ``"e1*e2^3"``.

        A capitalised single-letter generator denotes its inverse.  The
        canonical string produced by :meth:`format` always parses back to
        the same element.
        """
        names = {name: g for name, g in zip(self.generator_names, self.generators)}
        out = self.identity
        pos = 0
        text = text.strip()
        if not text:
            raise GroupSpecError("empty element word")
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise GroupSpecError(f"cannot parse {text!r} at offset {pos}")
            pos = m.end()
            if m.group(1):
                continue
            name, exp = m.group(2), int(m.group(3) or 1)
            if name in names:
                g = names[name]
            elif len(name) == 1 and name.lower() in names and name.isupper():
                g = self.invert(names[name.lower()])
            else:
                raise GroupSpecError(f"unknown generator {name!r} for {self.spec}")
            out = self.multiply(out, self.power(g, exp))
        return out


def _syllables(names: list[str], exps: Iterable[int]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "".join(parts) or "1"


class TrivialGroup(GroupCtx):
    family = "1"

    def _identity_nf(self):
        return ()

    def _generator_nfs(self):
        return []

    def _mul(self, a, b):
        return ()

    def _inv(self, a):
        return ()

    def _norm(self, a):
        return 0

    def _raw_ball(self, r):
        return [()]

    def _format(self, a):
        return "1"


class CyclicGroup(GroupCtx):
    family = "C"
    generator_names = ("a",)

    def __init__(self, spec, n):
        self.n = n
        super().__init__(spec)

    def _identity_nf(self):
        return (0,)

    def _generator_nfs(self):
        return [(1 % self.n,)]

    def _mul(self, a, b):
        return ((a[0] + b[0]) % self.n,)

    def _inv(self, a):
        return ((-a[0]) % self.n,)

    def _norm(self, a):
        return min(a[0], self.n - a[0])

    def _raw_ball(self, r):
        return [(k,) for k in range(self.n) if min(k, self.n - k) <= r]

    def _format(self, a):
        return _syllables(["a"], [a[0]])


class SymmetricGroup3(GroupCtx):
    """S3 as permutations of (0, 1, 2); ``(p*q)(i) = p(q(i))``."""

    family = "S3"
    generator_names = ("s", "t")

    def __init__(self, spec):
        super().__init__(spec)
        # word length and shortlex normal word by breadth-first search
        self._length = {(0, 1, 2): 0}
        self._word = {(0, 1, 2): ""}
        queue = deque([(0, 1, 2)])
        while queue:
            p = queue.popleft()
            for name, g in zip(self.generator_names, self._generator_nfs()):
                q = self._mul(p, g)
                if q not in self._length:
                    self._length[q] = self._length[p] + 1
                    self._word[q] = self._word[p] + name
                    queue.append(q)

    def _identity_nf(self):
        return (0, 1, 2)

    def _generator_nfs(self):
        return [(1, 0, 2), (0, 2, 1)]

    def _mul(self, a, b):
        return tuple(a[b[i]] for i in range(3))

    def _inv(self, a):
        out = [0, 0, 0]
        for i, ai in enumerate(a):
            out[ai] = i
        return tuple(out)

    def _norm(self, a):
        return self._length[a]

    def _raw_ball(self, r):
        return [p for p, n in self._length.items() if n <= r]

    def _format(self, a):
        return self._word[a] or "1"


class FreeAbelianGroup(GroupCtx):
    family = "Z"

    def __init__(self, spec, d):
        self.d = d
        if spec == "Z":
            self.generator_names = ("a",)
        else:
            self.generator_names = tuple(f"e{i + 1}" for i in range(d))
        super().__init__(spec)

    def _identity_nf(self):
        return (0,) * self.d

    def _generator_nfs(self):
        return [tuple(int(i == j) for j in range(self.d)) for i in range(self.d)]

    def _mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        return tuple(-x for x in a)

    def _norm(self, a):
        return sum(abs(x) for x in a)

    def _raw_ball(self, r):
        return _l1_ball(self.d, r)

    def _format(self, a):
        return _syllables(list(self.generator_names), a)


def _l1_ball(d: int, r: int) -> list[tuple]:
    if d == 0:
        return [()]
    out = []
    for first in range(-r, r + 1):
        for rest in _l1_ball(d - 1, r - abs(first)):
            out.append((first,) + rest)
    return out


class FreeGroup(GroupCtx):
    """Reduced words as tuples of nonzero ints: ``i`` is the i-th generator, ``-i`` its inverse."""

    family = "F"

    def __init__(self, spec, k):
        if k > 26:
            raise GroupSpecError("free groups of rank above 26 are not supported")
        self.k = k
        self.generator_names = tuple("abcdefghijklmnopqrstuvwxyz"[:k])
        super().__init__(spec)

    def _identity_nf(self):
        return ()

    def _generator_nfs(self):
        return [(i,) for i in range(1, self.k + 1)]

    def _mul(self, a, b):
        i = 0
        n = min(len(a), len(b))
        while i < n and a[len(a) - 1 - i] == -b[i]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def _inv(self, a):
        return tuple(-x for x in reversed(a))

    def _norm(self, a):
        return len(a)

    def _raw_ball(self, r):
        letters = [i for g in range(1, self.k + 1) for i in (g, -g)]
        out = [()]
        frontier = [()]
        for _ in range(r):
            frontier = [w + (x,) for w in frontier for x in letters if not w or w[-1] != -x]
            out.extend(frontier)
        return out

    def _format(self, a):
        if not a:
            return "1"
        parts = []
        for letter, run in itertools.groupby(a):
            name = self.generator_names[abs(letter) - 1]
            parts.append(_syllables([name], [len(list(run)) * (1 if letter > 0 else -1)]))
        return "".join(parts)


class KleinBottleGroup(GroupCtx):
    """Normal form ``x^m y^n``; ``x^a y^b . x^c y^d = x^(a+c) y^((-1)^c b + d)``."""

    family = "KB"
    generator_names = ("x", "y")

    def _identity_nf(self):
        return (0, 0)

    def _generator_nfs(self):
        return [(1, 0), (0, 1)]

    def _mul(self, a, b):
        sign = -1 if b[0] % 2 else 1
        return (a[0] + b[0], sign * a[1] + b[1])

    def _inv(self, a):
        sign = -1 if a[0] % 2 else 1
        return (-a[0], -sign * a[1])

    def _norm(self, a):
        return abs(a[0]) + abs(a[1])

    def _raw_ball(self, r):
        return _l1_ball(2, r)

    def _format(self, a):
        return _syllables(["x", "y"], a)


class HeisenbergGroup(GroupCtx):
    """Normal form ``x^a y^b z^c`` with z central and ``yx = xyz^-1``.

    ``(a, b, c)(d, e, f) = (a + d, b + e, c + f - b d)``.  The norm
    ``|a| + |b| + |c|`` is not subadditive, so conjugation can leave a ball
    faster than ``2 |g|``; callers that need the bound compute it.
    """

    family = "H3"
    generator_names = ("x", "y", "z")

    def _identity_nf(self):
        return (0, 0, 0)

    def _generator_nfs(self):
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def _mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] - a[1] * b[0])

    def _inv(self, a):
        return (-a[0], -a[1], -a[2] - a[0] * a[1])

    def _norm(self, a):
        return abs(a[0]) + abs(a[1]) + abs(a[2])

    def _raw_ball(self, r):
        return _l1_ball(3, r)

    def _format(self, a):
        return _syllables(["x", "y", "z"], a)


_SPEC = re.compile(r"^(?:(1)|C(-?\d+)|(S3)|(Z)|Z\^(-?\d+)|F(-?\d+)|(KB)|(H3))$")


def parse_group_spec(spec: str) -> GroupCtx:
    """Build a :class:`GroupCtx` from a descriptor like ``"Z^2"`` or ``"F2"``."""
    text = spec.strip()
    m = _SPEC.match(text)
    if m is None:
        raise GroupSpecError(f"unknown group family {spec!r}")
    trivial, cyc, s3, z, zd, free, kb, h3 = m.groups()
    for param in (cyc, zd, free):
        if param is not None and int(param) <= 0:
            raise GroupSpecError(f"group parameter must be positive in {spec!r}")
    if trivial:
        return TrivialGroup(text)
    if cyc is not None:
        return CyclicGroup(text, int(cyc))
    if s3:
        return SymmetricGroup3(text)
    if z:
        return FreeAbelianGroup(text, 1)
    if zd is not None:
        return FreeAbelianGroup(text, int(zd))
    if free is not None:
        return FreeGroup(text, int(free))
    if kb:
        return KleinBottleGroup(text)
    return HeisenbergGroup(text)


def multiply(ctx: GroupCtx, g: GroupElement, h: GroupElement) -> GroupElement:
    return ctx.multiply(g, h)


def invert(ctx: GroupCtx, g: GroupElement) -> GroupElement:
    return ctx.invert(g)


def conjugate(ctx: GroupCtx, a: GroupElement, g: GroupElement) -> GroupElement:
    """``a^g = g a g^-1``."""
    return ctx.conjugate(a, g)


def ball(ctx: GroupCtx, r: int) -> tuple[GroupElement, ...]:
    return ctx.ball(r)
