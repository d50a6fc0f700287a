"""Permutations of ``{0, ..., n-1}``.

Composition is left-action: ``(a * b)(x) == a(b(x))``.  Cycle notation is
1-based to match hand-written group elements such as ``(1234)``; internally
points are 0-based.

Group elements are limited to degree ``MAX_DEGREE`` (enforced by
:func:`parse_cycles` and group closure).  Point permutations induced by
product actions may be longer.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeMismatch, DegreeTooLarge, ParseError, RangeError

MAX_DEGREE = 64

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Perm:
    """An immutable permutation, stored as its image tuple.

    Ordering is lexicographic on ``images``; the identity is the least
    permutation of each degree.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise RangeError("degree must be positive")
        if sorted(self.images) != list(range(n)):
            raise RangeError(f"images {self.images} are not a bijection of 0..{n - 1}")

    @classmethod
    def from_images(cls, images: Iterable[int]) -> Perm:
        return cls(tuple(int(i) for i in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __invert__(self) -> Perm:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            y = self.images[start]
            while y != start:
                cyc.append(y)
                seen[y] = True
                y = self.images[y]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)!r}, degree={self.degree})"


def check_degree(n: int) -> None:
    if n < 1:
        raise RangeError("degree must be positive")
    if n > MAX_DEGREE:
        raise DegreeTooLarge(f"degree {n} exceeds the cap of {MAX_DEGREE}")


def identity(n: int) -> Perm:
    return Perm(tuple(range(n)))


def compose(a: Perm, b: Perm) -> Perm:
    """Return ``a*b``, the permutation ``x -> a(b(x))``."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"cannot compose degree {a.degree} with degree {b.degree}")
    ai = a.images
    return _trusted(tuple(ai[y] for y in b.images))


def inverse(a: Perm) -> Perm:
    inv = [0] * a.degree
    for x, y in enumerate(a.images):
        inv[y] = x
    return _trusted(tuple(inv))


def _trusted(images: tuple[int, ...]) -> Perm:
    # Skips the bijection check; only for images produced by composing valid perms.
    p = object.__new__(Perm)
    object.__setattr__(p, "images", images)
    return p


def _split_cycle(body: str, degree: int) -> list[int]:
    body = body.strip()
    if not body:
        return []
    if re.search(r"[\s,]", body):
        tokens = [t for t in re.split(r"[\s,]+", body) if t]
    elif degree <= 9:
        tokens = list(body)
    elif len(body) == 1:
        tokens = [body]
    else:
        raise ParseError(f"cycle ({body}) is ambiguous for degree {degree}; separate points with spaces")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer point in cycle ({body})") from None


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation, e.g. ``"(12)(34)"`` or ``"(1 10)(2 3)"``.

    Cycles are applied right to left, so ``parse_cycles("(12)(13)", 3)``
    first applies ``(13)``.  ``"()"`` and the empty string denote the identity.
    """
    check_degree(degree)
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ParseError(f"malformed cycle notation: {text!r}")
    result = identity(degree)
    for m in _CYCLE_RE.finditer(stripped):
        points = _split_cycle(m.group(1), degree)
        if not points:
            continue
        for p in points:
            if not 1 <= p <= degree:
                raise RangeError(f"point {p} outside 1..{degree}")
        if len(set(points)) != len(points):
            raise ParseError(f"repeated point in cycle ({m.group(1)})")
        images = list(range(degree))
        for i, p in enumerate(points):
            images[p - 1] = points[(i + 1) % len(points)] - 1
        result = compose(result, Perm(tuple(images)))
    return result


def format_cycles(p: Perm) -> str:
    """Inverse of :func:`parse_cycles`; compact digits when the degree is at most 9."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    sep = "" if p.degree <= 9 else " "
    return "".join("(" + sep.join(str(x + 1) for x in c) + ")" for c in cycles)


def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Perm:
    """Build a permutation from 0-based cycles (applied right to left)."""
    result = identity(degree)
    for c in cycles:
        images = list(range(degree))
        for i, x in enumerate(c):
            images[x] = c[(i + 1) % len(c)]
        result = compose(result, Perm(tuple(images)))
    return result
