"""Named groups used as fixtures: S3, D4, Q8, A4, Z12, S4 (plus Z4)."""
from __future__ import annotations

import functools

from .groups import PermGroup, closure
from .perm import Perm, parse_cycles


def _q8_generators() -> list[Perm]:
    # Left-regular representation; unit (sign, b) with b in 1,i,j,k is point 2*b + (sign < 0).
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def left_mult(b: int) -> Perm:
        images = []
        for point in range(8):
            c, neg = divmod(point, 2)
            sign, d = table[(b, c)]
            if neg:
                sign = -sign
            images.append(2 * d + (sign < 0))
        return Perm(tuple(images))

    return [left_mult(1), left_mult(2)]


def cyclic(n: int) -> PermGroup:
    gen = Perm(tuple((i + 1) % n for i in range(n)))
    return closure(n, [gen], name=f"Z{n}")


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return closure(1, [], name="S1")
    gens = [Perm(tuple((i + 1) % n for i in range(n)))]
    if n > 2:
        gens.insert(0, parse_cycles("(12)", n))
    return closure(n, gens, name=f"S{n}")


_BUILDERS = {
    "S3": lambda: closure(3, [parse_cycles("(12)", 3), parse_cycles("(13)", 3)], name="S3"),
    "D4": lambda: closure(4, [parse_cycles("(1234)", 4), parse_cycles("(12)(34)", 4)], name="D4"),
    "Q8": lambda: closure(8, _q8_generators(), name="Q8"),
    "A4": lambda: closure(4, [parse_cycles("(123)", 4), parse_cycles("(12)(34)", 4)], name="A4"),
    "Z12": lambda: cyclic(12),
    "S4": lambda: closure(4, [parse_cycles("(12)", 4), parse_cycles("(1234)", 4)], name="S4"),
    "Z4": lambda: cyclic(4),
}

CORPUS = ("S3", "D4", "Q8", "A4", "Z12", "S4")


@functools.lru_cache(maxsize=None)
def group(name: str) -> PermGroup:
    """A fixture group by name (case-insensitive)."""
    try:
        return _BUILDERS[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; known: {sorted(_BUILDERS)}") from None


def corpus() -> list[PermGroup]:
    return [group(n) for n in CORPUS]
