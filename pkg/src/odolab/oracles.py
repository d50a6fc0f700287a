"""Brute-force reference computations.

These deliberately avoid the lattice machinery they are used to check:
they enumerate subsets, maps and elements directly.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Hashable, Sequence

from .actions import FiniteAction
from .groups import PermGroup
from .perm import Perm, compose, inverse


def subgroups_by_subset_closure(G: PermGroup) -> list[frozenset]:
    """Every subset of ``G`` containing the identity and closed under products.

    Exponential in ``|G|``; only for groups of order at most about 12.
    """
    elements = list(G.elements)
    e = G.identity
    rest = [g for g in elements if g != e]
    out = []
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            s = frozenset((e, *combo))
            if all(compose(a, b) in s for a in s for b in s):
                out.append(s)
    return out


def tiles_by_subsets(X: FiniteAction, x: int) -> list[frozenset]:
    """All subsets containing ``x`` whose translates partition the points."""
    others = [y for y in range(X.points) if y != x]
    images = [p.images for p in X.act.values()]
    out = []
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            A = frozenset((x, *combo))
            blocks = {frozenset(p[a] for a in A) for p in images}
            covered = set()
            ok = True
            for b in blocks:
                if covered & b:
                    ok = False
                    break
                covered |= b
            if ok and len(covered) == X.points:
                out.append(A)
    return out


def equivariant_map_exists(
    elements: Sequence[Perm],
    act_x: Callable[[Perm, int], int],
    base_x: int,
    act_y: Callable[[Perm, Hashable], Hashable],
    targets: Sequence[Hashable],
) -> bool:
    """Try every target for the base point; ``h.x -> h.y`` must be well defined.

    Assumes the source is transitive, so the base point's image fixes the map.
    """
    for y in targets:
        mapping: dict[int, Hashable] = {}
        ok = True
        for h in elements:
            a, b = act_x(h, base_x), act_y(h, y)
            if mapping.setdefault(a, b) != b:
                ok = False
                break
        if ok:
            return True
    return False


def orbit_of(elements: Sequence[Perm], act: Callable[[Perm, Hashable], Hashable], start) -> set:
    return {act(g, start) for g in elements}


def setwise_stabilizer(X: FiniteAction, A: frozenset) -> frozenset:
    return frozenset(g for g, p in X.act.items() if frozenset(p.images[a] for a in A) == A)


def conjugate_by_definition(H: PermGroup, g: Perm) -> frozenset:
    gi = inverse(g)
    return frozenset(compose(compose(g, h), gi) for h in H.elements)
