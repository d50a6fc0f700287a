"""Finite actions of permutation groups, eigenvalue sets and settled subgroups.

A :class:`FiniteAction` is given by one point permutation per generator of the
acting group.  Construction extends the generator images to every group
element and rejects images that do not define a homomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import groups as gr
from .errors import (
    AmbientMismatch,
    HomomorphismError,
    NonMinimal,
    NotAnEigenvalue,
    RangeError,
)
from .groups import PermGroup, Subgroup
from .perm import Perm, compose, identity


class FiniteAction:
    """The action of ``group`` on ``range(points)``.

    ``generator_images[i]`` is the point permutation of ``group.generators[i]``.
    With ``relation_free=True`` the images come from a free group: ``group``
    is then the image group, and no relations are checked.
    """

    def __init__(self, group: PermGroup, points: int, generator_images: Sequence[Perm],
                 relation_free: bool = False, name: str | None = None):
        gens = group.generators
        if len(generator_images) != len(gens):
            raise HomomorphismError(
                f"{len(generator_images)} images given for {len(gens)} generators")
        for img in generator_images:
            if img.degree != points:
                raise RangeError(f"image {img} does not act on {points} points")
        self.group = group
        self.points = points
        self.generator_images = tuple(generator_images)
        self.relation_free = relation_free
        self.name = name
        self.act = self._extend(gens)
        self._orbits = self._compute_orbits()
        self._stab_sets = self._compute_stabilizers()

    @classmethod
    def from_free_images(cls, images: Sequence[Perm], name: str | None = None) -> FiniteAction:
        """Action of a free group given only by generator images (no relations to check)."""
        points = images[0].degree
        G = gr.closure(points, list(images))
        return cls(G, points, list(images), relation_free=True, name=name)

    def _extend(self, gens) -> dict[Perm, Perm]:
        e = self.group.identity
        act = {e: identity(self.points)}
        frontier = [e]
        pairs = list(zip(gens, self.generator_images))
        while frontier:
            nxt = []
            for g in frontier:
                pg = act[g]
                for s, img in pairs:
                    h = compose(s, g)
                    ph = compose(img, pg)
                    known = act.get(h)
                    if known is None:
                        act[h] = ph
                        nxt.append(h)
                    elif known != ph:
                        raise HomomorphismError(
                            f"generator images violate a group relation (element {h})")
            frontier = nxt
        return act

    def _compute_orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.points
        out = []
        for start in range(self.points):
            if seen[start]:
                continue
            seen[start] = True
            orbit = [start]
            stack = [start]
            while stack:
                x = stack.pop()
                for img in self.generator_images:
                    y = img.images[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
                        stack.append(y)
            out.append(tuple(sorted(orbit)))
        return out

    def _compute_stabilizers(self) -> list[frozenset]:
        fixers: list[list[Perm]] = [[] for _ in range(self.points)]
        for g, p in self.act.items():
            for x, y in enumerate(p.images):
                if x == y:
                    fixers[x].append(g)
        return [frozenset(f) for f in fixers]

    def apply(self, g: Perm, x: int) -> int:
        return self.act[g].images[x]

    def is_minimal(self) -> bool:
        return len(self._orbits) == 1

    def require_minimal(self) -> None:
        if not self.is_minimal():
            raise NonMinimal(f"action has {len(self._orbits)} orbits")

    def kernel(self) -> Subgroup:
        """Elements fixing every point."""
        common = frozenset.intersection(*self._stab_sets) if self.points else self.group.element_set
        return gr.from_elements(self.group, common)

    def __repr__(self) -> str:
        label = self.name or f"{self.points} points"
        return f"FiniteAction({label}, |G|={self.group.order})"


def coset_action(G: PermGroup, H: PermGroup, name: str | None = None) -> FiniteAction:
    """``G`` acting on ``G/H`` by left multiplication; point 0 is the coset ``H``."""
    cosets = gr.left_cosets(G, H)
    where = {}
    for i, c in enumerate(cosets):
        for m in c.members:
            where[m] = i
    images = [Perm(tuple(where[compose(s, c.representative)] for c in cosets)) for s in G.generators]
    X = FiniteAction(G, len(cosets), images, name=name)
    X.cosets = cosets
    return X


def orbits(X: FiniteAction) -> list[tuple[int, ...]]:
    return list(X._orbits)


def stabilizer_of(X: FiniteAction, x: int) -> Subgroup:
    if not 0 <= x < X.points:
        raise RangeError(f"point {x} outside 0..{X.points - 1}")
    return gr.from_elements(X.group, X._stab_sets[x])


def _same_group(X: FiniteAction, Y: FiniteAction) -> None:
    if X.group != Y.group:
        raise AmbientMismatch("actions of different groups")


def factor_map_exists(X: FiniteAction, x: int, Y: FiniteAction, y: int) -> bool:
    """Is there an equivariant map ``X -> Y`` sending ``x`` to ``y``?"""
    X.require_minimal()
    Y.require_minimal()
    _same_group(X, Y)
    return X._stab_sets[x] <= Y._stab_sets[y]


def conjugacy_exists(X: FiniteAction, Y: FiniteAction) -> bool:
    X.require_minimal()
    Y.require_minimal()
    _same_group(X, Y)
    if X.points != Y.points:
        return False
    return gr.are_conjugate(stabilizer_of(X, 0), stabilizer_of(Y, 0)) is not None


def product_action(X: FiniteAction, Y: FiniteAction) -> FiniteAction:
    """Diagonal action on ``X x Y``; the pair ``(x, y)`` is point ``x * |Y| + y``."""
    _same_group(X, Y)
    m = Y.points
    images = []
    for s in X.group.generators:
        px, py = X.act[s].images, Y.act[s].images
        images.append(Perm(tuple(px[i] * m + py[j] for i in range(X.points) for j in range(m))))
    return FiniteAction(X.group, X.points * m, images, relation_free=X.relation_free)


def subgroup_orbit(X: FiniteAction, H: PermGroup, x: int) -> frozenset:
    return frozenset(X.act[h].images[x] for h in H.elements)


def translates(X: FiniteAction, A: frozenset) -> set[frozenset]:
    return {frozenset(X.act[g].images[a] for a in A) for g in X.group.elements}


def is_partition(blocks, points: int) -> bool:
    covered = set()
    total = 0
    for b in blocks:
        covered |= b
        total += len(b)
    return total == points and len(covered) == points


def g_tiles_at(X: FiniteAction, x: int) -> list[frozenset]:
    """Subsets containing ``x`` whose translates partition the points.

    One tile per intermediate subgroup ``G_0(x) <= K <= G`` (its orbit ``K.x``),
    sorted by size and then by content.
    """
    X.require_minimal()
    tiles = []
    for K in gr.overgroups(X.group, stabilizer_of(X, x)):
        A = subgroup_orbit(X, K, x)
        if not is_partition(translates(X, A), X.points):
            raise AssertionError(f"orbit {sorted(A)} of {K!r} is not a tile")
        tiles.append(A)
    return sorted(tiles, key=lambda A: (len(A), sorted(A)))


@dataclass(frozen=True)
class EigenSet:
    """``Eig(X,G)`` (``kind="Eig"``) or ``Eig_x(X,G)`` (``kind="Eig_x"``).

    Stored through its minimal elements: the conjugates of the base
    stabilizer (``Eig``) or the base stabilizer alone (``Eig_x``).
    """

    action: FiniteAction
    kind: str
    base_point: int
    base_stabilizer: Subgroup
    minimal: tuple = field(repr=False)  # (g, Delta^g) pairs

    def contains(self, L: PermGroup) -> bool:
        return self.witness(L) is not None

    __contains__ = contains

    def witness(self, L: PermGroup) -> Perm | None:
        """Some ``g`` with ``Delta^g <= L``, or ``None``."""
        for g, D in self.minimal:
            if D.element_set <= L.element_set:
                return g
        return None

    def at_base(self) -> EigenSet:
        D = self.base_stabilizer
        return EigenSet(self.action, "Eig_x", self.base_point, D, ((D.identity, D),))

    def minimal_elements(self) -> list[Subgroup]:
        return [D for _, D in self.minimal]


def eigenset_of(X: FiniteAction, base_point: int = 0) -> EigenSet:
    """Eigenvalue set of a minimal finite action: all ``L`` containing a conjugate of ``G_0(x)``."""
    X.require_minimal()
    D = stabilizer_of(X, base_point)
    seen = {}
    for g in gr.left_transversal(X.group, D):
        C = gr.conjugate(D, g)
        if C not in seen:
            seen[C] = g
    minimal = tuple(sorted(((g, C) for C, g in seen.items()), key=lambda p: p[1].key))
    return EigenSet(X, "Eig", base_point, D, minimal)


def _require_eigenvalue(E: EigenSet, L: PermGroup) -> None:
    if not E.contains(L):
        raise NotAnEigenvalue(f"{L!r} is not an eigenvalue of the action")


def is_settled(X: FiniteAction, L: PermGroup, eig: EigenSet | None = None) -> bool:
    """Whether every conjugate ``L^g`` with ``L^g n L`` in Eig equals ``L``.

    Scanning a left transversal of ``L`` covers every conjugate.
    """
    E = eig or eigenset_of(X)
    _require_eigenvalue(E, L)
    G = X.group
    L = gr.as_subgroup(G, L)
    for g in gr.left_transversal(G, L)[1:]:
        Lg = gr.conjugate_elements(L, g)
        if Lg == L.element_set:
            continue
        if E.contains(gr.from_elements(G, Lg & L.element_set)):
            return False
    return True


def settle(X: FiniteAction, L: PermGroup, eig: EigenSet | None = None) -> tuple[list[Perm], Subgroup]:
    """Grow ``I`` inside a transversal of ``L`` while ``L_I`` stays an eigenvalue.

    Returns a maximal such ``I`` (containing the identity) and ``L_I``, which
    is settled.  Growth follows transversal order and restarts after each step.
    """
    E = eig or eigenset_of(X)
    _require_eigenvalue(E, L)
    G = X.group
    L = gr.as_subgroup(G, L)
    F = gr.left_transversal(G, L)
    I = [F[0]]
    current = L.element_set
    grown = True
    while grown:
        grown = False
        for f in F:
            if f in I:
                continue
            candidate = current & gr.conjugate_elements(L, f)
            if E.contains(gr.from_elements(G, candidate)):
                I.append(f)
                current = candidate
                grown = True
                break
    return I, gr.intersect_over(L, I)
