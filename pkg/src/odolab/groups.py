"""Permutation groups, finite-index subgroups and the subgroup lattice.

Every group stores its full element set.  At the sizes this package targets
(orders up to a few thousand, lattices of groups up to order 48) exhaustive
listing is both simpler and faster than stabilizer chains.
"""
from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    DegreeMismatch,
    EmptyIndexSet,
    GroupTooLarge,
    NotAMember,
    NotASubgroup,
)
from .perm import Perm, check_degree, compose, identity, inverse

ORDER_CAP = 10080
DEFAULT_ORACLE_CAP = 48


def oracle_cap() -> int:
    """Largest group order for which exhaustive lattice oracles run."""
    return int(os.environ.get("ODOLAB_ORACLE_CAP", DEFAULT_ORACLE_CAP))


class PermGroup:
    """A finite group of permutations with its element set materialized.

    Two groups compare equal when they have the same elements.  A group with
    ``ambient`` set is a subgroup of that ambient group (see :class:`Subgroup`).
    """

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Iterable[Perm],
                 name: str | None = None):
        self.degree = degree
        self._generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.element_set = frozenset(self.elements)
        self.name = name
        self._hash = hash(self.element_set)
        self._canonical_gens = None

    @property
    def generators(self) -> tuple[Perm, ...]:
        if not self._generators and len(self.elements) > 1:
            self._generators = self.canonical_generators()
        return self._generators

    @generators.setter
    def generators(self, gens) -> None:
        self._generators = tuple(gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    @property
    def key(self) -> tuple:
        """Canonical sort key: order first, then the sorted element list."""
        return (self.order, tuple(e.images for e in self.elements))

    def __contains__(self, g: Perm) -> bool:
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: PermGroup) -> bool:
        return self.element_set <= other.element_set

    def __lt__(self, other: PermGroup) -> bool:
        return self.element_set < other.element_set

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and self.element_set <= other.element_set

    def canonical_generators(self) -> tuple[Perm, ...]:
        """Deterministic generating set: greedily keep the least element not yet generated."""
        if self._canonical_gens is None:
            gens: list[Perm] = []
            current = {self.identity}
            for e in self.elements:
                if e not in current:
                    gens.append(e)
                    current = set(_close(self.degree, gens))
            self._canonical_gens = tuple(gens)
        return self._canonical_gens

    def describe(self) -> list[str]:
        return [str(g) for g in self.canonical_generators()]

    def __repr__(self) -> str:
        label = self.name or "<" + ", ".join(self.describe()) + ">"
        return f"{type(self).__name__}({label}, order={self.order})"


class Subgroup(PermGroup):
    """A subgroup together with the ambient group it lives in."""

    def __init__(self, ambient: PermGroup, generators: Sequence[Perm], elements: Iterable[Perm],
                 name: str | None = None):
        super().__init__(ambient.degree, generators, elements, name=name)
        self.ambient = ambient


@dataclass(frozen=True)
class Coset:
    """A left coset ``representative * subgroup``."""

    representative: Perm
    subgroup: Subgroup
    members: frozenset

    @classmethod
    def of(cls, g: Perm, H: PermGroup) -> Coset:
        return cls(g, H, frozenset(compose(g, h) for h in H.elements))


def _close(degree: int, gens: Sequence[Perm], cap: int = ORDER_CAP,
           seed: Iterable[Perm] = ()) -> set[Perm]:
    """Element set of the group generated by ``gens`` (and optionally ``seed``)."""
    e = identity(degree)
    elements = {e}
    frontier = [e]
    for s in seed:
        if s not in elements:
            elements.add(s)
            frontier.append(s)
    gens = [g for g in gens if not g.is_identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(s, x)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        if len(elements) > cap:
            raise GroupTooLarge(f"group order exceeds cap {cap}")
        frontier = nxt
    return elements


def closure(degree: int, gens: Sequence[Perm], cap: int = ORDER_CAP, name: str | None = None) -> PermGroup:
    """The group generated by ``gens``."""
    check_degree(degree)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    return PermGroup(degree, gens, _close(degree, gens, cap), name=name)


def subgroup(G: PermGroup, gens: Sequence[Perm], name: str | None = None) -> Subgroup:
    """The subgroup of ``G`` generated by ``gens``."""
    for g in gens:
        if g.degree != G.degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {G.degree}")
        if g not in G:
            raise NotAMember(f"{g} is not an element of the ambient group")
    return Subgroup(G, gens, _close(G.degree, gens), name=name)


def as_subgroup(G: PermGroup, H: PermGroup) -> Subgroup:
    """View ``H`` as a subgroup of ``G``."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup(f"{H!r} is not a subgroup of {G!r}")
    if isinstance(H, Subgroup) and H.ambient == G:
        return H
    return Subgroup(G, H.generators, H.elements, name=H.name)


def whole(G: PermGroup) -> Subgroup:
    return as_subgroup(G, G)


def trivial(G: PermGroup) -> Subgroup:
    return Subgroup(G, (), [G.identity])


def from_elements(G: PermGroup, elements: Iterable[Perm]) -> Subgroup:
    """Wrap a set already known to be a subgroup of ``G``; generators are computed canonically."""
    return Subgroup(G, (), elements)


def _ambient(H: PermGroup) -> PermGroup:
    return H.ambient if isinstance(H, Subgroup) else H


def _check_sub(G: PermGroup, H: PermGroup) -> None:
    if not H.is_subgroup_of(G):
        raise NotASubgroup(f"{H!r} is not a subgroup of {G!r}")


def same_ambient(A: PermGroup, B: PermGroup) -> PermGroup:
    GA, GB = _ambient(A), _ambient(B)
    if GA != GB:
        raise AmbientMismatch("subgroups live in different ambient groups")
    return GA


def index(G: PermGroup, H: PermGroup) -> int:
    _check_sub(G, H)
    return G.order // H.order


def left_cosets(G: PermGroup, H: PermGroup) -> list[Coset]:
    """Left cosets of ``H`` in ``G``, each labelled by its least element, in sorted order."""
    _check_sub(G, H)
    covered: set[Perm] = set()
    out = []
    for g in G.elements:
        if g in covered:
            continue
        c = Coset.of(g, H)
        covered |= c.members
        out.append(c)
    return out


def left_transversal(G: PermGroup, H: PermGroup) -> list[Perm]:
    """Least representative of each left coset ``gH``; the identity comes first."""
    return [c.representative for c in left_cosets(G, H)]


def conjugate(H: PermGroup, g: Perm) -> Subgroup:
    """``g H g^-1``."""
    G = _ambient(H)
    if g not in G:
        raise NotAMember(f"{g} is not in the ambient group")
    gi = inverse(g)
    if all(compose(compose(g, h), gi) in H for h in H.generators):
        return as_subgroup(G, H)
    return Subgroup(G, [compose(compose(g, h), gi) for h in H.generators],
                    (compose(compose(g, h), gi) for h in H.elements))


def conjugates(H: PermGroup) -> list[Subgroup]:
    """Distinct conjugates of ``H`` in its ambient group, canonically sorted."""
    G = _ambient(H)
    seen = {}
    for g in left_transversal(G, _normalizer(G, H)):
        K = conjugate(H, g)
        seen.setdefault(K, K)
    return sorted(seen, key=lambda K: K.key)


def _normalizer(G: PermGroup, H: PermGroup) -> Subgroup:
    return Subgroup(G, (), [g for g in G.elements if conjugate_elements(H, g) == H.element_set])


def conjugate_elements(H: PermGroup, g: Perm) -> frozenset:
    gi = inverse(g)
    return frozenset(compose(compose(g, h), gi) for h in H.elements)


def normalizer(G: PermGroup, H: PermGroup) -> Subgroup:
    _check_sub(G, H)
    return _normalizer(G, H)


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    _check_sub(G, H)
    for g in G.generators:
        gi = inverse(g)
        for h in H.generators:
            if compose(compose(g, h), gi) not in H:
                return False
    return True


def intersection(A: PermGroup, B: PermGroup) -> Subgroup:
    G = same_ambient(A, B)
    return from_elements(G, A.element_set & B.element_set)


def intersect_over(H: PermGroup, I: Sequence[Perm]) -> Subgroup:
    """``H_I``: the intersection of the conjugates ``H^g`` for ``g`` in ``I``."""
    if not I:
        raise EmptyIndexSet("index set must be nonempty")
    G = _ambient(H)
    common = None
    for g in I:
        if g not in G:
            raise NotAMember(f"{g} is not in the ambient group")
        c = conjugate_elements(H, g)
        common = c if common is None else common & c
    if common == H.element_set:
        return as_subgroup(G, H)
    return from_elements(G, common)


def normal_core(G: PermGroup, H: PermGroup) -> Subgroup:
    """Largest normal subgroup of ``G`` inside ``H``."""
    _check_sub(G, H)
    return intersect_over(as_subgroup(G, H), left_transversal(G, H))


def product_set(A: PermGroup, B: PermGroup) -> frozenset:
    return frozenset(compose(a, b) for a in A.elements for b in B.elements)


def product_set_is_group_sized(A: PermGroup, B: PermGroup) -> tuple[int, bool]:
    """``(|AB|, AB == G)`` for subgroups of a common ambient ``G``."""
    G = same_ambient(A, B)
    size = len(product_set(A, B))
    return size, size == G.order


def join(A: PermGroup, B: PermGroup) -> Subgroup:
    """``<A u B>``."""
    G = same_ambient(A, B)
    if A <= B:
        return as_subgroup(G, B)
    if B <= A:
        return as_subgroup(G, A)
    gens = list(A.generators) + [b for b in B.generators if b not in A]
    return Subgroup(G, gens, _close(G.degree, gens, seed=A.elements))


def join_is_full(A: PermGroup, B: PermGroup) -> bool:
    G = same_ambient(A, B)
    return join(A, B).order == G.order


def cyclic_subgroup(G: PermGroup, g: Perm) -> Subgroup:
    return subgroup(G, [g])


def overgroups(G: PermGroup, H: PermGroup) -> list[Subgroup]:
    """All ``K`` with ``H <= K <= G``, canonically sorted."""
    _check_sub(G, H)
    start = as_subgroup(G, H)
    found = {start: start}
    queue = [start]
    while queue:
        K = queue.pop()
        for g in left_transversal(G, K)[1:]:
            L = Subgroup(G, list(K.generators) + [g], _close(G.degree, [*K.generators, g], seed=K.elements))
            if L not in found:
                found[L] = L
                queue.append(L)
    return sorted(found, key=lambda K: K.key)


@functools.lru_cache(maxsize=64)
def _all_subgroups(G: PermGroup) -> tuple[Subgroup, ...]:
    found: dict[Subgroup, Subgroup] = {}
    for g in G.elements:
        C = cyclic_subgroup(G, g)
        found.setdefault(C, C)
    pending = list(found)
    while pending:
        new = []
        for A in pending:
            for B in list(found):
                J = join(A, B)
                if J not in found:
                    found[J] = J
                    new.append(J)
        pending = new
    return tuple(sorted(found, key=lambda K: K.key))


def all_subgroups(G: PermGroup, cap: int | None = None) -> list[Subgroup]:
    """Every subgroup of ``G``, by iterated joins of cyclic subgroups.

    Sorted by ``(order, element list)``.  Refuses groups larger than the
    oracle cap (``ODOLAB_ORACLE_CAP``, default 48).
    """
    cap = oracle_cap() if cap is None else cap
    if G.order > cap:
        raise GroupTooLarge(f"|G| = {G.order} exceeds the oracle cap {cap}")
    return list(_all_subgroups(G))


def normal_subgroups(G: PermGroup, cap: int | None = None) -> list[Subgroup]:
    return [H for H in all_subgroups(G, cap) if is_normal(G, H)]


def conjugacy_class_key(H: PermGroup) -> tuple:
    """Key shared by exactly the conjugates of ``H``."""
    return min(K.key for K in conjugates(H))


def are_conjugate(A: PermGroup, B: PermGroup) -> Perm | None:
    """Least ``g`` with ``A^g == B``, or ``None``."""
    G = same_ambient(A, B)
    if A.order != B.order:
        return None
    for g in G.elements:
        if conjugate_elements(A, g) == B.element_set:
            return g
    return None
