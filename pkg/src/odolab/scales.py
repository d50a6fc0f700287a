"""Scales of finite-index subgroups, truncated inverse limits and odometer criteria."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import groups as gr
from .actions import FiniteAction, coset_action, eigenset_of, is_settled
from .errors import AmbientMismatch, NotAScale, OracleDisagreement
from .groups import PermGroup, Subgroup

STAGE_LABEL = "relative to stage {n}"


@dataclass(frozen=True)
class Scale:
    """A finite family of subgroups, directed downward by inclusion.

    ``witnesses[(i, j)]`` is the index of a member contained in
    ``members[i] n members[j]``.
    """

    ambient: PermGroup
    members: tuple[Subgroup, ...]
    witnesses: dict = field(repr=False, compare=False)

    def least(self) -> Subgroup:
        for M in self.members:
            if all(M.element_set <= N.element_set for N in self.members):
                return M
        raise AssertionError("a finite directed family has a least member")

    def to_json(self) -> dict:
        return {"members": [M.describe() for M in self.members]}


def make_scale(G: PermGroup, members: Sequence[PermGroup]) -> Scale:
    """Validate directedness and record a lower-bound witness for every pair."""
    if not members:
        raise NotAScale((0, 0))
    subs = []
    for M in members:
        if not M.is_subgroup_of(G):
            raise AmbientMismatch(f"{M!r} is not a subgroup of the scale's group")
        subs.append(gr.as_subgroup(G, M))
    witnesses = {}
    for i, A in enumerate(subs):
        for j in range(i, len(subs)):
            meet = A.element_set & subs[j].element_set
            k = next((k for k, C in enumerate(subs) if C.element_set <= meet), None)
            if k is None:
                raise NotAScale((i, j))
            witnesses[(i, j)] = witnesses[(j, i)] = k
    return Scale(G, tuple(subs), witnesses)


@dataclass(frozen=True)
class TruncatedOdometer:
    """Stage actions ``G/M`` with bonding maps ``G/M -> G/N`` for ``M <= N``.

    The limit of a finite directed family is its least stage.
    """

    scale: Scale
    base_subgroup: Subgroup
    stage_actions: tuple[FiniteAction, ...] = field(repr=False)
    bonding_maps: dict = field(repr=False)  # (i, j) -> tuple of point images

    @property
    def limit(self) -> FiniteAction:
        return self.stage_actions[self.scale.members.index(self.base_subgroup)]

    def settled_members(self) -> list[dict]:
        """Settledness of each member with respect to the truncated limit."""
        X = self.limit
        E = eigenset_of(X)
        n = len(self.scale.members)
        return [{"member": M.describe(), "settled": is_settled(X, M, E),
                 "label": STAGE_LABEL.format(n=n)} for M in self.scale.members]


def _bonding(G: PermGroup, small: FiniteAction, big: FiniteAction) -> tuple[int, ...]:
    where = {}
    for k, c in enumerate(big.cosets):
        for m in c.members:
            where[m] = k
    return tuple(where[c.representative] for c in small.cosets)


def build_truncated(scale: Scale) -> TruncatedOdometer:
    G = scale.ambient
    stages = tuple(coset_action(G, M) for M in scale.members)
    bonds = {}
    for i, M in enumerate(scale.members):
        for j, N in enumerate(scale.members):
            if M.element_set <= N.element_set:
                bonds[(i, j)] = _bonding(G, stages[i], stages[j])
    for (i, j), f in bonds.items():
        for k in range(len(scale.members)):
            if (j, k) in bonds:
                g = bonds[(j, k)]
                if tuple(g[x] for x in f) != bonds[(i, k)]:
                    raise OracleDisagreement(f"bonding maps {i}->{j}->{k} do not commute")
    return TruncatedOdometer(scale, scale.least(), stages, bonds)


def eigenhull_contains(scale: Scale, L: PermGroup) -> bool:
    """Is ``L`` above some conjugate of some member?"""
    G = scale.ambient
    if not L.is_subgroup_of(G):
        raise AmbientMismatch(f"{L!r} is not a subgroup of the scale's group")
    for M in scale.members:
        for g in gr.left_transversal(G, M):
            if gr.conjugate_elements(M, g) <= L.element_set:
                return True
    return False


def odometer_criteria(G: PermGroup, base: PermGroup) -> dict:
    """Three characterizations of ``G/base`` being an odometer, checked for agreement.

    ``normal``: the base is normal.  ``intersection_closed``: intersections
    of conjugates of the base still contain a conjugate.  ``core_stable``:
    the normal core contains a conjugate.
    """
    D = gr.as_subgroup(G, base)
    conj = [C.element_set for C in gr.conjugates(D)]
    normal = gr.is_normal(G, D)

    def in_eig(s: frozenset) -> bool:
        return any(c <= s for c in conj)

    closed = all(in_eig(a & b) for a in conj for b in conj)
    core = gr.normal_core(G, D)
    stable = in_eig(core.element_set)
    report = {
        "normal": normal,
        "intersection_closed": closed,
        "core_stable": stable,
        "core": core.describe(),
        "agree": normal == closed == stable,
    }
    if not report["agree"]:
        raise OracleDisagreement(f"odometer criteria disagree for {D!r}: {report}")
    return report


def universal_odometer_stage(G: PermGroup, index_bound: int) -> Scale:
    """Normal subgroups of index at most ``index_bound``, closed under intersection."""
    members = {N for N in gr.normal_subgroups(G) if G.order // N.order <= index_bound}
    changed = True
    while changed:
        changed = False
        for A in list(members):
            for B in list(members):
                C = gr.intersection(A, B)
                if C not in members:
                    members.add(C)
                    changed = True
    return make_scale(G, sorted(members, key=lambda K: K.key, reverse=True))


def scale_verdicts(sx: Scale, sy: Scale) -> dict:
    """Disjointness and common factors of two subodometers from generating scales.

    Disjoint iff ``AB = G`` for all members; no common factor iff
    ``<A^g u B> = G`` for all members and all ``g``.
    """
    G = sx.ambient
    if sy.ambient != G:
        raise AmbientMismatch("scales of different groups")
    disjoint = all(gr.product_set_is_group_sized(A, B)[1] for A in sx.members for B in sy.members)
    no_common = all(
        gr.join_is_full(gr.conjugate(A, g), B)
        for A in sx.members for g in gr.left_transversal(G, A) for B in sy.members
    )
    return {"disjoint": disjoint, "no_common_factor": no_common}
