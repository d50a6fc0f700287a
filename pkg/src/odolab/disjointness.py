"""Disjointness and common factors of finite transitive actions.

Each decision procedure runs its group-theoretic criterion and, while the
acting group is within the oracle cap, an independent brute-force check.  A
disagreement raises :class:`~odolab.errors.OracleDisagreement`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import groups as gr
from .actions import FiniteAction, coset_action, orbits, product_action, stabilizer_of
from .errors import AmbientMismatch, OracleDisagreement
from .groups import PermGroup, Subgroup
from .perm import Perm


@dataclass(frozen=True)
class DisjointnessVerdict:
    disjoint: bool
    criterion_trace: dict
    oracle_agreed: bool | None = None  # None: criterion-only (group above the oracle cap)

    def to_json(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "criterion_trace": self.criterion_trace,
            "oracle_agreed": self.oracle_agreed,
            "mode": "criterion-only" if self.oracle_agreed is None else "criterion+oracle",
        }


@dataclass(frozen=True)
class CommonFactorVerdict:
    """Outcome of the no-common-factor test.

    ``no_common_factor`` is true when the two coset actions share no
    nontrivial factor.  Otherwise ``witness_g`` and ``common_overgroup``
    describe one: ``G/common_overgroup`` is a factor of both.
    """

    no_common_factor: bool
    witness_g: Perm | None
    common_overgroup: Subgroup | None
    joins_checked: int
    oracle_agreed: bool | None = None

    def to_json(self) -> dict:
        return {
            "no_common_factor": self.no_common_factor,
            "witness_g": None if self.witness_g is None else str(self.witness_g),
            "common_overgroup": None if self.common_overgroup is None
            else self.common_overgroup.describe(),
            "joins_checked": self.joins_checked,
            "oracle_agreed": self.oracle_agreed,
            "mode": "criterion-only" if self.oracle_agreed is None else "criterion+oracle",
        }


def _below_cap(G: PermGroup) -> bool:
    return G.order <= gr.oracle_cap()


def product_is_minimal(G: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    """Oracle: is the diagonal action on ``G/A x G/B`` transitive?"""
    return len(orbits(product_action(coset_action(G, A), coset_action(G, B)))) == 1


def proper_common_overgroups(G: PermGroup, A: PermGroup, B: PermGroup) -> list[Subgroup]:
    """Oracle: proper subgroups containing some conjugate of ``A`` and some conjugate of ``B``.

    Conjugates are formed over every element of ``G``, not a transversal.
    """
    conj_a = {gr.conjugate_elements(A, g) for g in G.elements}
    conj_b = {gr.conjugate_elements(B, g) for g in G.elements}
    out = []
    for D in gr.all_subgroups(G):
        if D.order == G.order:
            continue
        s = D.element_set
        if any(c <= s for c in conj_a) and any(c <= s for c in conj_b):
            out.append(D)
    return out


def disjoint_finite(A: PermGroup, B: PermGroup) -> DisjointnessVerdict:
    """``G/A`` and ``G/B`` are disjoint iff ``AB = G``."""
    G = gr.same_ambient(A, B)
    size, covers = gr.product_set_is_group_sized(A, B)
    trace = {"criterion": "product set AB = G", "product_set_size": size, "group_order": G.order}
    agreed = None
    if _below_cap(G):
        oracle = product_is_minimal(G, A, B)
        if oracle != covers:
            raise OracleDisagreement(
                f"|AB| = {size} but product action minimal = {oracle} for {A!r}, {B!r}")
        agreed = True
    return DisjointnessVerdict(covers, trace, agreed)


def no_common_factor_finite(A: PermGroup, B: PermGroup) -> CommonFactorVerdict:
    """No nontrivial common factor iff ``<A^g u B> = G`` for every ``g``.

    ``g`` ranges over a left transversal of ``A``, which reaches every
    conjugate.  The first failing ``g`` is returned with the join as the
    common over-group.
    """
    G = gr.same_ambient(A, B)
    A = gr.as_subgroup(G, A)
    checked = 0
    witness = None
    over = None
    for g in gr.left_transversal(G, A):
        checked += 1
        J = gr.join(gr.conjugate(A, g), B)
        if J.order != G.order:
            witness, over = g, J
            break
    verdict = witness is None
    agreed = None
    if _below_cap(G):
        oracle = not proper_common_overgroups(G, A, B)
        if oracle != verdict:
            raise OracleDisagreement(
                f"join criterion says {verdict}, over-group search says {oracle} for {A!r}, {B!r}")
        agreed = True
    return CommonFactorVerdict(verdict, witness, over, checked, agreed)


def disjoint_action(X: FiniteAction, Y: FiniteAction) -> DisjointnessVerdict:
    """Disjointness of two minimal actions from their base stabilizers.

    The oracle checks minimality of the product action directly.
    """
    X.require_minimal()
    Y.require_minimal()
    G = X.group
    if Y.group != G:
        raise AmbientMismatch("actions of different groups")
    DX, DY = stabilizer_of(X, 0), stabilizer_of(Y, 0)
    size, covers = gr.product_set_is_group_sized(DX, DY)
    trace = {
        "criterion": "product of base stabilizers = G",
        "product_set_size": size,
        "group_order": G.order,
        "base_stabilizers": [DX.describe(), DY.describe()],
    }
    agreed = None
    if _below_cap(G):
        oracle = product_action(X, Y).is_minimal()
        if oracle != covers:
            raise OracleDisagreement(f"criterion {covers} but product minimal = {oracle}")
        agreed = True
    return DisjointnessVerdict(covers, trace, agreed)


@dataclass(frozen=True)
class CommonFactor:
    subgroup: Subgroup
    action: FiniteAction = field(repr=False)

    def to_json(self) -> dict:
        return {"subgroup": self.subgroup.describe(), "points": self.action.points}


def common_factor_search(X: FiniteAction, Y: FiniteAction) -> CommonFactor | None:
    """A largest nontrivial common factor ``G/D`` of ``X`` and ``Y``, or ``None``.

    ``D`` is the least proper subgroup (by order, then elements) containing
    a conjugate of each base stabilizer.  The answer is cross-checked against
    the join criterion.
    """
    X.require_minimal()
    Y.require_minimal()
    G = X.group
    if Y.group != G:
        raise AmbientMismatch("actions of different groups")
    DX, DY = stabilizer_of(X, 0), stabilizer_of(Y, 0)
    candidates = proper_common_overgroups(G, DX, DY)
    criterion = no_common_factor_finite(DX, DY)
    if criterion.no_common_factor != (not candidates):
        raise OracleDisagreement("common factor search disagrees with the join criterion")
    if not candidates:
        return None
    D = min(candidates, key=lambda K: K.key)
    return CommonFactor(D, coset_action(G, D))


@dataclass
class UniversalDisjointnessReport:
    """Finite factors of ``X`` versus finite odometers ``G/N`` not disjoint from ``X``."""

    finite_factors: list[Subgroup]
    odometer_factors: list[Subgroup]
    obstructing_odometers: list[Subgroup]

    @property
    def consistent(self) -> bool:
        return bool(self.finite_factors) == bool(self.obstructing_odometers)

    @property
    def universally_disjoint(self) -> bool:
        return not self.obstructing_odometers

    def to_json(self) -> dict:
        return {
            "finite_factors": [D.describe() for D in self.finite_factors],
            "odometer_factors": [N.describe() for N in self.odometer_factors],
            "obstructing_odometers": [N.describe() for N in self.obstructing_odometers],
            "universally_disjoint": self.universally_disjoint,
            "consistent": self.consistent,
        }


def universally_disjoint_probe(X: FiniteAction) -> UniversalDisjointnessReport:
    """Compare "no nontrivial finite factor" with "disjoint from every finite odometer".

    Finite factors are listed by their subgroups ``D`` with ``G_0(x) <= D < G``
    (one per conjugacy class); obstructions are proper normal ``N`` with
    ``G_0(x) N != G``.
    """
    X.require_minimal()
    G = X.group
    D = stabilizer_of(X, 0)
    seen = set()
    factors = []
    for K in gr.overgroups(G, D):
        if K.order == G.order:
            continue
        key = gr.conjugacy_class_key(K)
        if key not in seen:
            seen.add(key)
            factors.append(K)
    normals = [N for N in gr.normal_subgroups(G) if N.order < G.order]
    odometers = [N for N in normals if D.element_set <= N.element_set]
    obstructing = [N for N in normals if not gr.product_set_is_group_sized(D, N)[1]]
    report = UniversalDisjointnessReport(factors, odometers, obstructing)
    if not report.consistent:
        raise OracleDisagreement("finite factors and odometer obstructions disagree")
    return report
