"""Induced dynamics on nonempty subsets and on rational probability vectors.

Subsets of an action's points are bitmasks.  The orbit decomposition of all
``2^m - 1`` nonempty subsets is the hot loop: generator images are computed
for every mask at once with numpy and orbits are the connected components of
the resulting graph.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import groups as gr
from .actions import (
    EigenSet,
    FiniteAction,
    eigenset_of,
    is_settled,
    stabilizer_of,
    subgroup_orbit,
)
from .errors import (
    BoundTooLarge,
    HypothesisUnmet,
    NotAMember,
    NotAnEigenvalueAtBase,
    NotNested,
    OracleDisagreement,
    RangeError,
    TooManyPoints,
)
from .groups import PermGroup, Subgroup
from .perm import Perm, compose

MAX_HYPERSPACE_POINTS = 20
MAX_MEASURES = 200_000


class BitmaskAction:
    """Per-element byte lookup tables mapping a point bitmask to its image."""

    def __init__(self, X: FiniteAction):
        self.X = X
        self.chunks = (X.points + 7) // 8
        self._tables: dict[Perm, list[list[int]]] = {}

    def _table(self, g: Perm) -> list[list[int]]:
        t = self._tables.get(g)
        if t is None:
            p = self.X.act[g].images
            t = []
            for c in range(self.chunks):
                row = []
                for byte in range(256):
                    out = 0
                    for b in range(8):
                        x = 8 * c + b
                        if byte >> b & 1 and x < len(p):
                            out |= 1 << p[x]
                    row.append(out)
                t.append(row)
            self._tables[g] = t
        return t

    def apply(self, g: Perm, bits: int) -> int:
        out = 0
        for c, row in enumerate(self._table(g)):
            out |= row[(bits >> (8 * c)) & 0xFF]
        return out

    def stabilizer(self, bits: int) -> frozenset:
        return frozenset(g for g in self.X.group.elements if self.apply(g, bits) == bits)


def mask_of(points: Iterable[int]) -> int:
    bits = 0
    for x in points:
        bits |= 1 << x
    return bits


def members(bits: int) -> list[int]:
    return [i for i in range(bits.bit_length()) if bits >> i & 1]


@dataclass(frozen=True)
class SubsetState:
    """A nonempty subset of the points of ``action``."""

    bits: int
    action: FiniteAction = field(compare=False, repr=False)

    def __post_init__(self):
        if self.bits <= 0:
            raise RangeError("hyperspace states are nonempty subsets")
        if self.bits >> self.action.points:
            raise RangeError("subset mentions points outside the action")

    @property
    def points(self) -> list[int]:
        return members(self.bits)

    def translate(self, g: Perm) -> SubsetState:
        p = self.action.act[g].images
        return SubsetState(mask_of(p[x] for x in self.points), self.action)


@dataclass(frozen=True)
class Quasifactor:
    """One orbit of the induced action on nonempty subsets."""

    states: tuple[int, ...]
    stabilizer: Subgroup
    is_factor: bool
    witness: Perm | None  # g with G_0(x)^g <= stabilizer, when a factor

    @property
    def representative(self) -> int:
        return self.states[0]

    @property
    def orbit_size(self) -> int:
        return len(self.states)

    def to_json(self) -> dict:
        return {
            "orbit_size": self.orbit_size,
            "stabilizer": self.stabilizer.describe(),
            "is_factor": self.is_factor,
            "witness_g": None if self.witness is None else str(self.witness),
        }


def generator_mask_images(X: FiniteAction) -> list[np.ndarray]:
    """For each generator, the image of every mask ``0 .. 2^m - 1``."""
    masks = np.arange(1 << X.points, dtype=np.int64)
    out = []
    for img in X.generator_images:
        image = np.zeros_like(masks)
        for x, y in enumerate(img.images):
            image |= ((masks >> x) & 1) << y
        out.append(image)
    return out


def hyperspace_decomposition(X: FiniteAction, max_points: int = MAX_HYPERSPACE_POINTS) -> list[Quasifactor]:
    """All orbits of the induced action on nonempty subsets of a minimal ``X``.

    Each orbit is classified as a factor exactly when its stabilizer is an
    eigenvalue of ``X``.  Sorted by subset size, then by least member mask.
    """
    X.require_minimal()
    m = X.points
    if m > max_points:
        raise TooManyPoints(f"{m} points exceeds the hyperspace cap {max_points}")
    n = 1 << m
    images = generator_mask_images(X)
    src = np.concatenate([np.arange(n, dtype=np.int64)] * len(images)) if images else np.zeros(0, np.int64)
    dst = np.concatenate(images) if images else np.zeros(0, np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    order = np.argsort(labels, kind="stable")
    boundaries = np.flatnonzero(np.diff(labels[order])) + 1
    E = eigenset_of(X)
    kernel = BitmaskAction(X)
    out = []
    for block in np.split(order, boundaries):
        states = tuple(int(b) for b in block)
        if states[0] == 0:
            continue
        stab = gr.from_elements(X.group, kernel.stabilizer(states[0]))
        w = E.witness(stab)
        out.append(Quasifactor(states, stab, w is not None, w))
    out.sort(key=lambda q: (q.representative.bit_count(), q.representative))
    return out


@dataclass(frozen=True)
class QuasifactorConstruction:
    """Result of :func:`quasifactor_construct`."""

    state: SubsetState
    stabilizer: Subgroup
    expected_stabilizer: Subgroup | None  # Gamma n Lambda^g when the index-3 hypotheses hold
    is_factor: bool
    predicted_non_factor: bool  # Gamma settled, Gamma^g != Gamma, [Gamma:Lambda] >= 3
    gamma: Subgroup
    lam: Subgroup
    g: Perm

    def to_json(self) -> dict:
        return {
            "subset": [x + 1 for x in self.state.points],
            "stabilizer": self.stabilizer.describe(),
            "expected_stabilizer": None if self.expected_stabilizer is None
            else self.expected_stabilizer.describe(),
            "is_factor": self.is_factor,
            "predicted_non_factor": self.predicted_non_factor,
            "gamma": self.gamma.describe(),
            "lambda": self.lam.describe(),
            "g": str(self.g),
        }


def quasifactor_construct(X: FiniteAction, gamma: PermGroup, lam: PermGroup, g: Perm,
                          eig: EigenSet | None = None) -> QuasifactorConstruction:
    """The subset ``Gamma.x  u  (g Lambda).x`` for nested eigenvalues at the base point ``x = 0``.

    Both pieces are fibres of the coset maps ``X -> G/Gamma`` and
    ``X -> G/Lambda`` that send the base point to the trivial coset.  Its
    stabilizer is computed directly and, when ``g`` is outside ``Gamma`` and
    ``[Gamma:Lambda] >= 3``, checked against ``Gamma n Lambda^g``.
    """
    X.require_minimal()
    G = X.group
    if g not in G:
        raise NotAMember(f"{g} is not in the acting group")
    if not lam.element_set <= gamma.element_set:
        raise NotNested()
    D = stabilizer_of(X, 0)
    if not D.element_set <= lam.element_set:
        raise HypothesisUnmet("Lambda is not an eigenvalue at the base point")
    gamma = gr.as_subgroup(G, gamma)
    lam = gr.as_subgroup(G, lam)
    E = eig or eigenset_of(X)
    piece = subgroup_orbit(X, gamma, 0) | frozenset(X.apply(compose(g, h), 0) for h in lam.elements)
    state = SubsetState(mask_of(piece), X)
    stab = gr.from_elements(G, (h for h, p in X.act.items() if all(p.images[a] in piece for a in piece)))
    idx = gamma.order // lam.order
    expected = None
    if g not in gamma and idx >= 3:
        expected = gr.intersection(gamma, gr.conjugate(lam, g))
        if expected != stab:
            raise OracleDisagreement(
                f"stabilizer {stab!r} differs from Gamma n Lambda^g = {expected!r}")
    is_factor = E.contains(stab)
    predicted = (idx >= 3 and gr.conjugate_elements(gamma, g) != gamma.element_set
                 and is_settled(X, gamma, E))
    if predicted and is_factor:
        raise OracleDisagreement("settled construction produced a factor")
    return QuasifactorConstruction(state, stab, expected, is_factor, predicted, gamma, lam, g)


def find_nonfactor_witness(X: FiniteAction) -> QuasifactorConstruction | None:
    """First ``(Gamma, Lambda, g)`` in lattice order whose construction is a non-factor.

    ``None`` means no witness exists among eigenvalues at the base point of
    this finite action, which is no statement about infinite systems.
    """
    X.require_minimal()
    G = X.group
    E = eigenset_of(X)
    D = stabilizer_of(X, 0)
    over = gr.overgroups(G, D)
    for gamma in over:
        if gr.is_normal(G, gamma) or not is_settled(X, gamma, E):
            continue
        for lam in over:
            if not lam.element_set <= gamma.element_set or gamma.order < 3 * lam.order:
                continue
            for g in gr.left_transversal(G, gamma)[1:]:
                if gr.conjugate_elements(gamma, g) == gamma.element_set:
                    continue
                return quasifactor_construct(X, gamma, lam, g, E)
    return None


@dataclass(frozen=True)
class RationalMeasure:
    """An exact probability vector ``numerators / denominator`` in lowest terms."""

    denominator: int
    numerators: tuple[int, ...]

    def __post_init__(self):
        if self.denominator <= 0:
            raise RangeError("denominator must be positive")
        if any(n < 0 for n in self.numerators):
            raise RangeError("negative mass")
        if sum(self.numerators) != self.denominator:
            raise RangeError(f"masses sum to {sum(self.numerators)}, not {self.denominator}")
        d = reduce(math.gcd, self.numerators, self.denominator)
        if d > 1:
            object.__setattr__(self, "denominator", self.denominator // d)
            object.__setattr__(self, "numerators", tuple(n // d for n in self.numerators))

    @classmethod
    def from_weights(cls, weights: Sequence) -> RationalMeasure:
        fr = [Fraction(w) for w in weights]
        total = sum(fr)
        fr = [w / total for w in fr]
        den = reduce(math.lcm, (w.denominator for w in fr), 1)
        return cls(den, tuple(int(w * den) for w in fr))

    @classmethod
    def uniform_on(cls, support: Iterable[int], points: int) -> RationalMeasure:
        support = set(support)
        return cls(len(support), tuple(int(x in support) for x in range(points)))

    @classmethod
    def dirac(cls, x: int, points: int) -> RationalMeasure:
        return cls.uniform_on([x], points)

    @property
    def points(self) -> int:
        return len(self.numerators)

    def mass(self, x: int) -> Fraction:
        return Fraction(self.numerators[x], self.denominator)

    def push(self, p: Perm) -> RationalMeasure:
        """Image measure under the point permutation ``p``."""
        out = [0] * self.points
        for x, n in enumerate(self.numerators):
            out[p.images[x]] = n
        return RationalMeasure(self.denominator, tuple(out))

    def to_json(self) -> dict:
        return {"denominator": self.denominator, "numerators": list(self.numerators)}


def measure_orbit(X: FiniteAction, mu: RationalMeasure) -> tuple[list[RationalMeasure], Subgroup]:
    """The orbit ``{g.mu}`` (sorted) and the stabilizer ``G_0(mu)``."""
    X.require_minimal()
    if mu.points != X.points:
        raise RangeError("measure lives on a different point set")
    seen = {mu}
    stack = [mu]
    while stack:
        nu = stack.pop()
        for img in X.generator_images:
            rho = nu.push(img)
            if rho not in seen:
                seen.add(rho)
                stack.append(rho)
    stab = gr.from_elements(X.group, (g for g, p in X.act.items() if mu.push(p) == mu))
    return sorted(seen, key=lambda v: (v.denominator, v.numerators)), stab


def mu_gamma(X: FiniteAction, gamma: PermGroup) -> RationalMeasure:
    """Uniform measure on the fibre ``Gamma.x`` of the base point over ``G/Gamma``."""
    X.require_minimal()
    if not stabilizer_of(X, 0).element_set <= gamma.element_set:
        raise NotAnEigenvalueAtBase(f"{gamma!r} does not contain the base stabilizer")
    return RationalMeasure.uniform_on(subgroup_orbit(X, gamma, 0), X.points)


def embed_quasifactor_in_measures(X: FiniteAction, Q: Quasifactor) -> list[RationalMeasure]:
    """Send each subset in ``Q`` to the uniform measure on it.

    Equivariance and injectivity are checked over the whole orbit.
    """
    image = {A: RationalMeasure.uniform_on(members(A), X.points) for A in Q.states}
    if len(set(image.values())) != len(image):
        raise OracleDisagreement("subset-to-measure map is not injective")
    bm = BitmaskAction(X)
    for g, p in X.act.items():
        for A, mu in image.items():
            if image.get(bm.apply(g, A)) != mu.push(p):
                raise OracleDisagreement(f"embedding is not equivariant at {g} on {members(A)}")
    return [image[A] for A in Q.states]


def _measures_with_denominator(points: int, d: int):
    # stars and bars: compositions of d into `points` nonnegative parts
    for bars in itertools.combinations(range(d + points - 1), points - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(d + points - 2 - prev)
        if reduce(math.gcd, parts, d) == 1:
            yield RationalMeasure(d, tuple(parts))


@dataclass
class MeasureReport:
    """Orbit types of rational measures up to a denominator bound."""

    denominator_bound: int
    kernel: Subgroup
    base_stabilizer_normal: bool
    entries: list[dict]
    measures_enumerated: int

    @property
    def non_factor_entries(self) -> list[dict]:
        return [e for e in self.entries if not e["is_factor"]]

    def to_json(self) -> dict:
        return {
            "denominator_bound": self.denominator_bound,
            "measures_enumerated": self.measures_enumerated,
            "kernel": self.kernel.describe(),
            "base_stabilizer_normal": self.base_stabilizer_normal,
            "entries": self.entries,
        }


def classify_measure_quasifactors(X: FiniteAction, denominator_bound: int,
                                  max_measures: int = MAX_MEASURES) -> MeasureReport:
    """Classify the orbits of all measures with denominator at most ``denominator_bound``.

    Orbits are grouped by orbit size and conjugacy class of the stabilizer.
    No claim is made about non-factor entries; the report only records them.
    """
    X.require_minimal()
    m = X.points
    total = sum(math.comb(d + m - 1, m - 1) for d in range(1, denominator_bound + 1))
    if denominator_bound < 1 or total > max_measures:
        raise BoundTooLarge(f"{total} candidate measures exceeds the limit {max_measures}")
    E = eigenset_of(X)
    K = X.kernel()
    G = X.group
    seen: set[RationalMeasure] = set()
    classes: dict[tuple, dict] = {}
    count = 0
    for d in range(1, denominator_bound + 1):
        for mu in _measures_with_denominator(m, d):
            count += 1
            if mu in seen:
                continue
            orbit, stab = measure_orbit(X, mu)
            seen.update(orbit)
            key = (len(orbit), gr.conjugacy_class_key(stab))
            entry = classes.get(key)
            if entry is None:
                w = E.witness(stab)
                classes[key] = entry = {
                    "orbit_size": len(orbit),
                    "stabilizer": stab.describe(),
                    "is_factor": w is not None,
                    "witness_g": None if w is None else str(w),
                    "contains_kernel": K.element_set <= stab.element_set,
                    "count": 0,
                    "example": orbit[0].to_json(),
                }
            entry["count"] += 1
    entries = [classes[k] for k in sorted(classes)]
    return MeasureReport(denominator_bound, K, gr.is_normal(G, stabilizer_of(X, 0)), entries, count)
