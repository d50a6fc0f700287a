"""Reproduction checks for the worked examples and the finite-level theorems.

Each check returns a :class:`CheckResult`.  Checks named ``example:*`` read
their subgroups from the workspace, so a corrupted fixture makes them fail;
the sweeps run over the fixed corpus groups.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable

from . import corpus
from . import groups as gr
from . import oracles
from .actions import (
    FiniteAction,
    coset_action,
    eigenset_of,
    factor_map_exists,
    g_tiles_at,
    is_settled,
    orbits,
    settle,
    stabilizer_of,
)
from .disjointness import (
    disjoint_action,
    disjoint_finite,
    no_common_factor_finite,
    universally_disjoint_probe,
)
from .errors import OdolabError
from .hyperspace import (
    embed_quasifactor_in_measures,
    hyperspace_decomposition,
    measure_orbit,
    members,
    mu_gamma,
    quasifactor_construct,
)
from .perm import compose, parse_cycles
from .scales import (
    build_truncated,
    make_scale,
    odometer_criteria,
    scale_verdicts,
    universal_odometer_stage,
)
from .workspace import Workspace


@dataclass
class CheckResult:
    ok: bool
    detail: str
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Check:
    name: str
    claim: str
    run: Callable[[Workspace], CheckResult]


@functools.lru_cache(maxsize=None)
def corpus_lattices() -> tuple:
    """``(G, subgroups of G)`` for every corpus group."""
    return tuple((G, tuple(gr.all_subgroups(G))) for G in corpus.corpus())


@functools.lru_cache(maxsize=None)
def _coset(G, H) -> FiniteAction:
    return coset_action(G, H)


def corpus_actions():
    for G, subs in corpus_lattices():
        for H in subs:
            yield G, H, _coset(G, H)


def _pair_orbit_is_everything(X: FiniteAction, Y: FiniteAction) -> bool:
    # Orbit of (0, 0) under the diagonal action, walked with generator images only.
    seen = {(0, 0)}
    stack = [(0, 0)]
    pairs = list(zip(X.generator_images, Y.generator_images))
    while stack:
        x, y = stack.pop()
        for px, py in pairs:
            q = (px.images[x], py.images[y])
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == X.points * Y.points


def _fail(msg: str, **stats) -> CheckResult:
    return CheckResult(False, msg, stats)


# ---------------------------------------------------------------- examples


def check_convention(ws: Workspace) -> CheckResult:
    r = parse_cycles("(1234)", 4)
    s = parse_cycles("(12)(34)", 4)
    rs = compose(r, s)
    ok = rs == parse_cycles("(13)", 4)
    return CheckResult(ok, f"rs = {rs}")


def check_example_s3(ws: Workspace) -> CheckResult:
    A, B = ws.subgroup("s3-12"), ws.subgroup("s3-13")
    G = A.ambient
    g = parse_cycles("(23)", 3)
    if gr.conjugate(A, g) != B:
        return _fail("Gamma^(23) != Lambda")
    if not gr.join_is_full(A, B):
        return _fail("<Gamma u Lambda> is proper")
    v = no_common_factor_finite(A, B)
    if v.no_common_factor or v.witness_g != g or v.common_overgroup != B:
        return _fail(f"expected common factor with witness (23), got {v.to_json()}")
    return CheckResult(True, f"join = S3 (order {G.order}); common factor G/<(13)> via g = {v.witness_g}")


def check_example_d4(ws: Workspace) -> CheckResult:
    A, B = ws.subgroup("d4-s"), ws.subgroup("d4-rs")
    size, covers = gr.product_set_is_group_sized(A, B)
    if size != 4 or covers:
        return _fail(f"|Gamma Lambda| = {size}, expected 4")
    dv = disjoint_finite(A, B)
    if dv.disjoint:
        return _fail("reported disjoint")
    v = no_common_factor_finite(A, B)
    if not v.no_common_factor or v.joins_checked != 4:
        return _fail(f"expected no common factor over 4 conjugates, got {v.to_json()}")
    return CheckResult(True, "|Gamma Lambda| = 4, not disjoint; joins full for all 4 transversal conjugates")


def check_example_three_points(ws: Workspace) -> CheckResult:
    X = ws.action("s3-mod-12")
    crit = odometer_criteria(X.group, stabilizer_of(X, 0))
    if crit["normal"]:
        return _fail("<(12)> reported normal")
    free = ws.action("free-s3")
    if free.points != 3 or not free.is_minimal() or odometer_criteria(free.group, stabilizer_of(free, 0))["normal"]:
        return _fail("free-group 3-point action should be a non-odometer")
    probe = universally_disjoint_probe(X)
    if probe.odometer_factors:
        return _fail("S3/<(12)> should have no nontrivial odometer factor")
    return CheckResult(True, "S3/<(12)> and the free-group action are 3-point non-odometers without odometer factors")


# ---------------------------------------------------------------- sweeps


def check_product_oracle(ws: Workspace) -> CheckResult:
    pairs = 0
    for G, subs in corpus_lattices():
        for A in subs:
            for B in subs:
                pairs += 1
                covers = gr.product_set_is_group_sized(A, B)[1]
                if covers != _pair_orbit_is_everything(_coset(G, A), _coset(G, B)):
                    return _fail(f"disagreement at {A!r}, {B!r} in {G!r}", pairs=pairs)
    return CheckResult(True, f"{pairs} ordered pairs, 0 disagreements", {"pairs": pairs})


def check_join_oracle(ws: Workspace) -> CheckResult:
    pairs = 0
    for G, subs in corpus_lattices():
        for A in subs:
            for B in subs:
                pairs += 1
                v = no_common_factor_finite(A, B)
                if v.oracle_agreed is not True:
                    return _fail(f"oracle did not run for {A!r}, {B!r}", pairs=pairs)
    return CheckResult(True, f"{pairs} ordered pairs, 0 disagreements", {"pairs": pairs})


def check_normal_case(ws: Workspace) -> CheckResult:
    pairs = 0
    for G, subs in corpus_lattices():
        normal = {H for H in subs if gr.is_normal(G, H)}
        for A in subs:
            for B in subs:
                if A in normal or B in normal:
                    pairs += 1
                    d = gr.product_set_is_group_sized(A, B)[1]
                    n = no_common_factor_finite(A, B).no_common_factor
                    if d != n:
                        return _fail(f"{A!r}, {B!r}: disjoint={d}, no common factor={n}")
    return CheckResult(True, f"{pairs} pairs with a normal member agree", {"pairs": pairs})


def check_factor_pairs(ws: Workspace) -> CheckResult:
    """X, Y disjoint iff all pairs of their finite factors are disjoint."""
    pairs = 0
    for G, subs in corpus_lattices():
        if G.order > 12:
            continue
        for A in subs:
            over_a = gr.overgroups(G, A)
            for B in subs:
                pairs += 1
                d = gr.product_set_is_group_sized(A, B)[1]
                all_factors = all(
                    gr.product_set_is_group_sized(gr.conjugate(C, g), D)[1]
                    for C in over_a for g in G.elements for D in gr.overgroups(G, B)
                )
                if d != all_factors:
                    return _fail(f"{A!r}, {B!r}")
    return CheckResult(True, f"{pairs} pairs agree", {"pairs": pairs})


def check_small_quasifactors(ws: Workspace) -> CheckResult:
    tested = 0
    quasifactors = 0
    three = 0
    for G, H, X in corpus_actions():
        if X.points > 3:
            continue
        tested += 1
        qs = hyperspace_decomposition(X)
        quasifactors += len(qs)
        if not all(q.is_factor for q in qs):
            return _fail(f"non-factor quasifactor for {G!r}/{H!r}")
        if X.points == 3:
            three += 1
            D = stabilizer_of(X, 0)
            sizes = [(q.representative.bit_count(), q.orbit_size) for q in qs]
            if sizes != [(1, 3), (2, 3), (3, 1)]:
                return _fail(f"3-point components {sizes}")
            if gr.are_conjugate(qs[0].stabilizer, D) is None or gr.are_conjugate(qs[1].stabilizer, D) is None:
                return _fail("F1 or F2 not conjugate to X")
            if qs[2].stabilizer.order != G.order:
                return _fail("F3 not trivial")
    return CheckResult(True, f"{tested} actions, {quasifactors} quasifactors, all factors; "
                             f"{three} three-point actions split as X, X, point",
                       {"actions": tested, "quasifactors": quasifactors, "three_point": three})


def check_construction_law(ws: Workspace) -> CheckResult:
    triples = 0
    flagged = 0
    for G, D, X in corpus_actions():
        over = gr.overgroups(G, D)
        E = eigenset_of(X)
        for gamma in over:
            for lam in over:
                if not lam.element_set <= gamma.element_set or gamma.order < 3 * lam.order:
                    continue
                for g in G.elements:
                    if g in gamma:
                        continue
                    c = quasifactor_construct(X, gamma, lam, g, E)
                    A = frozenset(c.state.points)
                    direct = oracles.setwise_stabilizer(X, A)
                    expected = gamma.element_set & oracles.conjugate_by_definition(lam, g)
                    triples += 1
                    if direct != expected:
                        return _fail(f"stabilizer mismatch for {gamma!r}, {lam!r}, {g}", triples=triples)
                    flagged += c.predicted_non_factor
    return CheckResult(True, f"{triples} triples, stabilizer = Gamma n Lambda^g in all; "
                             f"{flagged} certified non-factor quasifactors",
                       {"triples": triples, "non_factor": flagged})


def check_settling(ws: Workspace) -> CheckResult:
    settled_runs = 0
    actions = 0
    for G, D, X in corpus_actions():
        actions += 1
        E = eigenset_of(X)
        eig = [L for L in dict(corpus_lattices())[G] if E.contains(L)]
        settled = []
        for L in eig:
            _, LI = settle(X, L, E)
            settled_runs += 1
            if not is_settled(X, LI, E):
                return _fail(f"settle output not settled for {L!r} in {G!r}/{D!r}")
            if is_settled(X, L, E):
                settled.append(L)
        normal_base = gr.is_normal(G, D)
        all_normal = all(gr.is_normal(G, L) for L in settled)
        if normal_base != all_normal:
            return _fail(f"{G!r}/{D!r}: base normal={normal_base}, settled all normal={all_normal}")
    return CheckResult(True, f"{settled_runs} settle runs over {actions} actions; "
                             f"odometer iff all settled eigenvalues normal",
                       {"settle_runs": settled_runs, "actions": actions})


def check_odometer_criteria(ws: Workspace) -> CheckResult:
    count = 0
    for G, subs in corpus_lattices():
        for D in subs:
            odometer_criteria(G, D)
            count += 1
    return CheckResult(True, f"{count} base subgroups, three criteria agree", {"bases": count})


def check_measures(ws: Workspace) -> CheckResult:
    count = 0
    for G, D, X in corpus_actions():
        for L in gr.overgroups(G, D):
            mu = mu_gamma(X, L)
            orbit, stab = measure_orbit(X, mu)
            count += 1
            if stab != L or len(orbit) != G.order // L.order:
                return _fail(f"G_0(mu_Gamma) != Gamma for {L!r} over {G!r}/{D!r}")
    embedded = 0
    for name in ("d4-mod-s", "s4-mod-12"):
        X = ws.action(name)
        for Q in hyperspace_decomposition(X):
            image = embed_quasifactor_in_measures(X, Q)
            for A, mu in zip(Q.states, image):
                if any(mu.numerators[x] == 0 for x in members(A)):
                    return _fail("embedded measure misses its subset")
            embedded += 1
    return CheckResult(True, f"{count} measures with stabilizer Gamma; {embedded} quasifactors embedded "
                             f"equivariantly and injectively", {"measures": count, "embedded": embedded})


def check_tiles(ws: Workspace) -> CheckResult:
    checked = 0
    for G, D, X in corpus_actions():
        for x in range(X.points):
            tiles = g_tiles_at(X, x)
            between = len(gr.overgroups(G, stabilizer_of(X, x)))
            if len(tiles) != between:
                return _fail(f"{len(tiles)} tiles vs {between} subgroups")
            if X.points <= 8:
                brute = oracles.tiles_by_subsets(X, x)
                if sorted(map(sorted, brute)) != sorted(map(sorted, tiles)):
                    return _fail(f"tile oracle mismatch for {G!r}/{D!r} at {x}")
                checked += 1
    return CheckResult(True, f"tile counts match; {checked} base points checked against all subsets",
                       {"oracle_points": checked})


def check_scales(ws: Workspace) -> CheckResult:
    for name, S in ws.scales.items():
        T = build_truncated(S)
        if T.limit.points != S.ambient.order // T.base_subgroup.order:
            return _fail(f"limit of {name} has wrong size")
    stages = 0
    for G, subs in corpus_lattices():
        S = universal_odometer_stage(G, G.order)
        T = build_truncated(S)
        stages += 1
        for H in subs:
            Y = _coset(G, H)
            # the finest stage has every finite transitive action as a factor
            if not factor_map_exists(T.limit, 0, Y, 0):
                return _fail(f"{H!r} is not a factor of the finest universal stage of {G!r}")
    pairs = 0
    for G, subs in corpus_lattices():
        if G.order > 12:
            continue
        for A in subs:
            SA = build_truncated(universal_chain(G, A)).scale
            for B in subs:
                SB = build_truncated(universal_chain(G, B)).scale
                v = scale_verdicts(SA, SB)
                if v["disjoint"] != disjoint_action(_coset(G, A), _coset(G, B)).disjoint:
                    return _fail(f"scale disjointness disagrees for {A!r}, {B!r}")
                if v["no_common_factor"] != no_common_factor_finite(A, B).no_common_factor:
                    return _fail(f"scale common-factor verdict disagrees for {A!r}, {B!r}")
                pairs += 1
    return CheckResult(True, f"bonding maps coherent; {stages} universal stages; "
                             f"{pairs} scale-generated verdict pairs agree", {"pairs": pairs})


def universal_chain(G, A):
    """A small scale generating ``G/A``: ``A`` together with ``G``."""
    return make_scale(G, [gr.whole(G), A])


def check_universal_probe(ws: Workspace) -> CheckResult:
    count = 0
    for G, D, X in corpus_actions():
        report = universally_disjoint_probe(X)
        count += 1
        if report.universally_disjoint != (X.points == 1):
            return _fail(f"{G!r}/{D!r}: universally disjoint={report.universally_disjoint}")
    X = ws.action("z4-regular")
    obstructing = [N.order for N in universally_disjoint_probe(X).obstructing_odometers]
    if 2 not in obstructing:
        return _fail("Z4 regular action should be obstructed by the index-2 odometer")
    return CheckResult(True, f"{count} actions: factor list and odometer obstructions agree")


CHECKS: tuple[Check, ...] = (
    Check("perm:composition-convention", "with r=(1234), s=(12)(34) the product rs is (13)", check_convention),
    Check("example:disjointness:s3-conjugate-subgroups",
          "<(12)> and <(13)> in S3 generate S3 yet the coset actions are conjugate; "
          "every conjugate must be tested", check_example_s3),
    Check("example:disjointness:d4-no-common-factor",
          "<s> and <rs> in D4: product set of size 4, not disjoint, no nontrivial common factor",
          check_example_d4),
    Check("example:three-point-non-odometers",
          "S3/<(12)> and its free-group lift are 3-point subodometers that are not odometers",
          check_example_three_points),
    Check("disjointness:product-set-oracle", "G/A and G/B are disjoint iff AB = G", check_product_oracle),
    Check("disjointness:join-oracle",
          "no nontrivial common factor iff <A^g u B> = G for every g", check_join_oracle),
    Check("disjointness:normal-case",
          "with a normal member, disjointness and absence of common factors coincide", check_normal_case),
    Check("disjointness:factor-pairs",
          "X and Y are disjoint iff all pairs of finite factors are disjoint", check_factor_pairs),
    Check("disjointness:universal-probe",
          "no nontrivial finite factor iff disjoint from every finite odometer", check_universal_probe),
    Check("hyperspace:small-actions", "every quasifactor of a minimal action on at most 3 points is a factor",
          check_small_quasifactors),
    Check("hyperspace:construction-stabilizer",
          "for g outside Gamma and [Gamma:Lambda] >= 3 the constructed subset has stabilizer Gamma n Lambda^g",
          check_construction_law),
    Check("settled:pipeline",
          "settle() yields settled eigenvalues; odometer iff every settled eigenvalue is normal",
          check_settling),
    Check("odometer:criteria", "normal base iff Eig intersection-closed iff Eig core-stable",
          check_odometer_criteria),
    Check("measures:mu-gamma-and-embedding",
          "mu_Gamma has stabilizer Gamma; subsets embed equivariantly and injectively as measures",
          check_measures),
    Check("tiles:subgroup-bijection", "tiles at x correspond to subgroups between G_0(x) and G", check_tiles),
    Check("scale:coherence-and-generation",
          "bonding maps commute; verdicts from generating scales match direct verdicts", check_scales),
)


def run_checks(ws: Workspace, name_filter: str | None = None) -> list[tuple[Check, CheckResult]]:
    out = []
    for check in CHECKS:
        if name_filter and name_filter not in check.name:
            continue
        try:
            result = check.run(ws)
        except OdolabError as exc:
            result = CheckResult(False, f"{type(exc).__name__}: {exc}")
        out.append((check, result))
    return out
