from itertools import product

import pytest

from odolab import corpus
from odolab import groups as gr
from odolab.actions import coset_action
from odolab.disjointness import (
    common_factor_search,
    disjoint_action,
    disjoint_finite,
    no_common_factor_finite,
    universally_disjoint_probe,
)
from odolab.errors import AmbientMismatch
from odolab.perm import compose, parse_cycles


def cosets(G, H):
    return {frozenset(compose(g, h) for h in H.elements) for g in G.elements}


def product_transitive(G, A, B):
    """Orbit of (A, B) on pairs of cosets, by left multiplication."""
    start = (A.element_set, B.element_set)
    orbit = {(frozenset(compose(g, a) for a in start[0]), frozenset(compose(g, b) for b in start[1]))
             for g in G.elements}
    return len(orbit) == len(cosets(G, A)) * len(cosets(G, B))


def common_factor_oracle(G, A, B):
    """A proper subgroup above a conjugate of each."""
    for D in gr.all_subgroups(G):
        if D.order == G.order:
            continue
        if any(gr.conjugate_elements(A, g) <= D.element_set for g in G.elements) and \
                any(gr.conjugate_elements(B, g) <= D.element_set for g in G.elements):
            return True
    return False


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "Z12"])
def test_criteria_against_oracles(name):
    G = corpus.group(name)
    subs = gr.all_subgroups(G)
    for A, B in product(subs, repeat=2):
        v = disjoint_finite(A, B)
        assert v.disjoint == product_transitive(G, A, B)
        assert v.oracle_agreed
        c = no_common_factor_finite(A, B)
        assert c.no_common_factor == (not common_factor_oracle(G, A, B))


def test_s3_example(S3):
    a = gr.subgroup(S3, [parse_cycles("(12)", 3)])
    b = gr.subgroup(S3, [parse_cycles("(13)", 3)])
    assert gr.join_is_full(a, b)
    v = no_common_factor_finite(a, b)
    assert not v.no_common_factor
    assert str(v.witness_g) == "(23)"
    assert v.common_overgroup.describe() == ["(13)"]


def test_d4_example(ws):
    s, rs = ws.subgroup("d4-s"), ws.subgroup("d4-rs")
    v = disjoint_finite(s, rs)
    assert not v.disjoint and v.criterion_trace["product_set_size"] == 4
    c = no_common_factor_finite(s, rs)
    assert c.no_common_factor and c.joins_checked == 4


def test_normal_member_reduces_to_product(S4):
    for A in gr.all_subgroups(S4):
        for N in gr.normal_subgroups(S4):
            assert disjoint_finite(A, N).disjoint == no_common_factor_finite(A, N).no_common_factor


def test_action_level_and_search(ws):
    X, Y = ws.action("s3-mod-12"), ws.action("s3-mod-13")
    # conjugate copies of one 3-point action
    assert not disjoint_action(X, Y).disjoint
    found = common_factor_search(X, Y)
    assert found.subgroup.order == 2 and found.action.points == 3
    # G/<(12)> and G/A3 are disjoint: |<(12)> A3| = 6
    assert disjoint_action(X, ws.action("s3-123")).disjoint
    assert common_factor_search(ws.action("d4-s"), ws.action("d4-rs")) is None


def test_whole_group_pair(S3):
    # G/G is a point: trivially disjoint, and only the trivial common factor
    G = gr.whole(S3)
    assert disjoint_finite(G, G).disjoint
    assert no_common_factor_finite(G, G).no_common_factor


def test_mismatched_groups(S3, D4):
    with pytest.raises(AmbientMismatch):
        disjoint_finite(gr.whole(S3), gr.whole(D4))


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_universal_probe(name):
    G = corpus.group(name)
    for D in gr.all_subgroups(G):
        rep = universally_disjoint_probe(coset_action(G, D))
        assert rep.consistent
        assert rep.universally_disjoint == (D.order == G.order)


def test_oracle_cap_env(monkeypatch, S3):
    a = gr.subgroup(S3, [parse_cycles("(12)", 3)])
    monkeypatch.setenv("ODOLAB_ORACLE_CAP", "4")
    assert disjoint_finite(a, a).oracle_agreed is None
    monkeypatch.setenv("ODOLAB_ORACLE_CAP", "48")
    assert disjoint_finite(a, a).oracle_agreed is True
