import pytest

from odolab import corpus
from odolab import groups as gr
from odolab.errors import NotAScale, OracleDisagreement
from odolab.perm import parse_cycles
from odolab.scales import (
    build_truncated,
    eigenhull_contains,
    make_scale,
    odometer_criteria,
    scale_verdicts,
    universal_odometer_stage,
)
from odolab.disjointness import disjoint_finite, no_common_factor_finite


def test_rotation_chain(ws, D4):
    sc = ws.scales["d4-rotation-chain"]
    T = build_truncated(sc)
    assert T.limit.points == 4
    assert T.bonding_maps[(0, 1)] == (0, 1, 1, 0)
    rows = T.settled_members()
    assert all(r["label"] == "relative to stage 2" for r in rows)


def test_not_directed(D4):
    a = gr.subgroup(D4, [parse_cycles("(12)(34)", 4)])
    b = gr.subgroup(D4, [parse_cycles("(13)", 4)])
    with pytest.raises(NotAScale) as exc:
        make_scale(D4, [a, b])
    assert exc.value.pair == (0, 1)


def test_eigenhull(D4):
    sc = make_scale(D4, [gr.subgroup(D4, [parse_cycles("(12)(34)", 4)])])
    conj = gr.subgroup(D4, [parse_cycles("(14)(23)", 4)])
    assert eigenhull_contains(sc, conj)
    assert not eigenhull_contains(sc, gr.subgroup(D4, [parse_cycles("(13)", 4)]))


@pytest.mark.parametrize("name", corpus.CORPUS)
def test_odometer_criteria_agree(name):
    G = corpus.group(name)
    for D in gr.all_subgroups(G):
        rep = odometer_criteria(G, D)
        assert rep["agree"] and rep["normal"] == gr.is_normal(G, D)


def test_odometer_criteria_s3_all_false(S3):
    rep = odometer_criteria(S3, gr.subgroup(S3, [parse_cycles("(12)", 3)]))
    assert not (rep["normal"] or rep["intersection_closed"] or rep["core_stable"])


def test_universal_stage_s3(S3):
    sc = universal_odometer_stage(S3, 6)
    assert sorted(M.order for M in sc.members) == [1, 3, 6]


def test_single_member_scales_match_finite_verdicts(S3):
    subs = gr.all_subgroups(S3)
    for A in subs:
        for B in subs:
            v = scale_verdicts(make_scale(S3, [A]), make_scale(S3, [B]))
            assert v["disjoint"] == disjoint_finite(A, B).disjoint
            assert v["no_common_factor"] == no_common_factor_finite(A, B).no_common_factor
