import pytest
from hypothesis import given, strategies as st

from trisectkit import perm
from trisectkit.monodromy import CoveringError, CoveringSpec
from trisectkit.torus_diagram import (
    TorusDiagram, build_from_factorization, corpus_factorizations, finger_perturbation, two_point_diagram,
)
from trisectkit.trisection import (
    CP2, S4, RelativeTrisectionParams, TrisectionError, TrisectionParams, all_params, balanced_stabilize,
    block_spec, connected_sum, euler_characteristic, next_sector, pullback_cp2, pullback_report, stabilize,
    unbalanced_sphere,
)

SWAP = perm.transposition(2, 0, 1)


@st.composite
def params(draw, max_g=6):
    g = draw(st.integers(0, max_g))
    k = tuple(draw(st.integers(0, g)) for _ in range(3))
    return TrisectionParams(g, k)


def test_euler_characteristic_examples():
    assert euler_characteristic(S4) == 2
    assert euler_characteristic(TrisectionParams(1, (1, 0, 0))) == 2
    assert euler_characteristic(CP2) == 3


def test_params_validation_and_rendering():
    with pytest.raises(TrisectionError):
        TrisectionParams(1, (2, 0, 0))
    with pytest.raises(TrisectionError):
        TrisectionParams(1, (0, 0))
    assert str(TrisectionParams(2, (0, 1, 0))) == "(2; 0,1,0)"
    t = TrisectionParams(3, (1, 2, 3))
    assert TrisectionParams.from_json(t.to_json()) == t


def test_connected_sum_examples():
    assert connected_sum(TrisectionParams(1, (1, 0, 0)), S4) == TrisectionParams(1, (1, 0, 0))
    assert connected_sum(CP2, CP2) == TrisectionParams(2, (0, 0, 0))


def test_stabilize_examples():
    assert stabilize(CP2, 2) == TrisectionParams(2, (0, 1, 0))
    assert balanced_stabilize(CP2) == TrisectionParams(4, (1, 1, 1))
    assert unbalanced_sphere(3) == TrisectionParams(1, (0, 0, 1))
    assert next_sector(3) == 1 and next_sector(1) == 2
    with pytest.raises(TrisectionError):
        stabilize(CP2, 4)


@given(params(), params())
def test_connected_sum_euler(a, b):
    assert euler_characteristic(connected_sum(a, b)) == euler_characteristic(a) + euler_characteristic(b) - 2


@given(params(), st.sampled_from([1, 2, 3]), st.sampled_from([1, 2, 3]))
def test_stabilizations_commute_and_preserve_chi(t, a, b):
    assert euler_characteristic(stabilize(t, a)) == euler_characteristic(t)
    assert stabilize(stabilize(t, a), b) == stabilize(stabilize(t, b), a)


def test_all_params_count():
    assert len(all_params(2)) == 1 + 8 + 27


def test_relative_params():
    r = RelativeTrisectionParams(2, (1, 0, 0), 1, 2)
    assert str(r) == "(2,1,0,0;1,2)"
    with pytest.raises(TrisectionError):
        RelativeTrisectionParams(1, (0, 0, 0), 2, 1)
    with pytest.raises(TrisectionError):
        RelativeTrisectionParams(1, (0, 0, 0), 0, 0)


# --- pullback -------------------------------------------------------------------------------


def test_identity_cover_of_empty_diagram():
    assert pullback_cp2(TorusDiagram((), (), (), ()), CoveringSpec(1, {})) == CP2


def test_double_cover_of_two_point_diagram():
    report = pullback_report(two_point_diagram(), CoveringSpec(2, {"x": SWAP, "y": SWAP}))
    assert report.surface_euler == -2
    assert report.params == TrisectionParams(2, (0, 0, 0))
    assert report.oracle_agrees
    assert report.euler_characteristic == 4


def test_pullback_of_finger_perturbation_is_stabilization():
    d = two_point_diagram()
    spec = CoveringSpec(2, {"x": SWAP, "y": SWAP})
    before = pullback_cp2(d, spec)
    for b in (0, 1):
        for lam in (1, 2, 3):
            after = pullback_cp2(finger_perturbation(d, b, lam), spec)
            assert after == stabilize(before, next_sector(lam))


def test_non_transitive_spec_rejected():
    d = build_from_factorization(corpus_factorizations()[0])
    with pytest.raises(CoveringError, match="cover disconnected"):
        pullback_cp2(d, block_spec(d, 3))


def test_missing_meridian_rejected():
    with pytest.raises(CoveringError):
        pullback_cp2(two_point_diagram(), CoveringSpec(2, {"x": SWAP}))


def test_block_spec_values():
    d = build_from_factorization(corpus_factorizations()[3])
    spec = block_spec(d, 3)
    assert set(spec.meridian_images.values()) == {perm.transposition(3, 0, 1), perm.transposition(3, 1, 2)}
    with pytest.raises(CoveringError):
        block_spec(d, 5)


def test_corpus_pullbacks_satisfy_genus_bound():
    # frozen values, cross-checked cell by cell against the oracle
    expected = {
        (0, 2): TrisectionParams(3, (0, 0, 0)),
        (1, 2): TrisectionParams(5, (1, 3, 1)),
        (1, 3): TrisectionParams(5, (0, 2, 0)),
        (3, 3): TrisectionParams(5, (0, 2, 0)),
        (4, 3): TrisectionParams(6, (0, 3, 0)),
    }
    fs = corpus_factorizations()
    for (i, n), want in expected.items():
        d = build_from_factorization(fs[i])
        report = pullback_report(d, block_spec(d, n))
        assert report.params == want
        assert report.oracle_agrees
        assert report.params.g >= max(report.params.k)
