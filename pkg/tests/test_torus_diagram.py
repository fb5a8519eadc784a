from fractions import Fraction as F

import pytest

from trisectkit.braid import BraidWord, Factorization
from trisectkit.torus_diagram import (
    FORMS, Arc, BridgePoint, ClearanceError, DiagramError, TorusDiagram, alpha2_crossings,
    build_from_factorization, check_geometric_transversality, corpus_factorizations, dumps,
    finger_perturbation, from_json, iter_bridge_sector_choices, render_svg, statistics, to_json,
    two_point_diagram, validate,
)

EMPTY = TorusDiagram((), (), (), ())


def one_factor(k, conjugator=(), n=2):
    f = Factorization(n, 2, ((BraidWord(n, conjugator), k),))
    return build_from_factorization(f, require_full_twist=False)


def single_arc(label, path):
    pts = (BridgePoint(F(0), F(0), -1, "m"), BridgePoint(path[-1][0] % 1, path[-1][1] % 1, 1, "m"))
    return TorusDiagram(pts, (Arc(label, 0, 1, tuple(path)),), (), ())


def test_foliation_forms_sum_to_zero():
    assert FORMS[1] == (0, 1) and FORMS[2] == (-1, 0) and FORMS[3] == (1, -1)
    assert tuple(sum(f[i] for f in FORMS.values()) for i in (0, 1)) == (0, 0)


def test_empty_factorization_gives_empty_diagram():
    d = build_from_factorization(Factorization(2, 2, ()))
    assert d == EMPTY


def test_exponent_sum_required_by_default():
    with pytest.raises(DiagramError):
        build_from_factorization(Factorization(2, 2, ((BraidWord(2), 1),)))


@pytest.mark.parametrize("k", [1, 2, -2, 3])
def test_one_block_has_four_points(k):
    d = one_factor(k)
    assert len(d.bridge_points) == 4
    assert validate(d) == []
    assert check_geometric_transversality(d).passed
    for _, arc in d.arcs_with_label(2):
        assert alpha2_crossings(arc) == 1


def test_block_statistics_per_exponent():
    # frozen from the block templates
    links = {k: statistics(one_factor(k))["links"] for k in (1, 2, -2, 3)}
    for k in (1, 2, -2, 3):
        assert statistics(one_factor(k))["components"] == [1, 2, 1]
        assert links[k][0] == {"unknot": 1, "hopf": 0, "trefoil": 0}
    assert links[1][1] == {"unknot": 2, "hopf": 0, "trefoil": 0}
    assert links[2][1] == links[-2][1] == {"unknot": 0, "hopf": 1, "trefoil": 0}
    assert links[3][2] == {"unknot": 0, "hopf": 0, "trefoil": 1}


def test_conjugated_factor_adds_a_mini_stabilization():
    d = one_factor(1, conjugator=(2,), n=3)
    assert len(d.bridge_points) == 6
    assert validate(d) == []
    assert check_geometric_transversality(d).passed


def test_transversality_examples():
    assert check_geometric_transversality(single_arc("A", [(F(0), F(0)), (F(0), F(3, 10))])).passed
    flat = single_arc("A", [(F(0), F(0)), (F(3, 10), F(0))])
    report = check_geometric_transversality(flat)
    assert not report.passed and len(report.violations) == 1
    assert check_geometric_transversality(single_arc("B", [(F(0), F(0)), (F(-1, 4), F(1, 7))])).passed
    assert not check_geometric_transversality(single_arc("C", [(F(0), F(0)), (F(1, 4), F(1, 3))])).passed


def test_validate_catches_problems():
    d = two_point_diagram()
    bad_sign = TorusDiagram((d.bridge_points[0], BridgePoint(F(7, 8), F(3, 4), -1, "y")), d.arcs, (), ())
    assert validate(bad_sign)
    missing = TorusDiagram(d.bridge_points, d.arcs[:2], (), ())
    assert validate(missing)
    moved = Arc("A", 0, 1, ((F(1, 8), F(1, 4)), (F(7, 8), F(1, 2))))
    assert validate(TorusDiagram(d.bridge_points, (moved,) + d.arcs[1:], (), ()))


def test_same_label_arcs_must_be_disjoint():
    pts = (BridgePoint(F(1, 8), F(1, 8), -1, "a"), BridgePoint(F(7, 8), F(7, 8), 1, "a"),
           BridgePoint(F(7, 8), F(1, 8), -1, "b"), BridgePoint(F(1, 8), F(7, 8), 1, "b"))
    arcs = (Arc("A", 0, 1, ((F(1, 8), F(1, 8)), (F(7, 8), F(7, 8)))),
            Arc("A", 2, 3, ((F(7, 8), F(1, 8)), (F(1, 8), F(7, 8)))))
    problems = validate(TorusDiagram(pts, arcs, (), ()))
    assert any("A" in p for p in problems)


def test_corpus_diagrams_are_valid_and_transverse():
    for f in corpus_factorizations():
        d = build_from_factorization(f)
        assert validate(d) == []
        assert check_geometric_transversality(d).passed
        assert statistics(d)["sign_sum"] == 0
        for b in range(len(d.bridge_points)):
            for lam in (1, 2, 3):
                d.incident_arc(b, lam)  # exactly one arc per label


def test_finger_perturbation_on_one_block():
    d = one_factor(1)
    for b, lam in iter_bridge_sector_choices(d):
        e = finger_perturbation(d, b, lam)
        assert len(e.bridge_points) == 6
        new = e.bridge_points[4:]
        assert sorted(p.sign for p in new) == [-1, 1]
        assert statistics(e)["sign_sum"] == 0
        assert validate(e) == []
        assert check_geometric_transversality(e).passed
        before, after = statistics(d), statistics(e)
        assert after["bridge_index"] == before["bridge_index"] + 1
        up = lam % 3
        for s in range(3):
            assert after["components"][s] - before["components"][s] == (1 if s == up else 0)


def test_repeated_perturbations_stay_valid(rng):
    d = two_point_diagram()
    for _ in range(6):
        b = rng.randrange(len(d.bridge_points))
        d = finger_perturbation(d, b, rng.choice([1, 2, 3]))
        assert validate(d) == []
        assert check_geometric_transversality(d).passed


def test_perturbation_clearance():
    d = two_point_diagram()
    with pytest.raises(ClearanceError):
        finger_perturbation(d, 0, 1, eps=F(1, 2))
    small = finger_perturbation(d, 0, 1, eps=F(1, 1000))
    assert validate(small) == []
    with pytest.raises(DiagramError):
        finger_perturbation(d, 7, 1)


def test_statistics_of_empty_diagram():
    s = statistics(EMPTY)
    assert s["bridge_points"] == s["bridge_index"] == s["sign_sum"] == 0
    assert s["components"] == [0, 0, 0]


def test_json_round_trip():
    d = finger_perturbation(one_factor(3), 1, 2)
    data = to_json(d)
    assert from_json(data) == d
    assert all("/" in c or c.lstrip("-").isdigit() for b in data["bridge_points"] for c in (b["x"], b["y"]))
    assert dumps(from_json(data)) == dumps(d)
    with pytest.raises(DiagramError):
        from_json({"bridge_points": [{"x": 0.5, "y": "0", "sign": 1}]})


def test_render_svg():
    empty = render_svg(EMPTY)
    assert "<rect" in empty and "<line" not in empty and "<circle" not in empty
    d = one_factor(1)
    svg = render_svg(d)
    assert svg.count("<line") >= 12
    assert svg.count('<circle class="bridge"') == 4
    assert render_svg(one_factor(1)) == svg
