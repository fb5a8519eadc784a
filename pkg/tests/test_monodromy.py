import pytest

from trisectkit import perm
from trisectkit.monodromy import (
    BranchDatum, CellComplex, CellComplexCover, CoveringError, CoveringSpec, SectorPiece,
    base_vertex_monodromy, branch_data, build_cell_cover, close_up_branch_point, hopf_constraint,
    is_transitive, marked_surface_complex, oracle_euler, oracle_sector_euler, piece_deficiency,
    riemann_hurwitz_surface, sector_components, sector_cover_euler, surface_cover,
)

from sweeps import exhaustive_cases, formula_and_oracle, random_cases, transpositions


def T(n, i, j):
    return perm.transposition(n, i - 1, j - 1)


def test_is_transitive_examples():
    assert is_transitive(CoveringSpec(3, {"x": T(3, 1, 2), "y": T(3, 2, 3)}))
    assert not is_transitive(CoveringSpec(3, {"x": T(3, 1, 2)}))
    assert is_transitive(CoveringSpec(2, {"x": T(2, 1, 2)}))


def test_spec_requires_transpositions():
    with pytest.raises(CoveringError):
        CoveringSpec(3, {"x": (1, 2, 0)})
    with pytest.raises(CoveringError):
        CoveringSpec(3, {"x": (1, 0)})


def test_spec_json_round_trip():
    spec = CoveringSpec(3, {"x": T(3, 1, 2), "y": T(3, 2, 3)})
    data = spec.to_json()
    assert data == {"degree": 3, "meridians": {"x": [[1, 2]], "y": [[2, 3]]}}
    assert CoveringSpec.from_json(data) == spec
    assert CoveringSpec.from_json({"degree": 3, "meridians": {"x": [1, 2]}}).image("x") == T(3, 1, 2)
    with pytest.raises(CoveringError):
        CoveringSpec.from_json({"meridians": {}})


def test_hopf_constraint():
    assert hopf_constraint(T(4, 1, 2), T(4, 3, 4))
    assert hopf_constraint(T(4, 1, 2), T(4, 1, 2))
    assert not hopf_constraint(T(4, 1, 2), T(4, 2, 3))


def test_riemann_hurwitz_examples():
    simple = BranchDatum("p", (2,))
    assert riemann_hurwitz_surface(2, 2, [simple, simple]) == 2
    assert riemann_hurwitz_surface(2, 0, [simple, simple]) == -2
    assert riemann_hurwitz_surface(2, 0, [simple] * 4) == riemann_hurwitz_surface(2, 0, [simple] * 2) - 2
    with pytest.raises(CoveringError):
        riemann_hurwitz_surface(3, 2, [BranchDatum("p", (2,))])


def test_trivial_cover_preserves_chi():
    for g, k in [(0, 0), (1, 0), (2, 3)]:
        cc = marked_surface_complex(g, k)
        cc.validate()
        assert oracle_euler(CellComplexCover(cc, 1, {})) == cc.euler_characteristic() == 2 - 2 * g + 0


def test_square_torus_double_cover():
    # torus with two marked points, monodromy (12) on the first loop and on both spokes
    t = T(2, 1, 2)
    cover = surface_cover(2, [t], [perm.identity(2)], [t, t])
    assert base_vertex_monodromy(2, [t], [perm.identity(2)], [t, t]) == perm.identity(2)
    up = build_cell_cover(cover)
    assert up.euler_characteristic == -2
    assert up.components == 1
    assert sorted(b.cycle_lengths for b in branch_data(cover)) == [(2,), (2,)]


def test_disconnected_cover_has_two_components():
    cover = surface_cover(2, [perm.identity(2)], [perm.identity(2)], [])
    up = build_cell_cover(cover)
    assert up.components == 2
    assert up.euler_characteristic == 0


def test_non_surface_vertex_rejected():
    # two spheres wedged at one vertex: the link of that vertex is two circles
    cc = CellComplex(1, ((0, 0), (0, 0)), (((0, 1),), ((0, -1),), ((1, 1),), ((1, -1),)))
    with pytest.raises(CoveringError, match="not a surface point"):
        build_cell_cover(CellComplexCover(cc, 2, {}))


def test_loop_bounding_on_both_sides_is_unbranched():
    # a sphere cut along one loop: the rotation at the vertex crosses the loop both
    # ways, so a swap on the loop only relabels sheets and the cover is two spheres
    cc = CellComplex(1, ((0, 0),), (((0, 1),), ((0, -1),)))
    up = build_cell_cover(CellComplexCover(cc, 2, {0: T(2, 1, 2)}))
    assert up.local_monodromy[0] == perm.identity(2)
    assert up.components == 2
    assert up.euler_characteristic == 4


def test_close_up_branch_point():
    a, b = [T(3, 1, 2)], [T(3, 2, 3)]
    pts = [T(3, 1, 3)]
    last = close_up_branch_point(3, a, b, pts)
    assert base_vertex_monodromy(3, a, b, pts + [last]) == perm.identity(3)


def test_exhaustive_small_sweep():
    count = 0
    for case in exhaustive_cases():
        formula, oracle, comps, orbits = formula_and_oracle(case)
        assert formula == oracle, case
        assert comps == orbits, case
        count += 1
    assert count > 1000


def test_random_sweep(rng):
    for case in random_cases(rng, 1500):
        formula, oracle, comps, orbits = formula_and_oracle(case)
        assert formula == oracle, case
        assert comps == orbits, case


def test_each_simple_point_lowers_chi_by_one(rng):
    n = 3
    for _ in range(50):
        pts = [rng.choice(transpositions(n)) for _ in range(4)]
        with_pt = riemann_hurwitz_surface(n, 2, [BranchDatum.from_perm("p", p) for p in pts])
        without = riemann_hurwitz_surface(n, 2, [BranchDatum.from_perm("p", p) for p in pts[:-1]])
        assert without - with_pt == 1


# --- sectors ---------------------------------------------------------------------------------


def unknot(*images):
    return SectorPiece("unknot", (images,))


def test_sector_identity_cover():
    assert sector_cover_euler(1, [unknot((0,))]) == 1
    assert oracle_sector_euler(1, [unknot((0,))]) == 1
    assert sector_cover_euler(1, []) == 1


def test_sector_trivial_disk_double_cover():
    t = T(2, 1, 2)
    assert sector_cover_euler(2, [unknot(t, t)]) == 1
    assert oracle_sector_euler(2, [unknot(t, t)]) == 1


def test_node_bookkeeping_is_oracle_decided():
    same = SectorPiece("hopf", ((T(2, 1, 2),), (T(2, 1, 2),)))
    assert piece_deficiency(2, same) == 1
    assert sector_cover_euler(2, [same]) == oracle_sector_euler(2, [same]) == 1
    distinct = SectorPiece("hopf", ((T(4, 1, 2),), (T(4, 3, 4),)))
    assert piece_deficiency(4, distinct) == 2
    assert sector_cover_euler(4, [distinct]) == oracle_sector_euler(4, [distinct]) == 2


def test_cusp_cone_three_fold():
    cusp = SectorPiece("trefoil", ((T(3, 1, 2), T(3, 2, 3)),))
    assert piece_deficiency(3, cusp) == 2
    assert sector_cover_euler(3, [cusp]) == oracle_sector_euler(3, [cusp]) == 1


def test_sector_formula_matches_oracle(rng):
    for _ in range(400):
        n = rng.randint(1, 4)
        tr = transpositions(n) if n > 1 else [(0,)]
        pieces = []
        for _ in range(rng.randint(0, 4)):
            kind = rng.choice(["unknot", "hopf", "trefoil"])
            ndisks = 2 if kind == "hopf" else 1
            disks = tuple(tuple(rng.choice(tr) for _ in range(rng.randint(1, 3))) for _ in range(ndisks))
            pieces.append(SectorPiece(kind, disks))
        assert sector_cover_euler(n, pieces) == oracle_sector_euler(n, pieces)


def test_adding_a_trivial_disk_adds_a_handle():
    t = T(2, 1, 2)
    before = [unknot(t, t)]
    after = before + [unknot(t, t)]
    assert sector_components(2, after) == 1
    assert (1 - sector_cover_euler(2, after)) - (1 - sector_cover_euler(2, before)) == 1


def test_piece_validation():
    with pytest.raises(CoveringError):
        SectorPiece("hopf", (((1, 0),),))
    with pytest.raises(CoveringError):
        SectorPiece("knot", (((1, 0),),))
