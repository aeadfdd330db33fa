from fractions import Fraction

import pytest

from dynwg.rep import (
    DimensionCapError,
    RepError,
    build_irrep,
    check_chevalley_serre,
    dominant_weights_up_to_dim,
    freudenthal_multiplicity,
    irrep_from_json,
    irrep_to_json,
    sl2_strings,
    weyl_dimension,
)
from dynwg.rootdata import LieType, Weight, weyl_orbit

A1 = LieType.parse("A1")
A2 = LieType.parse("A2")
B2 = LieType.parse("B2")
G2 = LieType.parse("G2")

F = Fraction


# ---------------------------------------------------------------------------
# oracles


def test_weyl_dimension_sl2():
    for n in range(9):
        assert weyl_dimension(A1, Weight((n,))) == n + 1


def test_weyl_dimension_known_values():
    assert weyl_dimension(B2, Weight((1, 0))) == 5
    assert weyl_dimension(B2, Weight((0, 1))) == 4
    assert weyl_dimension(G2, Weight((0, 1))) == 7  # pins the Bourbaki labeling
    assert weyl_dimension(G2, Weight((1, 0))) == 14
    assert weyl_dimension(A2, Weight((1, 1))) == 8
    with pytest.raises(RepError):
        weyl_dimension(A2, Weight((-1, 0)))


def test_freudenthal_known_values():
    assert freudenthal_multiplicity(A2, Weight((1, 1)), Weight((0, 0))) == 2
    assert freudenthal_multiplicity(A2, Weight((1, 1)), Weight((1, 1))) == 1
    assert freudenthal_multiplicity(A2, Weight((1, 1)), Weight((5, 5))) == 0
    # sl2: V(4) has each of 4,2,0,-2,-4 once
    for mu in (-4, -2, 0, 2, 4):
        assert freudenthal_multiplicity(A1, Weight((4,)), Weight((mu,))) == 1
    assert freudenthal_multiplicity(A1, Weight((4,)), Weight((3,))) == 0
    # G2 adjoint: zero weight has multiplicity 2
    assert freudenthal_multiplicity(G2, Weight((1, 0)), Weight((0, 0))) == 2


def test_freudenthal_sums_to_dimension():
    for t, hw in ((A2, Weight((2, 1))), (B2, Weight((1, 1))), (G2, Weight((0, 2)))):
        total = 0
        seen = set()
        # sum multiplicities over the full weight system by walking orbits
        V = build_irrep(t, hw)
        for nu in V.weights():
            if nu in seen:
                continue
            orbit = weyl_orbit(t, nu)
            seen |= orbit
            total += len(orbit) * freudenthal_multiplicity(t, hw, nu)
        assert total == weyl_dimension(t, hw)


# ---------------------------------------------------------------------------
# construction


def test_sl2_adjoint():
    V = build_irrep(A1, Weight((2,)))
    assert V.dim == 3
    assert sorted(w.coords for w in V.weights()) == [(-2,), (0,), (2,)]
    assert all(V.weight_dim(w) == 1 for w in V.weights())


def test_a2_adjoint_and_standard():
    V = build_irrep(A2, Weight((1, 1)))
    assert V.dim == 8
    assert V.weight_dim(Weight((0, 0))) == 2
    V3 = build_irrep(A2, Weight((1, 0)))
    assert [w.coords for w in V3.weights()] == [(1, 0), (-1, 1), (0, -1)]


def test_multiplicities_match_oracle():
    for t, hw in ((B2, Weight((1, 1))), (G2, Weight((0, 1)))):
        V = build_irrep(t, hw)
        assert V.dim == weyl_dimension(t, hw)
        for nu in V.weights():
            assert V.weight_dim(nu) == freudenthal_multiplicity(t, hw, nu)


def test_weight_multiset_weyl_invariant():
    V = build_irrep(B2, Weight((1, 1)))
    for nu in V.weights():
        for img in weyl_orbit(B2, nu):
            assert V.weight_dim(img) == V.weight_dim(nu)


def test_chevalley_serre_relations():
    for t, hw in ((A2, Weight((1, 1))), (B2, Weight((0, 1))), (G2, Weight((0, 1)))):
        assert check_chevalley_serre(build_irrep(t, hw)) == []


def test_apply_generator():
    V = build_irrep(A2, Weight((1, 1)))
    v = V.highest_weight_vector()
    assert V.apply_generator("h", 1, v) == v  # eigenvalue <hw, coroot_1> = 1
    assert not any(V.apply_generator("e", 1, v))
    w12 = V.apply_generator("f", 1, V.apply_generator("f", 2, v))
    w21 = V.apply_generator("f", 2, V.apply_generator("f", 1, v))
    # f1 f2 v and f2 f1 v are independent vectors of weight zero
    assert any(w12) and any(w21)
    assert any(w12[i] * w21[j] != w12[j] * w21[i] for i in range(V.dim) for j in range(V.dim))
    with pytest.raises(RepError):
        V.apply_generator("e", 1, [F(0)] * (V.dim + 1))


def test_errors():
    with pytest.raises(RepError):
        build_irrep(A2, Weight((-1, 0)))
    with pytest.raises(DimensionCapError):
        build_irrep(A2, Weight((9, 9)), dim_cap=100)


# ---------------------------------------------------------------------------
# sl(2)-strings


def test_strings_sl2_adjoint():
    V = build_irrep(A1, Weight((2,)))
    dec = sl2_strings(V, 1, Weight((0,)))
    assert [(c.m, c.k) for c in dec.components] == [(2, 1)]


def test_strings_a2():
    V = build_irrep(A2, Weight((1, 1)))
    dec = sl2_strings(V, 1, Weight((0, 0)))
    assert sorted((c.m, c.k) for c in dec.components) == [(0, 0), (2, 1)]
    V3 = build_irrep(A2, Weight((1, 0)))
    dec3 = sl2_strings(V3, 1, Weight((1, 0)))
    assert [(c.m, c.k) for c in dec3.components] == [(1, 0)]
    with pytest.raises(RepError):
        sl2_strings(V3, 1, Weight((5, 5)))


def test_strings_fill_weight_space():
    V = build_irrep(G2, Weight((0, 1)))
    for i in (1, 2):
        for nu in V.weights():
            dec = sl2_strings(V, i, nu)
            assert sum(len(c.primitives) for c in dec.components) == V.weight_dim(nu)


def test_string_primitives_killed_by_e():
    from dynwg import linalg
    from dynwg.rep import weight_add
    from dynwg.rootdata import simple_root

    V = build_irrep(B2, Weight((1, 1)))
    nu = Weight((-1, 1))
    for i in (1, 2):
        dec = sl2_strings(V, i, nu)
        w = nu
        alpha = simple_root(B2, i)
        by_k = {c.k: c for c in dec.components}
        for k in range(max(by_k) + 1):
            if k in by_k:
                blk = V.e_block(i, w)
                for u in by_k[k].primitives:
                    assert not any(linalg.mat_vec(blk, u))
            w = weight_add(w, alpha)


# ---------------------------------------------------------------------------
# cache


def test_cache_round_trip(tmp_path):
    cache = str(tmp_path)
    V = build_irrep(A2, Weight((1, 1)), cache_dir=cache)
    W = build_irrep(A2, Weight((1, 1)), cache_dir=cache)  # loads from disk
    assert W.dim == V.dim and W.basis == V.basis
    assert W.e_blocks == V.e_blocks and W.f_blocks == V.f_blocks
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1


def test_cache_json_schema():
    V = build_irrep(A2, Weight((1, 0)))
    obj = irrep_to_json(V)
    assert obj["type"] == "A2" and obj["dim"] == 3
    assert set(obj["generators"]) == {"e", "f"}
    W = irrep_from_json(obj)
    assert W.basis == V.basis


def test_cache_rejects_corrupt_entry():
    V = build_irrep(A2, Weight((1, 0)))
    obj = irrep_to_json(V)
    obj["dim"] = 99
    with pytest.raises(RepError):
        irrep_from_json(obj)


def test_dominant_weight_enumeration():
    hws = dominant_weights_up_to_dim(A2, 10)
    assert Weight((1, 1)) in hws and Weight((0, 0)) in hws
    assert all(weyl_dimension(A2, h) <= 10 for h in hws)
    assert Weight((2, 1)) not in hws  # dim 15
