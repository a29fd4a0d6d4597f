"""Intersection lattices, extremal rays, and the classification list."""

from fractions import Fraction

import pytest

from realforms.lattices import (FamilyId, aut_component_count,
                                in_theorem_list, k_negative_rays, model,
                                pairing)


def test_family_id_normalization():
    assert FamilyId.fabc(-2, 3, 1).params == (2, 3, 1)
    assert FamilyId.fabc(2, -3, 1).params == (2, 3, -1)
    assert FamilyId.fabc(0, 0, -4).params == (0, 0, 4)
    assert FamilyId.rmn(1, 3).params == (3, 1)
    assert FamilyId.pb(-2).params == (2,)


def test_family_id_labels():
    assert FamilyId.fabc(2, 3, 4).label == "F_2^{3,4}"
    assert FamilyId.pb(2).label == "P_2"
    assert FamilyId.wb(5).label == "W_5"
    assert FamilyId.rmn(2, 1).label == "R_(2,1)"


def test_family_id_validation():
    with pytest.raises(ValueError):
        FamilyId("Xb", (1,))
    with pytest.raises(ValueError):
        FamilyId.vb(1)  # V_1 is the flag variety, listed under Sb
    with pytest.raises(ValueError):
        FamilyId.wb(1)
    with pytest.raises(ValueError):
        FamilyId.uabc(2, 3, 5)  # c - 2 must be a multiple of a
    with pytest.raises(ValueError):
        FamilyId.qg(0)


def test_family_id_equality():
    assert FamilyId.fabc(2, -3, 1) == FamilyId.fabc(-2, 3, -1)
    assert FamilyId.fabc(2, 3, 1) != FamilyId.fabc(2, 3, 2)


# ----------------------------------------------------------------------
# the decomposable-bundle lattice


def test_fabc_canonical_degrees():
    lattice = model(FamilyId.fabc(2, 3, 4))
    assert lattice.k_dots == {"l1": Fraction(-4), "l2": Fraction(1),
                              "l3": Fraction(-2), "l4": Fraction(4)}


def test_fabc_closed_forms_on_a_grid():
    for a in range(0, 5):
        for b in range(0, 5):
            for c in range(-4, 5):
                family = FamilyId.fabc(a, b, c)
                na, nb, nc = family.params
                lattice = model(family)
                assert lattice.k_dots["l1"] == na - nc - 2
                assert lattice.k_dots["l2"] == nb - 2
                assert lattice.k_dots["l3"] == -2
                assert lattice.k_dots["l4"] == na + nc - 2


def test_fabc_table_consistency():
    # the stored K-intersections must agree with pairing the canonical
    # class against the table (the constructor re-checks this too)
    lattice = model(FamilyId.fabc(3, 2, -1))
    for name in ("l1", "l2", "l3", "l4"):
        assert lattice.k_dot_from_table(name) == lattice.k_dots[name]


def test_fabc_derived_section_class():
    # l4 = l1 - c*l3 in the curve lattice
    lattice = model(FamilyId.fabc(2, 3, 4))
    assert lattice.relations["l4"] == (1, 0, -4)
    assert lattice.curve_vector("l4") == (1, 0, -4)


def test_fabc_cone_switches_generator_with_sign_of_c():
    neg = model(FamilyId.fabc(2, 3, -2))
    assert [r.name for r in neg.cone_generators] == ["l1", "l2", "l3"]
    pos = model(FamilyId.fabc(2, 3, 2))
    assert [r.name for r in pos.cone_generators] == ["l4", "l2", "l3"]


def test_pairing_lookup():
    lattice = model(FamilyId.fabc(2, 3, 4))
    assert pairing(lattice, "l3", "H_x0") == 1
    assert pairing(lattice, "l1", "H_y0") == -2
    assert pairing(lattice, "l4", {"H_z0": 1}) == 1
    assert pairing(lattice, {"l1": 1, "l3": -4}, "H_x0") == 0


def test_k_negative_rays():
    lattice = model(FamilyId.fabc(0, 1, -1))
    names = [r.name for r in k_negative_rays(lattice)]
    assert names == ["l1", "l2", "l3"]
    big = model(FamilyId.fabc(4, 3, 2))
    assert [r.name for r in k_negative_rays(big)] == ["l3"]


def test_fiber_ray_contraction_note():
    lattice = model(FamilyId.fabc(2, 3, 4))
    fiber = [r for r in lattice.cone_generators if r.name == "l3"][0]
    assert fiber.contraction == "fibration: structure morphism to F_2"


# ----------------------------------------------------------------------
# the quadric-cone bundle lattice


def test_wb_lattice():
    lattice = model(FamilyId.wb(2))
    assert lattice.k_dots == {"f": Fraction(-2), "l": Fraction(-1, 2)}
    assert lattice.k_dot_from_table("f") == -2
    for b in range(2, 11):
        lat = model(FamilyId.wb(b))
        assert lat.k_dots["l"] == Fraction(2 * b - 5, 2)


def test_wb_half_integral_pairing():
    lattice = model(FamilyId.wb(3))
    assert pairing(lattice, "l", "S") == Fraction(-5, 2)


# ----------------------------------------------------------------------
# ray-resolution families


@pytest.mark.parametrize("family", [
    FamilyId.pb(0), FamilyId.pb(2), FamilyId.uabc(1, 3, 2),
    FamilyId.sb(1), FamilyId.sb(4), FamilyId.vb(3),
    FamilyId.rmn(2, 1), FamilyId.qg(3),
])
def test_ray_models_have_k_data(family):
    lattice = model(family)
    assert lattice.cone_generators
    for ray in lattice.cone_generators:
        assert ray.k_dot == lattice.k_dots[ray.name]


def test_ray_models_refuse_full_table_queries():
    lattice = model(FamilyId.sb(2))
    with pytest.raises(ValueError, match="ray resolution"):
        lattice.k_dot_from_table("f")
    with pytest.raises(ValueError, match="ray resolution"):
        pairing(lattice, "f", "H")


def test_as_dict_round_trips_family():
    data = model(FamilyId.fabc(2, 3, 4)).as_dict()
    assert data["family"] == "F_2^{3,4}"
    assert data["k_dots"]["l4"] == "4"
    assert data["canonical"]["H_x0"] == "-2"
    ray_names = [r["name"] for r in data["cone_generators"]]
    assert ray_names == ["l4", "l2", "l3"]


# ----------------------------------------------------------------------
# membership in the classification list


def test_theorem_list_fabc():
    assert in_theorem_list(FamilyId.fabc(0, 1, -1))
    assert in_theorem_list(FamilyId.fabc(0, 0, 0))
    assert in_theorem_list(FamilyId.fabc(2, 3, 1))
    assert not in_theorem_list(FamilyId.fabc(1, 2, 1))   # a = 1 drops out
    assert not in_theorem_list(FamilyId.fabc(2, 1, 2))   # c too large
    assert not in_theorem_list(FamilyId.fabc(0, 1, 1))   # boundary b = |c|


def test_theorem_list_other_kinds():
    assert in_theorem_list(FamilyId.pb(2))
    assert not in_theorem_list(FamilyId.pb(1))
    assert in_theorem_list(FamilyId.sb(1))
    assert not in_theorem_list(FamilyId.sb(2))
    assert in_theorem_list(FamilyId.sb(3))
    assert in_theorem_list(FamilyId.vb(3))
    assert not in_theorem_list(FamilyId.vb(2))
    assert in_theorem_list(FamilyId.wb(2))
    assert in_theorem_list(FamilyId.rmn(2, 2))
    assert in_theorem_list(FamilyId.rmn(5, 2))
    assert not in_theorem_list(FamilyId.rmn(4, 2))
    assert not in_theorem_list(FamilyId.rmn(1, 0))


def test_theorem_list_invariant_under_normalization():
    assert in_theorem_list(FamilyId.fabc(2, -3, -1)) == \
        in_theorem_list(FamilyId.fabc(2, 3, 1))


# ----------------------------------------------------------------------
# component groups


def test_aut_components_connected():
    assert aut_component_count(FamilyId.fabc(2, 3, 1)) == \
        {"kind": "connected"}
    assert aut_component_count(FamilyId.wb(4)) == {"kind": "connected"}


def test_aut_components_boundary_involutions():
    out = aut_component_count(FamilyId.fabc(0, 2, 2))
    assert out["kind"] == "two_components"
    assert out["involution"] == "[x1:x0; z0:z1; y0:y1]"
    out = aut_component_count(FamilyId.fabc(0, 2, -2))
    assert out["involution"] == "[x0:x1; z0:z1; y0:y1]"
    out = aut_component_count(FamilyId.fabc(2, 0, 2))
    assert out["kind"] == "two_components"


def test_aut_components_triple_product():
    out = aut_component_count(FamilyId.fabc(0, 0, 0))
    assert out["kind"] == "product_with_S3"


def test_aut_components_flag_variety():
    out = aut_component_count(FamilyId.sb(1))
    assert out["kind"] == "two_components"


def test_aut_components_refuses_quadric_fibrations():
    with pytest.raises(ValueError, match="fiber polynomial"):
        aut_component_count(FamilyId.qg(2))
