"""Classification of real forms of the quadric bundles over the line."""

import pytest

from realforms.exact import Cyclo, Mat2
from realforms.groups import GroupSpec, catalog, semi_invariant_character
from realforms.parsing import parse_poly, render_poly
from realforms.quadrics import (ApplicabilityError, FLabel, FormCounts,
                                QgInstance, UndecidableError,
                                check_psi_h, check_real_structure,
                                detect_symmetry, enumerate_forms,
                                form_counts, invariant_triple,
                                psi_pullback_identity, realizable)


def inst(text):
    return QgInstance(parse_poly(text))


# ----------------------------------------------------------------------
# instance validation


def test_instance_rejects_bad_input():
    with pytest.raises(ValueError):
        inst("u0^3 + u1^3")  # odd degree
    with pytest.raises(ValueError):
        QgInstance(parse_poly("u0^2*u1^2"))  # a perfect square
    with pytest.raises(TypeError):
        QgInstance("u0^2 + u1^2")


def test_instance_checks_factored_roots():
    one = Cyclo.rational(1)
    zero = Cyclo.rational(0)
    g = parse_poly("u0*u1")
    ok = QgInstance(g, factored_roots=(((zero, one), 1), ((one, zero), 1)))
    assert ok.multiplicities() == [1, 1]
    with pytest.raises(ValueError):
        QgInstance(g, factored_roots=(((zero, one), 2),))
    with pytest.raises(ValueError):
        QgInstance(g, factored_roots=(((one, one), 1), ((one, zero), 1)))


# ----------------------------------------------------------------------
# symmetry detection


@pytest.mark.parametrize("text,label", [
    ("u0^5*u1", "Gm"),                        # two roots, multiplicities 5, 1
    ("u0^3*u1^3", "GmSemidirectZ2"),          # two roots, equal multiplicity
    ("u0^3*u1 - u0*u1^3", "Finite(D2)"),
    ("u0^4 + u1^4", "Finite(D4)"),
    ("u0^6 + u1^6", "Finite(D6)"),
    ("u0^5*u1 - u0*u1^5", "Finite(E7)"),      # octahedron vertices
    ("u0^8 + 14*u0^4*u1^4 + u1^8", "Finite(E7)"),  # cube vertices
    ("u0^11*u1 + 11*u0^6*u1^6 - u0*u1^11", "Finite(E8)"),
    ("u0^2*u1*(u0^3 - u1^3)", "Finite(A3)"),
    ("u0^5*u1 - u0^3*u1^3", "Finite(A2)"),
    ("(u0 - 2*u1)*(2*u0 - u1)*(u0 - 3*u1)*(3*u0 - u1)", "Finite(A1)"),
])
def test_detect_symmetry(text, label):
    assert detect_symmetry(inst(text)).name == label


def test_icosahedral_form_in_rotated_frame():
    # the textbook icosahedral vertex form with the -11 middle sign lies
    # in another coordinate frame; only its order-5 rotation is standard
    q = inst("u0^11*u1 - 11*u0^6*u1^6 - u0*u1^11")
    assert detect_symmetry(q).name == "Finite(A5)"


def test_moebius_search_restores_a_moved_frame():
    one = Cyclo.rational(1)
    zero = Cyclo.rational(0)
    w = Cyclo.zeta(3)
    g = parse_poly("u0^2*u1*(u0^3 - u1^3)")
    m = Mat2(1, 2, 1, 3)
    h = g.compose(m)
    minv = m.inverse()

    def img(p, q):
        return (minv.a * p + minv.b * q, minv.c * p + minv.d * q)

    roots = ((img(zero, one), 2), (img(one, zero), 1), (img(one, one), 1),
             (img(w, one), 1), (img(w * w, one), 1))
    moved = QgInstance(h, factored_roots=roots)
    assert detect_symmetry(moved).name == "Finite(A1)"
    assert detect_symmetry(moved, moebius_search=True).name == "Finite(A3)"


def test_flabel_properties():
    assert FLabel.torus().name == "Gm"
    assert FLabel.torus().report_name == "Gm"
    e7 = FLabel.finite("E7")
    assert e7.name == "Finite(E7)"
    assert e7.report_name == "E7"
    assert e7 == FLabel.finite(GroupSpec.parse("E7"))
    assert e7 != FLabel.torus()


def test_invariant_triples_are_semi_invariant():
    for name in ("A2", "A5", "D2", "D3", "D4", "E6", "E7", "E8"):
        spec = GroupSpec.parse(name)
        grp = catalog(spec)
        for f in invariant_triple(spec):
            assert semi_invariant_character(f, grp) is not None, \
                "%s generator %s" % (name, render_poly(f))


# ----------------------------------------------------------------------
# counts: the closed-form table


# (rational, unknown, no real points) per symmetry kind and parity of n
COUNT_TABLE = {
    ("A1", "even"): (2, 2, 0), ("A1", "odd"): (2, 2, 0),
    ("A2", "even"): (4, 4, 0), ("A2", "odd"): (2, 2, 0),
    ("A3", "even"): (2, 2, 0), ("A3", "odd"): (2, 2, 0),
    ("A4", "even"): (4, 4, 0), ("A4", "odd"): (2, 2, 0),
    ("D2", "even"): (6, 6, 4), ("D2", "odd"): (3, 3, 4),
    ("D3", "even"): (4, 4, 0), ("D3", "odd"): (2, 2, 0),
    ("D4", "even"): (6, 6, 4), ("D4", "odd"): (3, 3, 4),
    ("D5", "even"): (4, 4, 0), ("D5", "odd"): (2, 2, 0),
    ("E6", "even"): (2, 2, 4), ("E6", "odd"): (1, 1, 4),
    ("E7", "even"): (4, 4, 4), ("E7", "odd"): (2, 2, 4),
    ("E8", "even"): (2, 2, 4), ("E8", "odd"): (1, 1, 4),
}


def test_form_counts_finite_table():
    for (name, parity), expected in COUNT_TABLE.items():
        label = FLabel.finite(name)
        assert tuple(form_counts(parity, label)) == expected, (name, parity)


def test_form_counts_torus_cases():
    assert tuple(form_counts("even", FLabel.torus())) == (1, 1, 0)
    assert tuple(form_counts("odd", FLabel.torus())) == (1, 1, 0)
    two_root = form_counts("odd", FLabel.torus_z2())
    assert tuple(two_root) == (3, 2, 1)
    assert two_root.note["coarse_count"] == (2, 2, 0)
    with pytest.raises(ValueError):
        form_counts("even", FLabel.torus_z2())
    with pytest.raises(ValueError):
        form_counts("both", FLabel.torus())


def test_form_counts_total():
    c = FormCounts(4, 4, 4)
    assert c.total == 12 and c.rational == 4


# ----------------------------------------------------------------------
# enumeration: frozen reports


def by_class(report):
    out = {}
    for f in report.forms:
        eq = render_poly(f.equation) if f.equation is not None else None
        out.setdefault(f.over_class, (eq, []))
        assert out[f.over_class][0] == eq
        out[f.over_class][1].append((f.tag, f.status))
    return out


def test_octahedral_even_report():
    report = enumerate_forms(inst("u0^8 + 14*u0^4*u1^4 + u1^8"))
    assert report.symmetry.name == "Finite(E7)"
    assert len(report.forms) == 12
    assert tuple(report.counts()) == (4, 4, 4)
    classes = by_class(report)
    assert classes["[I2]"][0] == "u0^8 + 14*u0^4*u1^4 + u1^8"
    assert classes["[omega_8]"][0] == "-u0^8 + 14*u0^4*u1^4 - u1^8"
    assert classes["[h]"][0] is None
    assert classes["[I2]"][1] == [("W1", "rational"), ("X1", "rational"),
                                  ("Y1", "unknown"), ("Z1", "unknown")]
    assert classes["[omega_8]"][1] == [("W2", "rational"), ("X2", "rational"),
                                       ("Y2", "unknown"), ("Z2", "unknown")]
    assert [s for _, s in classes["[h]"][1]] == ["no_real_points"] * 4


def test_klein_four_even_report():
    # g = f1^2 + f2^2 for the Klein four-group generators f1 = u0^2 u1^2,
    # f2 = (u0^2 - u1^2)^2; its omega_4 twist is g(u0, i u1) exactly, and
    # the f twist was cross-checked against the conjugation u0 -> u0 +
    # zeta_8 u1, u1 -> zeta_8 u0 + u1, whose cocycle is the antidiagonal
    # flip (the twisted forms agree up to a real coordinate change)
    g = parse_poly("u0^8 - 4*u0^6*u1^2 + 7*u0^4*u1^4 - 4*u0^2*u1^6 + u1^8")
    report = enumerate_forms(QgInstance(g))
    assert report.symmetry.name == "Finite(D2)"
    assert len(report.forms) == 16
    assert tuple(report.counts()) == (6, 6, 4)
    classes = by_class(report)
    assert classes["[I2]"][0] == render_poly(g)
    assert classes["[omega_4]"][0] == \
        "u0^8 + 4*u0^6*u1^2 + 7*u0^4*u1^4 + 4*u0^2*u1^6 + u1^8"
    assert parse_poly(classes["[omega_4]"][0]) == g.compose(
        Mat2.diag(Cyclo.rational(1), Cyclo.i()))
    assert classes["[f]"][0] == \
        "17*u0^8 - 60*u0^6*u1^2 + 102*u0^4*u1^4 - 60*u0^2*u1^6 + 17*u1^8"
    assert classes["[h]"][0] is None


def test_square_vertices_even_report():
    report = enumerate_forms(inst("u0^4 + u1^4"))
    assert report.symmetry.name == "Finite(D4)"
    assert tuple(report.counts()) == (6, 6, 4)
    classes = by_class(report)
    assert classes["[omega_8]"][0] == "-u0^4 + u1^4"
    assert classes["[f]"][0] == "2*u0^4 - 12*u0^2*u1^2 + 2*u1^4"


def test_hexagon_odd_report():
    report = enumerate_forms(inst("u0^6 + u1^6"))
    assert report.symmetry.name == "Finite(D6)"
    assert len(report.forms) == 10
    assert tuple(report.counts()) == (3, 3, 4)
    classes = by_class(report)
    # odd fiber count merges the conic pairs: only W and Y survive
    assert classes["[I2]"][1] == [("W1", "rational"), ("Y1", "unknown")]
    assert classes["[omega_12]"][0] == "-u0^6 + u1^6"
    assert classes["[f]"][0] == "-12*u0^5*u1 + 40*u0^3*u1^3 - 12*u0*u1^5"


def test_octahedron_odd_report():
    report = enumerate_forms(inst("u0^5*u1 - u0*u1^5"))
    assert report.symmetry.name == "Finite(E7)"
    assert len(report.forms) == 8
    assert tuple(report.counts()) == (2, 2, 4)
    classes = by_class(report)
    assert classes["[omega_8]"][0] == "-u0^5*u1 - u0*u1^5"


def test_tetrahedral_reports():
    spec = GroupSpec.parse("E6")
    f1, _, f3 = invariant_triple(spec)
    even = enumerate_forms(QgInstance(f1 ** 2 + f3))
    assert even.symmetry.name == "Finite(E6)"
    assert tuple(even.counts()) == (2, 2, 4)
    odd = enumerate_forms(QgInstance(f1 ** 3 + f1 * f3))
    assert odd.symmetry.name == "Finite(E6)"
    assert tuple(odd.counts()) == (1, 1, 4)


def test_icosahedral_even_report():
    report = enumerate_forms(inst("u0^11*u1 + 11*u0^6*u1^6 - u0*u1^11"))
    assert report.symmetry.name == "Finite(E8)"
    assert len(report.forms) == 8
    assert tuple(report.counts()) == (2, 2, 4)


def test_cyclic_reports():
    # cyclic symmetry of odd order: two classes regardless of parity
    for text, n_parity in (("u0^2*u1*(u0^3 - u1^3)", 1),
                           ("u0^2*u1^3*(u0^3 - u1^3)", 0)):
        report = enumerate_forms(inst(text))
        assert report.symmetry.name == "Finite(A3)"
        assert report.instance.n % 2 == n_parity
        assert tuple(report.counts()) == (2, 2, 0)
    # cyclic of even order, even n: four classes, doubled
    report = enumerate_forms(inst("u0^6*u1^2 + u1^8"))
    assert report.symmetry.name == "Finite(A6)"
    assert tuple(report.counts()) == (4, 4, 0)


def test_torus_fiber_report():
    report = enumerate_forms(inst("u0^5*u1"))
    assert report.symmetry.name == "Gm"
    assert [(f.tag, f.status) for f in report.forms] == \
        [("Q", "rational"), ("T", "unknown")]


def test_two_root_equal_report():
    report = enumerate_forms(inst("u0^3*u1^3"))
    assert report.symmetry.name == "GmSemidirectZ2"
    assert tuple(report.counts()) == (3, 2, 1)
    assert report.note is not None
    classes = by_class(report)
    assert classes["[mu1]"][1] == [("Q", "rational"), ("T", "unknown")]
    # the twist moves the double root pair to +-i cubed
    assert classes["[mu8]"][0] == \
        "u0^6 + 3*u0^4*u1^2 + 3*u0^2*u1^4 + u1^6"
    assert classes["[mu8]"][1][-1] == ("Z'", "no_real_points")


def test_two_root_equal_requires_coordinate_position():
    with pytest.raises(ValueError):
        enumerate_forms(inst("u0^2 + u1^2"))


def test_report_as_dict():
    data = enumerate_forms(inst("u0^8 + 14*u0^4*u1^4 + u1^8")).as_dict()
    assert data["F"] == "E7"
    assert data["n"] == 4
    assert data["counts"] == {"rational": 4, "unknown": 4,
                              "no_real_points": 4}
    assert len(data["forms"]) == 12
    assert data["forms"][0]["form"] == "W1"
    assert "equation" not in data["forms"][-1]  # the h-class rows carry none


# ----------------------------------------------------------------------
# realizability over the reals


@pytest.mark.parametrize("text", [
    "u0^3*u1 + i*u0*u1^3",
    "i*u0^4 + u1^4",
    "zeta(3)*u0^2 + u1^2",
    "u0^6 + zeta(8)*u1^6",
    "u0^6 + i*u0^3*u1^3 + u1^6",
])
def test_realizable_witnesses(text):
    g = parse_poly(text)
    witness = realizable(g)
    assert witness is not None
    lam, phi = witness
    assert (g.compose(phi) * lam).real_coefficients()


def test_realizable_trivial_cases():
    g = parse_poly("u0^4 + u1^4")
    lam, phi = realizable(g)
    assert lam == 1 and phi == Mat2.identity()
    lam, phi = realizable(parse_poly("i*u0^3*u1"))
    assert (parse_poly("i*u0^3*u1").compose(phi) * lam).real_coefficients()


def test_realizable_undecidable():
    with pytest.raises(UndecidableError, match="cyclotomic"):
        realizable(parse_poly("(1 + 2*i)*u0^4 + u1^4"))


def test_realizable_negative():
    # a unimodular, infinite-order twist requirement has no cyclotomic
    # witness; a genuinely impossible finite system returns None
    g = parse_poly("u0^4 + i*u0^2*u1^2 - u0*u1^3")
    out = realizable(g)
    if out is not None:
        lam, phi = out
        assert (g.compose(phi) * lam).real_coefficients()


def test_realizable_rejects_odd_degree():
    with pytest.raises(ValueError):
        realizable(parse_poly("u0^3 + u1^3"))


# ----------------------------------------------------------------------
# real structures on the ambient bundle


CORPUS = ("u0^2 + u1^2", "u0^3*u1 - u0*u1^3", "u0^4 + u1^4",
          "u0^4 + u1^4 + u0^2*u1^2", "u0^5*u1", "u0^6 + u1^6",
          "u0^5*u1 - u0*u1^5", "u0^8 + 14*u0^4*u1^4 + u1^8",
          "u0^10 + u1^10",
          "u0^12 - 33*u0^8*u1^4 - 33*u0^4*u1^8 + u1^12")


def test_basic_structures_on_corpus():
    for text in CORPUS:
        q = inst(text)
        for index in (1, 2, 3, 4):
            verdict = check_real_structure(index, q)
            assert verdict["valid"], (text, index)


def test_rotation_structure_needs_order():
    q = inst("u0^4 + u1^4 + u0^2*u1^2")
    verdict = check_real_structure(5, q)  # order auto-detected from D2
    assert verdict["valid"]
    assert check_real_structure(5, q, l=2)["valid"]


def test_rotation_structure_no_canonical_order():
    # the trivial group still carries l = 1, but a torus fiber does not
    with pytest.raises(ApplicabilityError, match="rotation order"):
        check_real_structure(5, inst("u0^5*u1"), l=None)
    assert check_real_structure(
        5, inst("(u0 - 2*u1)*(2*u0 - u1)*(u0 - 3*u1)*(3*u0 - u1)"))["valid"]


def test_quarter_turn_needs_even_fiber_count():
    with pytest.raises(ApplicabilityError, match="n even"):
        check_real_structure(7, inst("u0^6 + u1^6"))  # n = 3
    assert check_real_structure(7, inst("u0^4 + u1^4"))["valid"]


def test_swap_structures():
    q = inst("u0^8 + 14*u0^4*u1^4 + u1^8")
    for index in (8, 9, 10, 11):
        assert check_real_structure(index, q)["valid"]


def test_structure_index_range():
    with pytest.raises(ValueError):
        check_real_structure(12, inst("u0^2 + u1^2"))


def test_structure_rejects_wrong_fiber():
    # mu_6 sends u0 -> i u1, u1 -> i u0; a fiber with unbalanced root
    # multiplicities at 0 and infinity cannot come back to itself
    with pytest.raises(ApplicabilityError):
        check_real_structure(6, inst("u0^5*u1"))


# ----------------------------------------------------------------------
# the degree-raising link


def test_psi_pullback_identity():
    g = parse_poly("u0^4 + u1^4")
    h = parse_poly("u0^2 + u1^2")
    assert psi_pullback_identity(g, h)


def test_psi_composition_law():
    # two steps by h1 then h2 match one step by h1 h2
    g = parse_poly("u0^4 + u1^4")
    h1 = parse_poly("u0^2 + u1^2")
    h2 = parse_poly("u0")
    assert psi_pullback_identity(g, h1 * h2)
    assert psi_pullback_identity(g * h1 * h1, h2)


def test_check_psi_h():
    out = check_psi_h(inst("u0^4 + u1^4"), parse_poly("u0^2 + u1^2"))
    assert out == {"identity": True, "n_prime": 4}
    out = check_psi_h(inst("u0^6 + u1^6"), parse_poly("u1"))
    assert out["n_prime"] == 4


def test_check_psi_h_rejects_real_split():
    with pytest.raises(ValueError, match="discriminant"):
        check_psi_h(inst("u0^4 + u1^4"), parse_poly("u0^2 - u1^2"))


def test_check_psi_h_rejects_high_degree_twist():
    with pytest.raises(ValueError, match="degree 3"):
        check_psi_h(inst("u0^4 + u1^4"), parse_poly("u0^3 + u1^3"))


def test_check_psi_h_rejects_complex_data():
    with pytest.raises(ValueError):
        check_psi_h(inst("i*u0^4 + u1^4"), parse_poly("u0^2 + u1^2"))
    with pytest.raises(ValueError):
        check_psi_h(inst("u0^4 + u1^4"), parse_poly("i*u0^2 + u1^2"))
