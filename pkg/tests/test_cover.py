from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricover.cover import (
    BOUNDARY,
    CASE_INVARIANTS,
    PRESETS,
    DegenerateCover,
    WeightMismatch,
    build_general_equations,
    branch_discriminant,
    chart_model,
    check_smooth_over_infinity,
    classify_branch_point,
    classify_cover,
    cubic_polynomial,
    discriminant_constant,
    fiber_genus,
    invariants_pushforward,
    is_degenerate_cubic,
    is_totally_ramified_at,
    make_spec,
    reduce_to_cubic,
    revalidate_point,
    singular_locus_V0,
)
from tricover.f3geom import SIGMA_0, SIGMA_INF, DivisorClass, section_basis, to_chart
from tricover.idealsolver import Ideal, groebner, is_unit_basis, normal_form
from tricover.polycore import MultiPoly, differentiate, parse_poly, resultant_in
from tricover.repro import DATASETS, load_dataset

TU = ("t", "u")
ORIGIN = {"t": 0, "u": 0}
M2 = {"d": "(1+t^2)*u^2+2*u-t^8+t^7-t^6-1", "c": "-2*u^4-2*u^3+6*u-2"}
M3 = {"d": "2*u^2+4*u+t^4-1", "c": "-2*u^4-20*u^3-6*u^2+12*u+2*t^12-2*t^11-2"}
N = {"r": "36*u^3-45*u^2+18*u-3+3*t^10-3*t^9+3*t^8", "s": "-27*u^5+135*u^4-144*u^3+72*u^2-18*u+2"}


def P(text, variables=TU):
    return parse_poly(text, variables)


@pytest.fixture(scope="module")
def specs():
    return {name: load_dataset(name).to_spec() for name in DATASETS}


@pytest.fixture(scope="module")
def reports(specs):
    return {name: classify_cover(spec) for name, spec in specs.items()}


# -- presets and specs ------------------------------------------------------------

def test_presets():
    assert (PRESETS["Mi"].L1, PRESETS["Mi"].L2) == (DivisorClass(2, 4), DivisorClass(3, 8))
    assert (PRESETS["Mii"].L1, PRESETS["Mii"].L2) == (DivisorClass(2, 5), DivisorClass(3, 7))
    assert (PRESETS["N"].L1, PRESETS["N"].L2) == (DivisorClass(2, 5), DivisorClass(4, 10))


def test_section_weights():
    w = PRESETS["Mi"].abcd_weights()
    assert w == {"a": DivisorClass(2, 4), "b": DivisorClass(1, 0), "c": DivisorClass(4, 12), "d": DivisorClass(3, 8)}
    w = PRESETS["Mii"].abcd_weights()
    assert w == {"a": DivisorClass(2, 5), "b": DivisorClass(1, 3), "c": DivisorClass(4, 9), "d": DivisorClass(3, 7)}
    assert PRESETS["N"].cubic_weights() == {"r": DivisorClass(4, 10), "s": DivisorClass(6, 15)}


def test_weight_mismatch_rejected():
    with pytest.raises(WeightMismatch):
        make_spec("Mi", "Cubic3DC", {"d": "u^4", "c": "1"})
    with pytest.raises(WeightMismatch):
        make_spec("Mi", "Cubic3DC", {"d": "u", "c": "1"}, galois=True)


def test_branch_class():
    assert PRESETS["Mi"].branch_class() == 2 * SIGMA_INF + 8 * SIGMA_0


# -- equations -------------------------------------------------------------------

def test_general_equations_with_a0_b1_give_the_cubic():
    V = ("z", "w", "c", "d")
    c, d = MultiPoly.var("c", V), MultiPoly.var("d", V)
    eqs = build_general_equations(MultiPoly.zero(V), MultiPoly.constant(1, V), c, d)
    z, w = MultiPoly.var("z", V), MultiPoly.var("w", V)
    assert eqs[0] == z * z - w + 2 * d
    # w = z^2 + 2d turns the second relation into the cubic
    from tricover.polycore import substitute

    assert substitute(eqs[1], {"w": z * z + 2 * d}) == z**3 + 3 * d * z - c
    # the third relation follows from the first two
    G = groebner(Ideal.of([w - z * z - 2 * d, z**3 + 3 * d * z - c], V))
    assert normal_form(eqs[2], G).is_zero()


def test_all_zero_data_is_degenerate():
    V = ("z", "w")
    zero = MultiPoly.zero(V)
    eqs = build_general_equations(zero, zero, zero, zero)
    z, w = MultiPoly.var("z", V), MultiPoly.var("w", V)
    assert eqs == [z * z, z * w, w * w]
    spec = make_spec("Mi", "Cubic3DC", {"d": "0", "c": "0"}, galois=True)
    assert is_degenerate_cubic(*reduce_to_cubic(spec))
    with pytest.raises(DegenerateCover):
        branch_discriminant(spec)


def test_reduce_m2_to_cubic():
    spec = make_spec("Mi", "Cubic3DC", M2)
    r, s = reduce_to_cubic(spec)
    assert r == 3 * P(M2["d"]) and s == -P(M2["c"])
    assert cubic_polynomial(spec) == parse_poly("z^3+3*d*z-c".replace("d", f"({M2['d']})").replace("c", f"({M2['c']})"), ("z", "u", "t"))


def test_reduce_galois_is_pure_cubic():
    spec = make_spec("Mi", "GeneralABCD", {"a": "0", "b": "1", "c": "u^4+t^12+1", "d": "0"}, galois=True)
    r, s = reduce_to_cubic(spec)
    assert r.is_zero() and s == -P("u^4+t^12+1")


def test_reduce_needs_constant_b(specs):
    with pytest.raises(DegenerateCover):
        reduce_to_cubic(specs["M4_PnotinZ"])


# -- discriminants ---------------------------------------------------------------

def test_discriminant_case_n(specs):
    D = branch_discriminant(specs["N"])
    assert D.coefficient((0, 10)) == 19683 and D.coefficient((0, 8)) == 2187
    assert D == 4 * P(N["r"]) ** 3 + 27 * P(N["s"]) ** 2


def test_discriminant_case_m2(specs):
    assert branch_discriminant(specs["M2"]) == 4 * P(M2["d"]) ** 3 + P(M2["c"]) ** 2


def _resultant_check(spec):
    f = cubic_polynomial(spec)
    res = resultant_in(f, differentiate(f, "z"), "z").with_variables(TU)
    assert res == discriminant_constant(spec) * branch_discriminant(spec)


@pytest.mark.parametrize("name", ["M1", "M2", "M3", "M4_PinZ", "N"])
def test_resultant_is_discriminant_on_datasets(specs, name):
    _resultant_check(specs[name])


@st.composite
def random_sections(draw, weight, max_terms=4):
    basis = section_basis(weight)
    chosen = draw(st.lists(st.sampled_from(basis), max_size=max_terms))
    return MultiPoly(TU, {m: draw(st.integers(-5, 5)) for m in chosen})


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_resultant_is_discriminant_random(data):
    if data.draw(st.booleans()):
        w = PRESETS["N"].cubic_weights()
        secs = {k: data.draw(random_sections(w[k])) for k in "rs"}
        spec = make_spec("N", "CubicRS", secs)
    else:
        w = PRESETS["Mi"].abcd_weights()
        secs = {k: data.draw(random_sections(w[k])) for k in "dc"}
        spec = make_spec("Mi", "Cubic3DC", secs)
    if is_degenerate_cubic(*reduce_to_cubic(spec)):
        return
    _resultant_check(spec)


@pytest.mark.parametrize("name", ["N", "M2", "M3"])
def test_discriminant_transition_compatible(specs, name):
    spec = specs[name]
    D0 = branch_discriminant(spec, "V0")
    weight = spec.preset.branch_class()
    assert to_chart(D0, weight, "V1") == branch_discriminant(spec, "V1")


# -- singular locus and the boundary ---------------------------------------------

@pytest.mark.parametrize("name", ["N", "M2"])
def test_singular_locus_single_point(specs, name):
    sol = singular_locus_V0(specs[name])
    assert sol.complete_over_C
    assert [{k: p[k] for k in ("t", "u", "z")} for p in sol.points] == [{"t": 0, "u": 0, "z": 1}]


def test_smooth_witness_has_empty_locus(specs):
    sol = singular_locus_V0(specs["M1"])
    assert sol.points == [] and sol.complete_over_C


@pytest.mark.parametrize("name", ["N", "M2"])
def test_smooth_over_infinity(specs, name):
    ok, cert = check_smooth_over_infinity(specs[name])
    assert ok
    assert all(c["trivial"] for c in cert["charts"])
    for c in cert["charts"]:
        for system in c["systems"]:
            assert system["basis"] == ["1"]


def test_m2_c0_fast_path(specs):
    _, cert = check_smooth_over_infinity(specs["M2"])
    assert cert["c0_nonzero"] is True


def test_vanishing_c0_breaks_smoothness_at_infinity():
    spec = make_spec("Mi", "Cubic3DC", {"d": M2["d"], "c": "-2*u^3+6*u-2"})
    ok, cert = check_smooth_over_infinity(spec)
    assert not ok and cert["c0_nonzero"] is False
    rep = classify_cover(spec)
    assert rep.case_label == "Unclassified" and not rep.smooth_over_infinity


def test_bundle_model_on_v0(specs):
    assert chart_model(specs["M4_PnotinZ"], "V0").kind == "bundle"
    assert chart_model(specs["N"], "V0").kind == "cubic"


def _minors_trivial(spec, chart):
    model = chart_model(spec, chart)
    names = ("z", "w") + model.base
    gens = model.jacobian_minors() + [MultiPoly.var(BOUNDARY[chart], names)]
    return is_unit_basis(groebner(Ideal.of(gens, names, "grevlex")))


MII_SINGULAR_AT_INFINITY = {
    # the dataset with the u^3 term of c removed
    "a": "-3*t^4-t+3*u-3", "b": "-2*t^3-2*u+2", "c": "-2*t^6*u+3", "d": "-3*t^7+t*u+u^2-3",
}


@pytest.mark.parametrize("chart", ["V1", "W0", "W1"])
def test_bundle_model_agrees_with_jacobian_minors(specs, chart):
    good = specs["M4_PnotinZ"]
    bad = make_spec("Mii", "GeneralABCD", MII_SINGULAR_AT_INFINITY)
    for spec in (good, bad):
        ok, cert = check_smooth_over_infinity(spec)
        mine = next(c for c in cert["charts"] if c["chart"] == chart)["trivial"]
        assert mine is _minors_trivial(spec, chart)
    assert check_smooth_over_infinity(good)[0]
    assert not check_smooth_over_infinity(bad)[0]


# -- ramification and branch points --------------------------------------------------

def test_total_ramification(specs):
    assert not is_totally_ramified_at(specs["N"], ORIGIN)
    assert is_totally_ramified_at(specs["M4_PinZ"], ORIGIN)
    assert not is_totally_ramified_at(specs["N"], {"t": 1, "u": 1})
    assert not is_totally_ramified_at(specs["M4_PinZ"], {"t": 1, "u": 1})


def test_branch_point_types(specs):
    bt = classify_branch_point(branch_discriminant(specs["N"]), ORIGIN)
    assert (bt.kind, bt.m) == ("OrdinaryMultiple", 8)
    assert classify_branch_point(branch_discriminant(specs["M2"]), ORIGIN).kind == "TripleTriple"
    bt = classify_branch_point(branch_discriminant(specs["M3"]), ORIGIN)
    assert (bt.kind, bt.m) == ("OrdinaryMultiple", 4)
    xy = ("x", "y")
    bt = classify_branch_point(P("y^3-x^4", xy), {"x": 0, "y": 0})
    assert bt.kind == "Other" and bt.m == 3
    assert classify_branch_point(P("t+u^2"), ORIGIN).kind == "Smooth"


def test_cubed_line_in_general_position():
    # Y = u - 2t, X = t: Y^3 + Y X^4 + X^6 + X^7 blows up to Y'^3 + X^2 Y' + X^3 + X^4
    D = P("(u-2*t)^3+(u-2*t)*t^4+t^6+t^7")
    bt = classify_branch_point(D, ORIGIN)
    assert bt.kind == "TripleTriple"


def test_singularity_type_round_trip(specs):
    bt = classify_branch_point(branch_discriminant(specs["M2"]), ORIGIN)
    from tricover.cover import SingularityType

    assert SingularityType.from_dict(bt.to_dict()) == bt


# -- classification -------------------------------------------------------------------

@pytest.mark.parametrize("name", DATASETS)
def test_dataset_classification(reports, specs, name):
    rep = reports[name]
    expect = load_dataset(name).expect
    assert rep.case_label == expect
    assert (rep.K2, rep.pg) == CASE_INVARIANTS[expect]
    assert rep.smooth_over_infinity


@pytest.mark.parametrize("name,kind,m", [("N", "OrdinaryMultiple", 8), ("M2", "TripleTriple", 3), ("M3", "OrdinaryMultiple", 4)])
def test_singular_point_verdicts(reports, specs, name, kind, m):
    (sp,) = reports[name].singular_points
    assert (sp.branch_type.kind, sp.branch_type.m) == (kind, m)
    assert not sp.totally_ramified
    D = branch_discriminant(specs[name])
    assert revalidate_point(D, {"t": sp.point["t"], "u": sp.point["u"]}, m)


def test_galois_witness_triple_point(reports, specs):
    rep = reports["M4_PinZ"]
    (sp,) = rep.singular_points
    assert (sp.branch_type.kind, sp.branch_type.m) == ("OrdinaryMultiple", 3)
    assert rep.certificates["galois"]["branch_is_2D0"]
    c = specs["M4_PinZ"].abcd()["c"].poly
    assert revalidate_point(c, ORIGIN, 3)


def test_smooth_witnesses_have_no_singular_points(reports):
    assert reports["M1"].singular_points == []
    assert reports["M4_PnotinZ"].singular_points == []


def test_report_round_trip(reports):
    from tricover.cover import ClassificationReport

    for rep in reports.values():
        assert ClassificationReport.from_dict(rep.to_dict()).to_dict() == rep.to_dict()


def test_classification_table_invariants():
    assert CASE_INVARIANTS == {
        "M1": (9, 5), "M2": (8, 4), "M3": (7, 4), "M4_PinZ": (6, 4), "M4_PnotinZ": (6, 4), "N": (8, 4),
    }


def test_unclassified_when_the_pattern_is_wrong():
    # an N-preset cover without the octuple point
    spec = make_spec("N", "CubicRS", {"r": "3*t^10+3", "s": "u^5+t^15+1"})
    rep = classify_cover(spec)
    assert rep.case_label == "Unclassified"
    assert rep.diagnostics


# -- invariants ---------------------------------------------------------------------

def test_pushforward_pg():
    assert invariants_pushforward(PRESETS["Mi"])[0] == 5
    assert invariants_pushforward(PRESETS["Mii"])[0] == 4
    assert invariants_pushforward(PRESETS["N"])[0] == 10


@pytest.mark.parametrize("tag", ["Mi", "Mii", "N"])
def test_chi_is_pg_plus_one(tag):
    # q = 0 for these covers, so chi = 1 + p_g
    pg, chi = invariants_pushforward(PRESETS[tag])
    assert chi == 1 + pg


def test_fiber_genus():
    assert fiber_genus(PRESETS["Mi"]) == 3
    assert fiber_genus(PRESETS["Mii"]) == 3
    assert fiber_genus(PRESETS["N"]) == 4
