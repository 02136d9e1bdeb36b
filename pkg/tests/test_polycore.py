from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys, sympy_terms, to_sympy
from tricover.polycore import (
    MultiPoly,
    PolyParseError,
    UndeclaredVariableError,
    arith,
    binary_form_squarefree,
    differentiate,
    evaluate,
    lowest_form,
    multiplicity_at,
    parse_poly,
    resultant_in,
    univariate_rational_roots,
)

TU = ("t", "u")
TUZ = ("t", "u", "z")
R_N = "36*u^3-45*u^2+18*u-3+3*t^10-3*t^9+3*t^8"
S_N = "-27*u^5+135*u^4-144*u^3+72*u^2-18*u+2"
ORIGIN = {"t": 0, "u": 0}


def P(text, variables=TU):
    return parse_poly(text, variables)


@pytest.fixture(scope="module")
def case_n():
    r, s = P(R_N, TUZ), P(S_N, TUZ)
    z = MultiPoly.var("z", TUZ)
    return r, s, z**3 + r * z + s


@pytest.fixture(scope="module")
def disc_n():
    r, s = P(R_N), P(S_N)
    return 4 * r**3 + 27 * s**2


# -- parsing and printing --------------------------------------------------

def test_parse_case_n_r():
    r = P(R_N)
    assert len(r) == 7
    assert r.coefficient((0, 3)) == 36 and r.coefficient((10, 0)) == 3
    assert r.coefficient((0, 0)) == -3


def test_parse_zero():
    z = P("0")
    assert z.is_zero() and dict(z.terms) == {}
    assert str(z) == "0"


def test_parse_m2_d_has_seven_terms():
    d = P("(1+t^2)*u^2+2*u-t^8+t^7-t^6-1")
    assert len(d) == 7
    assert str(d) == "-t^8+t^7-t^6+t^2*u^2+u^2+2*u-1"


def test_canonical_order_is_grlex():
    assert str(P("1+u+t+t*u+u^2+t^2")) == "t^2+t*u+u^2+t+u+1"


def test_whitespace_insignificant():
    assert P(" 3 * t ^ 2 -  u ") == P("3*t^2-u")


@pytest.mark.parametrize(
    "text,pos",
    [("3*t+", 4), ("t^^2", 2), ("(t+u", 4), ("2 t", 2), ("t$u", 1)],
)
def test_syntax_error_position(text, pos):
    with pytest.raises(PolyParseError) as exc:
        P(text)
    assert exc.value.position == pos
    assert "^" in str(exc.value)


def test_undeclared_variable():
    with pytest.raises(UndeclaredVariableError) as exc:
        P("t+x")
    assert exc.value.position == 2


def test_rational_coefficients_round_trip():
    p = MultiPoly(TU, {(1, 0): Fraction(-3, 4), (0, 0): Fraction(1, 3)})
    assert str(p) == "-3/4*t+1/3"
    assert P(str(p)) == p


def test_fraction_invariants():
    p = MultiPoly(TU, {(0, 0): Fraction(6, -4), (1, 0): 0})
    c = p.coefficient((0, 0))
    assert (c.numerator, c.denominator) == (-3, 2)
    assert len(p) == 1


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MultiPoly(TU, {(0, 0): 0.5})


@given(polys())
@settings(max_examples=150)
def test_parse_print_round_trip(p):
    assert P(str(p)) == p
    assert str(P(str(p))) == str(p)


# -- arithmetic --------------------------------------------------------------

def test_cubic_of_case_n_matches_session_output(case_n):
    _, _, f = case_n
    expected = "z^3+(36*u^3-45*u^2+18*u+3*t^10-3*t^9+3*t^8-3)*z-27*u^5+135*u^4-144*u^3+72*u^2-18*u+2"
    assert f == P(expected, TUZ)


def test_additive_inverse():
    p = P(R_N)
    assert (p + (-p)).is_zero()
    assert arith(p, p, "sub").is_zero()


def test_discriminant_spot_coefficients(disc_n):
    assert disc_n.coefficient((0, 10)) == 19683
    assert disc_n.coefficient((0, 8)) == 2187
    assert disc_n.coefficient((8, 0)) == 324
    assert disc_n.total_degree() == 30


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        arith(P("t"), None, "pow", -1)


def test_auto_alignment_by_name():
    p = MultiPoly(("t",), {(1,): 1})
    q = MultiPoly(("u",), {(1,): 1})
    s = p + q
    assert set(s.variables) == {"t", "u"}
    assert s == P("t+u")


@given(polys(), polys(), polys())
@settings(max_examples=120, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys(max_degree=4), polys(max_degree=4))
@settings(max_examples=60, deadline=None)
def test_product_agrees_with_sympy(p, q):
    assert dict((p * q).terms) == sympy_terms(to_sympy(p) * to_sympy(q), TU)


@given(polys(max_degree=3), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_power_is_repeated_product(p, k):
    q = MultiPoly.constant(1, TU)
    for _ in range(k):
        q = q * p
    assert p**k == q


# -- calculus and evaluation ------------------------------------------------

def test_derivative_in_z_of_case_n(case_n):
    _, _, f = case_n
    assert differentiate(f, "z") == P("3*z^2+36*u^3-45*u^2+18*u+3*t^10-3*t^9+3*t^8-3", TUZ)


def test_derivative_in_t_of_case_n(case_n):
    _, _, f = case_n
    assert differentiate(f, "t") == P("(30*t^9-27*t^8+24*t^7)*z", TUZ)


def test_derivative_of_constant():
    assert differentiate(P("7"), "t").is_zero()


@given(polys(), polys(), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
@settings(max_examples=100, deadline=None)
def test_derivative_linear_and_leibniz(p, q, ab):
    a, b = ab
    for v in TU:
        assert differentiate(a * p + b * q, v) == a * differentiate(p, v) + b * differentiate(q, v)
        assert differentiate(p * q, v) == differentiate(p, v) * q + p * differentiate(q, v)


def test_evaluate_examples(case_n, disc_n):
    r, _, f = case_n
    assert evaluate(f, {"t": 0, "u": 0, "z": 1}) == 0
    assert evaluate(disc_n, ORIGIN) == 0
    assert evaluate(r, {"t": 0, "u": 0, "z": 5}) == -3


def test_evaluate_needs_every_variable():
    with pytest.raises(KeyError):
        evaluate(P("t+u"), {"t": 1})


@given(polys(), st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3))
@settings(max_examples=60, deadline=None)
def test_evaluate_agrees_with_sympy(p, a, b):
    val = to_sympy(p).subs({sympy.Symbol("t"): sympy.Rational(a.numerator, a.denominator),
                           sympy.Symbol("u"): sympy.Rational(b.numerator, b.denominator)})
    assert evaluate(p, {"t": a, "u": b}) == Fraction(int(val.p), int(val.q))


# -- local analysis ----------------------------------------------------------

def test_octuple_point_of_case_n(disc_n):
    assert multiplicity_at(disc_n, ORIGIN) == 8
    cone = lowest_form(disc_n, ORIGIN)
    assert cone == P("2187*u^8+324*t^8")
    assert binary_form_squarefree(cone)


def test_triple_point_of_m2_branch():
    d = P("(1+t^2)*u^2+2*u-t^8+t^7-t^6-1")
    c = P("-2*u^4-2*u^3+6*u-2")
    assert multiplicity_at(4 * d**3 + c**2, ORIGIN) == 3


def test_multiplicity_off_curve():
    assert multiplicity_at(P("t+1"), ORIGIN) == 0
    assert lowest_form(P("t+u+5"), ORIGIN) == P("5")


def test_lowest_form_unique_term():
    xy = ("x", "y")
    assert lowest_form(P("y^3-x^4", xy), {"x": 0, "y": 0}) == P("y^3", xy)


def test_local_analysis_rejects_zero():
    with pytest.raises(ValueError):
        multiplicity_at(P("0"), ORIGIN)
    with pytest.raises(ValueError):
        lowest_form(P("0"), ORIGIN)


def test_multiplicity_at_translated_point():
    p = P("(t-1)^2*(u+2)^3+(t-1)^6")
    assert multiplicity_at(p, {"t": 1, "u": -2}) == 5


@given(polys(max_degree=5).filter(bool), polys(max_degree=5).filter(bool),
       st.integers(-2, 2), st.integers(-2, 2))
@settings(max_examples=100, deadline=None)
def test_multiplicity_additive(p, q, a, b):
    pt = {"t": a, "u": b}
    assert multiplicity_at(p * q, pt) == multiplicity_at(p, pt) + multiplicity_at(q, pt)


@given(polys(max_degree=6).filter(bool), st.integers(-2, 2), st.integers(-2, 2))
@settings(max_examples=60, deadline=None)
def test_lowest_form_degree_is_multiplicity(p, a, b):
    pt = {"t": a, "u": b}
    cone = lowest_form(p, pt)
    assert {sum(m) for m in cone.terms} == {multiplicity_at(p, pt)}


@pytest.mark.parametrize(
    "text,expected",
    [("2187*u^8+324*t^8", True), ("u^3", False), ("u*t*(u-t)", True),
     ("t^2*u", False), ("(t-u)^2*(t+u)", False), ("t^4+u^4", True)],
)
def test_binary_form_squarefree(text, expected):
    assert binary_form_squarefree(P(text)) is expected


def test_binary_form_errors():
    with pytest.raises(ValueError):
        binary_form_squarefree(P("t^2+u"))
    with pytest.raises(ValueError):
        binary_form_squarefree(P("x*y+z^2", ("x", "y", "z")))


@given(polys(max_degree=5).filter(lambda p: len(p.free_variables()) == 2))
@settings(max_examples=40, deadline=None)
def test_squarefree_agrees_with_sympy(p):
    # homogenise a random polynomial to degree 6 to get a binary form
    form = MultiPoly(TU, {(m[0], 6 - m[0]): c for m, c in p.terms.items() if m[0] <= 6})
    if form.is_zero():
        return
    sq = sympy.sqf_list(to_sympy(form))[1]
    assert binary_form_squarefree(form) is all(e == 1 for _, e in sq)


# -- resultants and roots -------------------------------------------------------

def test_resultant_discriminant_identity_symbolic():
    V = ("r", "s", "z")
    f = P("z^3+r*z+s", V)
    assert resultant_in(f, differentiate(f, "z"), "z") == P("4*r^3+27*s^2", V)


def test_resultant_specialised():
    V = ("z",)
    assert resultant_in(P("z^3+1", V), P("3*z^2", V), "z") == P("27", V)


def test_resultant_linear_sign_convention():
    V = ("a", "b", "z")
    assert resultant_in(P("z-a", V), P("z-b", V), "z") == P("a-b", V)


def test_resultant_of_constants_rejected():
    with pytest.raises(ValueError):
        resultant_in(P("t"), P("t+1"), "u")


@given(polys(max_degree=4, max_terms=4), polys(max_degree=4, max_terms=4))
@settings(max_examples=50, deadline=None)
def test_resultant_identity_random_specialisations(r, s):
    V = ("t", "u", "z")
    r, s = r.with_variables(V), s.with_variables(V)
    z = MultiPoly.var("z", V)
    f = z**3 + r * z + s
    assert resultant_in(f, differentiate(f, "z"), "z") == 4 * r**3 + 27 * s**2


def test_rational_roots_examples():
    z = ("z",)
    res = univariate_rational_roots(P("z^3-3*z+2", z))
    assert res.roots == [(-2, 1), (1, 2)] and res.cofactor_degree == 0
    res = univariate_rational_roots(P("z^2+1", z))
    assert res.roots == [] and res.cofactor_degree == 2
    assert univariate_rational_roots(P("t^8", ("t",))).roots == [(0, 8)]


def test_rational_roots_rejects_zero():
    with pytest.raises(ValueError):
        univariate_rational_roots(P("0", ("z",)))


@given(st.lists(st.fractions(-6, 6, max_denominator=5), min_size=1, max_size=5), st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_rational_roots_of_constructed_products(roots, extra):
    z = MultiPoly.var("z", ("z",))
    p = MultiPoly.constant(3, ("z",))
    for r in roots:
        p = p * (z - r)
    for _ in range(extra):
        p = p * (z**2 + 2)
    found = univariate_rational_roots(p)
    want = {}
    for r in roots:
        want[r] = want.get(r, 0) + 1
    assert dict(found.roots) == want
    assert found.cofactor_degree == 2 * extra
