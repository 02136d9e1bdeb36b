from __future__ import annotations

import time
from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from tricover.polycore import MultiPoly

_TRANSFORMS = standard_transformations + (convert_xor,)


def to_sympy(p: MultiPoly) -> sympy.Expr:
    """Independent conversion through the printed text."""
    names = {v: sympy.Symbol(v) for v in p.variables}
    return sympy.expand(parse_expr(str(p), local_dict=names, transformations=_TRANSFORMS))


def sympy_terms(expr, variables) -> dict[tuple, Fraction]:
    poly = sympy.Poly(sympy.expand(expr), *[sympy.Symbol(v) for v in variables])
    return {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c != 0}


coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)


@st.composite
def polys(draw, variables=("t", "u"), max_degree=8, max_terms=6):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        total = draw(st.integers(0, max_degree))
        mon = [0] * n
        for _ in range(total):
            mon[draw(st.integers(0, n - 1))] += 1
        terms[tuple(mon)] = draw(coeffs)
    return MultiPoly(variables, terms)


# ---------------------------------------------------------------------------
# acceptance lines: one pass/fail line per criterion, printed in the summary

ACCEPTANCE: dict[int, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_passed = rep.passed


@pytest.fixture
def criterion(request):
    """Time a criterion and record its verdict against the pinned runtime limit."""
    marker = request.node.get_closest_marker("criterion")
    number, title, limit = marker.args
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    passed = getattr(request.node, "call_passed", False)
    in_time = elapsed < limit
    verdict = "PASS" if passed and in_time else "FAIL"
    note = "" if in_time else f", over the {limit:g}s limit"
    ACCEPTANCE[number] = f"criterion {number}: {verdict}  {title}  ({elapsed:.1f}s, limit {limit:g}s{note})"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
