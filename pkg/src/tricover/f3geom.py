"""The Hirzebruch surface F_3 in its affine charts.

Divisor classes are written ``a*sigma_inf + b*R``. The charts are

* ``V0`` with coordinates ``(t, u)`` and ``V1`` with ``(s, v)``, covering
  ``F_3`` minus the negative section; glued by ``t = 1/s``;
* ``W0`` with ``(t, u_)`` and ``W1`` with ``(s, v_)``, where ``u_ = 1/u`` and
  ``v_ = 1/v``, covering a neighbourhood of the negative section
  (``u_ = 0`` resp. ``v_ = 0``).

A section of weight ``(a, b)`` is a polynomial on ``V0`` whose monomials
``t^k u^j`` satisfy ``j <= a`` and ``k <= b - 3j``. The same monomial reads
``s^(b-k-3j) v^j`` on ``V1``, ``t^k u_^(a-j)`` on ``W0`` and
``s^(b-k-3j) v_^(a-j)`` on ``W1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .polycore import MultiPoly

CHART_VARS = {
    "V0": ("t", "u"),
    "V1": ("s", "v"),
    "W0": ("t", "u_"),
    "W1": ("s", "v_"),
}


@dataclass(frozen=True, order=True)
class DivisorClass:
    a: int
    b: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


SIGMA_INF = DivisorClass(1, 0)
RULING = DivisorClass(0, 1)
SIGMA_0 = DivisorClass(1, 3)


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    """sigma_inf^2 = -3, sigma_inf.R = 1, R^2 = 0."""
    return -3 * d1.a * d2.a + d1.a * d2.b + d1.b * d2.a


def canonical_class() -> DivisorClass:
    return DivisorClass(-2, -5)


def h0(d: DivisorClass) -> int:
    if d.a < 0 or d.b < 0:
        return 0
    return sum(d.b - 3 * j + 1 for j in range(min(d.a, d.b // 3) + 1))


def section_basis(d: DivisorClass) -> list[tuple[int, int]]:
    """Exponent pairs ``(k, j)`` of the monomials ``t^k u^j`` spanning H^0(d)."""
    if d.a < 0:
        raise ValueError(f"no sections for negative sigma_inf coefficient {d}")
    if d.b < 0:
        return []
    return [(k, j) for j in range(min(d.a, d.b // 3) + 1) for k in range(d.b - 3 * j + 1)]


def basis_polys(d: DivisorClass, chart: str = "V0") -> list[MultiPoly]:
    """The basis monomials as polynomials on ``chart``, in canonical order."""
    vars_ = CHART_VARS["V0"]
    out = [MultiPoly(vars_, {(k, j): 1}) for k, j in section_basis(d)]
    if chart != "V0":
        out = [to_chart(p, d, chart) for p in out]
    out.sort(key=lambda p: p.sorted_terms()[0][0], reverse=True)
    out.sort(key=lambda p: sum(p.sorted_terms()[0][0]), reverse=True)
    return out


def _monomial_ok(k: int, j: int, d: DivisorClass) -> bool:
    return 0 <= j <= d.a and 0 <= k <= d.b - 3 * j


def validate_section(f: MultiPoly, d: DivisorClass, chart: str = "V0") -> bool:
    """True iff every monomial of ``f`` belongs to the weight-``d`` basis on ``chart``."""
    x, y = CHART_VARS[chart]
    extra = set(f.free_variables()) - {x, y}
    if extra:
        return False
    if f.is_zero():
        return True
    g = f.with_variables((x, y))
    for (e1, e2), _ in g:
        if chart == "V0":
            k, j = e1, e2
        elif chart == "V1":
            j = e2
            k = d.b - 3 * j - e1
        elif chart == "W0":
            k, j = e1, d.a - e2
        else:
            j = d.a - e2
            k = d.b - 3 * j - e1
        if not _monomial_ok(k, j, d):
            return False
    return True


class SectionError(ValueError):
    pass


def to_chart(
    f: MultiPoly,
    weight: DivisorClass,
    chart: str,
    fiber: Mapping[str, DivisorClass] | None = None,
) -> MultiPoly:
    """Rewrite a weight-``weight`` expression given on ``V0`` in another chart.

    ``fiber`` assigns weights to extra (fibre coordinate) variables, which keep
    their names; a term ``t^k u^j prod(z_i^e_i)`` is a section of
    ``weight - sum(e_i * w_i)`` in the base variables, times the fibre
    monomial.
    """
    fiber = dict(fiber or {})
    base = CHART_VARS["V0"]
    allowed = set(base) | set(fiber)
    stray = set(f.free_variables()) - allowed
    if stray:
        raise SectionError(f"unexpected variables {sorted(stray)} in section")
    fnames = tuple(fiber)
    src_vars = base + fnames
    g = f.with_variables(src_vars)
    x, y = CHART_VARS[chart]
    out_vars = (x, y) + fnames
    out = {}
    for mon, c in g:
        k, j = mon[0], mon[1]
        fe = mon[2:]
        rest = weight
        for name, e in zip(fnames, fe):
            rest = rest - fiber[name] * e
        if not _monomial_ok(k, j, rest):
            raise SectionError(f"monomial t^{k}*u^{j} is not a section of weight {rest}")
        if chart == "V0":
            new = (k, j)
        elif chart == "V1":
            new = (rest.b - k - 3 * j, j)
        elif chart == "W0":
            new = (k, rest.a - j)
        elif chart == "W1":
            new = (rest.b - k - 3 * j, rest.a - j)
        else:
            raise ValueError(f"unknown chart {chart!r}")
        out[new + tuple(fe)] = c
    return MultiPoly(out_vars, out)


def from_v1(g: MultiPoly, weight: DivisorClass) -> MultiPoly:
    """Inverse of the V0 -> V1 transition: ``s^j ... `` back to ``t, u``."""
    h = g.with_variables(CHART_VARS["V1"])
    out = {}
    for (e, j), c in h:
        k = weight.b - 3 * j - e
        if not _monomial_ok(k, j, weight):
            raise SectionError(f"monomial s^{e}*v^{j} is not a section of weight {weight} on V1")
        out[(k, j)] = c
    return MultiPoly(CHART_VARS["V0"], out)


@dataclass(frozen=True)
class Section:
    """A polynomial tagged with its bundle weight and chart, validated on construction."""

    poly: MultiPoly
    weight: DivisorClass
    chart: str = "V0"

    def __post_init__(self):
        if self.weight.a < 0:
            raise SectionError(f"weight {self.weight} has no sections")
        if not validate_section(self.poly, self.weight, self.chart):
            raise SectionError(f"{self.poly} is not a section of weight {self.weight} on {self.chart}")
        object.__setattr__(self, "poly", self.poly.with_variables(CHART_VARS[self.chart]))

    def transition(self) -> "Section":
        """V0 -> V1: ``g(s, v) = s^b f(1/s, v s^-3)``."""
        if self.chart != "V0":
            raise SectionError("transition starts from a V0 section")
        return Section(to_chart(self.poly, self.weight, "V1"), self.weight, "V1")

    def on_chart(self, chart: str) -> MultiPoly:
        if self.chart != "V0":
            raise SectionError("chart changes start from a V0 section")
        return to_chart(self.poly, self.weight, chart)

    def __mul__(self, other: "Section") -> "Section":
        if self.chart != other.chart:
            raise SectionError("sections live on different charts")
        return Section(self.poly * other.poly, self.weight + other.weight, self.chart)


def transition(f: Section) -> Section:
    return f.transition()


def h0_table(classes: Sequence[DivisorClass]) -> dict[DivisorClass, int]:
    return {d: h0(d) for d in classes}
