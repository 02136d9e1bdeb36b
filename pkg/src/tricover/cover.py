"""Triple covers of F_3: equations, branch curves, singularities, classification.

A cover is stored through its structure data ``(a, b, c, d)``; it lives in
the total space of ``L1 + L2`` with fibre coordinates ``z`` (weight ``L1``)
and ``w`` (weight ``L2``) and is cut out by

    z^2 = a z + b w + A,   z w = -d z - a w - B,   w^2 = c z + d w + C,

with ``A = 2(a^2 - b d)``, ``B = a d - b c``, ``C = 2(d^2 - a c)``. Where
``b`` is a nonzero constant the variable ``w`` can be eliminated and the
cover is the cubic ``z^3 + r z + s = 0`` with ``r = 3(b d - a^2)`` and
``s = -2a^3 + 3 a b d - b^2 c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Mapping, Union

from . import f3geom
from .f3geom import CHART_VARS, DivisorClass, Section, SectionError, h0, intersect
from .idealsolver import (
    DEFAULT_SPAIR_BUDGET,
    Ideal,
    SolutionSet,
    groebner,
    is_unit_basis,
    rational_solutions,
)
from .polycore import (
    MultiPoly,
    binary_form_squarefree,
    differentiate,
    evaluate,
    exact_div,
    lowest_form,
    multiplicity_at,
    substitute,
    translate,
    univariate_rational_roots,
)

FIBER_VARS = ("z", "w")

# lex priority: fibre coordinates first so they are eliminated first
LEX_ORDER = {
    "V0": ("z", "w", "u", "t"),
    "V1": ("z", "w", "v", "s"),
    "W0": ("z", "w", "u_", "t"),
    "W1": ("z", "w", "v_", "s"),
}

# restriction defining the part of F_3 that a boundary chart must certify
BOUNDARY = {"V1": "s", "W0": "u_", "W1": "v_"}

CASE_INVARIANTS = {
    "M1": (9, 5),
    "M2": (8, 4),
    "M3": (7, 4),
    "M4_PinZ": (6, 4),
    "M4_PnotinZ": (6, 4),
    "N": (8, 4),
}


class WeightMismatch(ValueError):
    pass


class DegenerateCover(ValueError):
    pass


# ---------------------------------------------------------------------------
# data

@dataclass(frozen=True)
class TraceModulePreset:
    """Trace-zero module ``O(-L1) + O(-L2)``."""

    tag: str
    L1: DivisorClass
    L2: DivisorClass

    @classmethod
    def get(cls, tag: str) -> "TraceModulePreset":
        try:
            return PRESETS[tag]
        except KeyError:
            raise ValueError(f"unknown trace-module preset {tag!r}; expected one of {sorted(PRESETS)}") from None

    def abcd_weights(self) -> dict[str, DivisorClass]:
        L1, L2 = self.L1, self.L2
        return {"a": L1, "b": 2 * L1 - L2, "c": 2 * L2 - L1, "d": L2}

    def cubic_weights(self) -> dict[str, DivisorClass]:
        return {"r": 2 * self.L1, "s": 3 * self.L1}

    def branch_class(self) -> DivisorClass:
        return 2 * (self.L1 + self.L2)


PRESETS = {
    "Mi": TraceModulePreset("Mi", DivisorClass(2, 4), DivisorClass(3, 8)),
    "Mii": TraceModulePreset("Mii", DivisorClass(2, 5), DivisorClass(3, 7)),
    "N": TraceModulePreset("N", DivisorClass(2, 5), DivisorClass(4, 10)),
}


@dataclass(frozen=True)
class GeneralABCD:
    a: Section
    b: Section
    c: Section
    d: Section


@dataclass(frozen=True)
class CubicRS:
    r: Section
    s: Section


@dataclass(frozen=True)
class Cubic3DC:
    d: Section
    c: Section


CoverForm = Union[GeneralABCD, CubicRS, Cubic3DC]


@dataclass(frozen=True)
class CoverSpec:
    preset: TraceModulePreset
    form: CoverForm
    galois: bool = False
    name: str = ""

    def __post_init__(self):
        validate_weights(self)
        if self.galois and not _structurally_galois(self):
            raise WeightMismatch("a Galois cover needs a = d = 0 (r = 0 in cubic form)")

    @property
    def kind(self) -> str:
        return type(self.form).__name__

    def abcd(self) -> dict[str, Section]:
        """Structure data on V0; cubic forms are read with a = 0, b = 1."""
        w = self.preset.abcd_weights()
        form = self.form
        if isinstance(form, GeneralABCD):
            return {"a": form.a, "b": form.b, "c": form.c, "d": form.d}
        V = CHART_VARS["V0"]
        zero_a = Section(MultiPoly.zero(V), w["a"])
        one_b = Section(MultiPoly.constant(1, V), w["b"])
        if isinstance(form, Cubic3DC):
            return {"a": zero_a, "b": one_b, "c": form.c, "d": form.d}
        return {
            "a": zero_a,
            "b": one_b,
            "c": Section(-form.s.poly, w["c"]),
            "d": Section(form.r.poly * Fraction(1, 3), w["d"]),
        }


def _structurally_galois(spec: CoverSpec) -> bool:
    data = spec.abcd()
    return data["a"].poly.is_zero() and data["d"].poly.is_zero()


def validate_weights(spec: CoverSpec) -> None:
    form = spec.form
    if isinstance(form, GeneralABCD):
        want = spec.preset.abcd_weights()
        have = {k: getattr(form, k) for k in "abcd"}
    elif isinstance(form, CubicRS):
        want = spec.preset.cubic_weights()
        have = {"r": form.r, "s": form.s}
        if spec.preset.abcd_weights()["b"].a < 0:
            raise WeightMismatch("cubic form needs a constant b")
    elif isinstance(form, Cubic3DC):
        w = spec.preset.abcd_weights()
        want = {"d": w["d"], "c": w["c"]}
        have = {"d": form.d, "c": form.c}
    else:
        raise TypeError(f"unknown cover form {form!r}")
    for k, sec in have.items():
        if sec.chart != "V0":
            raise WeightMismatch(f"section {k} must be given on V0")
        if sec.weight != want[k]:
            raise WeightMismatch(f"section {k} has weight {sec.weight}, preset {spec.preset.tag} needs {want[k]}")


def make_spec(
    preset: str,
    form: str,
    sections: Mapping[str, str | MultiPoly],
    galois: bool = False,
    name: str = "",
) -> CoverSpec:
    """Build a spec from text (or polynomials) on V0, weights taken from the preset."""
    from .polycore import parse_poly

    P = TraceModulePreset.get(preset)
    V = CHART_VARS["V0"]

    def sec(key: str, weight: DivisorClass) -> Section:
        if key not in sections:
            raise KeyError(f"missing section {key!r} for form {form}")
        val = sections[key]
        poly = parse_poly(val, V) if isinstance(val, str) else val.with_variables(V)
        try:
            return Section(poly, weight)
        except SectionError as exc:
            raise WeightMismatch(f"section {key}: {exc}") from None

    if form == "GeneralABCD":
        w = P.abcd_weights()
        f: CoverForm = GeneralABCD(*(sec(k, w[k]) for k in "abcd"))
    elif form == "CubicRS":
        w = P.cubic_weights()
        f = CubicRS(sec("r", w["r"]), sec("s", w["s"]))
    elif form == "Cubic3DC":
        w = P.abcd_weights()
        f = Cubic3DC(sec("d", w["d"]), sec("c", w["c"]))
    else:
        raise ValueError(f"unknown form {form!r}")
    return CoverSpec(P, f, galois, name)


# ---------------------------------------------------------------------------
# equations

def build_general_equations(a: MultiPoly, b: MultiPoly, c: MultiPoly, d: MultiPoly) -> list[MultiPoly]:
    """The three relations (as ``lhs - rhs``) in the fibre coordinates ``z, w``."""
    base = a.variables
    for p in (b, c, d):
        for v in p.variables:
            if v not in base:
                base = base + (v,)
    names = FIBER_VARS + tuple(v for v in base if v not in FIBER_VARS)
    a, b, c, d = (p.with_variables(names) for p in (a, b, c, d))
    z = MultiPoly.var("z", names)
    w = MultiPoly.var("w", names)
    A = 2 * (a * a - b * d)
    B = a * d - b * c
    C = 2 * (d * d - a * c)
    return [
        z * z - (a * z + b * w + A),
        z * w - (-d * z - a * w - B),
        w * w - (c * z + d * w + C),
    ]


def cubic_coefficients(a: MultiPoly, b: MultiPoly, c: MultiPoly, d: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """``(r, s)`` with ``z^3 + r z + s = 0`` after eliminating ``w`` (multiplied through by b)."""
    r = 3 * (b * d - a * a)
    s = -2 * a**3 + 3 * a * b * d - b * b * c
    return r, s


def reduce_to_cubic(spec: CoverSpec) -> tuple[MultiPoly, MultiPoly]:
    """``(r, s)`` on V0; requires ``b`` to be a nonzero constant."""
    data = spec.abcd()
    b = data["b"].poly
    if not b.is_constant() or b.is_zero():
        raise DegenerateCover("b must be a nonzero constant to eliminate w")
    a, c, d = (data[k].poly for k in "acd")
    return cubic_coefficients(a, b, c, d)


def is_degenerate_cubic(r: MultiPoly, s: MultiPoly) -> bool:
    return r.is_zero() and s.is_zero()


# ---------------------------------------------------------------------------
# chart models
#
# Where b is a nonzero constant the cover is the hypersurface z^3 + r z + s.
# Elsewhere it is the relative cubic
#     b x^3 + 3a x^2 y + 3d x y^2 + c y^3 = 0
# inside the P^1-bundle of the trace-zero module: its ring of functions
# has the same multiplication table as the one above under z = 3w1 - a,
# w = -(3w2 + d) for the standard basis 1, w1, w2 of a binary cubic ring.
# The identification needs (a, b, c, d) to have no common zero; at a common
# zero every relation lies in the square of the maximal ideal, so the cover
# is singular there and that locus is checked separately.

# lex priority of the base coordinates on each chart
BASE_LEX = {ch: order[2:] for ch, order in LEX_ORDER.items()}


@dataclass
class LocalSystem:
    """An ideal whose zeros are the singular points of one affine piece."""

    label: str  # z: cubic model; x, y: bundle charts; abcd: common zeros of the data
    ideal: Ideal


@dataclass
class ChartModel:
    chart: str
    kind: str  # "cubic" or "bundle"
    sections: dict[str, MultiPoly]

    @property
    def base(self) -> tuple[str, str]:
        return BASE_LEX[self.chart]

    @property
    def equations(self) -> list[MultiPoly]:
        """The three fibre relations over ``(z, w) + base``."""
        s = self.sections
        eqs = build_general_equations(s["a"], s["b"], s["c"], s["d"])
        return [e.with_variables(FIBER_VARS + self.base) for e in eqs]

    def cubic(self) -> MultiPoly:
        names = ("z",) + self.base
        s = {k: p.with_variables(names) for k, p in self.sections.items()}
        r, q = cubic_coefficients(s["a"], s["b"], s["c"], s["d"])
        z = MultiPoly.var("z", names)
        return z**3 + r * z + q

    def binary_form(self, var: str) -> MultiPoly:
        """The relative cubic in the chart ``y = 1`` (var ``x``) or ``x = 1`` (var ``y``)."""
        names = (var,) + self.base
        s = {k: p.with_variables(names) for k, p in self.sections.items()}
        x = MultiPoly.var(var, names)
        lead, second, third, last = (
            (s["b"], s["a"], s["d"], s["c"]) if var == "x" else (s["c"], s["d"], s["a"], s["b"])
        )
        return lead * x**3 + 3 * second * x**2 + 3 * third * x + last

    def systems(self, restrict: str | None = None) -> list[LocalSystem]:
        """Ideals covering the whole singular locus over the chart (optionally over ``restrict = 0``)."""

        def extra(names):
            return [MultiPoly.var(restrict, names)] if restrict else []

        def jacobian(label, f, names, more=()):
            gens = [f] + [differentiate(f, v) for v in names] + list(more) + extra(names)
            return LocalSystem(label, Ideal.of(gens, names))

        if self.kind == "cubic":
            names = ("z",) + self.base
            return [jacobian("z", self.cubic(), names)]
        xs = ("x",) + self.base
        ys = ("y",) + self.base
        F = self.binary_form("x")
        G = self.binary_form("y")
        data = [p.with_variables(self.base) for p in self.sections.values() if not p.is_zero()]
        if not data:
            raise DegenerateCover("all structure data vanish identically")
        return [
            jacobian("x", F, xs),
            jacobian("y", G, ys, [MultiPoly.var("y", ys)]),
            LocalSystem("abcd", Ideal.of(data + extra(self.base), self.base)),
        ]

    def jacobian_minors(self) -> list[MultiPoly]:
        """Relations plus all 2x2 minors of their Jacobian over ``(z, w) + base``."""
        names = FIBER_VARS + self.base
        eqs = self.equations
        jac = [[differentiate(e, v) for v in names] for e in eqs]
        out = list(eqs)
        for r1, r2 in combinations(range(3), 2):
            for c1, c2 in combinations(range(len(names)), 2):
                m = jac[r1][c1] * jac[r2][c2] - jac[r1][c2] * jac[r2][c1]
                if not m.is_zero():
                    out.append(m)
        return out


def chart_sections(spec: CoverSpec, chart: str) -> dict[str, MultiPoly]:
    return {k: sec.on_chart(chart) for k, sec in spec.abcd().items()}


def chart_model(spec: CoverSpec, chart: str) -> ChartModel:
    secs = chart_sections(spec, chart)
    b = secs["b"]
    kind = "cubic" if b.is_constant() and not b.is_zero() else "bundle"
    return ChartModel(chart, kind, secs)


def cubic_polynomial(spec: CoverSpec) -> MultiPoly:
    """``z^3 + r z + s`` over ``(z, u, t)`` on V0, in the form the data was given."""
    names = ("z", "u", "t")
    z = MultiPoly.var("z", names)
    form = spec.form
    if isinstance(form, CubicRS):
        return z**3 + form.r.poly.with_variables(names) * z + form.s.poly.with_variables(names)
    if isinstance(form, Cubic3DC):
        return z**3 + 3 * form.d.poly.with_variables(names) * z - form.c.poly.with_variables(names)
    model = chart_model(spec, "V0")
    if model.kind != "cubic":
        raise DegenerateCover("b is not a nonzero constant; no cubic model on V0")
    return model.cubic().with_variables(names)


# ---------------------------------------------------------------------------
# branch locus

def general_discriminant(a: MultiPoly, b: MultiPoly, c: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Branch polynomial ``(4(bd - a^2)^3 + (2a^3 - 3abd + b^2 c)^2) / b^2``.

    For ``a = 0, b = 1`` this is ``4 d^3 + c^2``.
    """
    num = 4 * (b * d - a * a) ** 3 + (2 * a**3 - 3 * a * b * d + b * b * c) ** 2
    if b.is_zero():
        raise DegenerateCover("b vanishes identically; the branch divisor is not reduced")
    return exact_div(num, b * b)


def branch_discriminant(spec: CoverSpec, chart: str = "V0") -> MultiPoly:
    """Equation of the branch curve on ``chart``.

    Cubic ``z^3 + r z + s``: ``4 r^3 + 27 s^2``; the ``3d/c`` and general
    forms use the normalisation ``4 d^3 + c^2``.
    """
    form = spec.form
    if isinstance(form, CubicRS):
        r, s = form.r.on_chart(chart), form.s.on_chart(chart)
        D = 4 * r**3 + 27 * s * s
    elif isinstance(form, Cubic3DC):
        d, c = form.d.on_chart(chart), form.c.on_chart(chart)
        D = 4 * d**3 + c * c
    else:
        secs = chart_sections(spec, chart)
        D = general_discriminant(*(secs[k] for k in "abcd"))
    if D.is_zero():
        raise DegenerateCover("discriminant vanishes identically")
    return D.with_variables(CHART_VARS[chart])


def discriminant_constant(spec: CoverSpec) -> Fraction:
    """``Res_z(f, df/dz) = constant * branch_discriminant`` on V0 (b = 1 forms)."""
    return Fraction(1) if isinstance(spec.form, CubicRS) else Fraction(27)


# ---------------------------------------------------------------------------
# singularities of the cover

def singular_systems(spec: CoverSpec, chart: str = "V0", restrict: bool = False) -> list[LocalSystem]:
    return chart_model(spec, chart).systems(BOUNDARY[chart] if restrict else None)


def singular_ideal(spec: CoverSpec, chart: str = "V0", restrict: bool = False) -> Ideal:
    """Jacobian ideal of the cubic model ``z^3 + r z + s`` (needs a constant b on ``chart``)."""
    model = chart_model(spec, chart)
    if model.kind != "cubic":
        raise DegenerateCover(f"b is not a nonzero constant on {chart}; use singular_systems")
    return model.systems(BOUNDARY[chart] if restrict else None)[0].ideal


def _is_unit(I: Ideal, spair_budget: int) -> bool:
    # triviality does not depend on the order and grevlex is much cheaper
    return is_unit_basis(groebner(Ideal(I.generators, I.variables, "grevlex"), spair_budget))


def singular_locus_V0(spec: CoverSpec, spair_budget: int = DEFAULT_SPAIR_BUDGET) -> SolutionSet:
    """Rational singular points of the cover over V0.

    Points carry the base coordinates ``t, u`` and the fibre coordinate ``z``
    (and ``w`` when the cubic model is not available).
    """
    model = chart_model(spec, "V0")
    if model.kind == "cubic":
        I = model.systems()[0].ideal
        if _is_unit(I, spair_budget):
            return SolutionSet([], True, [])
        return rational_solutions(I, spair_budget)

    complete = True
    residual: list[dict] = []
    counts: dict[tuple, int] = {}
    degenerate: set[tuple] = set()
    for system in model.systems():
        if _is_unit(system.ideal, spair_budget):
            continue
        sol = rational_solutions(system.ideal, spair_budget)
        complete &= sol.complete_over_C
        residual += [dict(r, system=system.label) for r in sol.residual]
        for p in sol.points:
            key = tuple(p[v] for v in model.base)
            if system.label == "abcd":
                degenerate.add(key)
            else:
                counts[key] = counts.get(key, 0) + 1

    minors = model.jacobian_minors()
    points: list[dict[str, Fraction]] = []
    for key in sorted(set(counts) | degenerate):
        # a common zero of the data carries a single point of the cover
        expected = 1 if key in degenerate else counts[key]
        base_pt = dict(zip(model.base, key))
        fibre = Ideal.of([substitute(e, base_pt) for e in model.equations], FIBER_VARS)
        found = []
        for q in rational_solutions(fibre, spair_budget).points:
            full = dict(base_pt, **q)
            if all(evaluate(m, full) == 0 for m in minors):
                found.append(full)
        if len(found) != expected:
            complete = False
            residual.append({"system": "fibre", "at": {k: str(v) for k, v in base_pt.items()}, "degree": expected})
        points.extend(found)
    return SolutionSet(points, complete, residual)


@dataclass
class BoundaryCertificate:
    chart: str
    restriction: str
    systems: list[dict]
    trivial: bool

    def to_dict(self) -> dict:
        return {
            "chart": self.chart,
            "restriction": self.restriction,
            "systems": self.systems,
            "trivial": self.trivial,
        }


def boundary_certificate(spec: CoverSpec, chart: str, spair_budget: int = DEFAULT_SPAIR_BUDGET) -> BoundaryCertificate:
    entries = []
    for system in singular_systems(spec, chart, restrict=True):
        I = system.ideal
        G = groebner(Ideal(I.generators, I.variables, "grevlex"), spair_budget)
        entries.append(
            {
                "model": system.label,
                "variables": list(I.variables),
                "ideal": [str(g) for g in I.generators],
                "basis": [str(g) for g in G.generators],
                "trivial": is_unit_basis(G),
            }
        )
    return BoundaryCertificate(chart, f"{BOUNDARY[chart]}=0", entries, all(e["trivial"] for e in entries))


def c0_fast_path(spec: CoverSpec) -> bool | None:
    """For a = 0, b = 1 under Mi: True iff the top u-coefficient of c is a nonzero constant."""
    if spec.preset.tag != "Mi":
        return None
    data = spec.abcd()
    if not data["a"].poly.is_zero() or data["b"].poly != MultiPoly.constant(1, CHART_VARS["V0"]):
        return None
    c = data["c"].poly
    top = data["c"].weight.a
    lead = {m[0]: v for m, v in c.terms.items() if m[1] == top}
    return list(lead) == [0]


def check_smooth_over_infinity(
    spec: CoverSpec, spair_budget: int = DEFAULT_SPAIR_BUDGET
) -> tuple[bool, dict]:
    """Smoothness over the fibre ``s = 0`` and over the negative section.

    Each boundary piece is certified by Gröbner bases equal to ``{1}``.
    """
    certs = [boundary_certificate(spec, ch, spair_budget) for ch in ("V1", "W0", "W1")]
    ok = all(c.trivial for c in certs)
    cert = {"charts": [c.to_dict() for c in certs], "c0_nonzero": c0_fast_path(spec)}
    return ok, cert

# ---------------------------------------------------------------------------
# ramification and branch singularities

def is_totally_ramified_at(spec: CoverSpec, pt: Mapping[str, Fraction], chart: str = "V0") -> bool:
    """Single preimage: both fibre coordinates have characteristic polynomial x^3."""
    secs = chart_sections(spec, chart)
    a, b, c, d = (secs[k] for k in "abcd")
    base_pt = {v: pt[v] for v in CHART_VARS[chart]}
    rz, sz = cubic_coefficients(a, b, c, d)
    rw, sw = cubic_coefficients(d, c, b, a)
    return all(evaluate(p, base_pt) == 0 for p in (rz, sz, rw, sw))


@dataclass(frozen=True)
class SingularityType:
    kind: str  # Smooth | OrdinaryMultiple | TripleTriple | Other
    m: int = 0
    description: str = ""
    certificate: tuple = ()

    def __post_init__(self):
        # sorted so that reports survive a JSON round trip with sorted keys
        object.__setattr__(self, "certificate", tuple(sorted(self.certificate)))

    def label(self) -> str:
        if self.kind == "OrdinaryMultiple":
            return f"OrdinaryMultiple({self.m})"
        if self.kind == "Other":
            return f"Other({self.description})"
        return self.kind

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "description": self.description,
            "certificate": dict(self.certificate),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SingularityType":
        return cls(d["kind"], d["m"], d["description"], tuple(sorted(d["certificate"].items())))


def _as_binary(form: MultiPoly, x: str, y: str) -> MultiPoly:
    return form.with_variables((x, y))


def _power_of_rational_line(form: MultiPoly, x: str, y: str) -> tuple[Fraction, ...] | None:
    """If ``form = k * l^m`` with ``l`` a rational line, return ``l`` as ``(alpha, beta)``
    meaning ``alpha*x + beta*y``; otherwise None."""
    m = form.total_degree()
    g = substitute(form, {y: 1}).with_variables((x,))
    dx = g.degree(x)
    if dx == 0:
        # form = k y^m
        return (Fraction(0), Fraction(1)) if m >= 1 else None
    if dx != m:
        return None
    roots = univariate_rational_roots(g)
    if len(roots.roots) == 1 and roots.roots[0][1] == m:
        rho = roots.roots[0][0]
        return (Fraction(1), -rho)
    return None


def classify_branch_point(D: MultiPoly, pt: Mapping[str, Fraction]) -> SingularityType:
    """Multiplicity and tangent-cone analysis of the curve ``D = 0`` at ``pt``."""
    if D.is_zero():
        raise ValueError("branch polynomial is zero")
    base = D.variables if len(D.variables) == 2 else tuple(v for v in D.variables if v in pt)
    if len(base) != 2 or not set(D.free_variables()) <= set(base):
        raise ValueError(f"expected a plane curve, got variables {D.variables}")
    x, y = base
    D = D.with_variables((x, y))
    point = {x: Fraction(pt[x]), y: Fraction(pt[y])}
    m = multiplicity_at(D, point)
    if m <= 1:
        return SingularityType("Smooth", m, "", (("multiplicity", m),))
    cone = _as_binary(lowest_form(D, point), x, y)
    cert = [("multiplicity", m), ("tangent_cone", str(cone))]
    if binary_form_squarefree(cone):
        return SingularityType("OrdinaryMultiple", m, "", tuple(cert))
    if m != 3:
        return SingularityType("Other", m, f"non-ordinary point of multiplicity {m}", tuple(cert))
    line = _power_of_rational_line(cone, x, y)
    if line is None:
        return SingularityType("Other", 3, "triple point whose tangent cone is not a cubed line", tuple(cert))
    ok, info = _triple_after_blowup(D, point, x, y, line)
    cert.extend(info)
    if ok:
        return SingularityType("TripleTriple", 3, "", tuple(cert))
    return SingularityType("Other", 3, "cubed tangent line without an infinitely near ordinary triple point", tuple(cert))


def _triple_after_blowup(D, point, x, y, line) -> tuple[bool, list]:
    """Blow up once in the direction of ``line``; look for the infinitely near triple point."""
    alpha, beta = line
    q = translate(D, point)
    X, Y, Yp = "X", "Y", "Y1"
    names = (X, Y)
    Xp = MultiPoly.var(X, names)
    Yq = MultiPoly.var(Y, names)
    # new coordinates with the tangent line as {Y = 0}
    if alpha == 0:
        # line is y = 0
        sub = {x: Xp, y: Yq * (1 / beta)}
    else:
        # line alpha*x + beta*y = 0: take X = y, Y = alpha*x + beta*y
        sub = {x: (Yq - Xp * beta) * (1 / alpha), y: Xp}
    q2 = substitute(q, sub).with_variables(names)
    names2 = (X, Yp)
    Xb = MultiPoly.var(X, names2)
    Yb = MultiPoly.var(Yp, names2)
    blown = substitute(q2.with_variables((X, Y)), {Y: Xb * Yb}).with_variables(names2)
    strict = exact_div(blown, Xb**3)
    on_exc = substitute(strict, {X: 0}).with_variables((Yp,))
    info: list = [("strict_transform_on_exceptional", str(on_exc))]
    if on_exc.is_zero():
        info.append(("reason", "exceptional line is a component of the strict transform"))
        return False, info
    roots = univariate_rational_roots(on_exc)
    pts = [r for r, _ in roots.roots]
    if roots.cofactor_degree or pts != [Fraction(0)]:
        info.append(("reason", "strict transform meets the exceptional line in more than one point"))
        return False, info
    origin = {X: Fraction(0), Yp: Fraction(0)}
    m2 = multiplicity_at(strict, origin)
    info.append(("infinitely_near_multiplicity", m2))
    if m2 != 3:
        return False, info
    cone2 = lowest_form(strict, origin).with_variables(names2)
    info.append(("infinitely_near_tangent_cone", str(cone2)))
    return binary_form_squarefree(cone2), info


# ---------------------------------------------------------------------------
# invariants

def invariants_pushforward(preset: TraceModulePreset) -> tuple[int, int]:
    """``(p_g(X), chi(O_X))`` of a smooth cover with trace-zero module ``-L1 - L2``."""
    K = f3geom.canonical_class()
    L1, L2 = preset.L1, preset.L2
    pg = h0(K) + h0(K + L1) + h0(K + L2)
    twice = intersect(L1, L1 + K) + intersect(L2, L2 + K)
    if twice % 2:
        raise ValueError("Riemann-Roch term is not integral")
    chi = 3 + twice // 2
    return pg, chi


def fiber_genus(preset: TraceModulePreset) -> int:
    """Genus of the preimage of a general ruling (Hurwitz)."""
    D = preset.branch_class()
    simple = intersect(D - 2 * f3geom.SIGMA_INF, f3geom.RULING)
    twice = -6 + simple + 2
    if twice % 2:
        raise ValueError("odd ramification degree")
    return twice // 2 + 1


# ---------------------------------------------------------------------------
# classification

@dataclass
class SingularPoint:
    point: dict[str, Fraction]
    branch_type: SingularityType
    totally_ramified: bool

    def to_dict(self) -> dict:
        return {
            "point": {k: str(v) for k, v in self.point.items()},
            "branch_type": self.branch_type.to_dict(),
            "totally_ramified": self.totally_ramified,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SingularPoint":
        return cls(
            {k: Fraction(v) for k, v in d["point"].items()},
            SingularityType.from_dict(d["branch_type"]),
            d["totally_ramified"],
        )


@dataclass
class ClassificationReport:
    case_label: str
    K2: int | None
    pg: int | None
    smooth_over_infinity: bool
    singular_points: list[SingularPoint] = field(default_factory=list)
    certificates: dict[str, Any] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "case_label": self.case_label,
            "K2": self.K2,
            "pg": self.pg,
            "smooth_over_infinity": self.smooth_over_infinity,
            "singular_points": [p.to_dict() for p in self.singular_points],
            "certificates": self.certificates,
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationReport":
        return cls(
            d["case_label"],
            d["K2"],
            d["pg"],
            d["smooth_over_infinity"],
            [SingularPoint.from_dict(p) for p in d["singular_points"]],
            d["certificates"],
            list(d["diagnostics"]),
        )


def _label(case: str) -> tuple[str, int | None, int | None]:
    if case in CASE_INVARIANTS:
        return (case, *CASE_INVARIANTS[case])
    return ("Unclassified", None, None)


def classify_cover(spec: CoverSpec, spair_budget: int = DEFAULT_SPAIR_BUDGET) -> ClassificationReport:
    diagnostics: list[str] = []
    certs: dict[str, Any] = {}

    smooth_inf, inf_cert = check_smooth_over_infinity(spec, spair_budget)
    certs["infinity"] = inf_cert
    if not smooth_inf:
        bad = [c["chart"] for c in inf_cert["charts"] if not c["trivial"]]
        diagnostics.append(f"cover is singular over the boundary (charts {', '.join(bad)})")
        return ClassificationReport("Unclassified", None, None, False, [], certs, diagnostics)

    sol = singular_locus_V0(spec, spair_budget)
    certs["singular_locus_V0"] = {
        "systems": [
            {"model": sy.label, "variables": list(sy.ideal.variables), "ideal": [str(g) for g in sy.ideal.generators]}
            for sy in singular_systems(spec, "V0")
        ],
        "complete_over_C": sol.complete_over_C,
        "residual": sol.residual,
        "points": [{k: str(v) for k, v in p.items()} for p in sol.points],
    }
    if not sol.complete_over_C:
        diagnostics.append("singular locus has non-rational points; refusing to classify")
        return ClassificationReport("Unclassified", None, None, True, [], certs, diagnostics)

    D = branch_discriminant(spec, "V0")
    certs["branch_polynomial_V0"] = str(D)
    galois = spec.galois or _structurally_galois(spec)
    D0 = None
    if galois:
        c = spec.abcd()["c"].poly
        D0 = c
        certs["galois"] = {"D0": str(c), "branch_is_2D0": D == c * c}

    points: list[SingularPoint] = []
    for p in sol.points:
        base = {"t": p["t"], "u": p["u"]}
        curve = D0 if galois else D
        btype = classify_branch_point(curve, base)
        tr = is_totally_ramified_at(spec, base)
        points.append(SingularPoint(dict(p), btype, tr))

    tag = spec.preset.tag
    case = "Unclassified"
    if tag == "Mi":
        if not points:
            case = "M1"
        elif len(points) == 1:
            sp = points[0]
            bt = sp.branch_type
            if galois:
                if bt.kind == "OrdinaryMultiple" and bt.m == 3 and certs["galois"]["branch_is_2D0"]:
                    case = "M4_PinZ"
            elif not sp.totally_ramified:
                if bt.kind == "TripleTriple":
                    case = "M2"
                elif bt.kind == "OrdinaryMultiple" and bt.m == 4:
                    case = "M3"
    elif tag == "Mii":
        if not points:
            case = "M4_PnotinZ"
    elif tag == "N":
        if len(points) == 1:
            sp = points[0]
            if not sp.totally_ramified and sp.branch_type.kind == "OrdinaryMultiple" and sp.branch_type.m == 8:
                case = "N"
    if case == "Unclassified":
        diagnostics.append(
            f"no table entry for preset {tag} with "
            + (", ".join(f"{p.branch_type.label()} (totally ramified: {p.totally_ramified})" for p in points) or "no singular points")
        )
    label, K2, pg = _label(case)
    return ClassificationReport(label, K2, pg, True, points, certs, diagnostics)


def revalidate_point(D: MultiPoly, pt: Mapping[str, Fraction], m: int) -> bool:
    """All partials of order < m vanish at ``pt`` and some order-m partial does not."""
    from .polycore import all_partials

    for k in range(m):
        if any(evaluate(q, pt) != 0 for q in all_partials(D, k)):
            return False
    return any(evaluate(q, pt) != 0 for q in all_partials(D, m))
