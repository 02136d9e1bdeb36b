"""Built-in datasets, the cover-file format and the replay of the recorded sessions."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from .cover import (
    CoverSpec,
    WeightMismatch,
    make_spec,
)
from .f3geom import CHART_VARS, DivisorClass, to_chart
from .idealsolver import DEFAULT_SPAIR_BUDGET, Ideal, groebner, rational_solutions
from .polycore import MultiPoly, PolyParseError, differentiate, parse_poly, substitute

DATASETS = ("M1", "M2", "M3", "M4_PinZ", "M4_PnotinZ", "N")

FORM_SECTIONS = {
    "GeneralABCD": ("a", "b", "c", "d"),
    "CubicRS": ("r", "s"),
    "Cubic3DC": ("d", "c"),
}
OPTION_KEYS = {"spair_budget": int, "chart": str}
HEADER_KEYS = ("name", "preset", "form", "galois", "expect")


# ---------------------------------------------------------------------------
# cover files

class CoverFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        where = f"{source}:{line}: " if line else f"{source}: "
        super().__init__(where + message)


@dataclass
class CoverFile:
    preset: str
    form: str
    sections: dict[str, str]
    galois: bool = False
    name: str = ""
    expect: str | None = None
    options: dict[str, Any] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)
    source: str = "<input>"

    def to_spec(self) -> CoverSpec:
        """Parse the section expressions and validate weights."""
        for key, text in self.sections.items():
            try:
                parse_poly(text, CHART_VARS["V0"])
            except PolyParseError as exc:
                raise CoverFileError(f"section {key}: {exc}", self.lines.get(key), self.source) from None
        try:
            return make_spec(self.preset, self.form, self.sections, self.galois, self.name)
        except (WeightMismatch, ValueError) as exc:
            raise CoverFileError(str(exc), None, self.source) from None


def _value(raw: str, lineno: int, source: str):
    raw = raw.strip()
    if raw.startswith('"'):
        try:
            val = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CoverFileError(f"bad quoted string: {exc.msg}", lineno, source) from None
        if not isinstance(val, str):
            raise CoverFileError("expected a quoted string", lineno, source)
        return val
    if raw in ("true", "false"):
        return raw == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    if raw.replace("_", "").isalnum():
        return raw
    raise CoverFileError(f"cannot read value {raw!r}", lineno, source)


def parse_cover_file(text: str, source: str = "<input>") -> CoverFile:
    """``key = value`` lines; ``#`` starts a comment; expressions are quoted strings."""
    entries: dict[str, Any] = {}
    lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise CoverFileError("expected 'key = value'", lineno, source)
        key, raw = stripped.split("=", 1)
        key = key.strip()
        if not key.isidentifier():
            raise CoverFileError(f"bad key {key!r}", lineno, source)
        if key in entries:
            raise CoverFileError(f"duplicate key {key!r}", lineno, source)
        entries[key] = _value(raw, lineno, source)
        lines[key] = lineno

    for req in ("preset", "form"):
        if req not in entries:
            raise CoverFileError(f"missing required key {req!r}", None, source)
    form = entries["form"]
    if form not in FORM_SECTIONS:
        raise CoverFileError(f"unknown form {form!r}; expected one of {sorted(FORM_SECTIONS)}", lines["form"], source)
    wanted = FORM_SECTIONS[form]
    sections = {}
    options = {}
    for key, val in entries.items():
        if key in HEADER_KEYS:
            continue
        if key in wanted:
            if not isinstance(val, str):
                raise CoverFileError(f"section {key} must be a quoted expression", lines[key], source)
            sections[key] = val
        elif key in OPTION_KEYS:
            if not isinstance(val, OPTION_KEYS[key]):
                raise CoverFileError(f"option {key} has the wrong type", lines[key], source)
            options[key] = val
        else:
            raise CoverFileError(f"unexpected key {key!r} for form {form}", lines[key], source)
    missing = [k for k in wanted if k not in sections]
    if missing:
        raise CoverFileError(f"form {form} needs sections {', '.join(missing)}", None, source)
    galois = entries.get("galois", False)
    if not isinstance(galois, bool):
        raise CoverFileError("galois must be true or false", lines.get("galois"), source)
    return CoverFile(
        preset=str(entries["preset"]),
        form=form,
        sections=sections,
        galois=galois,
        name=str(entries.get("name", "")),
        expect=entries.get("expect"),
        options=options,
        lines=lines,
        source=source,
    )


# ---------------------------------------------------------------------------
# packaged data

def _data(name: str) -> bytes:
    return resources.files("tricover").joinpath("data", name).read_bytes()


def dataset_text(name: str) -> str:
    if name not in DATASETS:
        raise KeyError(f"unknown dataset {name!r}; expected one of {', '.join(DATASETS)}")
    return _data(f"{name}.cover").decode()


def load_dataset(name: str) -> CoverFile:
    return parse_cover_file(dataset_text(name), f"{name}.cover")


def dataset_hash(name: str) -> str:
    return hashlib.sha256(_data(f"{name}.cover")).hexdigest()


def pinned_hashes() -> dict[str, str]:
    return json.loads(_data("datasets.json"))["sha256"]


def session_golden() -> dict:
    return json.loads(_data("sessions.json"))


# ---------------------------------------------------------------------------
# session replay

@dataclass
class Check:
    key: str
    status: str  # ok | erratum | mismatch
    expected: Any = None
    computed: Any = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"key": self.key, "status": self.status}
        if self.status != "ok":
            out["expected"] = self.expected
            out["computed"] = self.computed
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class SessionReplay:
    name: str
    steps: list[tuple[str, str]] = field(default_factory=list)  # (label, text)
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "mismatch" for c in self.checks)


def _compare_poly(key: str, computed: MultiPoly, expected_text: str, variables, errata: list[dict]) -> Check:
    expected = parse_poly(expected_text, variables)
    if computed == expected:
        return Check(key, "ok")
    diff = computed - expected
    for e in errata:
        if e["entry"] != key:
            continue
        fix = parse_poly(e["intended"], variables) - parse_poly(e["printed"], variables)
        if diff == fix:
            return Check(key, "erratum", expected_text, str(computed), f"printed {e['printed']}, intended {e['intended']}")
    return Check(key, "mismatch", expected_text, str(computed), f"difference {diff}")


def _points_text(points: list[dict[str, Fraction]], variables) -> list[dict[str, str]]:
    return sorted(({v: str(p[v]) for v in variables} for p in points), key=lambda d: tuple(d[v] for v in variables))


def _compare_points(key: str, computed: list[dict[str, str]], expected: list[dict[str, str]], note: str = "") -> Check:
    norm = lambda pts: sorted(tuple(sorted((k, str(Fraction(v))) for k, v in p.items())) for p in pts)
    if norm(computed) == norm(expected):
        return Check(key, "ok", note=note)
    return Check(key, "mismatch", expected, computed, note)


def _session_polys(model: str, inputs: dict[str, MultiPoly], variables) -> dict[str, MultiPoly]:
    f = substitute(parse_poly(model, tuple(variables) + tuple(inputs)), inputs).with_variables(variables)
    out = {"f": f}
    for v in variables:
        out["f" + v] = differentiate(f, v)
    return out


def _solve(system: list[MultiPoly], variables, budget: int):
    sol = rational_solutions(Ideal.of(system, variables), budget)
    G = groebner(Ideal.of(system, variables), budget)
    return sol, G


def replay_session(name: str, g: dict, budget: int = DEFAULT_SPAIR_BUDGET) -> SessionReplay:
    """Run one recorded session from its typed inputs and compare every printed output.

    Afterwards the typed inputs are compared with the built-in dataset and
    with the library's chart transition, and the system at infinity is
    solved again from the transitioned data.
    """
    rep = SessionReplay(name)
    errata = g["errata"]
    computed_only = set(g.get("computed", []))
    outputs = g["outputs"]

    def check_poly(key, poly, variables):
        if key in outputs:
            rep.checks.append(_compare_poly(key, poly, outputs[key], variables, errata))

    for chart in ("V0", "V1"):
        variables = tuple(g[f"variables_{chart}"])
        inputs = {k: parse_poly(v, variables) for k, v in g[f"inputs_{chart}"].items()}
        for k, p in inputs.items():
            rep.steps.append((f"{chart}/{k}", str(p)))
            check_poly(f"{chart}/{k}", p, variables)
        polys = _session_polys(g["model"], inputs, variables)
        system = []
        for entry in g[f"system_{chart}"]:
            p = polys[entry] if entry in polys else MultiPoly.var(entry, variables)
            system.append(p)
            rep.steps.append((f"{chart}/{entry}", str(p)))
            check_poly(f"{chart}/{entry}", p, variables)
        sol, G = _solve(system, variables, budget)
        rep.steps.append((f"{chart}/groebner", "[" + ", ".join(str(q) for q in G.generators) + "]"))
        pts = _points_text(sol.points, variables)
        rep.steps.append((f"{chart}/solutions", json.dumps(pts)))
        note = "regression value" if f"{chart}/solutions" in computed_only else ""
        if not sol.complete_over_C:
            rep.checks.append(Check(f"{chart}/solutions", "mismatch", outputs[f"{chart}/solutions"], pts, "non-rational solutions"))
        else:
            rep.checks.append(_compare_points(f"{chart}/solutions", pts, outputs[f"{chart}/solutions"], note))
        if chart == "V0":
            D = _discriminant(g["model"], inputs)
            rep.steps.append(("V0/D", str(D)))
            check_poly("V0/D", D, variables)

    _cross_check(rep, name, g, budget)
    return rep


def _discriminant(model: str, inputs: dict[str, MultiPoly]) -> MultiPoly:
    if "r" in inputs:
        return 4 * inputs["r"] ** 3 + 27 * inputs["s"] ** 2
    return 4 * inputs["d"] ** 3 + inputs["c"] ** 2


def _cross_check(rep: SessionReplay, name: str, g: dict, budget: int) -> None:
    spec = load_dataset(name).to_spec()
    data = _form_sections(spec)
    v0 = tuple(g["variables_V0"])
    v1 = tuple(g["variables_V1"])
    back = {lib: recorded for recorded, lib in g["rename_V1"].items()}
    lib_v1 = CHART_VARS["V1"]
    transitioned = {}
    for k, text in g["inputs_V0"].items():
        poly, weight = data[k]
        rep.checks.append(
            _compare_poly(f"inputs_V0/{k}", poly.with_variables(v0), text, v0, g["errata"])
        )
        on_v1 = to_chart(poly, weight, "V1")
        renamed = _rename(on_v1, lib_v1, back, v1)
        transitioned[k] = renamed
        rep.steps.append((f"transition/{k}", str(renamed)))
        rep.checks.append(_compare_poly(f"inputs_V1/{k}", renamed, g["inputs_V1"][k], v1, g["errata"]))
    polys = _session_polys(g["model"], transitioned, v1)
    system = [polys[e] if e in polys else MultiPoly.var(e, v1) for e in g["system_V1"]]
    sol, G = _solve(system, v1, budget)
    rep.steps.append(("transition/groebner", "[" + ", ".join(str(q) for q in G.generators) + "]"))
    pts = _points_text(sol.points, v1)
    rep.checks.append(
        _compare_points("transition/solutions", pts, g["outputs"]["V1/solutions"], "system at infinity from transitioned data")
    )


def _form_sections(spec: CoverSpec) -> dict[str, tuple[MultiPoly, DivisorClass]]:
    form = spec.form
    return {k: (getattr(form, k).poly, getattr(form, k).weight) for k in FORM_SECTIONS[spec.kind]}


def _rename(p: MultiPoly, src: tuple, mapping: dict[str, str], target: tuple) -> MultiPoly:
    names = tuple(mapping.get(v, v) for v in src)
    return MultiPoly(names, dict(p.terms)).with_variables(target)


def replay_sessions(budget: int = DEFAULT_SPAIR_BUDGET) -> list[SessionReplay]:
    golden = session_golden()["sessions"]
    return [replay_session(name, golden[name], budget) for name in ("N", "M2", "M3")]
