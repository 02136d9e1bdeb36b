"""Search for cover data that the pipeline certifies as a given case.

Draws sparse random sections with small integer coefficients, runs the
classifier and stops at the first hit. The hit is printed in cover-file form.

    python3 scripts/find_witness.py --preset Mii --case M4_PnotinZ --terms 2 --seed 0
"""

from __future__ import annotations

import argparse
import random
import signal
import sys
import time
from dataclasses import dataclass

from tricover.cover import TraceModulePreset, classify_cover, make_spec
from tricover.f3geom import basis_polys
from tricover.idealsolver import ResourceCapExceeded
from tricover.polycore import MultiPoly


@dataclass
class SearchConfig:
    preset: str = "Mii"
    case: str = "M4_PnotinZ"
    form: str = "GeneralABCD"
    seed: int = 0
    tries: int = 200
    terms: int = 3
    coeff_bound: int = 3
    spair_budget: int = 20_000
    seconds: int = 30
    sparse: bool = False


class _Timeout(Exception):
    pass


def _alarm(signum, frame):
    raise _Timeout


def random_section(rng: random.Random, weight, cfg: SearchConfig) -> MultiPoly:
    basis = basis_polys(weight)
    # keep the constant and the highest pure u-power: the restriction to the
    # negative section is read off from the latter
    top = max(range(len(basis)), key=lambda i: basis[i].degree("u") - basis[i].degree("t"))
    chosen = {top, len(basis) - 1}
    chosen.update(rng.sample(range(len(basis)), min(cfg.terms, len(basis))))
    out = MultiPoly.zero(basis[0].variables)
    for i in sorted(chosen):
        k = 0
        while k == 0:
            k = rng.randint(-cfg.coeff_bound, cfg.coeff_bound)
        out = out + basis[i] * k
    return out


def sparse_data(rng: random.Random, cfg: SearchConfig) -> dict[str, MultiPoly]:
    """a = 0, b = u + (low t-terms), c and d with the pure powers needed at the boundary."""
    P = TraceModulePreset.get(cfg.preset)
    w = P.abcd_weights()
    V = basis_polys(w["a"])[0].variables
    t, u = MultiPoly.var("t", V), MultiPoly.var("u", V)

    def pick(weight, forced):
        out = forced
        for m in rng.sample(basis_polys(weight), cfg.terms):
            out = out + m * rng.choice([-2, -1, 1, 2])
        return out

    return {
        "a": MultiPoly.zero(V),
        "b": u + t ** w["b"].b * rng.choice([1, -1, 2]),
        "c": pick(w["c"], u ** min(w["c"].a, w["c"].b // 3)),
        "d": pick(w["d"], t ** w["d"].b + 1),
    }


def search(cfg: SearchConfig):
    rng = random.Random(cfg.seed)
    P = TraceModulePreset.get(cfg.preset)
    weights = P.abcd_weights() if cfg.form == "GeneralABCD" else P.cubic_weights()
    for attempt in range(cfg.tries):
        if cfg.sparse:
            secs = sparse_data(rng, cfg)
        else:
            secs = {k: random_section(rng, w, cfg) for k, w in weights.items()}
        spec = make_spec(cfg.preset, cfg.form, secs)
        t0 = time.time()
        signal.signal(signal.SIGALRM, _alarm)
        signal.alarm(cfg.seconds)
        try:
            rep = classify_cover(spec, cfg.spair_budget)
        except ResourceCapExceeded:
            print(f"#{attempt}: budget exceeded", file=sys.stderr)
            continue
        except _Timeout:
            print(f"#{attempt}: over {cfg.seconds}s", file=sys.stderr)
            continue
        finally:
            signal.alarm(0)
        note = rep.diagnostics[0] if rep.diagnostics else ""
        print(f"#{attempt}: {rep.case_label} ({time.time() - t0:.1f}s) {note}", file=sys.stderr)
        if rep.case_label == cfg.case:
            return secs
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(SearchConfig()).items():
        flag = f"--{name.replace('_', '-')}"
        if isinstance(val, bool):
            ap.add_argument(flag, action="store_true")
        else:
            ap.add_argument(flag, type=type(val), default=val)
    cfg = SearchConfig(**vars(ap.parse_args(argv)))
    hit = search(cfg)
    if hit is None:
        print("no witness found", file=sys.stderr)
        return 1
    print(f"preset = {cfg.preset}\nform = {cfg.form}")
    for k, p in hit.items():
        print(f'{k} = "{p}"')
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
