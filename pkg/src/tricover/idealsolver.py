"""Gröbner bases over Q and rational solutions of zero-dimensional systems."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polycore import MultiPoly, evaluate, substitute, univariate_rational_roots

DEFAULT_SPAIR_BUDGET = 100_000


class ResourceCapExceeded(RuntimeError):
    """The S-pair budget ran out before the computation finished."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"S-pair budget of {budget} exhausted")


class NotZeroDimensional(ValueError):
    pass


class GroebnerVerificationError(AssertionError):
    pass


def _lex_key(m):
    return m


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


ORDER_KEYS = {"lex": _lex_key, "grevlex": _grevlex_key}


@dataclass(frozen=True)
class Ideal:
    """Generators over a shared variable list; the list order is the variable priority."""

    generators: tuple[MultiPoly, ...]
    variables: tuple[str, ...]
    order: str = "lex"
    is_groebner: bool = False

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        if self.order not in ORDER_KEYS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(
            self, "generators", tuple(g.with_variables(self.variables) for g in self.generators)
        )

    @classmethod
    def of(cls, generators: Sequence[MultiPoly], variables: Sequence[str], order: str = "lex") -> "Ideal":
        return cls(tuple(generators), tuple(variables), order)

    def __str__(self) -> str:
        return "[" + ", ".join(str(g) for g in self.generators) + "]"


@dataclass
class SolutionSet:
    points: list[dict[str, Fraction]]
    complete_over_C: bool
    residual: list[dict] = field(default_factory=list)

    def as_tuples(self, variables: Sequence[str]) -> set[tuple]:
        return {tuple(p[v] for v in variables) for p in self.points}


# ---------------------------------------------------------------------------
# internal representation: dict {monomial tuple: Fraction}, monic where it matters

class _Engine:
    def __init__(self, nvars: int, order: str, budget: int, strategy: str = "normal"):
        self.key = ORDER_KEYS[order]
        self.strategy = strategy
        self.n = nvars
        self.budget = budget
        self.spairs = 0

    def lm(self, f: dict) -> tuple:
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        c = f[self.lm(f)]
        if c == 1:
            return f
        inv = 1 / c
        return {m: a * inv for m, a in f.items()}

    def reduce(self, f: dict, basis: list[tuple[tuple, dict]]) -> dict:
        """Full reduction of ``f`` by monic ``basis`` entries ``(lm, poly)``."""
        key = self.key
        f = dict(f)
        heap = [(_Neg(key(m)), m) for m in f]
        heapq.heapify(heap)
        result: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = f.get(m)
            if c is None:
                continue
            del f[m]
            for lg, g in basis:
                if all(a >= b for a, b in zip(m, lg)):
                    shift = tuple(a - b for a, b in zip(m, lg))
                    for gm, gc in g.items():
                        if gm == lg:
                            continue
                        mm = tuple(a + b for a, b in zip(gm, shift))
                        old = f.get(mm)
                        if old is None:
                            f[mm] = -c * gc
                            heapq.heappush(heap, (_Neg(key(mm)), mm))
                        else:
                            new = old - c * gc
                            if new:
                                f[mm] = new
                            else:
                                del f[mm]
                    break
            else:
                result[m] = c
        return result

    def spoly(self, f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
        lcm = tuple(max(a, b) for a, b in zip(lf, lg))
        sf = tuple(a - b for a, b in zip(lcm, lf))
        sg = tuple(a - b for a, b in zip(lcm, lg))
        out = {}
        for m, c in f.items():
            out[tuple(a + b for a, b in zip(m, sf))] = c
        for m, c in g.items():
            mm = tuple(a + b for a, b in zip(m, sg))
            v = out.get(mm, 0) - c
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out

    def buchberger(self, polys: list[dict]) -> list[dict]:
        key = self.key
        polys = [self.monic(p) for p in polys if p]
        # reduce the input against itself first; keeps sugar honest and drops duplicates
        polys.sort(key=lambda p: key(self.lm(p)))
        G: list[int] = []
        store: list[tuple[tuple, dict, int]] = []  # (lm, poly, sugar)
        pairs: list[tuple[int, int]] = []

        def lcm(a, b):
            return tuple(max(x, y) for x, y in zip(a, b))

        def divides(a, b):
            return all(x <= y for x, y in zip(a, b))

        def coprime(a, b):
            return all(not (x and y) for x, y in zip(a, b))

        def update(h: int):
            nonlocal G, pairs
            lh = store[h][0]
            C = [(h, g) for g in G]
            D: list[tuple[int, int]] = []
            while C:
                pair = C.pop()
                g1 = pair[1]
                l1 = lcm(lh, store[g1][0])
                if coprime(lh, store[g1][0]) or not any(
                    divides(lcm(lh, store[g2][0]), l1) for _, g2 in C + D
                ):
                    D.append(pair)
            E = [(h, g) for h_, g in D if not coprime(lh, store[g][0])]
            kept = []
            for g1, g2 in pairs:
                l12 = lcm(store[g1][0], store[g2][0])
                if (
                    divides(lh, l12)
                    and lcm(store[g1][0], lh) != l12
                    and lcm(lh, store[g2][0]) != l12
                ):
                    continue
                kept.append((g1, g2))
            pairs = kept + E
            G = [g for g in G if not divides(lh, store[g][0])] + [h]

        def add(p: dict, sugar: int):
            p = self.monic(p)
            store.append((self.lm(p), p, sugar))
            update(len(store) - 1)

        for p in polys:
            basis = [(store[g][0], store[g][1]) for g in G]
            r = self.reduce(p, basis)
            if r:
                add(r, max(sum(m) for m in p))

        def pair_sugar(pair):
            i, j = pair
            li, lj = store[i][0], store[j][0]
            l = lcm(li, lj)
            return max(store[i][2] + sum(l) - sum(li), store[j][2] + sum(l) - sum(lj))

        if self.strategy == "sugar":
            select_key = lambda pr: (pair_sugar(pr), key(lcm(store[pr[0]][0], store[pr[1]][0])))
        else:
            select_key = lambda pr: key(lcm(store[pr[0]][0], store[pr[1]][0]))

        while pairs:
            best = min(range(len(pairs)), key=lambda k: select_key(pairs[k]))
            i, j = pairs.pop(best)
            self.spairs += 1
            if self.spairs > self.budget:
                raise ResourceCapExceeded(self.budget)
            sug = pair_sugar((i, j))
            s = self.spoly(store[i][1], store[i][0], store[j][1], store[j][0])
            if not s:
                continue
            basis = sorted(((store[g][0], store[g][1]) for g in G), key=lambda b: key(b[0]))
            r = self.reduce(s, basis)
            if r:
                add(r, sug)
                if len(r) == 1 and not any(next(iter(r))):
                    # unit ideal
                    return [{(0,) * self.n: Fraction(1)}]
        return self.interreduce([store[g][1] for g in G])

    def interreduce(self, polys: list[dict]) -> list[dict]:
        key = self.key
        polys = [self.monic(p) for p in polys]
        polys.sort(key=lambda p: key(self.lm(p)))
        minimal: list[dict] = []
        for p in polys:
            lp = self.lm(p)
            if not any(all(a <= b for a, b in zip(self.lm(q), lp)) for q in minimal):
                minimal.append(p)
        out = []
        for i, p in enumerate(minimal):
            others = [(self.lm(q), q) for j, q in enumerate(minimal) if j != i]
            lp = self.lm(p)
            tail = {m: c for m, c in p.items() if m != lp}
            red = self.reduce(tail, others)
            red[lp] = p[lp]
            out.append(red)
        out.sort(key=lambda p: key(self.lm(p)), reverse=True)
        return out


class _Neg:
    """Reverses comparison so heapq pops the largest monomial first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _to_dicts(I: Ideal) -> list[dict]:
    return [dict(g.terms) for g in I.generators]


def _from_dict(d: dict, variables: tuple) -> MultiPoly:
    return MultiPoly(variables, d)


# ---------------------------------------------------------------------------
# public API

def groebner(I: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET, verify: bool = True) -> Ideal:
    """Reduced Gröbner basis of ``I`` for its monomial order.

    Raises :class:`ResourceCapExceeded` when more than ``spair_budget``
    S-pairs are processed.
    """
    gens = [g for g in _to_dicts(I) if g]
    if not gens:
        raise ValueError("generators must be nonzero")
    eng = _Engine(len(I.variables), I.order, spair_budget)
    basis = eng.buchberger(gens)
    G = Ideal(tuple(_from_dict(b, I.variables) for b in basis), I.variables, I.order, True)
    if verify:
        for g in I.generators:
            if not normal_form(g, G).is_zero():
                raise GroebnerVerificationError(f"generator {g} does not reduce to zero")
    return G


def normal_form(p: MultiPoly, G: Ideal) -> MultiPoly:
    """Remainder of ``p`` on division by the Gröbner basis ``G`` (zero iff ``p`` ∈ ideal)."""
    eng = _Engine(len(G.variables), G.order, DEFAULT_SPAIR_BUDGET)
    basis = []
    for g in G.generators:
        d = eng.monic(dict(g.terms))
        basis.append((eng.lm(d), d))
    p = p.with_variables(G.variables)
    return _from_dict(eng.reduce(dict(p.terms), basis), G.variables)


def leading_monomial(p: MultiPoly, order: str = "lex") -> tuple:
    return max(p.terms, key=ORDER_KEYS[order])


def s_polynomial(f: MultiPoly, g: MultiPoly, order: str = "lex") -> MultiPoly:
    f, g = f._align(g)
    eng = _Engine(len(f.variables), order, 0)
    fd, gd = eng.monic(dict(f.terms)), eng.monic(dict(g.terms))
    return _from_dict(eng.spoly(fd, eng.lm(fd), gd, eng.lm(gd)), f.variables)


def satisfies_buchberger_criterion(G: Ideal) -> bool:
    """Every S-polynomial of ``G`` reduces to zero modulo ``G``."""
    gens = G.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not normal_form(s_polynomial(gens[i], gens[j], G.order), G).is_zero():
                return False
    return True


def is_unit_basis(G: Ideal) -> bool:
    return len(G.generators) == 1 and G.generators[0].is_constant() and not G.generators[0].is_zero()


def is_trivial(I: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET) -> bool:
    """True iff 1 ∈ I, i.e. the generators have no common zero over C."""
    G = I if I.is_groebner else groebner(I, spair_budget)
    return is_unit_basis(G)


def is_zero_dimensional(G: Ideal) -> bool:
    n = len(G.variables)
    lms = [leading_monomial(g, G.order) for g in G.generators]
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            return False
    return True


def rational_solutions(I: Ideal, spair_budget: int = DEFAULT_SPAIR_BUDGET) -> SolutionSet:
    """All rational common zeros of a zero-dimensional ideal.

    Works on the reduced lex basis, solving for the lowest-priority variable
    first and back-substituting. Non-rational roots met along the way are
    recorded in ``residual`` and clear ``complete_over_C``.
    """
    if I.order != "lex":
        I = Ideal(I.generators, I.variables, "lex")
    G = I if I.is_groebner else groebner(I, spair_budget)
    if is_unit_basis(G):
        return SolutionSet([], True, [])
    if not is_zero_dimensional(G):
        raise NotZeroDimensional(f"ideal over {G.variables} is not zero-dimensional")
    variables = G.variables
    n = len(variables)
    # basis elements grouped by the highest-priority variable they involve
    layers: list[list[MultiPoly]] = [[] for _ in range(n)]
    for g in G.generators:
        lm = leading_monomial(g, "lex")
        first = next(i for i, e in enumerate(lm) if e) if any(lm) else n - 1
        layers[first].append(g)

    partial: list[dict[str, Fraction]] = [{}]
    complete = True
    residual: list[dict] = []
    for i in range(n - 1, -1, -1):
        v = variables[i]
        nxt = []
        for pt in partial:
            uni = []
            for g in layers[i]:
                h = substitute(g, pt) if pt else g
                if not h.is_zero():
                    uni.append(h.with_variables((v,)))
            if not uni:
                raise NotZeroDimensional(f"no eliminant for {v} at {pt}")
            gcd = _poly_gcd(uni)
            roots = univariate_rational_roots(gcd)
            if roots.cofactor_degree:
                complete = False
                residual.append(
                    {"variable": v, "at": {k: str(x) for k, x in pt.items()}, "degree": roots.cofactor_degree}
                )
            for r, _ in roots.roots:
                q = dict(pt)
                q[v] = r
                nxt.append(q)
        partial = nxt
    points = []
    for pt in partial:
        if any(evaluate(g, pt) != 0 for g in I.generators):
            raise GroebnerVerificationError(f"back-substituted point {pt} is not a common zero")
        points.append({v: pt[v] for v in variables})
    points.sort(key=lambda p: tuple(p[v] for v in variables))
    return SolutionSet(points, complete, residual)


def _poly_gcd(polys: list[MultiPoly]) -> MultiPoly:
    from .polycore import _to_dense, uni_gcd

    var = polys[0].variables[0]
    g: list = []
    for p in polys:
        _, dense = _to_dense(p)
        g = uni_gcd(g, dense) if g else uni_gcd(dense, [])
    return MultiPoly((var,), {(i,): c for i, c in enumerate(g) if c})
