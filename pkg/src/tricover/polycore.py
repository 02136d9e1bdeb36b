"""Exact sparse multivariate polynomials over Q.

Coefficients are :class:`fractions.Fraction` (always reduced, positive
denominator). Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from sympy import factorint

Rational = Fraction
PlanePoint = Mapping[str, Fraction]

_MAX_EXP = 2**31 - 1


class PolyParseError(ValueError):
    """Malformed polynomial text. ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        caret = ""
        if text:
            caret = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{caret}")


class UndeclaredVariableError(PolyParseError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class MultiPoly:
    """Sparse polynomial: variable names plus ``{exponent tuple: coefficient}``."""

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        n = len(variables)
        clean: dict[tuple, Fraction] = {}
        for mon, c in (terms or {}).items():
            mon = tuple(mon)
            if len(mon) != n:
                raise ValueError(f"exponent {mon} does not match variables {variables}")
            for e in mon:
                if e < 0:
                    raise ValueError(f"negative exponent in {mon}")
                assert e <= _MAX_EXP, "exponent overflow"
            c = _as_fraction(c)
            if c:
                clean[mon] = clean.get(mon, Fraction(0)) + c
                if not clean[mon]:
                    del clean[mon]
        self.variables = variables
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        # trusted fast path: terms already clean
        p = object.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        c = _as_fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"{name!r} not among {variables}")
        mon = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {mon: Fraction(1)})

    # -- basic accessors ----------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def coefficient(self, mon: Mapping[str, int] | tuple) -> Fraction:
        if not isinstance(mon, tuple):
            mon = tuple(mon.get(v, 0) for v in self.variables)
        return self._terms.get(mon, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree(self, var: str) -> int:
        i = self._index(var)
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def free_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"variable {var!r} not among {self.variables}") from None

    # -- variable bookkeeping -----------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over ``variables`` (may reorder, add or drop unused names)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        keep = []
        for i, v in enumerate(self.variables):
            if v in pos:
                keep.append((i, pos[v]))
            elif any(m[i] for m in self._terms):
                raise ValueError(f"variable {v!r} occurs but is not in {variables}")
        n = len(variables)
        out = {}
        for m, c in self._terms.items():
            new = [0] * n
            for i, j in keep:
                new[j] = m[i]
            out[tuple(new)] = c
        return MultiPoly._raw(variables, out)

    def _align(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        names = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(names), other.with_variables(names)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(other, self.variables)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, q = self._align(other)
        out = dict(p._terms)
        for m, c in q._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(p.variables, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = _as_fraction(other)
            if not c:
                return MultiPoly.zero(self.variables)
            return MultiPoly._raw(self.variables, {m: a * c for m, a in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, q = self._align(other)
        out: dict[tuple, Fraction] = {}
        for m1, c1 in p._terms.items():
            for m2, c2 in q._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        for m in [m for m, c in out.items() if not c]:
            del out[m]
        for m in out:
            assert max(m, default=0) <= _MAX_EXP, "exponent overflow"
        return MultiPoly._raw(p.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_monomial(self, mon: tuple, c=1) -> "MultiPoly":
        c = _as_fraction(c)
        return MultiPoly._raw(
            self.variables,
            {tuple(a + b for a, b in zip(m, mon)): v * c for m, v in self._terms.items()} if c else {},
        )

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = MultiPoly.constant(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        p, q = self._align(other)
        return p._terms == q._terms

    def __hash__(self) -> int:
        if self._hash is None:
            items = frozenset(
                (tuple((v, e) for v, e in zip(self.variables, m) if e), c)
                for m, c in self._terms.items()
            )
            self._hash = hash(items)
        return self._hash

    # -- printing -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded lex order (descending), variables ranked as declared."""
        return sorted(self._terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({list(self.variables)!r}, {format_poly(self)!r})"


# ---------------------------------------------------------------------------
# printing and parsing

def _format_monomial(variables: Sequence[str], mon: tuple) -> str:
    parts = []
    for v, e in zip(variables, mon):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text: graded lex, integer or ``n/d`` coefficients, ``*`` and ``^``."""
    if not p._terms:
        return "0"
    out = []
    for i, (mon, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = _format_monomial(p.variables, mon)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(sign + body)
    return "".join(out)


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = list(self._tokenize())
        self.i = 0

    def _tokenize(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                yield ("int", int(text[i:j]), i)
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                yield ("name", text[i:j], i)
                i = j
            elif ch in "+-*/^()":
                yield (ch, ch, i)
                i += 1
            else:
                raise PolyParseError(f"unexpected character {ch!r}", i, text)
        yield ("end", None, len(text))

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolyParseError(f"expected {want}, found {got}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        p = self.expr()
        self.take("end")
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolyParseError("division only by a nonzero constant", pos, self.text)
                p = p * (1 / q.constant_value())
        return p

    def unary(self) -> MultiPoly:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise PolyParseError("exponent must be a non-negative integer literal", tok[2], self.text)
            self.take()
            base = base ** tok[1]
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return MultiPoly.constant(val, self.variables)
        if kind == "name":
            self.take()
            if val not in self.variables:
                raise UndeclaredVariableError(f"undeclared variable {val!r}", pos, self.text)
            return MultiPoly.var(val, self.variables)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        what = "end of input" if kind == "end" else repr(val)
        raise PolyParseError(f"unexpected {what}", pos, self.text)


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse ``text`` over the declared ``variables``.

    Grammar: integers, declared identifiers, ``+ - * ^``, parentheses and
    division by a constant (so that canonical output with rational
    coefficients parses back).
    """
    return _Parser(text, variables).parse()


# ---------------------------------------------------------------------------
# elementary operations

def arith(p: MultiPoly, q, op: str, k: int | None = None) -> MultiPoly:
    """Dispatch helper: ``op`` in {"add", "sub", "mul", "pow"}."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p ** (q if k is None else k)
    raise ValueError(f"unknown operation {op!r}")


def differentiate(p: MultiPoly, var: str) -> MultiPoly:
    i = p._index(var)
    out = {}
    for m, c in p._terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return MultiPoly._raw(p.variables, out)


def evaluate(p: MultiPoly, pt: PlanePoint) -> Fraction:
    vals = []
    for v in p.variables:
        if v in pt:
            vals.append(_as_fraction(pt[v]))
        elif any(m[p.variables.index(v)] for m in p._terms):
            raise KeyError(f"no value bound for variable {v!r}")
        else:
            vals.append(Fraction(0))
    total = Fraction(0)
    for m, c in p._terms.items():
        term = c
        for x, e in zip(vals, m):
            if e:
                term *= x**e
        total += term
    return total


def substitute(p: MultiPoly, values: Mapping[str, object]) -> MultiPoly:
    """Replace variables by rational constants or polynomials.

    Substituted variables stay in the variable list (with exponent 0) unless a
    polynomial value brings new names, which are appended.
    """
    consts = {v: _as_fraction(x) for v, x in values.items() if not isinstance(x, MultiPoly)}
    polys = {v: x for v, x in values.items() if isinstance(x, MultiPoly)}
    for v in list(consts) + list(polys):
        p._index(v)
    out_vars = p.variables
    for q in polys.values():
        out_vars = out_vars + tuple(v for v in q.variables if v not in out_vars)
    idx_const = [(p.variables.index(v), c) for v, c in consts.items()]
    idx_poly = [(p.variables.index(v), q.with_variables(out_vars)) for v, q in polys.items()]
    zero_out = set(i for i, _ in idx_const) | set(i for i, _ in idx_poly)
    n_out = len(out_vars)
    pow_cache: dict[tuple[int, int], MultiPoly] = {}

    def qpow(i, q, e):
        key = (i, e)
        if key not in pow_cache:
            pow_cache[key] = q**e
        return pow_cache[key]

    result: dict[tuple, Fraction] = {}
    for m, c in p._terms.items():
        coef = c
        for i, x in idx_const:
            if m[i]:
                coef *= x ** m[i]
        if not coef:
            continue
        base = [0] * n_out
        for i, e in enumerate(m):
            if i not in zero_out:
                base[i] = e
        piece = {tuple(base): coef}
        for i, q in idx_poly:
            if m[i]:
                qq = qpow(i, q, m[i])
                new: dict[tuple, Fraction] = {}
                for bm, bc in piece.items():
                    for qm, qc in qq._terms.items():
                        mm = tuple(a + b for a, b in zip(bm, qm))
                        new[mm] = new.get(mm, 0) + bc * qc
                piece = new
        for mm, cc in piece.items():
            s = result.get(mm, 0) + cc
            if s:
                result[mm] = s
            else:
                result.pop(mm, None)
    return MultiPoly._raw(out_vars, result)


def translate(p: MultiPoly, pt: PlanePoint) -> MultiPoly:
    """``p(x + pt)``: move ``pt`` to the origin."""
    shifts = {v: _as_fraction(c) for v, c in pt.items() if v in p.variables and c}
    if not shifts:
        return p
    return substitute(p, {v: MultiPoly.var(v, p.variables) + c for v, c in shifts.items()})


def _require_point(p: MultiPoly, pt: PlanePoint) -> None:
    for v in p.free_variables():
        if v not in pt:
            raise KeyError(f"no value bound for variable {v!r}")


def multiplicity_at(p: MultiPoly, pt: PlanePoint) -> int:
    if p.is_zero():
        raise ValueError("multiplicity of the zero polynomial is undefined")
    _require_point(p, pt)
    q = translate(p, pt)
    return min(sum(m) for m in q._terms)


def lowest_form(p: MultiPoly, pt: PlanePoint) -> MultiPoly:
    """Homogeneous lowest-degree part of ``p`` after moving ``pt`` to the origin."""
    if p.is_zero():
        raise ValueError("lowest form of the zero polynomial is undefined")
    _require_point(p, pt)
    q = translate(p, pt)
    m = min(sum(k) for k in q._terms)
    return MultiPoly._raw(q.variables, {k: c for k, c in q._terms.items() if sum(k) == m})


def is_homogeneous(p: MultiPoly) -> bool:
    return len({sum(m) for m in p._terms}) <= 1


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """``p / q`` when ``q`` divides ``p`` exactly; ValueError otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p, q = p._align(q)
    key = lambda m: (sum(m), m)
    lq = max(q._terms, key=key)
    cq = q._terms[lq]
    rem = dict(p._terms)
    quot: dict[tuple, Fraction] = {}
    while rem:
        lm = max(rem, key=key)
        diff = tuple(a - b for a, b in zip(lm, lq))
        if min(diff) < 0:
            raise ValueError("polynomial division is not exact")
        c = rem[lm] / cq
        quot[diff] = c
        for m, a in q._terms.items():
            mm = tuple(x + y for x, y in zip(m, diff))
            s = rem.get(mm, 0) - c * a
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return MultiPoly._raw(p.variables, quot)


def coefficients_in(p: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficients of ``p`` as a polynomial in ``var`` (index = power)."""
    i = p._index(var)
    deg = p.degree(var)
    buckets: list[dict] = [dict() for _ in range(max(deg, 0) + 1)]
    for m, c in p._terms.items():
        buckets[m[i]][m[:i] + (0,) + m[i + 1:]] = c
    return [MultiPoly._raw(p.variables, b) for b in buckets]


# ---------------------------------------------------------------------------
# resultants

def _bareiss_det(mat: list[list[MultiPoly]], variables: tuple) -> MultiPoly:
    n = len(mat)
    a = [row[:] for row in mat]
    sign = 1
    prev = MultiPoly.constant(1, variables)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(variables)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev) if not prev.is_constant() else num * (1 / prev.constant_value())
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> list[list[MultiPoly]]:
    f, g = f._align(g)
    fc = coefficients_in(f, var)[::-1]
    gc = coefficients_in(g, var)[::-1]
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = MultiPoly.zero(f.variables)
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def resultant_in(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant eliminating ``var``; ``f``'s rows come first.

    With this convention ``Res(z - a, z - b) = a - b`` and
    ``Res(z^3 + r z + s, 3 z^2 + r) = 4 r^3 + 27 s^2``.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    f, g = f._align(g)
    f._index(var)
    m, n = f.degree(var), g.degree(var)
    if m == 0 and n == 0:
        raise ValueError(f"both polynomials are constant in {var!r}")
    if m == 0:
        return f**n
    if n == 0:
        return g**m
    return _bareiss_det(sylvester_matrix(f, g, var), f.variables)


# ---------------------------------------------------------------------------
# univariate helpers (dense coefficient lists, lowest degree first)

def _to_dense(p: MultiPoly) -> tuple[str, list[Fraction]]:
    free = p.free_variables()
    if len(free) > 1:
        raise ValueError(f"expected a univariate polynomial, got variables {free}")
    if not free:
        return (p.variables[0] if p.variables else "x"), [p.constant_value()]
    v = free[0]
    i = p.variables.index(v)
    coeffs = [Fraction(0)] * (p.degree(v) + 1)
    for m, c in p._terms.items():
        coeffs[m[i]] = c
    return v, coeffs


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _uni_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[i + k] -= c * x
        a.pop()
        _trim(a)
    return q, a


def uni_gcd(a: list, b: list) -> list:
    """Monic gcd of dense univariate polynomials."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [x / lc for x in a]


def uni_derivative(a: list) -> list:
    return [a[i] * i for i in range(1, len(a))]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for prime, e in factorint(n).items():
        divs = [d * prime**k for d in divs for k in range(e + 1)]
    return divs


class RationalRoots(NamedTuple):
    roots: list[tuple[Fraction, int]]
    cofactor_degree: int


def univariate_rational_roots(p: MultiPoly) -> RationalRoots:
    """All rational roots with multiplicity, plus the degree left over."""
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    _, coeffs = _to_dense(p)
    coeffs = _trim(coeffs)
    roots: list[tuple[Fraction, int]] = []
    k = 0
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        k += 1
    if k:
        roots.append((Fraction(0), k))
    if len(coeffs) <= 1:
        return RationalRoots(roots, 0)
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    # candidates from the squarefree part keep the divisor lists small
    sqf = _sqf_part(ints)
    lead, const = sqf[-1], sqf[0]
    f1 = sum(sqf)
    fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(sqf))
    cands: set[Fraction] = set()
    for q in _divisors(lead):
        for a in _divisors(const):
            for num in (a, -a):
                # p/q root of integer poly F implies (q - p) | F(1), (q + p) | F(-1)
                if f1 and (q - num) and f1 % (q - num):
                    continue
                if fm1 and (q + num) and fm1 % (q + num):
                    continue
                cands.add(Fraction(num, q))
    work = [Fraction(x) for x in ints]
    for r in sorted(cands):
        mult = 0
        while len(work) > 1:
            quot, rem = _uni_divmod(work, [-r, Fraction(1)])
            if rem:
                break
            work = quot
            mult += 1
        if mult:
            roots.append((r, mult))
    roots.sort()
    return RationalRoots(roots, len(_trim(work)) - 1)


def _sqf_part(ints: list[int]) -> list[int]:
    a = [Fraction(x) for x in ints]
    g = uni_gcd(a, uni_derivative(a))
    q, _ = _uni_divmod(a, g) if len(g) > 1 else (a, [])
    den = math.lcm(*(c.denominator for c in q))
    out = [int(c * den) for c in q]
    h = math.gcd(*out)
    return [x // h for x in out]


def binary_form_squarefree(form: MultiPoly) -> bool:
    """True iff the binary form has no repeated linear factor over C."""
    if form.is_zero():
        raise ValueError("zero form")
    if len(form.variables) != 2:
        raise ValueError(f"binary form needs exactly two variables, got {form.variables}")
    if not is_homogeneous(form):
        raise ValueError("form is not homogeneous")
    x, y = form.variables
    deg = form.total_degree()
    g = substitute(form, {y: 1}).with_variables((x, y))
    # factors of y are the roots "at infinity" of the dehomogenised form
    if deg - g.degree(x) > 1:
        return False
    _, dense = _to_dense(g)
    if len(dense) <= 2:
        return True
    return len(uni_gcd(dense, uni_derivative(dense))) <= 1


def monomials(p: MultiPoly) -> Iterable[dict[str, int]]:
    for m in p._terms:
        yield dict(zip(p.variables, m))


def all_partials(p: MultiPoly, order: int) -> list[MultiPoly]:
    """Every partial derivative of exact total ``order`` (with repetition of mixed ones)."""
    out = []
    for combo in product(p.variables, repeat=order):
        q = p
        for v in combo:
            q = differentiate(q, v)
        out.append(q)
    return out
