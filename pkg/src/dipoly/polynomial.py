"""Sparse multivariate polynomials in (t, x, y, z) with exact coefficients.

Coefficients are Python ints (arbitrary precision) or, transiently after a
rational substitution, :class:`fractions.Fraction`.  Fractions with unit
denominator are normalised back to ints so that integer polynomials compare
equal however they were produced.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

VARS = ("t", "x", "y", "z")
_INDEX = {name: i for i, name in enumerate(VARS)}

Exponent = Tuple[int, int, int, int]
Number = Union[int, Fraction]
Rational = Fraction

ZERO_EXP: Exponent = (0, 0, 0, 0)


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _var_index(var: str) -> int:
    try:
        return _INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARS}") from None


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent 4-tuples to coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Number] | None = None):
        clean: Dict[Exponent, Number] = {}
        if terms:
            for exp, c in terms.items():
                if c == 0:
                    continue
                if len(exp) != 4 or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent tuple {exp!r}")
                clean[tuple(exp)] = _norm(c)
        self._terms = clean
        self._hash = None

    # -- construction ------------------------------------------------------

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Number]) -> "MultiPoly":
        # caller guarantees no zeros
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Number) -> "MultiPoly":
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        exp = [0, 0, 0, 0]
        exp[_var_index(name)] = power
        return cls({tuple(exp): 1})

    @classmethod
    def monomial(cls, c: Number = 1, t: int = 0, x: int = 0, y: int = 0, z: int = 0) -> "MultiPoly":
        return cls({(t, x, y, z): c})

    @classmethod
    def promote(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        return NotImplemented

    # -- basic protocol ----------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        other = MultiPoly.promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = MultiPoly.promote(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = _norm(s)
            else:
                out.pop(exp, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = MultiPoly.promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly.promote(other) - self

    def scale(self, c: Number) -> "MultiPoly":
        if c == 0:
            return MultiPoly()
        return MultiPoly._raw({e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        big, small = (self, other) if len(self._terms) >= len(other._terms) else (other, self)
        a, b = big._terms, small._terms
        if not b:
            return MultiPoly()
        if len(b) == 1:
            ((eb, cb),) = b.items()
            if eb == ZERO_EXP:
                return big.scale(cb)
            return MultiPoly._raw({
                (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]): _norm(ca * cb)
                for ea, ca in a.items()
            })
        out: Dict[Exponent, Number] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- queries -----------------------------------------------------------

    def degree_in(self, var: str) -> int:
        i = _var_index(var)
        return max((e[i] for e in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def coeff_of(self, var: str, k: int) -> "MultiPoly":
        """Collect the terms whose ``var`` exponent is exactly ``k``, with ``var`` removed."""
        i = _var_index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return MultiPoly._raw(out)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- substitution and evaluation --------------------------------------

    def substitute_const(self, var: str, value: Number) -> "MultiPoly":
        i = _var_index(var)
        value = Fraction(value)
        out: Dict[Exponent, Number] = {}
        for e, c in self._terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            key = tuple(e2)
            out[key] = out.get(key, 0) + c * value ** k
        return MultiPoly(out)

    def rename(self, src: str, dst: str) -> "MultiPoly":
        """Rename variable ``src`` to ``dst``; ``dst`` must not occur."""
        i, j = _var_index(src), _var_index(dst)
        if i == j:
            return self
        if self.degree_in(dst):
            raise ValueError(f"cannot rename {src} to {dst}: {dst} already occurs")
        out = {}
        for e, c in self._terms.items():
            e2 = list(e)
            e2[j], e2[i] = e2[i], 0
            out[tuple(e2)] = c
        return MultiPoly._raw(out)

    def subs(self, **values: Number) -> "MultiPoly":
        p = self
        for var, value in values.items():
            p = p.substitute_const(var, value)
        return p

    def eval(self, point: Mapping[str, Number] | None = None, **kw: Number) -> Fraction:
        """Exact value at ``point``; variables not occurring may be omitted."""
        vals = dict(point or {})
        vals.update(kw)
        xs = [Fraction(vals[v]) if v in vals else None for v in VARS]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for i, k in enumerate(e):
                if k:
                    if xs[i] is None:
                        raise ValueError(f"no value given for variable {VARS[i]!r}")
                    term *= xs[i] ** k
            total += term
        return total

    def reverse_in_x(self, n: int) -> "MultiPoly":
        """Reflect x-exponents k -> n - k."""
        if self.degree_in("x") > n:
            raise ValueError(f"degree in x is {self.degree_in('x')}, exceeds {n}")
        return MultiPoly._raw({(e[0], n - e[1], e[2], e[3]): c for e, c in self._terms.items()})

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lex order: total degree descending, then t > x > y > z."""
        return sorted(self._terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-k for k in ec[0])))

    def _render(self, latex: bool) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = ""
            for name, k in zip(VARS, exp):
                if k == 1:
                    mono += name
                elif k > 1:
                    mono += f"{name}^{{{k}}}" if latex else f"{name}^{k}"
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if isinstance(a, Fraction):
                coef = rf"\frac{{{a.numerator}}}{{{a.denominator}}}" if latex else f"({a})"
            else:
                coef = str(a)
            if mono and a == 1:
                coef = ""
            parts.append((sign, coef + mono))
        sep = " " if latex else ""
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f"{sep}{sign}{sep}{body}"
        return out

    def __str__(self) -> str:
        return self._render(latex=False)

    def latex(self) -> str:
        return self._render(latex=True)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def to_json_terms(self) -> list:
        rows = []
        for exp, c in self.sorted_terms():
            row = dict(zip(VARS, exp))
            row["c"] = str(c)
            rows.append(row)
        return rows

    def to_json(self) -> str:
        return json.dumps(self.to_json_terms())

    @classmethod
    def from_json_terms(cls, rows: Iterable[Mapping]) -> "MultiPoly":
        out: Dict[Exponent, Number] = {}
        for row in rows:
            exp = tuple(int(row.get(v, 0)) for v in VARS)
            c = Fraction(str(row["c"]))
            out[exp] = out.get(exp, 0) + c
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_terms(json.loads(text))

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Parse the plain text rendering, e.g. ``"x^2+2xy-3z"`` or ``"(1/2)x"``."""
        s = text.replace(" ", "").replace("*", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out: Dict[Exponent, Number] = {}
        pos = 0
        for m in _TERM_RE.finditer(s):
            if m.start() != pos or not m.group(0):
                break
            pos = m.end()
            sign = -1 if m.group("sign") == "-" else 1
            raw = m.group("frac") or m.group("int")
            body = m.group("mono")
            if raw is None and not body:
                raise ValueError(f"empty term in {text!r}")
            coef = Fraction(raw) if raw is not None else Fraction(1)
            exp = [0, 0, 0, 0]
            for vm in _VAR_RE.finditer(body):
                exp[_INDEX[vm.group(1)]] += int(vm.group(2) or 1)
            key = tuple(exp)
            out[key] = out.get(key, 0) + sign * coef
        if pos != len(s):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        return cls(out)


_TERM_RE = re.compile(
    r"(?P<sign>[+-])(?:\((?P<frac>-?\d+/\d+)\)|(?P<int>\d+))?(?P<mono>(?:[txyz](?:\^\d+)?)*)"
)
_VAR_RE = re.compile(r"([txyz])(?:\^(\d+))?")

t = MultiPoly.var("t")
x = MultiPoly.var("x")
y = MultiPoly.var("y")
z = MultiPoly.var("z")
ONE = MultiPoly.const(1)
ZERO = MultiPoly()


def falling_factorial(i: int) -> MultiPoly:
    """x(x-1)...(x-i+1), with the empty product for i = 0."""
    if i < 0:
        raise ValueError("falling factorial index must be nonnegative")
    p = ONE
    for k in range(1, i + 1):
        p = p * (x - (k - 1))
    return p


def coeff_of(p: MultiPoly, var: str, k: int) -> MultiPoly:
    return p.coeff_of(var, k)


def substitute_const(p: MultiPoly, var: str, value: Number) -> MultiPoly:
    return p.substitute_const(var, value)


def evaluate(p: MultiPoly, point: Mapping[str, Number]) -> Fraction:
    return p.eval(point)


def reverse_in_x(p: MultiPoly, n: int) -> MultiPoly:
    return p.reverse_in_x(n)


def degree_in(p: MultiPoly, var: str) -> int:
    return p.degree_in(var)


def is_zero(p: MultiPoly) -> bool:
    return p.is_zero()
