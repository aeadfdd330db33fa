"""Exact rational-function arithmetic in x1..xr and h over the rationals.

A RatFun keeps its numerator as a sparse polynomial and its denominator as a
multiset of degree-one forms.  Every denominator that the engine produces is a
product of such forms, so cancellation never needs a multivariate gcd: it is
trial division of the numerator by each candidate linear factor.

Variables: x1..xr are coordinates on the Cartan subalgebra (pairings with
simple coroots), h is the loop-rotation equivariant parameter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class RatFunError(Exception):
    """Base class for rational-function errors."""


class PoleError(RatFunError):
    """Evaluation point lies on a pole."""


class PoleCollapseError(RatFunError):
    """A substitution annihilated a denominator factor."""


class NotInvertibleError(RatFunError):
    """Numerator is not a constant times a product of degree-one forms."""


class ParseError(RatFunError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# degree-one forms


@dataclass(frozen=True)
class DegreeOneForm:
    """A linear form a1*x1 + ... + ar*xr + b*h (no constant term)."""

    xcoeffs: tuple[Fraction, ...]
    hcoeff: Fraction

    @staticmethod
    def make(xcoeffs, hcoeff=0) -> "DegreeOneForm":
        return DegreeOneForm(tuple(_frac(c) for c in xcoeffs), _frac(hcoeff))

    @property
    def nx(self) -> int:
        return len(self.xcoeffs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.xcoeffs + (self.hcoeff,)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def shift_h(self, c) -> "DegreeOneForm":
        return DegreeOneForm(self.xcoeffs, self.hcoeff + _frac(c))

    def scale(self, c) -> "DegreeOneForm":
        c = _frac(c)
        return DegreeOneForm(tuple(c * a for a in self.xcoeffs), c * self.hcoeff)

    def evaluate(self, point) -> Fraction:
        if len(point) != self.nx + 1:
            raise ValueError("point has wrong length")
        return sum((c * _frac(p) for c, p in zip(self.coeffs, point)), Fraction(0))

    def substitute(self, images: "list[DegreeOneForm]") -> "DegreeOneForm":
        """Apply x_i -> images[i]; h maps to itself."""
        if len(images) != self.nx:
            raise ValueError("need one image per x variable")
        nx = images[0].nx if images else self.nx
        xc = [Fraction(0)] * nx
        hc = self.hcoeff
        for c, img in zip(self.xcoeffs, images):
            if not c:
                continue
            for j in range(nx):
                xc[j] += c * img.xcoeffs[j]
            hc += c * img.hcoeff
        return DegreeOneForm(tuple(xc), hc)

    def canonical(self) -> "tuple[Fraction, DegreeOneForm]":
        """Return (s, f) with self == s*f, f primitive-integer with positive
        leading coefficient."""
        coeffs = self.coeffs
        if not any(coeffs):
            raise ValueError("zero form has no canonical representative")
        den_lcm = lcm(*(c.denominator for c in coeffs if c))
        num_gcd = gcd(*(abs(c.numerator * den_lcm // c.denominator) for c in coeffs if c))
        scale = Fraction(num_gcd, den_lcm)
        lead = next(c for c in coeffs if c)
        if lead < 0:
            scale = -scale
        inv = 1 / scale
        return scale, DegreeOneForm(tuple(inv * c for c in self.xcoeffs), inv * self.hcoeff)

    def sort_key(self):
        return tuple(self.coeffs)

    def to_polynomial(self) -> "Polynomial":
        terms = {}
        for i, c in enumerate(self.xcoeffs):
            if c:
                terms[_unit_exp(self.nx, i)] = c
        if self.hcoeff:
            terms[_unit_exp(self.nx, self.nx)] = self.hcoeff
        return Polynomial(self.nx, terms)

    def to_json(self):
        return {"x": [str(c) for c in self.xcoeffs], "h": str(self.hcoeff)}

    @staticmethod
    def from_json(obj) -> "DegreeOneForm":
        return DegreeOneForm.make([Fraction(c) for c in obj["x"]], Fraction(obj["h"]))

    def __str__(self) -> str:
        return _format_poly(self.to_polynomial())


def _unit_exp(nx: int, i: int) -> tuple[int, ...]:
    e = [0] * (nx + 1)
    e[i] = 1
    return tuple(e)


# ---------------------------------------------------------------------------
# sparse polynomials


class Polynomial:
    """Sparse polynomial in x1..xr, h with Fraction coefficients.

    Exponent keys are tuples of length nx+1; the last slot is the h power.
    """

    __slots__ = ("nx", "terms")

    def __init__(self, nx: int, terms: dict[tuple[int, ...], Fraction]):
        self.nx = nx
        self.terms = terms

    # -- constructors

    @staticmethod
    def zero(nx: int) -> "Polynomial":
        return Polynomial(nx, {})

    @staticmethod
    def const(c, nx: int) -> "Polynomial":
        c = _frac(c)
        return Polynomial(nx, {(0,) * (nx + 1): c} if c else {})

    @staticmethod
    def variable(i: int, nx: int) -> "Polynomial":
        if not 0 <= i < nx:
            raise ValueError(f"variable index {i} out of range")
        return Polynomial(nx, {_unit_exp(nx, i): Fraction(1)})

    @staticmethod
    def hvar(nx: int) -> "Polynomial":
        return Polynomial(nx, {_unit_exp(nx, nx): Fraction(1)})

    # -- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * (self.nx + 1), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic

    def _check(self, other: "Polynomial"):
        if self.nx != other.nx:
            raise ValueError("mixed variable counts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial(self.nx, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial(self.nx, terms)

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        if not c:
            return Polynomial.zero(self.nx)
        return Polynomial(self.nx, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1, self.nx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.nx == other.nx and self.terms == other.terms

    __hash__ = None  # mutable dict inside

    # -- evaluation / substitution

    def evaluate(self, point) -> Fraction:
        if len(point) != self.nx + 1:
            raise ValueError("point has wrong length")
        pt = [_frac(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for p, k in zip(pt, e):
                if k:
                    v *= p**k
            total += v
        return total

    def substitute(self, images: list[DegreeOneForm]) -> "Polynomial":
        """Ring homomorphism x_i -> images[i], h -> h."""
        if len(images) != self.nx:
            raise ValueError("need one image per x variable")
        nx_out = images[0].nx if images else self.nx
        image_polys = [img.to_polynomial() for img in images]
        powers: list[dict[int, Polynomial]] = [dict() for _ in range(self.nx)]
        out = Polynomial.zero(nx_out)
        for e, c in self.terms.items():
            term = Polynomial.const(c, nx_out)
            for i in range(self.nx):
                k = e[i]
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    cache[k] = image_polys[i] ** k
                term = term * cache[k]
            if e[-1]:
                term = term * (Polynomial.hvar(nx_out) ** e[-1])
            out = out + term
        return out

    def divide_by_form(self, form: DegreeOneForm) -> "Polynomial | None":
        """Exact quotient self/form, or None if form does not divide self."""
        if form.nx != self.nx:
            raise ValueError("mixed variable counts")
        entries = [(i, c) for i, c in enumerate(form.coeffs) if c]
        if not entries:
            raise ValueError("division by zero form")
        pivot, cp = entries[0]
        rem = dict(self.terms)
        quo: dict[tuple[int, ...], Fraction] = {}
        maxd = max((e[pivot] for e in rem), default=0)
        for d in range(maxd, 0, -1):
            for e in [e for e in rem if e[pivot] == d]:
                c = rem.pop(e)
                qe = e[:pivot] + (d - 1,) + e[pivot + 1:]
                qc = c / cp
                quo[qe] = quo.get(qe, Fraction(0)) + qc
                for vi, fc in entries[1:]:
                    me = list(qe)
                    me[vi] += 1
                    me_t = tuple(me)
                    s = rem.get(me_t, Fraction(0)) - qc * fc
                    if s:
                        rem[me_t] = s
                    else:
                        rem.pop(me_t, None)
        if rem:
            return None
        return Polynomial(self.nx, {e: c for e, c in quo.items() if c})

    def to_json(self):
        items = sorted(self.terms.items(), reverse=True)
        names = [f"x{i + 1}" for i in range(self.nx)] + ["h"]
        return [
            {"coeff": str(c), "powers": {names[i]: k for i, k in enumerate(e) if k}}
            for e, c in items
        ]

    @staticmethod
    def from_json(obj, nx: int) -> "Polynomial":
        terms = {}
        for item in obj:
            e = [0] * (nx + 1)
            for name, k in item["powers"].items():
                idx = nx if name == "h" else int(name[1:]) - 1
                e[idx] = int(k)
            terms[tuple(e)] = Fraction(item["coeff"])
        return Polynomial(nx, terms)

    def __str__(self) -> str:
        return _format_poly(self)


# ---------------------------------------------------------------------------
# linear-factor extraction (for reciprocals)


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_roots(coeffs: list[Fraction]) -> set[Fraction]:
    """All rational roots of sum(coeffs[k] * v^k)."""
    den = lcm(*(c.denominator for c in coeffs if c))
    ic = [int(c * den) for c in coeffs]
    roots: set[Fraction] = set()
    while ic and ic[0] == 0:
        roots.add(Fraction(0))
        ic = ic[1:]
    if len(ic) <= 1:
        return roots
    lead = ic[-1]
    const = ic[0]
    for p in _int_divisors(const):
        for q in _int_divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand**k for k, c in enumerate(ic)) == 0:
                    roots.add(cand)
    return roots


_CANDIDATE_CAP = 4096


def _find_linear_factor(p: Polynomial) -> DegreeOneForm:
    """One linear factor of a homogeneous p (degree >= 1), else raise."""
    nx = p.nx
    nvars = nx + 1
    if p.total_degree() == 1:
        coeffs = [Fraction(0)] * nvars
        for e, c in p.terms.items():
            coeffs[e.index(1)] = c
        return DegreeOneForm(tuple(coeffs[:nx]), coeffs[nx])
    present = sorted({i for e in p.terms for i, k in enumerate(e) if k})
    v = present[0]
    k = max(e[v] for e in p.terms)
    lead = {e[:v] + (0,) + e[v + 1:]: c for e, c in p.terms.items() if e[v] == k}
    lead_poly = Polynomial(nx, lead)
    if not lead_poly.is_constant():
        # factors not involving the pivot variable live in the leading coefficient
        f = _find_linear_factor(lead_poly)
        if p.divide_by_form(f) is None:
            raise NotInvertibleError("numerator is not a product of degree-one forms")
        return f
    # every factor involves the pivot; harvest slope candidates per variable
    slope_sets: list[list[Fraction]] = []
    others = [j for j in range(nvars) if j != v]
    for j in others:
        restricted = [Fraction(0)] * (k + 1)
        ok = True
        for e, c in p.terms.items():
            if any(e[t] for t in range(nvars) if t not in (v, j)):
                continue
            restricted[e[v]] += c if e[j] + e[v] == p.total_degree() else 0
        # roots of the bivariate restriction in v (y_j set to 1)
        if not restricted[k]:
            ok = False
        slopes = sorted(-r for r in _rational_roots(restricted)) if ok else []
        if not slopes:
            slopes = [Fraction(0)]
        slope_sets.append(slopes)
    count = 1
    for s in slope_sets:
        count *= len(s)
        if count > _CANDIDATE_CAP:
            raise NotInvertibleError("too many linear-factor candidates")
    from itertools import product

    for combo in product(*slope_sets):
        coeffs = [Fraction(0)] * nvars
        coeffs[v] = Fraction(1)
        for j, s in zip(others, combo):
            coeffs[j] = s
        f = DegreeOneForm(tuple(coeffs[:nx]), coeffs[nx])
        if p.divide_by_form(f) is not None:
            return f
    raise NotInvertibleError("numerator is not a product of degree-one forms")


def factor_into_forms(p: Polynomial) -> tuple[Fraction, list[DegreeOneForm]]:
    """Write p = const * product(forms) with canonical forms, or raise."""
    if p.is_zero():
        raise NotInvertibleError("zero has no reciprocal")
    if not p.is_homogeneous():
        raise NotInvertibleError("numerator is not a product of degree-one forms")
    forms: list[DegreeOneForm] = []
    cur = p
    while cur.total_degree() > 0:
        f = _find_linear_factor(cur)
        s, canon = f.canonical()
        nxt = cur.divide_by_form(canon)
        if nxt is None:
            raise NotInvertibleError("numerator is not a product of degree-one forms")
        forms.append(canon)
        cur = nxt
    return cur.constant_value(), forms


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True, eq=False)
class RatFun:
    """num / prod(form^mult); den forms are canonical, sorted, and coprime to num."""

    num: Polynomial
    den: tuple[tuple[DegreeOneForm, int], ...]

    # -- constructors

    @staticmethod
    def _make(num: Polynomial, den: dict[DegreeOneForm, int]) -> "RatFun":
        if num.is_zero():
            return RatFun(num, ())
        reduced: dict[DegreeOneForm, int] = {}
        for form, mult in den.items():
            while mult > 0:
                q = num.divide_by_form(form)
                if q is None:
                    break
                num = q
                mult -= 1
            if mult:
                reduced[form] = mult
        return RatFun(num, tuple(sorted(reduced.items(), key=lambda fm: fm[0].sort_key())))

    @staticmethod
    def from_factors(const, num_forms, den_forms, nx: int) -> "RatFun":
        """const * prod(num_forms) / prod(den_forms)."""
        num = Polynomial.const(const, nx)
        for f in num_forms:
            if f.is_zero():
                raise ValueError("zero form in numerator factors")
            num = num * f.to_polynomial()
        den: dict[DegreeOneForm, int] = {}
        for f in den_forms:
            if f.is_zero():
                raise ValueError("zero form in denominator factors")
            s, canon = f.canonical()
            num = num.scale(1 / s)
            den[canon] = den.get(canon, 0) + 1
        return RatFun._make(num, den)

    @staticmethod
    def zero(nx: int) -> "RatFun":
        return RatFun(Polynomial.zero(nx), ())

    @staticmethod
    def const(c, nx: int) -> "RatFun":
        return RatFun(Polynomial.const(c, nx), ())

    @staticmethod
    def one(nx: int) -> "RatFun":
        return RatFun.const(1, nx)

    @staticmethod
    def var(i: int, nx: int) -> "RatFun":
        return RatFun(Polynomial.variable(i, nx), ())

    @staticmethod
    def hvar(nx: int) -> "RatFun":
        return RatFun(Polynomial.hvar(nx), ())

    @staticmethod
    def from_form(f: DegreeOneForm) -> "RatFun":
        return RatFun(f.to_polynomial(), ())

    # -- basics

    @property
    def nx(self) -> int:
        return self.num.nx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _den_dict(self) -> dict[DegreeOneForm, int]:
        return dict(self.den)

    def _check(self, other: "RatFun"):
        if self.nx != other.nx:
            raise ValueError("mixed variable counts")

    # -- field operations

    def __add__(self, other: "RatFun") -> "RatFun":
        self._check(other)
        da, db = self._den_dict(), other._den_dict()
        den = {f: max(da.get(f, 0), db.get(f, 0)) for f in set(da) | set(db)}
        num_a, num_b = self.num, other.num
        for f, m in den.items():
            for _ in range(m - da.get(f, 0)):
                num_a = num_a * f.to_polynomial()
            for _ in range(m - db.get(f, 0)):
                num_b = num_b * f.to_polynomial()
        return RatFun._make(num_a + num_b, den)

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def __mul__(self, other: "RatFun") -> "RatFun":
        self._check(other)
        den = self._den_dict()
        for f, m in other.den:
            den[f] = den.get(f, 0) + m
        return RatFun._make(self.num * other.num, den)

    def scale(self, c) -> "RatFun":
        c = _frac(c)
        if not c:
            return RatFun.zero(self.nx)
        return RatFun(self.num.scale(c), self.den)

    def inv(self) -> "RatFun":
        """Reciprocal; defined only when num = const * product of forms."""
        const, forms = factor_into_forms(self.num)
        num = Polynomial.const(1 / const, self.nx)
        for f, m in self.den:
            for _ in range(m):
                num = num * f.to_polynomial()
        return RatFun._make(num, {f: forms.count(f) for f in set(forms)})

    def __truediv__(self, other: "RatFun") -> "RatFun":
        return self * other.inv()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inv() ** (-n)
        out = RatFun.one(self.nx)
        for _ in range(n):
            out = out * self
        return out

    # -- equality

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None

    # -- evaluation / substitution

    def evaluate(self, point) -> Fraction:
        den_val = Fraction(1)
        for f, m in self.den:
            v = f.evaluate(point)
            if not v:
                raise PoleError(f"denominator factor {f} vanishes at {point}")
            den_val *= v**m
        return self.num.evaluate(point) / den_val

    def substitute(self, images: list[DegreeOneForm]) -> "RatFun":
        """Apply x_i -> images[i] (degree-one images); h maps to itself."""
        num = self.num.substitute(images)
        den: dict[DegreeOneForm, int] = {}
        for f, m in self.den:
            g = f.substitute(images)
            if g.is_zero():
                raise PoleCollapseError(f"substitution annihilates denominator factor {f}")
            s, canon = g.canonical()
            num = num.scale(Fraction(1) / s**m)
            den[canon] = den.get(canon, 0) + m
        return RatFun._make(num, den)

    # -- io

    def to_json(self):
        return {
            "num": self.num.to_json(),
            "den": [{"form": f.to_json(), "mult": m} for f, m in self.den],
        }

    @staticmethod
    def from_json(obj, nx: int) -> "RatFun":
        num = Polynomial.from_json(obj["num"], nx)
        den = {DegreeOneForm.from_json(d["form"]): int(d["mult"]) for d in obj["den"]}
        return RatFun._make(num, den)

    def format(self) -> str:
        return format_ratfun(self)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFun({self.format()!r})"


def eq_by_evaluation(a: RatFun, b: RatFun, rng, trials: int = 3, bound: int = 10**6) -> bool:
    """Probabilistic equality: compare values at random non-pole rational points."""
    a._check(b)
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 100 * trials:
            raise RatFunError("could not find enough non-pole sample points")
        point = [Fraction(rng.randint(-bound, bound), rng.randint(1, 997)) for _ in range(a.nx + 1)]
        try:
            va, vb = a.evaluate(point), b.evaluate(point)
        except PoleError:
            continue
        if va != vb:
            return False
        done += 1
    return True


# ---------------------------------------------------------------------------
# text format and parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(x\d+)|(h)|([()+\-*/^]))")


def _format_monomial(e: tuple[int, ...], c: Fraction, nx: int) -> str:
    names = [f"x{i + 1}" for i in range(nx)] + ["h"]
    vars_part = "*".join(
        f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
    )
    coeff = abs(c)
    if not vars_part:
        return str(coeff)
    if coeff == 1:
        return vars_part
    return f"{coeff}*{vars_part}"


def _format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.terms.items(), reverse=True):
        mono = _format_monomial(e, c, p.nx)
        if not parts:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(f"+{mono}" if c > 0 else f"-{mono}")
    return "".join(parts)


def format_ratfun(a: RatFun) -> str:
    """Render in the parse grammar; parse(format(a)) == a."""
    num = _format_poly(a.num)
    if not a.den:
        return num
    factors = []
    for f, m in a.den:
        fs = f"({_format_poly(f.to_polynomial())})"
        factors.append(f"{fs}^{m}" if m > 1 else fs)
    return f"({num})/({'*'.join(factors)})"


class _Parser:
    def __init__(self, text: str, nx: int):
        self.text = text
        self.nx = nx
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._tokenize()
        self.idx = 0

    def _tokenize(self):
        pos = 0
        while pos < len(self.text):
            m = _TOKEN_RE.match(self.text, pos)
            if not m:
                if self.text[pos:].strip():
                    raise ParseError(f"unexpected character {self.text[pos:].strip()[0]!r}", pos)
                break
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("var", m.group(2), m.start(2)))
            elif m.group(3):
                self.tokens.append(("h", "h", m.start(3)))
            else:
                self.tokens.append(("op", m.group(4), m.start(4)))
            pos = m.end()

    def _peek(self):
        return self.tokens[self.idx] if self.idx < len(self.tokens) else ("eof", "", len(self.text))

    def _next(self):
        tok = self._peek()
        self.idx += 1
        return tok

    def parse(self) -> RatFun:
        if not self.tokens:
            raise ParseError("empty input", 0)
        out = self._expr()
        kind, val, pos = self._peek()
        if kind != "eof":
            raise ParseError(f"unexpected token {val!r}", pos)
        return out

    def _expr(self) -> RatFun:
        left = self._term()
        while True:
            kind, val, _ = self._peek()
            if kind == "op" and val in "+-":
                self._next()
                right = self._term()
                left = left + right if val == "+" else left - right
            else:
                return left

    def _term(self) -> RatFun:
        left = self._factor()
        while True:
            kind, val, pos = self._peek()
            if kind == "op" and val in "*/":
                self._next()
                right = self._factor()
                if val == "*":
                    left = left * right
                else:
                    try:
                        left = left / right
                    except NotInvertibleError as exc:
                        raise ParseError(str(exc), pos) from exc
            else:
                return left

    def _factor(self) -> RatFun:
        kind, val, pos = self._peek()
        if kind == "op" and val == "-":
            self._next()
            return -self._factor()
        return self._power()

    def _power(self) -> RatFun:
        base = self._atom()
        kind, val, pos = self._peek()
        if kind == "op" and val == "^":
            self._next()
            ekind, eval_, epos = self._next()
            if ekind != "int":
                raise ParseError("exponent must be a non-negative integer", epos)
            base = base ** int(eval_)
        return base

    def _atom(self) -> RatFun:
        kind, val, pos = self._next()
        if kind == "int":
            return RatFun.const(int(val), self.nx)
        if kind == "var":
            i = int(val[1:]) - 1
            if not 0 <= i < self.nx:
                raise ParseError(f"variable {val} out of range (nx={self.nx})", pos)
            return RatFun.var(i, self.nx)
        if kind == "h":
            return RatFun.hvar(self.nx)
        if kind == "op" and val == "(":
            out = self._expr()
            kind2, val2, pos2 = self._next()
            if not (kind2 == "op" and val2 == ")"):
                raise ParseError("expected ')'", pos2)
            return out
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_ratfun(text: str, nx: int) -> RatFun:
    """Parse the text grammar: rationals, x1..xr, h, + - * / ^, parentheses."""
    return _Parser(text, nx).parse()
