"""Sparse multivariate polynomials in the matrix entries a_ij.

A monomial is an exponent tuple of length n*n indexed row-major, so that
``(i, j)`` lives at position ``(i-1)*n + (j-1)``.  With that layout plain
tuple comparison *is* the lexicographic order with
a_11 > a_12 > ... > a_1n > a_21 > ... > a_nn, which is the only order used.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import QQ, Field, GFp, field_from_json, scalar_from_json, scalar_to_json

Monomial = Tuple[int, ...]

__all__ = [
    "PolyRing", "Poly", "Monomial",
    "mono_mul", "mono_div", "mono_divides", "mono_lcm", "mono_degree",
    "lex_leading_term", "normal_form", "divide", "s_polynomial",
    "buchberger_complete", "GroebnerResult", "is_groebner_basis",
    "reduced_groebner_basis", "standard_monomial_count",
    "UniRationalFn", "series_coefficients",
]


# -- monomial arithmetic -----------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


# -- rings and polynomials -------------------------------------------------

class PolyRing:
    """K[a_11, ..., a_nn] with the row-major lex order."""

    def __init__(self, n: int, field: Field = QQ):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.field = field
        self.nvars = n * n
        self._zero_mono = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.n == other.n and self.field == other.field

    def __hash__(self):
        return hash((self.n, self.field))

    def __repr__(self):
        return f"PolyRing(n={self.n}, field={self.field!r})"

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"variable a_{i}_{j} outside n={self.n}")
        return (i - 1) * self.n + (j - 1)

    def var_of_index(self, k: int) -> Tuple[int, int]:
        return divmod(k, self.n)[0] + 1, k % self.n + 1

    def var_name(self, k: int) -> str:
        i, j = self.var_of_index(k)
        if self.n <= 9:
            return f"a{i}{j}"
        return f"a_{i}_{j}"

    def monomial(self, *pairs: Tuple[int, int]) -> Monomial:
        """Monomial from a list of (i, j) factors, repeats allowed."""
        e = [0] * self.nvars
        for i, j in pairs:
            e[self.index(i, j)] += 1
        return tuple(e)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_mono: c} if c else {})

    def var(self, i: int, j: int) -> "Poly":
        return Poly(self, {self.monomial((i, j)): self.field.one})

    def term(self, mono: Monomial, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(mono): c} if c else {})

    def from_terms(self, terms: Iterable[Tuple[Monomial, object]]) -> "Poly":
        out: Dict[Monomial, object] = {}
        for m, c in terms:
            c = self.field(c)
            m = tuple(m)
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self, out)

    def parse(self, text: str) -> "Poly":
        return _parse_poly(self, text)

    def change_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.n, field)


class Poly:
    """Immutable sparse polynomial: map from exponent tuple to nonzero coefficient."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lm = max(self.terms)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables(self) -> List[int]:
        used = set()
        for m in self.terms:
            used.update(k for k, e in enumerate(m) if e)
        return sorted(used)

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        return sorted(self.terms.items(), reverse=True)

    # arithmetic
    def _check(self, other: "Poly"):
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, GFp)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff) -> "Poly":
        if not coeff:
            return self.ring.zero
        return Poly(self.ring, {mono_mul(m, mono): v * coeff for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GFp)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Monomial, object] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                s = out.get(m)
                out[m] = ca * cb if s is None else s + ca * cb
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.field.one / self.lc
        return self.scale(inv)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, GFp)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, point: Dict[int, object]):
        """Evaluate at a point given as {variable index: scalar}; missing variables are 0."""
        f = self.ring.field
        total = f.zero
        for m, c in self.terms.items():
            v = c
            for k, e in enumerate(m):
                if e:
                    x = point.get(k)
                    if x is None or not x:
                        v = f.zero
                        break
                    v = v * f(x) ** e
            total = total + v
        return total

    def substitute_zero(self, indices: Iterable[int]) -> "Poly":
        idx = list(indices)
        return Poly(self.ring, {m: c for m, c in self.terms.items() if all(m[k] == 0 for k in idx)})

    # output
    def __str__(self):
        return poly_to_text(self)

    def __repr__(self):
        return f"Poly({poly_to_text(self)!r})"

    def to_json(self) -> dict:
        ring = self.ring
        terms = []
        for m, c in self.sorted_terms():
            mono = {}
            for k, e in enumerate(m):
                if e:
                    i, j = ring.var_of_index(k)
                    mono[f"a_{i}_{j}"] = e
            terms.append({"coeff": _coeff_to_json(c), "monomial": mono})
        return {"field": ring.field.to_json(), "n": ring.n, "terms": terms}

    @staticmethod
    def from_json(obj: dict, ring: Optional[PolyRing] = None) -> "Poly":
        field = field_from_json(obj["field"])
        if ring is None:
            n = obj.get("n")
            if n is None:
                n = 1
                for t in obj["terms"]:
                    for name in t["monomial"]:
                        i, j = _parse_var_json(name)
                        n = max(n, i, j)
            ring = PolyRing(int(n), field)
        elif ring.field != field:
            raise ValueError("field tag does not match the target ring")
        terms = []
        for t in obj["terms"]:
            pairs = []
            for name, e in t["monomial"].items():
                pairs.extend([_parse_var_json(name)] * int(e))
            c = t["coeff"]
            c = scalar_from_json(c)
            terms.append((ring.monomial(*pairs), c))
        return ring.from_terms(terms)


def _coeff_to_json(c):
    # GF(p) coefficients are written as plain residues; the field tag carries p
    if isinstance(c, GFp):
        return str(c.value)
    return scalar_to_json(c)


def _parse_var_json(name: str) -> Tuple[int, int]:
    m = re.fullmatch(r"a_(\d+)_(\d+)", name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    return int(m.group(1)), int(m.group(2))


def _coeff_text(c) -> str:
    if isinstance(c, GFp):
        return str(c.value)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _is_negative(c) -> bool:
    return not isinstance(c, GFp) and c < 0


def poly_to_text(f: Poly) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    parts = []
    for m, c in f.sorted_terms():
        neg = _is_negative(c)
        a = -c if neg else c
        factors = []
        for k, e in enumerate(m):
            if e:
                name = ring.var_name(k)
                factors.append(name if e == 1 else f"{name}^{e}")
        ctext = _coeff_text(a)
        if not factors:
            body = ctext
        elif ctext == "1":
            body = "*".join(factors)
        else:
            body = ctext + "*" + "*".join(factors)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(a_\d+_\d+|a\d\d)|(\d+(?:/\d+)?)|(\^)|([*+\-]))")


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse the text grammar emitted by :func:`poly_to_text`."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        tokens.append(m.groups())
        pos = m.end()
    terms = []
    sign = 1
    coeff = Fraction(1)
    pairs: List[Tuple[int, int]] = []
    expect_factor = True
    k = 0

    def flush():
        terms.append((ring.monomial(*pairs), sign * coeff))

    while k < len(tokens):
        var, num, caret, op = tokens[k]
        if op in ("+", "-"):
            if not expect_factor:
                flush()
                sign, coeff, pairs = 1, Fraction(1), []
            if op == "-":
                sign = -sign
            expect_factor = True
        elif op == "*":
            expect_factor = True
        elif num is not None:
            coeff *= Fraction(num)
            expect_factor = False
        elif var is not None:
            if var.startswith("a_"):
                i, j = _parse_var_json(var)
            else:
                i, j = int(var[1]), int(var[2])
            e = 1
            if k + 2 < len(tokens) and tokens[k + 1][2]:
                e = int(tokens[k + 2][1])
                k += 2
            pairs.extend([(i, j)] * e)
            expect_factor = False
        k += 1
    if expect_factor and (terms or pairs or coeff != 1):
        raise ValueError(f"dangling operator in {text!r}")
    if not expect_factor:
        flush()
    return ring.from_terms(terms)


# -- division and Groebner machinery ---------------------------------------

def lex_leading_term(f: Poly):
    """(leading monomial, leading coefficient) in the row-major lex order."""
    if f.is_zero():
        raise ValueError("zero polynomial has no leading term")
    return f.lm, f.lc


def _reduce(f: Poly, G: Sequence[Poly], want_quotients: bool):
    ring = f.ring
    heads = []
    for g in G:
        if g.is_zero():
            raise ValueError("divisor list contains the zero polynomial")
        g._check(f)
        heads.append((g.lm, g.lc, g))
    quotients = [dict() for _ in G] if want_quotients else None
    p = dict(f.terms)
    rem: Dict[Monomial, object] = {}
    # max-heap of candidate monomials; stale entries skipped
    heap = [_Neg(m) for m in p]
    heapq.heapify(heap)
    while heap:
        m = heapq.heappop(heap).m
        c = p.get(m)
        if c is None:
            continue
        for idx, (lm, lc, g) in enumerate(heads):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                qc = c / lc
                if want_quotients:
                    quotients[idx][q] = quotients[idx].get(q, 0) + qc
                for gm, gc in g.terms.items():
                    t = tuple([x + y for x, y in zip(gm, q)])
                    s = p.get(t)
                    if s is None:
                        p[t] = -qc * gc
                        heapq.heappush(heap, _Neg(t))
                    else:
                        s = s - qc * gc
                        if s:
                            p[t] = s
                        else:
                            del p[t]
                break
        else:
            rem[m] = c
            del p[m]
    r = Poly(ring, rem)
    if want_quotients:
        return [ring.from_terms(q.items()) for q in quotients], r
    return r


class _Neg:
    __slots__ = ("m",)

    def __init__(self, m):
        self.m = m

    def __lt__(self, other):
        return self.m > other.m


def normal_form(f: Poly, G: Sequence[Poly]) -> Poly:
    """Remainder of f on division by G.

    The current leading term is always reduced first and divisors are tried
    in list order, so the result is deterministic.
    """
    return _reduce(f, G, False)


def divide(f: Poly, G: Sequence[Poly]) -> Tuple[List[Poly], Poly]:
    """Quotients and remainder with f = sum(q_i g_i) + r."""
    return _reduce(f, G, True)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    f._check(g)
    L = mono_lcm(f.lm, g.lm)
    one = f.ring.field.one
    return f.mul_term(mono_div(L, f.lm), one / f.lc) - g.mul_term(mono_div(L, g.lm), one / g.lc)


@dataclass
class GroebnerResult:
    basis: List[Poly]
    status: str  # "complete" | "budget_exceeded"
    pairs_processed: int = 0
    pairs_skipped: int = 0
    reason: str = ""

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def degree_census(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for g in self.basis:
            out[g.degree()] = out.get(g.degree(), 0) + 1
        return dict(sorted(out.items()))


def reduced_groebner_basis(G: Sequence[Poly]) -> List[Poly]:
    """Minimalize and inter-reduce a Groebner basis; elements monic, sorted by leading term."""
    G = [g.monic() for g in G if not g.is_zero()]
    G.sort(key=lambda g: g.lm)
    minimal: List[Poly] = []
    for g in G:
        if any(mono_divides(h.lm, g.lm) for h in minimal):
            continue
        # drop earlier elements whose leading term g divides (equal lm handled above)
        minimal = [h for h in minimal if not mono_divides(g.lm, h.lm)]
        minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        r = normal_form(g, others)
        out.append(r.monic())
    out.sort(key=lambda g: (g.degree(), tuple(-x for x in g.lm)))
    return out


def buchberger_complete(G: Sequence[Poly], max_pairs: int = 50_000,
                        max_poly_degree: int = 30) -> GroebnerResult:
    """Budgeted Buchberger completion with the normal selection strategy.

    Pairs are taken by smallest lcm degree, ties broken by the lex-smallest
    lcm.  Only the coprime-leading-terms criterion is used.  When a budget
    is hit the partial (non-reduced) basis is returned with status
    ``budget_exceeded``.
    """
    basis = [g.monic() for g in G if not g.is_zero()]
    if len(basis) != len(G):
        raise ValueError("generators must be nonzero")
    heap: list = []
    processed = skipped = 0

    def push_pairs(j):
        nonlocal skipped
        for i in range(j):
            a, b = basis[i].lm, basis[j].lm
            if mono_coprime(a, b):
                skipped += 1
                continue
            L = mono_lcm(a, b)
            heapq.heappush(heap, (sum(L), L, i, j))

    for j in range(len(basis)):
        push_pairs(j)
    while heap:
        if processed >= max_pairs:
            return GroebnerResult(basis, "budget_exceeded", processed, skipped, "max_pairs")
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        r = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        if r.degree() > max_poly_degree:
            return GroebnerResult(basis, "budget_exceeded", processed, skipped, "max_poly_degree")
        basis.append(r.monic())
        push_pairs(len(basis) - 1)
    return GroebnerResult(reduced_groebner_basis(basis), "complete", processed, skipped)


def is_groebner_basis(G: Sequence[Poly]) -> bool:
    """Buchberger's criterion over every pair."""
    G = list(G)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j]), G).is_zero():
                return False
    return True


def standard_monomial_count(leading_monomials: Sequence[Monomial],
                            support_vars: Sequence[int], t: int) -> int:
    """Number of degree-t monomials in ``support_vars`` divisible by no given monomial."""
    support = list(support_vars)
    pos = {v: k for k, v in enumerate(support)}
    gens = []
    for m in leading_monomials:
        small = [0] * len(support)
        for k, e in enumerate(m):
            if e:
                if k not in pos:
                    raise ValueError(f"monomial uses variable {k} outside the support")
                small[pos[k]] = e
        gens.append(tuple(small))
    if t < 0:
        return 0
    count = 0
    width = len(support)
    for combo in combinations_with_replacement(range(width), t):
        e = [0] * width
        for k in combo:
            e[k] += 1
        if not any(mono_divides(g, e) for g in gens):
            count += 1
    return count


# -- univariate rational functions ----------------------------------------

def _trim(p: List[int]) -> List:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _content(p):
    from math import gcd
    g = 0
    for x in p:
        g = gcd(g, int(x))
    return g


@dataclass(frozen=True)
class UniRationalFn:
    """num(z)/den(z) with integer coefficient lists (index = power of z)."""

    num: Tuple[int, ...]
    den: Tuple[int, ...] = (1,)

    def __post_init__(self):
        num = _trim(self.num)
        den = _trim(self.den)
        if not den:
            raise ZeroDivisionError("denominator is zero")
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in list(num) + list(den)):
            raise ValueError("coefficients must be integers")
        num = [int(x) for x in num]
        den = [int(x) for x in den]
        g = _content(num + den)
        if g > 1:
            num = [x // g for x in num]
            den = [x // g for x in den]
        # sign: first nonzero denominator coefficient positive
        lead = next(x for x in den if x)
        if lead < 0:
            num = [-x for x in num]
            den = [-x for x in den]
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den))

    @classmethod
    def poly(cls, coeffs: Sequence[int]) -> "UniRationalFn":
        return cls(tuple(coeffs), (1,))

    @classmethod
    def one_minus_z_power(cls, k: int, numerator: Sequence[int] = (1,)) -> "UniRationalFn":
        """numerator / (1 - z)^k."""
        den = [1]
        for _ in range(k):
            den = _pmul(den, [1, -1])
        return cls(tuple(numerator), tuple(den))

    def __add__(self, other: "UniRationalFn") -> "UniRationalFn":
        if isinstance(other, int):
            other = UniRationalFn.poly([other])
        return UniRationalFn(tuple(_padd(_pmul(self.num, other.den), _pmul(other.num, self.den))),
                             tuple(_pmul(self.den, other.den)))

    __radd__ = __add__

    def __neg__(self):
        return UniRationalFn(tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, int):
            other = UniRationalFn.poly([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = UniRationalFn.poly([other])
        return UniRationalFn(tuple(_pmul(self.num, other.num)), tuple(_pmul(self.den, other.den)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.num

    def equals(self, other: "UniRationalFn") -> bool:
        """Equality as rational functions (cross multiplication)."""
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    def __eq__(self, other):
        if not isinstance(other, UniRationalFn):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        raise TypeError("UniRationalFn is unhashable (equality is not structural)")

    def coefficients(self, upto: int):
        return series_coefficients(self, upto)


def series_coefficients(f: UniRationalFn, upto: int) -> List:
    """Power-series coefficients of f at z = 0 for degrees 0..upto."""
    den = list(f.den)
    if not den or den[0] == 0:
        raise ValueError("no power-series expansion at 0")
    num = list(f.num)
    d0 = den[0]
    out = []
    for k in range(upto + 1):
        acc = Fraction(num[k] if k < len(num) else 0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return [int(c) if c.denominator == 1 else c for c in out]
