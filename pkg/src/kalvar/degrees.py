"""Degrees of the strata K_{s,d,n}.

The main route expands the symmetric series

    prod_i (1 + x_i)^n / prod_{i,j} (1 + (x_i - x_j))

in Chern roots x_1..x_s up to total degree s(d-s), writes it in the Schur
basis, and reads off the coefficient of the rectangle ((d-s)^s).  Closed
forms exist for s = 1 (a binomial), s = d-1 (a univariate coefficient) and
s = 2 (a hypergeometric-type sum); all of them are cross-checked against the
Schur route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .arith import binomial, pochhammer
from .kalman import StratumSpec
from .polyring import UniRationalFn, series_coefficients

Partition = Tuple[int, ...]

__all__ = [
    "Partition", "TruncatedSymSeries", "SchurExpansion", "BiDegree",
    "partitions", "expand_degree_series", "schur_decompose", "schur_coefficient",
    "degree_schur", "degree_binomial", "degree_univariate", "degree_koutschan",
    "grassmannian_degree", "asymptotic_leading", "verify_polynomiality",
    "multidegree_incidence", "degree_all_methods", "degree_via_chern_classes",
    "chern_series_s2", "schur_polynomial", "vandermonde",
]


# -- truncated series in Chern roots ------------------------------------------

class TruncatedSymSeries:
    """Polynomial in x_1..x_s with all terms of total degree > cap discarded.

    Internally a list of per-degree dicts keyed by packed exponents
    (sum of e_i * (cap+1)^i), which makes truncated products cheap.
    """

    __slots__ = ("s", "cap", "buckets", "_base")

    def __init__(self, s: int, cap: int, buckets: Optional[List[dict]] = None):
        self.s = s
        self.cap = cap
        self._base = cap + 1
        self.buckets = buckets if buckets is not None else [dict() for _ in range(cap + 1)]

    # packing
    def pack(self, e: Sequence[int]) -> int:
        k = 0
        b = 1
        for x in e:
            k += x * b
            b *= self._base
        return k

    def unpack(self, k: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.s):
            k, r = divmod(k, self._base)
            out.append(r)
        return tuple(out)

    @classmethod
    def one(cls, s: int, cap: int) -> "TruncatedSymSeries":
        out = cls(s, cap)
        out.buckets[0][0] = 1
        return out

    @classmethod
    def from_terms(cls, s: int, cap: int, terms: Dict[Tuple[int, ...], object]) -> "TruncatedSymSeries":
        out = cls(s, cap)
        for e, c in terms.items():
            deg = sum(e)
            if deg <= cap and c:
                k = out.pack(e)
                b = out.buckets[deg]
                b[k] = b.get(k, 0) + c
        return out

    def __mul__(self, other: "TruncatedSymSeries") -> "TruncatedSymSeries":
        if (self.s, self.cap) != (other.s, other.cap):
            raise ValueError("series shapes differ")
        cap = self.cap
        out = [dict() for _ in range(cap + 1)]
        A, B = self.buckets, other.buckets
        for da in range(cap + 1):
            Ad = A[da]
            if not Ad:
                continue
            for db in range(cap + 1 - da):
                Bd = B[db]
                if not Bd:
                    continue
                o = out[da + db]
                for ka, ca in Ad.items():
                    for kb, cb in Bd.items():
                        k = ka + kb
                        o[k] = o.get(k, 0) + ca * cb
        return TruncatedSymSeries(self.s, cap, [{k: v for k, v in o.items() if v} for o in out])

    def coeff(self, e: Sequence[int]):
        if len(e) != self.s or any(x < 0 for x in e):
            return 0
        deg = sum(e)
        if deg > self.cap:
            raise ValueError(f"degree {deg} beyond truncation {self.cap}")
        return self.buckets[deg].get(self.pack(e), 0)

    def terms(self) -> Dict[Tuple[int, ...], object]:
        return {self.unpack(k): c for b in self.buckets for k, c in b.items()}

    def degree_part(self, deg: int) -> Dict[Tuple[int, ...], object]:
        return {self.unpack(k): c for k, c in self.buckets[deg].items()}

    def permuted(self, perm: Sequence[int]) -> "TruncatedSymSeries":
        """Substitute x_i -> x_perm[i]."""
        terms = {}
        for e, c in self.terms().items():
            new = [0] * self.s
            for i, x in enumerate(e):
                new[perm[i]] = x
            terms[tuple(new)] = c
        return TruncatedSymSeries.from_terms(self.s, self.cap, terms)

    def is_symmetric(self, perms: Optional[Sequence[Sequence[int]]] = None) -> bool:
        """Invariance under the given permutations (default: adjacent transpositions)."""
        if perms is None:
            perms = []
            for i in range(self.s - 1):
                p = list(range(self.s))
                p[i], p[i + 1] = p[i + 1], p[i]
                perms.append(p)
        mine = self.terms()
        return all(self.permuted(p).terms() == mine for p in perms)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSymSeries):
            return NotImplemented
        return (self.s, self.cap) == (other.s, other.cap) and self.terms() == other.terms()

    def __len__(self):
        return sum(len(b) for b in self.buckets)

    def __repr__(self):
        return f"TruncatedSymSeries(s={self.s}, cap={self.cap}, terms={len(self)})"


def _power_of_one_plus(s: int, cap: int, i: int, n: int) -> TruncatedSymSeries:
    """(1 + x_i)^n, truncated."""
    terms = {}
    for k in range(min(n, cap) + 1):
        e = [0] * s
        e[i] = k
        terms[tuple(e)] = binomial(n, k)
    return TruncatedSymSeries.from_terms(s, cap, terms)


def _geometric_difference(s: int, cap: int, i: int, j: int) -> TruncatedSymSeries:
    """1 / (1 + (x_i - x_j)) = sum_k (-1)^k (x_i - x_j)^k, truncated."""
    terms: Dict[Tuple[int, ...], int] = {}
    for k in range(cap + 1):
        sign = -1 if k % 2 else 1
        for a in range(k + 1):
            e = [0] * s
            e[i] += a
            e[j] += k - a
            c = sign * math.comb(k, a) * (-1) ** (k - a)
            key = tuple(e)
            terms[key] = terms.get(key, 0) + c
    return TruncatedSymSeries.from_terms(s, cap, {e: c for e, c in terms.items() if c})


@lru_cache(maxsize=64)
def _denominator_inverse(s: int, cap: int) -> TruncatedSymSeries:
    """prod over i != j of 1/(1 + (x_i - x_j)); the (i,j) and (j,i) factors are multiplied together first."""
    out = TruncatedSymSeries.one(s, cap)
    for i in range(s):
        for j in range(i + 1, s):
            pair = _geometric_difference(s, cap, i, j) * _geometric_difference(s, cap, j, i)
            out = out * pair
    return out


def expand_degree_series(s: int, d: int, n: int, cap: Optional[int] = None) -> TruncatedSymSeries:
    """The Chern-root series truncated at total degree s(d-s) (or ``cap``)."""
    StratumSpec(s, d, n)
    cap = s * (d - s) if cap is None else cap
    num = TruncatedSymSeries.one(s, cap)
    for i in range(s):
        num = num * _power_of_one_plus(s, cap, i, n)
    return num * _denominator_inverse(s, cap)


# -- Schur basis -------------------------------------------------------------

def partitions(k: int, max_parts: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of k with at most ``max_parts`` parts, largest-first, in reverse lex order."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions(k - first, max_parts - 1, first):
            yield (first,) + rest


def vandermonde(s: int) -> Dict[Tuple[int, ...], int]:
    """prod_{i<j} (x_i - x_j), fully expanded."""
    poly = {(0,) * s: 1}
    for i in range(s):
        for j in range(i + 1, s):
            new: Dict[Tuple[int, ...], int] = {}
            for e, c in poly.items():
                for var, sign in ((i, 1), (j, -1)):
                    f = list(e)
                    f[var] += 1
                    f = tuple(f)
                    new[f] = new.get(f, 0) + sign * c
            poly = {e: c for e, c in new.items() if c}
    return poly


@dataclass
class SchurExpansion:
    """Schur coefficients of a symmetric series, complete through ``through``."""

    s: int
    through: int
    coeffs: Dict[Partition, int] = field(default_factory=dict)

    def __getitem__(self, lam: Partition) -> int:
        lam = tuple(x for x in lam if x)
        if sum(lam) > self.through:
            raise KeyError(f"{lam} beyond the computed degree {self.through}")
        return self.coeffs.get(lam, 0)

    def degree_part(self, k: int) -> Dict[Partition, int]:
        return {lam: c for lam, c in self.coeffs.items() if sum(lam) == k}


def schur_coefficient(f: TruncatedSymSeries, lam: Partition, _vdm: Optional[dict] = None):
    """[x^(lam + delta)] of f times the Vandermonde product; delta = (s-1, ..., 1, 0)."""
    s = f.s
    lam = tuple(lam) + (0,) * (s - len(lam))
    if len(lam) > s:
        return 0
    target = [lam[i] + s - 1 - i for i in range(s)]
    V = vandermonde(s) if _vdm is None else _vdm
    total = 0
    for v, c in V.items():
        e = [t - x for t, x in zip(target, v)]
        if min(e) < 0:
            continue
        total += c * f.coeff(e)
    return total


def schur_decompose(f: TruncatedSymSeries) -> SchurExpansion:
    if not f.is_symmetric():
        raise ValueError("input series is not symmetric")
    V = vandermonde(f.s)
    out = SchurExpansion(f.s, f.cap)
    for k in range(f.cap + 1):
        for lam in partitions(k, f.s):
            c = schur_coefficient(f, lam, V)
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ArithmeticError(f"non-integral Schur coefficient {c} at {lam}")
                c = int(c)
            if c:
                out.coeffs[lam] = c
    return out


def schur_polynomial(lam: Partition, s: int) -> Dict[Tuple[int, ...], int]:
    """s_lambda(x_1..x_s) as a sum over semistandard tableaux (content -> count)."""
    lam = tuple(x for x in lam if x)
    if len(lam) > s:
        return {}
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    out: Dict[Tuple[int, ...], int] = {}
    filling: Dict[Tuple[int, int], int] = {}

    def fill(idx):
        if idx == len(cells):
            content = [0] * s
            for v in filling.values():
                content[v] += 1
            key = tuple(content)
            out[key] = out.get(key, 0) + 1
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])         # rows weakly increase
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)     # columns strictly increase
        for v in range(lo, s):
            filling[(r, c)] = v
            fill(idx + 1)
        filling.pop((r, c), None)

    fill(0)
    return out


# -- degree formulas -----------------------------------------------------------

def _spec(s, d=None, n=None) -> StratumSpec:
    if isinstance(s, StratumSpec):
        return s
    return StratumSpec(s, d, n)


def degree_schur(s, d=None, n=None) -> int:
    """Coefficient of the rectangle ((d-s)^s) in the Schur expansion; 1 when s = d."""
    spec = _spec(s, d, n)
    s, d, n = spec.s, spec.d, spec.n
    if s == d:
        # K_{d,d,n} is a linear space
        return 1
    f = expand_degree_series(s, d, n)
    c = schur_coefficient(f, (d - s,) * s)
    return int(c)


def degree_binomial(s, d=None, n=None) -> int:
    spec = _spec(s, d, n)
    if spec.s != 1:
        raise ValueError("the binomial formula covers s = 1 only")
    return binomial(spec.n, spec.d - 1)


def degree_univariate(s, d=None, n=None) -> int:
    """Coefficient of t^(d-1) in (1+t)^d / (1-t)^(n-d); valid for s = d-1."""
    spec = _spec(s, d, n)
    s, d, n = spec.s, spec.d, spec.n
    if s != d - 1 or d < 2:
        raise ValueError("the univariate formula covers s = d-1, d >= 2 only")
    num = [binomial(d, k) for k in range(d + 1)]
    f = UniRationalFn.one_minus_z_power(n - d, num)
    return int(series_coefficients(f, d - 1)[d - 1])


def degree_koutschan(d: int, n: int) -> int:
    """Closed form for s = 2:
    (-1)^d 2^(2d-3)/(d-1)! * sum_{k=0}^{d-2} (1/2-k)_{d-1} (n+1-k)_k (d+n-2k)_k / (2k)!
    """
    if d < 3 or n < d:
        raise ValueError("the s=2 closed form needs d >= 3 and n >= d")
    total = Fraction(0)
    for k in range(d - 1):
        total += (pochhammer(Fraction(1, 2) - k, d - 1) * pochhammer(n + 1 - k, k)
                  * pochhammer(d + n - 2 * k, k) / math.factorial(2 * k))
    val = (-1) ** d * Fraction(2 ** (2 * d - 3), math.factorial(d - 1)) * total
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"closed form gave {val} for d={d}, n={n}")
    return int(val)


def grassmannian_degree(s: int, d: int) -> int:
    """1!2!...(s-1)! [s(d-s)]! / ((d-s)!(d-s+1)!...(d-1)!)."""
    if not (1 <= s <= d):
        raise ValueError("need 1 <= s <= d")
    num = math.factorial(s * (d - s))
    for i in range(1, s):
        num *= math.factorial(i)
    den = 1
    for i in range(d - s, d):
        den *= math.factorial(i)
    val = Fraction(num, den)
    if val.denominator != 1:
        raise ArithmeticError("non-integral Grassmannian degree")
    return int(val)


def asymptotic_leading(s: int, d: int) -> Fraction:
    """Leading coefficient in n of deg K_{s,d,n}: deg Gr(s, d) / [s(d-s)]!."""
    return Fraction(grassmannian_degree(s, d), math.factorial(s * (d - s)))


def verify_polynomiality(s: int, d: int, n_range: Sequence[int]) -> dict:
    """Finite differences of degree_schur over consecutive n."""
    ns = list(n_range)
    k = s * (d - s)
    if len(ns) < k + 2:
        raise ValueError(f"need at least {k + 2} values of n")
    if any(b - a != 1 for a, b in zip(ns, ns[1:])):
        raise ValueError("n_range must be consecutive")
    values = [degree_schur(s, d, n) for n in ns]
    diffs = [values]
    for _ in range(k + 1):
        prev = diffs[-1]
        diffs.append([b - a for a, b in zip(prev, prev[1:])])
    top = diffs[k]
    vanish = all(x == 0 for x in diffs[k + 1])
    constant = len(set(top)) == 1
    leading = Fraction(top[0], math.factorial(k))
    expected = asymptotic_leading(s, d)
    return {"s": s, "d": d, "n_range": ns, "degrees": values, "poly_degree": k,
            "higher_differences_vanish": vanish, "top_difference_constant": constant,
            "leading_coefficient": leading, "expected_leading": expected,
            "pass": vanish and constant and leading == expected}


def degree_via_chern_classes(s, d=None, n=None) -> int:
    """Full-box coefficient of c_{s(d-s)}(T Gr(s, n)) * e_s^(n-d).

    The degree-s(d-s) Schur part of the Chern series is shifted by n-d full
    columns (multiplication by e_s) and truncated to the s x (n-s) box.
    """
    spec = _spec(s, d, n)
    s, d, n = spec.s, spec.d, spec.n
    k = s * (d - s)
    part = schur_decompose(expand_degree_series(s, d, n, cap=k)).degree_part(k)
    box = (n - s,) * s
    total = 0
    for lam, c in part.items():
        lam = tuple(lam) + (0,) * (s - len(lam))
        shifted = tuple(x + (n - d) for x in lam)
        if shifted[0] > n - s:
            continue
        if shifted == box:
            total += c
    if k == 0:
        total = 1
    return total


def chern_series_s2(n: int, cap: int) -> Dict[Tuple[int, int], int]:
    """(1+x1 t)^n (1+x2 t)^n / (1 - (x1-x2)^2 t^2) at t = 1, through total degree cap."""
    out: Dict[Tuple[int, int], int] = {}
    for a in range(min(n, cap) + 1):
        for b in range(min(n, cap - a) + 1):
            base = binomial(n, a) * binomial(n, b)
            for m in range(0, (cap - a - b) // 2 + 1):
                # (x1 - x2)^(2m)
                for r in range(2 * m + 1):
                    e = (a + r, b + 2 * m - r)
                    c = base * math.comb(2 * m, r) * (-1) ** (2 * m - r)
                    out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def degree_all_methods(s, d=None, n=None) -> dict:
    """Every applicable route for one cell, with an agreement flag."""
    spec = _spec(s, d, n)
    s, d, n = spec.s, spec.d, spec.n
    out = {"schur": degree_schur(spec)}
    if s == 1:
        out["binomial"] = degree_binomial(spec)
    if s == d - 1 and d >= 2:
        out["univariate"] = degree_univariate(spec)
    if s == 2 and d >= 3:
        out["koutschan"] = degree_koutschan(d, n)
    return {"s": s, "d": d, "n": n, "degree": out["schur"], "methods": out,
            "agree": len(set(out.values())) == 1}


# -- bidegree of the incidence variety ---------------------------------------

BiDegree = Dict[Tuple[int, int], int]


def _bimul(a: BiDegree, b: BiDegree) -> BiDegree:
    out: BiDegree = {}
    for (i, j), c in a.items():
        for (k, l), e in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * e
    return {k: v for k, v in out.items() if v}


def _biadd(a: BiDegree, b: BiDegree) -> BiDegree:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def multidegree_incidence(n: int) -> Tuple[BiDegree, BiDegree]:
    """(t1^(n-1) + t1^(n-2) t2 + ... + t2^(n-1), the same with t1 -> t1 + t2).

    Keys are (exponent of t1, exponent of t2).  Raises ArithmeticError if the
    substituted form's coefficients are not the binomials C(n, d-1).
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    C = {(n - 1 - k, k): 1 for k in range(n)}
    t1_plus_t2 = {(1, 0): 1, (0, 1): 1}
    sub: BiDegree = {}
    for (i, j), c in C.items():
        term = {(0, j): c}
        for _ in range(i):
            term = _bimul(term, t1_plus_t2)
        sub = _biadd(sub, term)
    for dd in range(1, n + 1):
        if sub.get((n - dd, dd - 1), 0) != binomial(n, dd - 1):
            raise ArithmeticError(f"bidegree coefficient mismatch at d={dd}")
    if any(i + j != n - 1 for i, j in sub):
        raise ArithmeticError("bidegree is not homogeneous of degree n-1")
    return C, sub
