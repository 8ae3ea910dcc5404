"""The d = 2 family: explicit lex Groebner basis, initial ideal, and Hilbert data.

For d = 2 the ideal is generated by the quadrics
    a_i1 a_j2 - a_i2 a_j1                        (3 <= i < j <= n)
and the cubics
    a_11 a_i2 a_j1 - a_12 a_i1 a_j1 + a_21 a_i2 a_j2 - a_22 a_i1 a_j2
                                                 (3 <= i <= j <= n),
whose lex leading terms are the first monomials written.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import QQ, binomial
from .kalman import StratumSpec, small_kalman_matrix, stratum_generators
from .matrix import symbolic_matrix
from .polyring import (Monomial, Poly, PolyRing, UniRationalFn, mono_divides,
                       mono_lcm, normal_form, s_polynomial, series_coefficients,
                       standard_monomial_count)

__all__ = [
    "GB2Basis", "FacetComplex", "gb_generators", "verify_buchberger",
    "initial_ideal_and_facets", "monomial_ideal_intersection", "minimalize_monomials",
    "hilbert_function", "hilbert_series_closed", "hilbert_series_shelling",
    "hilbert_series_facets", "hilbert_polynomial", "agreement_threshold",
    "small_minors_reduce_to_zero", "eval_univariate",
]


@dataclass
class GB2Basis:
    n: int
    quadrics: List[Poly]
    cubics: List[Poly]
    reduced: bool
    quadric_index: List[Tuple[int, int]] = field(default_factory=list)
    cubic_index: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def elements(self) -> List[Poly]:
        return self.quadrics + self.cubics

    def expected_leading_monomials(self) -> List[Monomial]:
        """The monomials a_i1 a_j2 and a_11 a_i2 a_j1 in generator order."""
        R = self.quadrics[0].ring if self.quadrics else self.cubics[0].ring
        out = [R.monomial((i, 1), (j, 2)) for i, j in self.quadric_index]
        out += [R.monomial((1, 1), (i, 2), (j, 1)) for i, j in self.cubic_index]
        return out


def gb_generators(n: int, reduced: bool = False, ring: Optional[PolyRing] = None) -> GB2Basis:
    if n < 3:
        raise ValueError("the d=2 basis needs n >= 3")
    R = ring if ring is not None else PolyRing(n, QQ)
    a = R.var
    quadrics, qidx = [], []
    for i, j in combinations(range(3, n + 1), 2):
        quadrics.append(a(i, 1) * a(j, 2) - a(i, 2) * a(j, 1))
        qidx.append((i, j))
    cubics, cidx = [], []
    for i in range(3, n + 1):
        for j in range(i, n + 1):
            last = a(i, 2) * a(j, 1) if (reduced and i < j) else a(i, 1) * a(j, 2)
            cubics.append(a(1, 1) * a(i, 2) * a(j, 1) - a(1, 2) * a(i, 1) * a(j, 1)
                          + a(2, 1) * a(i, 2) * a(j, 2) - a(2, 2) * last)
            cidx.append((i, j))
    return GB2Basis(n, quadrics, cubics, reduced, qidx, cidx)


def verify_buchberger(n: int, reduced: bool = False) -> dict:
    """Reduce every S-pair of the explicit basis; report counts."""
    G = gb_generators(n, reduced).elements
    checked = failed = 0
    for i, j in combinations(range(len(G)), 2):
        checked += 1
        if not normal_form(s_polynomial(G[i], G[j]), G).is_zero():
            failed += 1
    return {"check": "buchberger", "n": n, "pass": failed == 0,
            "details": {"generators": len(G), "pairs_checked": checked,
                        "nonzero_remainders": failed,
                        "all_reduce_to_zero": failed == 0}}


# -- monomial ideals -------------------------------------------------------

def minimalize_monomials(gens: Sequence[Monomial]) -> List[Monomial]:
    out: List[Monomial] = []
    for m in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return sorted(out, reverse=True)


def monomial_ideal_intersection(I: Sequence[Monomial], J: Sequence[Monomial]) -> List[Monomial]:
    """Minimal generators of I ∩ J: pairwise lcms, pruned."""
    return minimalize_monomials([mono_lcm(a, b) for a in I for b in J])


@dataclass
class FacetComplex:
    n: int
    facets: List[List[int]]        # variable indices
    support: List[int]
    free_count: int
    generators: List[Monomial]     # minimal generators of M
    intersection_matches: bool
    ring: PolyRing

    def facet_names(self) -> List[List[str]]:
        return [[self.ring.var_name(k) for k in f] for f in self.facets]

    @property
    def codimension(self) -> int:
        sizes = {len(self.support) - len(f) for f in self.facets}
        return min(sizes)

    @property
    def unmixed(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    @property
    def degree(self) -> int:
        """Number of minimal primes of top dimension (= degree of a squarefree unmixed ideal)."""
        top = max(len(f) for f in self.facets)
        return sum(1 for f in self.facets if len(f) == top)


def initial_ideal_and_facets(n: int) -> FacetComplex:
    if n < 3:
        raise ValueError("n >= 3 required")
    R = PolyRing(n, QQ)
    B = gb_generators(n, ring=R)
    M = minimalize_monomials([g.lm for g in B.elements])
    idx = R.index
    facets = [[idx(1, 1)] + [idx(i, 1) for i in range(3, n + 1)]]
    for i in range(3, n + 1):
        facets.append([idx(k, 2) for k in range(3, i + 1)] + [idx(k, 1) for k in range(i, n + 1)])
    facets.append([idx(1, 1)] + [idx(k, 2) for k in range(3, n + 1)])
    support = sorted({idx(1, 1)} | {idx(i, j) for i in range(3, n + 1) for j in (1, 2)})
    # M = intersection of the primes generated by the support variables outside each facet
    inter: Optional[List[Monomial]] = None
    zero = [0] * R.nvars
    for F in facets:
        prime = []
        for v in support:
            if v not in F:
                e = list(zero)
                e[v] = 1
                prime.append(tuple(e))
        inter = prime if inter is None else monomial_ideal_intersection(inter, prime)
    matches = sorted(inter) == sorted(M)
    return FacetComplex(n, facets, support, R.nvars - len(support), M, matches, R)


# -- Hilbert data ------------------------------------------------------------

def _free_count(n: int) -> int:
    return n * n - 2 * n + 3


def hilbert_function(n: int, t: int, _cache: Dict = {}) -> int:
    """dim_K (K[A]/I_{2,n})_t by counting standard monomials of the initial ideal.

    Standard monomials in the 2n-3 support variables are counted directly and
    convolved with the free variables' series 1/(1-z)^(n^2-2n+3).
    """
    if t < 0:
        return 0
    key = n
    if key not in _cache:
        fc = initial_ideal_and_facets(n)
        _cache[key] = (fc.generators, fc.support, {})
    gens, support, counts = _cache[key]
    f = _free_count(n)
    total = 0
    for k in range(t + 1):
        if k not in counts:
            counts[k] = standard_monomial_count(gens, support, k)
        total += counts[k] * binomial(t - k + f - 1, f - 1)
    return total


def hilbert_series_closed(n: int) -> UniRationalFn:
    """n/(1-z)^(n^2-n+2) - (n-1)/(1-z)^(n^2-n+1) - 1/(1-z)^(n^2-2n+4) + 1/(1-z)^(n^2-2n+3)."""
    P = UniRationalFn.one_minus_z_power
    return (P(n * n - n + 2, [n]) - P(n * n - n + 1, [n - 1])
            - P(n * n - 2 * n + 4) + P(n * n - 2 * n + 3))


def hilbert_series_shelling(n: int) -> UniRationalFn:
    """1/(1-z)^(n^2-2n+3) * ((1+(n-1)z)/(1-z)^(n-1) - z/(1-z))."""
    P = UniRationalFn.one_minus_z_power
    inner = P(n - 1, [1, n - 1]) - P(1, [0, 1])
    return P(_free_count(n)) * inner


def hilbert_series_facets(n: int) -> UniRationalFn:
    """Hilbert series of K[A]/M straight from the facet list, by inclusion-exclusion.

    For a squarefree ideal with facets F_1..F_m, the faces are the subsets of
    some F_i, and K[Delta] has series sum over faces S of z^|S|/(1-z)^|S|;
    summing over intersections of facet families gives the series without
    using the shelling.
    """
    fc = initial_ideal_and_facets(n)
    P = UniRationalFn.one_minus_z_power
    total = UniRationalFn.poly([0])
    sets = [frozenset(F) for F in fc.facets]
    # series of the full simplex on k vertices: 1/(1-z)^k
    for r in range(1, len(sets) + 1):
        for fam in combinations(sets, r):
            common = frozenset.intersection(*fam)
            term = P(len(common))
            total = total + term if r % 2 else total - term
    return total * P(fc.free_count)


def _binom_poly(r: int) -> List[Fraction]:
    """Coefficients (in t) of C(t + r, r)."""
    poly = [Fraction(1)]
    for i in range(1, r + 1):
        # multiply by (t + i)/i = 1 + t/i
        new = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k] += c
            new[k + 1] += c / i
        poly = new
    return poly


def hilbert_polynomial(n: int) -> List[Fraction]:
    """n[P^(n^2-n+1)] - (n-1)[P^(n^2-n)] - [P^(n^2-2n+3)] + [P^(n^2-2n+2)], coefficients in t."""
    parts = [(n, n * n - n + 1), (-(n - 1), n * n - n), (-1, n * n - 2 * n + 3), (1, n * n - 2 * n + 2)]
    size = n * n - n + 2
    out = [Fraction(0)] * size
    for c, r in parts:
        for k, v in enumerate(_binom_poly(r)):
            out[k] += c * v
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def eval_univariate(coeffs: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def agreement_threshold(n: int, tmax: int = 8) -> Optional[int]:
    """Least t0 with HF(t) = HP(t) for every tested t in [t0, tmax]; None if t = tmax fails."""
    hp = hilbert_polynomial(n)
    t0 = None
    for t in range(tmax, -1, -1):
        if eval_univariate(hp, t) == hilbert_function(n, t):
            t0 = t
        else:
            break
    return t0


def small_minors_reduce_to_zero(n: int) -> bool:
    """All 2x2 minors of the full small Kalman matrix reduce to 0 modulo the explicit basis."""
    R = PolyRing(n, QQ)
    G = gb_generators(n, ring=R).elements
    minors = stratum_generators(StratumSpec(1, 2, n), "small", ring=R)
    return all(normal_form(f, G).is_zero() for f in minors)
