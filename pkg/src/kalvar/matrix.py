"""Dense matrices over a scalar field or over a polynomial ring, with exact linear algebra."""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence

from . import kernels
from .arith import QQ, Field, GFp, PrimeField, field_from_json
from .polyring import Poly, PolyRing

__all__ = [
    "Matrix", "ScalarMatrix", "PolyMatrix", "exact_rank", "nullspace",
    "rref", "inverse", "determinant", "symbolic_matrix",
]


class Matrix:
    """Row-major dense matrix; subclasses fix the entry domain."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _new(self, rows):
        raise NotImplementedError

    def _zero(self):
        raise NotImplementedError

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]):
        return self._new([[self.rows[i][j] for j in col_idx] for i in row_idx])

    def block(self, r0: int, r1: int, c0: int, c1: int):
        """Rows r0..r1-1 and columns c0..c1-1 (0-based, half open)."""
        return self._new([row[c0:c1] for row in self.rows[r0:r1]])

    def vstack(self, *others):
        rows = [list(r) for r in self.rows]
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("column mismatch in vstack")
            rows.extend(list(r) for r in o.rows)
        return self._new(rows)

    def transpose(self):
        return self._new([list(c) for c in zip(*self.rows)])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self._zero()
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = zero
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                new.append(acc)
            out.append(new)
        return self._new(out)

    def __eq__(self, other):
        return type(self) is type(other) and self.rows == other.rows

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def power(self, k: int):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        out = self.identity_like()
        for _ in range(k):
            out = out @ self
        return out

    def identity_like(self):
        z = self._zero()
        one = z + 1
        return self._new([[one if i == j else z for j in range(self.ncols)] for i in range(self.nrows)])

    def __repr__(self):
        return f"{type(self).__name__}({self.nrows}x{self.ncols})"


class ScalarMatrix(Matrix):
    """Matrix with entries in Q (Fraction) or GF(p) (GFp)."""

    def __init__(self, rows: Sequence[Sequence], field: Field = QQ):
        super().__init__([[field(x) for x in r] for r in rows])
        self.field = field

    @classmethod
    def _raw(cls, rows, field):
        m = cls.__new__(cls)
        Matrix.__init__(m, rows)
        m.field = field
        return m

    def _new(self, rows):
        return ScalarMatrix._raw(rows, self.field)

    def _zero(self):
        return self.field.zero

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ScalarMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, r: int, c: int, field: Field = QQ) -> "ScalarMatrix":
        return cls([[0] * c for _ in range(r)], field)

    def int_rows(self) -> List[List[int]]:
        """Residues of a GF(p) matrix as plain ints."""
        return [[x.value for x in r] for r in self.rows]

    def __matmul__(self, other):
        if isinstance(self.field, PrimeField) and isinstance(other, ScalarMatrix) \
                and other.field == self.field:
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            p = self.field.p
            a = self.int_rows()
            cols = list(zip(*other.int_rows()))
            rows = [[GFp(sum(x * y for x, y in zip(r, c)), p) for c in cols] for r in a]
            return ScalarMatrix._raw(rows, self.field)
        return super().__matmul__(other)

    def apply(self, v: Sequence) -> list:
        zero = self.field.zero
        out = []
        for row in self.rows:
            acc = zero
            for x, y in zip(row, v):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def to_json(self) -> dict:
        if self.nrows != self.ncols:
            raise ValueError("matrix JSON holds square matrices only")
        if isinstance(self.field, PrimeField):
            entries = [str(x.value) for r in self.rows for x in r]
        else:
            entries = [_frac_str(x) for r in self.rows for x in r]
        return {"n": self.nrows, "field": self.field.to_json(), "entries": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "ScalarMatrix":
        if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
            raise ValueError("matrix JSON needs keys 'n', 'field', 'entries'")
        n = int(obj["n"])
        field = field_from_json(obj.get("field", "Q"))
        entries = obj["entries"]
        if entries and isinstance(entries[0], list):
            flat = [x for r in entries for x in r]
        else:
            flat = list(entries)
        if len(flat) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(flat)}")
        vals = [_parse_scalar(field, x) for x in flat]
        return cls._raw([vals[i * n:(i + 1) * n] for i in range(n)], field)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_scalar(field: Field, x):
    if isinstance(x, dict):
        if isinstance(field, PrimeField) and int(x["p"]) != field.p:
            raise ValueError("entry modulus does not match the field")
        return field(int(x["value"]))
    if isinstance(x, bool):
        raise ValueError("boolean matrix entry")
    return field.parse(str(x))


class PolyMatrix(Matrix):
    """Matrix with :class:`Poly` entries from one ring."""

    def __init__(self, rows: Sequence[Sequence[Poly]], ring: PolyRing):
        super().__init__(rows)
        self.ring = ring

    def _new(self, rows):
        return PolyMatrix(rows, self.ring)

    def _zero(self):
        return self.ring.zero

    def evaluate(self, A: ScalarMatrix) -> ScalarMatrix:
        """Specialize every variable a_ij to the entry A[i, j]."""
        point = {k: A.rows[k // A.ncols][k % A.ncols] for k in range(A.nrows * A.ncols)}
        return ScalarMatrix._raw([[e.evaluate(point) for e in r] for r in self.rows], A.field)

    def degrees(self) -> List[List[int]]:
        return [[e.degree() for e in r] for r in self.rows]


def symbolic_matrix(ring: PolyRing) -> PolyMatrix:
    """The generic n x n matrix (a_ij)."""
    n = ring.n
    return PolyMatrix([[ring.var(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)], ring)


# -- exact linear algebra -------------------------------------------------

def _bareiss_rank(rows: List[List[int]]) -> int:
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        pv = pr[c]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def _integer_rows(M: ScalarMatrix) -> List[List[int]]:
    out = []
    for r in M.rows:
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def exact_rank(M: ScalarMatrix) -> int:
    """Rank over the entry field: fraction-free Bareiss over Q, elimination mod p over GF(p)."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if isinstance(M.field, PrimeField):
        return kernels.rank_mod_p(M.int_rows(), M.ncols, M.field.p)
    return _bareiss_rank(_integer_rows(M))


def rref(M: ScalarMatrix):
    """(reduced row echelon rows, pivot columns)."""
    if isinstance(M.field, PrimeField):
        red, piv = kernels.rref_mod_p(M.int_rows(), M.ncols, M.field.p)
        f = M.field
        return [[f(x) for x in r] for r in red], list(piv)
    m = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(M: ScalarMatrix) -> List[list]:
    """Basis of the right kernel {x : M x = 0}."""
    f = M.field
    if isinstance(f, PrimeField):
        return [[f(x) for x in v] for v in kernels.nullspace_mod_p(M.int_rows(), M.ncols, f.p)]
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        v = [f.zero] * M.ncols
        v[free] = f.one
        for r, c in enumerate(pivots):
            v[c] = -red[r][free]
        basis.append(v)
    return basis


def inverse(M: ScalarMatrix) -> Optional[ScalarMatrix]:
    """Inverse by Gauss-Jordan, or None if singular."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    f = M.field
    aug = ScalarMatrix._raw([list(r) + [f.one if i == j else f.zero for j in range(n)]
                             for i, r in enumerate(M.rows)], f)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        return None
    return ScalarMatrix._raw([r[n:] for r in red[:n]], f)


def determinant(M: ScalarMatrix):
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    f = M.field
    m = [list(r) for r in M.rows]
    det = f.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return f.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        pv = m[c][c]
        det = det * pv
        inv = f.one / pv
        for i in range(c + 1, n):
            if m[i][c]:
                k = m[i][c] * inv
                m[i] = [x - k * y for x, y in zip(m[i], m[c])]
    return det
