"""Dense exact linear algebra over Fraction: RREF, rank, kernels, eigen helpers.

Matrices are lists of row lists holding Fractions.  They are treated as
immutable after construction; every routine works on copies.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Vector = List[Fraction]


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [[_fr(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def copy(self) -> "Matrix":
        return Matrix(self.data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.data == other.data

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        return self.data[ij[0]][ij[1]]

    def row(self, i: int) -> Vector:
        return list(self.data[i])

    def col(self, j: int) -> Vector:
        return [r[j] for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def scale(self, c) -> "Matrix":
        c = _fr(c)
        return Matrix([[c * x for x in row] for row in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().data
        return Matrix([[sum(a * b for a, b in zip(row, col) if a and b)
                        for col in ot] for row in self.data])

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(a * _fr(b) for a, b in zip(row, v) if a and b) for row in self.data]

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power needs a square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


def _pick_pivot(rowdata, candidates: List[int], col: int, strategy: str) -> int:
    if strategy == "first":
        return candidates[0]
    # minimal bit-length pivot entry, ties to the earliest row
    def bits(i: int) -> int:
        x = rowdata[i][col]
        return x.numerator.bit_length() + x.denominator.bit_length()
    return min(candidates, key=lambda i: (bits(i), i))


def rref(M: Matrix, strategy: str = "min_bits") -> Tuple[Matrix, List[int], Matrix]:
    """Reduced row echelon form.

    Returns (R, pivots, T) with R = T*M, T invertible, pivots strictly increasing.
    ``strategy`` selects the pivot row: 'first' or 'min_bits' (small entries, to
    limit fraction growth).  The resulting R is the canonical RREF either way.
    """
    a = [list(row) for row in M.data]
    t = [[Fraction(int(i == j)) for j in range(M.rows)] for i in range(M.rows)]
    pivots: List[int] = []
    r = 0
    for c in range(M.cols):
        cand = [i for i in range(r, M.rows) if a[i][c]]
        if not cand:
            continue
        p = _pick_pivot(a, cand, c, strategy)
        a[r], a[p] = a[p], a[r]
        t[r], t[p] = t[p], t[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        t[r] = [x * inv for x in t[r]]
        for i in range(M.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return Matrix(a), pivots, Matrix(t)


def rank(M: Matrix, strategy: str = "min_bits") -> int:
    return len(rref(M, strategy)[1])


def kernel_basis(M: Matrix) -> Matrix:
    """Rows span the right kernel {x : M x = 0}. Empty kernel gives a 0 x cols matrix."""
    R, pivots, _ = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    rows = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R.data[i][f]
        rows.append(v)
    out = Matrix(rows) if rows else Matrix.zeros(0, M.cols)
    return out


def solve(M: Matrix, b: Sequence) -> Optional[Vector]:
    """One solution of M x = b, or None if inconsistent."""
    aug = Matrix([list(row) + [_fr(bi)] for row, bi in zip(M.data, b)])
    R, pivots, _ = rref(aug)
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = R.data[i][M.cols]
    return x


def generalized_eigenspace_dim(M: Matrix, lam) -> int:
    """dim ker (M - lam)^dim(M)."""
    n = M.rows
    shifted = M - Matrix.identity(n).scale(lam)
    return n - rank(shifted.power(n))


def generalized_eigenspace(M: Matrix, lam) -> Matrix:
    """Rows span ker (M - lam)^dim(M)."""
    n = M.rows
    shifted = M - Matrix.identity(n).scale(lam)
    return kernel_basis(shifted.power(n))


def restrict(M: Matrix, basis: Matrix) -> Matrix:
    """Matrix of M on the span of ``basis`` rows; error if the span is not M-invariant."""
    k = basis.rows
    bt = basis.transpose()  # cols are basis vectors
    cols = []
    for i in range(k):
        img = M.apply(basis.row(i))
        c = solve(bt, img)
        if c is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(c)
    return Matrix([[cols[j][i] for j in range(k)] for i in range(k)])


def is_nilpotent_on(M: Matrix, basis: Matrix) -> bool:
    if basis.rows == 0:
        return True
    return restrict(M, basis).power(basis.rows).is_zero()


def subspace_intersection(A: Matrix, B: Matrix) -> Matrix:
    """Rows span (row space of A)' intersected with (row space of B)'.

    Inputs and output use rows-as-vectors.
    """
    if A.rows == 0 or B.rows == 0:
        return Matrix.zeros(0, A.cols)
    # x = A^T u = B^T v  <=>  [A^T | -B^T] (u,v) = 0
    stacked = Matrix([A.col(j) + [-x for x in B.col(j)] for j in range(A.cols)])
    ker = kernel_basis(stacked)
    rows = []
    for i in range(ker.rows):
        u = ker.row(i)[:A.rows]
        vec = [sum(u[r] * A.data[r][j] for r in range(A.rows)) for j in range(A.cols)]
        if any(vec):
            rows.append(vec)
    if not rows:
        return Matrix.zeros(0, A.cols)
    R, pivots, _ = rref(Matrix(rows))
    return Matrix([R.row(i) for i in range(len(pivots))])


def char_poly(M: Matrix) -> List[Fraction]:
    """Characteristic polynomial coefficients [c_0..c_n] of det(xI - M).

    Faddeev-LeVerrier; exact but O(n^4), intended for dims <= 60.
    """
    n = M.rows
    if n != M.cols:
        raise ValueError("square matrix required")
    if n > 60:
        raise ValueError("char_poly limited to dimension <= 60")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = Matrix.identity(n)
    for k in range(1, n + 1):
        Mk = M * Mk
        c = -Fraction(sum(Mk.data[i][i] for i in range(n)), k)
        coeffs[n - k] = c
        for i in range(n):
            Mk.data[i][i] += c
    return coeffs
