"""Truncated formal power series in t over polynomial coefficients.

A :class:`SeriesT` coefficient is a pair (even, odd) of polynomials
representing ``even + s*odd`` where ``s`` is a formal square root of ``-beta``
(so products reduce ``s^2 -> -beta`` eagerly).  This carries the generating
series used to build the rho family without ever picking a branch of the
radical: any computation whose answer is a polynomial must end with zero odd
part, and that is asserted.

Also here: integer rational-function expansion for the Poincare formulas and
the determinant family det(a_{k,s}) from the expansion of (1+sqrt(1+x))^s.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linalg import Matrix
from .poly import OMEGA, Poly, ring

# Coefficient pairs live in a fixed tiny ring: polynomials in omega, beta.
COEFF_RING = ring(1, coordinate=OMEGA)


def _zero() -> Poly:
    return Poly.zero(COEFF_RING)


def _one() -> Poly:
    return Poly.constant(COEFF_RING, 1)


def omega_poly() -> Poly:
    return Poly.variable(COEFF_RING, "omega")


def beta_poly() -> Poly:
    return Poly.variable(COEFF_RING, "beta")


def binomial_coeff(e: Fraction, i: int) -> Fraction:
    """Generalized binomial coefficient C(e, i) for rational e."""
    out = Fraction(1)
    for j in range(i):
        out *= (e - j) / (i - j)
    return out


class SeriesT:
    """Power series sum_k (even_k + s*odd_k) t^k truncated at order N, s^2 = -beta."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Optional[Sequence[Tuple[Poly, Poly]]] = None):
        self.order = order
        if coeffs is None:
            self.coeffs = [(_zero(), _zero()) for _ in range(order + 1)]
        else:
            if len(coeffs) != order + 1:
                raise ValueError("coefficient list does not match order")
            self.coeffs = [(e, o) for e, o in coeffs]

    @classmethod
    def constant(cls, order: int, value) -> "SeriesT":
        s = cls(order)
        v = value if isinstance(value, Poly) else Poly.constant(COEFF_RING, value)
        s.coeffs[0] = (v, _zero())
        return s

    @classmethod
    def term(cls, order: int, k: int, even=None, odd=None) -> "SeriesT":
        s = cls(order)
        if k <= order:
            e = even if isinstance(even, Poly) else Poly.constant(COEFF_RING, even or 0)
            o = odd if isinstance(odd, Poly) else Poly.constant(COEFF_RING, odd or 0)
            s.coeffs[k] = (e, o)
        return s

    def even_part_zero(self) -> bool:
        return all(e.is_zero() for e, _ in self.coeffs)

    def odd_part_zero(self) -> bool:
        return all(o.is_zero() for _, o in self.coeffs)

    def constant_term(self) -> Tuple[Poly, Poly]:
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SeriesT) and self.order == other.order
                and all(a == c and b == d for (a, b), (c, d) in zip(self.coeffs, other.coeffs)))

    def __add__(self, other: "SeriesT") -> "SeriesT":
        if not isinstance(other, SeriesT):
            other = SeriesT.constant(self.order, other)
        if self.order != other.order:
            raise ValueError("order mismatch")
        return SeriesT(self.order, [(a + c, b + d) for (a, b), (c, d)
                                    in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "SeriesT":
        return SeriesT(self.order, [(-e, -o) for e, o in self.coeffs])

    def __sub__(self, other) -> "SeriesT":
        if not isinstance(other, SeriesT):
            other = SeriesT.constant(self.order, other)
        return self + (-other)

    def scale(self, c) -> "SeriesT":
        cp = c if isinstance(c, Poly) else Poly.constant(COEFF_RING, c)
        return SeriesT(self.order, [(e * cp, o * cp) for e, o in self.coeffs])

    def __mul__(self, other) -> "SeriesT":
        if not isinstance(other, SeriesT):
            return self.scale(other)
        if self.order != other.order:
            raise ValueError("order mismatch")
        N = self.order
        minus_beta = -beta_poly()
        out = [(_zero(), _zero()) for _ in range(N + 1)]
        for i, (e1, o1) in enumerate(self.coeffs):
            if e1.is_zero() and o1.is_zero():
                continue
            for j in range(N - i + 1):
                e2, o2 = other.coeffs[j]
                if e2.is_zero() and o2.is_zero():
                    continue
                ev, od = out[i + j]
                # (e1 + s o1)(e2 + s o2) = e1 e2 - beta o1 o2 + s (e1 o2 + o1 e2)
                ev = ev + e1 * e2 + minus_beta * (o1 * o2)
                od = od + e1 * o2 + o1 * e2
                out[i + j] = (ev, od)
        return SeriesT(N, out)

    __rmul__ = __mul__

    def times_s(self) -> "SeriesT":
        """Multiply by s (the formal sqrt(-beta))."""
        minus_beta = -beta_poly()
        return SeriesT(self.order, [(minus_beta * o, e) for e, o in self.coeffs])

    def divide_by_s(self) -> "SeriesT":
        """Divide by s; requires identically zero even part."""
        if not self.even_part_zero():
            raise ValueError("series is not an s-multiple")
        return SeriesT(self.order, [(o, _zero()) for _, o in self.coeffs])


def pow_binomial(base: SeriesT, exponent: Fraction) -> SeriesT:
    """(base)^exponent via the binomial series; base must have constant term 1."""
    e0, o0 = base.constant_term()
    if not (e0 == Poly.constant(COEFF_RING, 1) and o0.is_zero()):
        raise ValueError("binomial power needs constant term 1")
    exponent = Fraction(exponent)
    g = base - SeriesT.constant(base.order, 1)
    result = SeriesT.constant(base.order, 1)
    power = SeriesT.constant(base.order, 1)
    for i in range(1, base.order + 1):
        power = power * g
        c = binomial_coeff(exponent, i)
        if c:
            result = result + power.scale(c)
    return result


def exp_series(f: SeriesT) -> SeriesT:
    """exp(f) for a series with zero constant term."""
    e0, o0 = f.constant_term()
    if not (e0.is_zero() and o0.is_zero()):
        raise ValueError("exp needs zero constant term")
    result = SeriesT.constant(f.order, 1)
    power = SeriesT.constant(f.order, 1)
    fact = Fraction(1)
    for i in range(1, f.order + 1):
        power = power * f
        fact /= i
        result = result + power.scale(fact)
    return result


def log_series(f: SeriesT) -> SeriesT:
    """log(f) for a series with constant term 1."""
    e0, o0 = f.constant_term()
    if not (e0 == Poly.constant(COEFF_RING, 1) and o0.is_zero()):
        raise ValueError("log needs constant term 1")
    g = f - SeriesT.constant(f.order, 1)
    result = SeriesT(f.order)
    power = SeriesT.constant(f.order, 1)
    for i in range(1, f.order + 1):
        power = power * g
        result = result + power.scale(Fraction((-1) ** (i + 1), i))
    return result


# -- integer rational functions -------------------------------------------------


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def poly_pow(a: Sequence[int], k: int) -> List[int]:
    out = [1]
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_add(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def poly_scale(a: Sequence[int], c: int) -> List[int]:
    return [c * x for x in a]


def poly_shift(a: Sequence[int], k: int) -> List[int]:
    return [0] * k + list(a)


class RationalFn:
    """numerator / product of (1 - t^k) factors, with integer numerator coefficients."""

    __slots__ = ("numerator", "denominator_factors")

    def __init__(self, numerator: Sequence[int], denominator_factors: Sequence[int] = ()):
        self.numerator = list(numerator)
        self.denominator_factors = list(denominator_factors)
        if any(k < 1 for k in self.denominator_factors):
            raise ValueError("denominator factors need k >= 1")

    def expand(self, N: int) -> List[int]:
        return expand_rational_fn(self, N)


def expand_rational_fn(rf: RationalFn, N: int) -> List[int]:
    """Exact Taylor coefficients c_0..c_N of the rational function at t = 0."""
    c = list(rf.numerator[:N + 1]) + [0] * max(0, N + 1 - len(rf.numerator))
    for k in rf.denominator_factors:
        # divide by (1 - t^k): prefix recurrence c[i] += c[i-k]
        for i in range(k, N + 1):
            c[i] += c[i - k]
    return c


def expand_by_long_division(rf: RationalFn, N: int) -> List[int]:
    """Independent expansion path: multiply out the denominator, then do series division."""
    denom = [1]
    for k in rf.denominator_factors:
        factor = [1] + [0] * (k - 1) + [-1]
        denom = poly_mul(denom, factor)
    num = list(rf.numerator[:N + 1]) + [0] * max(0, N + 1 - len(rf.numerator))
    out = [0] * (N + 1)
    for i in range(N + 1):
        acc = num[i]
        for j in range(1, min(i, len(denom) - 1) + 1):
            acc -= denom[j] * out[i - j]
        if acc % denom[0]:
            raise ArithmeticError("non-integer series coefficient")
        out[i] = acc // denom[0]
    return out


# -- sqrt(1+x) binomial table and its determinants ------------------------------


def sqrt_one_plus_x(N: int) -> List[Fraction]:
    return [binomial_coeff(Fraction(1, 2), k) for k in range(N + 1)]


def a_table(N: int) -> List[List[Fraction]]:
    """a[k][s] = coefficient of x^k in (1 + sqrt(1+x))^s for 0 <= k, s <= N."""
    base = sqrt_one_plus_x(N)
    base = [base[0] + 1] + base[1:]  # 1 + sqrt(1+x)
    cols: List[List[Fraction]] = [[Fraction(1)] + [Fraction(0)] * N]
    cur = cols[0]
    for _ in range(N):
        nxt = [Fraction(0)] * (N + 1)
        for i, x in enumerate(cur):
            if not x:
                continue
            for j, y in enumerate(base):
                if i + j <= N and y:
                    nxt[i + j] += x * y
        cols.append(nxt)
        cur = nxt
    return [[cols[s][k] for s in range(N + 1)] for k in range(N + 1)]


def binom_sqrt_dets(N: int) -> List[Fraction]:
    """det(a_{k,s})_{0<=k,s<=M} for M = 0..N; all are asserted nonzero."""
    table = a_table(N)
    dets = []
    for M in range(N + 1):
        sub = Matrix([row[:M + 1] for row in table[:M + 1]])
        d = _det(sub)
        if not d:
            raise AssertionError(f"det(a_ks) vanished at M={M}")
        dets.append(d)
    return dets


def _det(M: Matrix) -> Fraction:
    a = [list(r) for r in M.data]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det
