"""The named relation families: xi, delta-symmetrics, rho (two routes), w0/w1/W,
r_g (plain and Laurent), and the labeled generator sets for the ideals.

xi is computed only through its three-term recursion; the generating-series
route is deliberately avoided for xi itself because of the radical-sign
ambiguity (see rho_series, which carries that series and whose sign convention
is pinned empirically against rho_proj).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from . import series as series_mod
from .poly import (ALPHA, LAURENT_U, OMEGA, RATIONAL, LaurentU, Poly,
                   RingDescriptor, ring)
from .quotient import QuotientSpec, canonical_rep, delta_support, rbar_spec
from .series import SeriesT, exp_series, pow_binomial

# xi lives in alpha, beta, gamma only; we store raw exponent dicts keyed (a, b, c)
_xi_cache: Dict[Tuple[int, int], Dict[Tuple[int, int, int], Fraction]] = {}
_xi_lock = threading.Lock()


def _xi_raw(k: int, n: int) -> Dict[Tuple[int, int, int], Fraction]:
    if k < 0:
        raise ValueError("xi needs k >= 0")
    if n % 2 == 0:
        raise ValueError("n must be odd")
    key = (k, n)
    with _xi_lock:
        if key in _xi_cache:
            return _xi_cache[key]
    m = (n - 1) // 2
    table: List[Dict[Tuple[int, int, int], Fraction]] = [
        {(0, 0, 0): Fraction(1)},
        {(1, 0, 0): Fraction(1)},
    ]
    # (j+1) xi_{j+1} = alpha xi_j + (m-j) beta xi_{j-1} - (gamma/2) xi_{j-2}
    for j in range(1, k):
        acc: Dict[Tuple[int, int, int], Fraction] = {}

        def add(exps, coeff):
            if not coeff:
                return
            s = acc.get(exps, Fraction(0)) + coeff
            if s:
                acc[exps] = s
            else:
                acc.pop(exps, None)

        inv = Fraction(1, j + 1)
        for (a, b, c), co in table[j].items():
            add((a + 1, b, c), co * inv)
        f = Fraction(m - j, j + 1)
        if f:
            for (a, b, c), co in table[j - 1].items():
                add((a, b + 1, c), co * f)
        if j >= 2:
            half = Fraction(1, 2 * (j + 1))
            for (a, b, c), co in table[j - 2].items():
                add((a, b, c + 1), -co * half)
        table.append(acc)
    result = table[k] if k < len(table) else table[-1]
    if k == 0:
        result = {(0, 0, 0): Fraction(1)}
    elif k == 1:
        result = {(1, 0, 0): Fraction(1)}
    with _xi_lock:
        _xi_cache[key] = result
    return result


def xi(k: int, n: int, target: Optional[RingDescriptor] = None) -> Poly:
    """Mumford relation xi_{k,n}: homogeneous of degree 2k in alpha, beta, gamma.

    ``n`` may be any odd integer, negative included.  The result is materialized
    in ``target`` (alpha-coordinates by default, with n delta-variables when
    n >= 1, else one).
    """
    raw = _xi_raw(k, n)
    if target is None:
        target = ring(max(n, 1), coordinate=ALPHA)
    terms = {}
    pad = [0] * (target.nvars - 3)
    for (a, b, c), co in raw.items():
        terms[(a, b, c, *pad)] = co
    return Poly(target, terms)


def delta_sym(n: int, s: int, target: Optional[RingDescriptor] = None) -> Poly:
    """Elementary symmetric polynomial of degree s in delta_1..delta_n."""
    if not 0 <= s <= n:
        raise ValueError(f"s must be in 0..{n}")
    if target is None:
        target = ring(n, coordinate=OMEGA)
    if target.n != n:
        raise ValueError("target ring has the wrong number of deltas")
    terms = {}
    base = [0] * target.nvars
    for sup in combinations(range(n), s):
        exps = list(base)
        for i in sup:
            exps[3 + i] = 1
        terms[tuple(exps)] = Fraction(1)
    return Poly(target, terms)


# -- rho: projection route (ground truth) ---------------------------------------

_rho_proj_cache: Dict[Tuple[int, int], Dict[int, Poly]] = {}
_rho_lock = threading.Lock()


def _rho_proj_all(k: int, n: int) -> Dict[int, Poly]:
    """All rho_{k,n,s} at once, from the decomposition of xi-bar_{k,n} in R-bar_n."""
    key = (k, n)
    with _rho_lock:
        if key in _rho_proj_cache:
            return _rho_proj_cache[key]
    if n < 1:
        raise ValueError("projection route needs n >= 1")
    m = (n - 1) // 2
    xbar = canonical_rep(xi(k, n), rbar_spec())
    rng = xbar.ring
    coeff_ring = series_mod.COEFF_RING
    scale = Fraction(2 ** (m + 1))
    by_size: Dict[int, Dict[frozenset, Poly]] = {}
    for exps, coeff in xbar.terms.items():
        sup = delta_support(rng, exps)
        target = by_size.setdefault(len(sup), {})
        tgt_exps = (exps[0], exps[1], 0, 0)  # omega, beta in the small ring
        mono = Poly.monomial(coeff_ring, tgt_exps, coeff * scale)
        target[sup] = target.get(sup, Poly.zero(coeff_ring)) + mono
    out: Dict[int, Poly] = {}
    for s in range(n + 1):
        groups = by_size.get(s, {})
        expected = {frozenset(c) for c in combinations(range(1, n + 1), s)}
        if groups:
            if set(groups) != expected:
                raise AssertionError("decomposition residual nonzero: missing supports")
            vals = list(groups.values())
            if any(v != vals[0] for v in vals[1:]):
                raise AssertionError("decomposition residual nonzero: symmetry violated")
            out[s] = vals[0]
        else:
            out[s] = Poly.zero(coeff_ring)
    if _reassemble(out, rng, m) != xbar:
        raise AssertionError("decomposition residual nonzero")
    with _rho_lock:
        _rho_proj_cache[key] = out
    return out


def _reassemble(rhos: Dict[int, Poly], rng: RingDescriptor, m: int) -> Poly:
    total = Poly.zero(rng)
    inv = Fraction(1, 2 ** (m + 1))
    for s, rho_s in rhos.items():
        if rho_s.is_zero():
            continue
        lift_terms = {}
        for exps4, co in rho_s.terms.items():
            lift_terms[(exps4[0], exps4[1], 0) + (0,) * rng.n] = co
        lifted = Poly(rng, lift_terms)
        total = total + lifted * delta_sym(rng.n, s, rng) * inv
    return total


def rho_proj(k: int, n: int, s: int) -> Poly:
    """rho_{k,n,s} from the projection of xi-bar_{k,n}; a polynomial in omega, beta."""
    if s < 0 or s > n:
        raise ValueError(f"s must be in 0..{n}")
    if s > k:
        return Poly.zero(series_mod.COEFF_RING)
    return _rho_proj_all(k, n)[s]


# -- rho: series route (cross-check; sign pinned by the acceptance suite) --------


def rho_series(k: int, r: int, order: Optional[int] = None) -> Poly:
    """rho_{k,r} as the t^k coefficient of the defining series.

    r is an odd integer (negative allowed).  The series is evaluated literally;
    the odd part in sqrt(-beta) must cancel, which is asserted.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if r % 2 == 0:
        raise ValueError("r must be odd")
    N = k if order is None else order
    one = SeriesT.constant(N, 1)
    beta = series_mod.beta_poly()
    omega = series_mod.omega_poly()
    beta_t2 = SeriesT.term(N, 2, even=beta)        # beta t^2
    ts = SeriesT.term(N, 1, odd=1)                 # t*s
    f1 = pow_binomial(one + beta_t2, Fraction(-3, 4))
    # ((1 - ts)/(1 + ts))^(omega/(2s)) = exp(omega * log((1-ts)/(1+ts)) / (2s))
    log_ratio = series_mod.log_series(one - ts) - series_mod.log_series(one + ts)
    exponent = log_ratio.divide_by_s().scale(Fraction(1, 2)).scale(omega)
    f2 = exp_series(exponent)
    f3 = pow_binomial(one - ts, Fraction(1, 2)) + pow_binomial(one + ts, Fraction(1, 2))
    q = pow_binomial(one + beta_t2, Fraction(1, 2))
    half_base = (one + q).scale(Fraction(1, 2))    # (1 + sqrt(1+beta t^2)) / 2
    f4 = pow_binomial(half_base, Fraction(r - 1, 2)).scale(Fraction(2) ** ((r - 1) // 2))
    total = f1 * f2 * f3 * f4
    if not total.odd_part_zero():
        raise AssertionError("rho series has a nonvanishing odd sqrt(-beta) part")
    return total.coeffs[k][0]


# -- generator sets ---------------------------------------------------------------


@dataclass
class GeneratorSet:
    """A labeled ideal presentation: named generators over an ambient ring."""

    label: str
    ambient: RingDescriptor
    gens: List[Tuple[str, Poly]]
    quotient_context: Optional[QuotientSpec] = None
    meta: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        names = [name for name, _ in self.gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for name, p in self.gens:
            if p.is_zero():
                raise ValueError(f"generator {name} is zero")

    def polys(self) -> List[Poly]:
        return [p for _, p in self.gens]

    def names(self) -> List[str]:
        return [name for name, _ in self.gens]

    def __len__(self) -> int:
        return len(self.gens)

    def map_polys(self, fn, label: Optional[str] = None) -> "GeneratorSet":
        return GeneratorSet(label or self.label, self.ambient,
                            [(name, fn(p)) for name, p in self.gens],
                            self.quotient_context, dict(self.meta))

    def to_json(self) -> dict:
        doc = {
            "label": self.label,
            "g": self.meta.get("g"),
            "n": self.ambient.n,
            "sign": self.meta.get("sign"),
            "local": bool(self.meta.get("local", False)),
            "gens": [{"name": name, "poly": p.to_json()} for name, p in self.gens],
        }
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "GeneratorSet":
        gens = [(g["name"], Poly.from_json(g["poly"])) for g in doc["gens"]]
        ambient = gens[0][1].ring
        meta = {"g": doc.get("g"), "sign": doc.get("sign"), "local": doc.get("local")}
        return cls(doc["label"], ambient, gens, meta=meta)


class EtaChoice:
    """A marked-point subset with the degree-parity constraint |eta| odd iff m even."""

    __slots__ = ("eta", "n")

    def __init__(self, eta: Iterable[int], n: int):
        self.eta = frozenset(eta)
        self.n = n
        m = (n - 1) // 2
        if any(not 1 <= i <= n for i in self.eta):
            raise ValueError("eta indices outside 1..n")
        if (len(self.eta) % 2 == 1) != (m % 2 == 0):
            raise ValueError("eta parity invalid: |eta| must be odd exactly when m is even")

    @property
    def complement(self) -> frozenset:
        return frozenset(range(1, self.n + 1)) - self.eta


def w0(g: int, n: int, eta: EtaChoice) -> Poly:
    """Leading Mumford relation tau_eta(xi_{g+m,n}), in omega-coordinates."""
    m = (n - 1) // 2
    return xi(g + m, n).change_coordinates(OMEGA).flip(eta.eta)


def w1(g: int, n: int, eta: EtaChoice) -> Poly:
    """Sub-leading relation tau_{eta'}(xi_{g+m-1,n-2}), in omega-coordinates."""
    m = (n - 1) // 2
    base = xi(g + m - 1, n - 2, target=ring(n, coordinate=ALPHA))
    return base.change_coordinates(OMEGA).flip(eta.complement)


def w_skeleton(g: int, n: int, eta: EtaChoice) -> Poly:
    """w0 + (-1)^g * epsilon-hat * w1; the known two leading terms only."""
    eps_ring = ring(n, coordinate=OMEGA, has_epsilon=True)
    m = (n - 1) // 2
    a = w0(g, n, eta).cast(eps_ring)
    b = w1(g, n, eta).cast(eps_ring)
    eps_hat = Poly.variable(eps_ring, "epsilon") * ((-1) ** m)
    return a + eps_hat * b * ((-1) ** g)


def _flip_subsets(n: int, even: bool) -> List[Tuple[int, ...]]:
    out = []
    for size in range(0, n + 1):
        if (size % 2 == 0) != even:
            continue
        out.extend(combinations(range(1, n + 1), size))
    return out


def igen(g: int, n: int, parity: str) -> GeneratorSet:
    """Generators of the graded ideal: delta_i^2 + beta, gamma^{g+1}, and the
    even (or odd, by parity) flip symmetries of xi_{g+m}, xi_{g+m+1}, xi_{g+m+2}.

    ``parity`` is the parity of the line-bundle degree d ('even' or 'odd'); the
    flips are even when d + m is odd and odd otherwise.
    """
    if g < 0:
        raise ValueError("g must be >= 0")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    m = (n - 1) // 2
    d_odd = parity == "odd"
    use_even_flips = (int(d_odd) + m) % 2 == 1
    rng = ring(n, coordinate=ALPHA)
    gens: List[Tuple[str, Poly]] = []
    beta = Poly.variable(rng, "beta")
    for i in range(1, n + 1):
        di = Poly.variable(rng, f"delta{i}")
        gens.append((f"delta{i}^2+beta", di * di + beta))
    gens.append((f"gamma^{g + 1}", Poly.variable(rng, "gamma") ** (g + 1)))
    for j in range(3):
        base = xi(g + m + j, n, target=rng)
        for I in _flip_subsets(n, even=use_even_flips):
            name = f"tau_{{{','.join(map(str, I))}}}(xi_{{{g + m + j},{n}}})"
            gens.append((name, base.flip(I)))
    return GeneratorSet(
        label=f"I_{{{g},{n}}}^{parity}", ambient=rng, gens=gens,
        meta={"g": g, "n": n, "parity": parity},
    )


def kprime_gen(g: int, n: int) -> GeneratorSet:
    """Reduced generators of K'_{g,n}: even flips of xi-bar_{g+m} and xi-bar_{g+m+1}."""
    if g < 0:
        raise ValueError("g must be >= 0")
    m = (n - 1) // 2
    spec = rbar_spec()
    rng = ring(n, coordinate=OMEGA)
    gens: List[Tuple[str, Poly]] = []
    for j in range(2):
        base = canonical_rep(xi(g + m + j, n), spec)
        for I in _flip_subsets(n, even=True):
            name = f"tau_{{{','.join(map(str, I))}}}(xibar_{{{g + m + j},{n}}})"
            gens.append((name, base.flip(I)))
    return GeneratorSet(
        label=f"K'_{{{g},{n}}}", ambient=rng, gens=gens, quotient_context=spec,
        meta={"g": g, "n": n},
    )


# -- the one-point recursion -------------------------------------------------------

_r_cache: Dict[Tuple[int, bool], Poly] = {}
_r_lock = threading.Lock()


def _n1_ring(local: bool) -> RingDescriptor:
    return ring(1, coeff_kind=LAURENT_U if local else RATIONAL, coordinate=OMEGA)


def _u_inv(rng: RingDescriptor, power: int = 1):
    return LaurentU.u_power(-power) if rng.coeff_kind == LAURENT_U else Fraction(1)


def r_poly(g: int, local: bool = False) -> Poly:
    """The recursion family r_g in omega, beta, gamma, delta (one point).

    With ``local`` the coefficients live in Laurent polynomials in u and the
    bases carry u^{-1} factors; at u = 1 the plain family is recovered.
    """
    if g < 0:
        raise ValueError("g must be >= 0")
    key = (g, local)
    with _r_lock:
        if key in _r_cache:
            return _r_cache[key]
    rng = _n1_ring(local)
    w = Poly.variable(rng, "omega")
    b = Poly.variable(rng, "beta")
    c = Poly.variable(rng, "gamma")
    d = Poly.variable(rng, "delta1")
    half = Fraction(1, 2)
    wd = w + d * half  # omega + delta/2
    u1 = _u_inv(rng, 1)
    u2 = _u_inv(rng, 2)
    table: List[Poly] = [
        Poly.constant(rng, 1),
        wd - Poly.constant(rng, u1),
        (wd * wd - b) * half + (w - d * half) * u1 - Poly.constant(rng, u2) * half,
    ]
    for j in range(3, g + 1):
        sign = (-1) ** j
        lin = wd + Poly.constant(rng, u1 * (sign * (2 * j - 1)))
        mid = b + d * (u1 * (2 * sign)) - Poly.constant(rng, u2 * 2)
        nxt = (lin * table[j - 1] + mid * table[j - 2] * (1 - j)
               - c * table[j - 3] * half) * Fraction(1, j)
        table.append(nxt)
    with _r_lock:
        for i, p in enumerate(table[: g + 1]):
            _r_cache.setdefault((i, local), p)
    return table[g]


def r_poly_local(g: int) -> Poly:
    return r_poly(g, local=True)


def specialize_u(f: Poly, u_value: Fraction) -> Poly:
    """Evaluate Laurent coefficients at a nonzero rational u."""
    if f.ring.coeff_kind != LAURENT_U:
        return f
    rng = RingDescriptor(f.ring.n, RATIONAL, f.ring.coordinate, f.ring.has_epsilon)
    terms = {}
    for exps, coeff in f.terms.items():
        v = coeff.evaluate(u_value)
        if v:
            terms[exps] = v
    return Poly(rng, terms, _normalized=True)


def phi_negate(f: Poly) -> Poly:
    """The sign automorphism (alpha,beta,gamma,delta_*) -> (-alpha,beta,-gamma,-delta_*).

    In omega-coordinates it negates omega, gamma and every delta the same way,
    so one exponent-sign rule covers both coordinates.
    """
    out = {}
    ds = f.ring.delta_slice()
    for exps, coeff in f.terms.items():
        s = exps[0] + exps[2] + sum(exps[ds])
        out[exps] = -coeff if s % 2 else coeff
    return Poly(f.ring, out, _normalized=True)


def jgen_n1(g: int, sign: str = "+", local: bool = False) -> GeneratorSet:
    """The four-generator presentation (r_g, r_{g+1}, r_{g+2}, delta^2+beta-c)."""
    if g < 0:
        raise ValueError("g must be >= 0")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    rng = _n1_ring(local)
    d = Poly.variable(rng, "delta1")
    b = Poly.variable(rng, "beta")
    if local:
        csq = Poly.constant(rng, LaurentU({2: 1, -2: 1}))
        rel_name = "delta^2+beta-u^2-u^-2"
    else:
        csq = Poly.constant(rng, 2)
        rel_name = "delta^2+beta-2"
    gens = [(f"r_{g + j}", r_poly(g + j, local)) for j in range(3)]
    gens.append((rel_name, d * d + b - csq))
    if sign == "-":
        gens = [(name, phi_negate(p)) for name, p in gens]
    return GeneratorSet(
        label=f"J_{{{g},1}}^{sign}{'(u)' if local else ''}", ambient=rng, gens=gens,
        meta={"g": g, "n": 1, "sign": sign, "local": local},
    )


def ideal_component(g: int, n: int, k: int, sign: str = "+", local: bool = False) -> GeneratorSet:
    """The k-th exterior-factor component: identical to the (g-k) ideal."""
    if n != 1:
        raise ValueError("only n = 1 components are modeled")
    if not 0 <= k <= g:
        raise ValueError("need 0 <= k <= g")
    return jgen_n1(g - k, sign=sign, local=local)


def gamma_cofactors(g: int, sign: str = "+", local: bool = False) -> Dict[int, Poly]:
    """Explicit cofactors {i: a_i} with gamma^g = sum_i a_i * r_{g+i}, i in {0,1,2}.

    Built from the defining recursion, so the identity is exact in the
    polynomial ring; verified by the caller/test with plain arithmetic.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    rng = _n1_ring(local)
    w = Poly.variable(rng, "omega")
    b = Poly.variable(rng, "beta")
    d = Poly.variable(rng, "delta1")
    half = Fraction(1, 2)
    u1 = _u_inv(rng, 1)
    u2 = _u_inv(rng, 2)

    def lin(h: int) -> Poly:  # multiplier of r_{h-1} in the step h recursion
        sign_h = (-1) ** h
        return w + d * half + Poly.constant(rng, u1 * (sign_h * (2 * h - 1)))

    def mid(h: int) -> Poly:  # multiplier of r_{h-2}
        sign_h = (-1) ** h
        return (b + d * (u1 * (2 * sign_h)) - Poly.constant(rng, u2 * 2)) * (1 - h)

    gamma_var = Poly.variable(rng, "gamma")

    # gamma * r_{h-3} = 2*(lin(h) r_{h-1} + mid(h) r_{h-2} - h r_h)
    def gamma_times_r(k_idx: int) -> Dict[int, Poly]:
        h = k_idx + 3
        return {
            k_idx + 2: lin(h) * 2,
            k_idx + 1: mid(h) * 2,
            k_idx + 3: Poly.constant(rng, -2 * h),
        }

    # window invariant: gamma^j = sum of cof[i] * r_i over i in {j, j+1, j+2};
    # only the bottom index leaves the next window and needs the recursion,
    # the other two terms keep gamma as part of their cofactor.
    cof: Dict[int, Poly] = gamma_times_r(0)  # gamma^1 = gamma * r_0
    for j in range(1, g):
        nxt: Dict[int, Poly] = {j + 1: Poly.zero(rng), j + 2: Poly.zero(rng),
                                j + 3: Poly.zero(rng)}
        bottom = cof.get(j, Poly.zero(rng))
        for idx, cpoly in gamma_times_r(j).items():
            nxt[idx] = nxt[idx] + bottom * cpoly
        for idx in (j + 1, j + 2):
            a = cof.get(idx)
            if a is not None:
                nxt[idx] = nxt[idx] + a * gamma_var
        cof = {k2: v for k2, v in nxt.items() if not v.is_zero()}
    out = {i - g: p for i, p in cof.items()}
    assert set(out) <= {0, 1, 2}
    if sign == "-":
        out = {i: phi_negate(p) * ((-1) ** g) for i, p in out.items()}
    return out
