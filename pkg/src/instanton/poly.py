"""Sparse graded polynomials in (alpha|omega), beta, gamma, delta_1..delta_n, epsilon.

Coefficients are exact: either ``fractions.Fraction`` or Laurent polynomials in
``u`` (:class:`LaurentU`).  Variable degrees are fixed:

    deg(alpha) = deg(omega) = deg(delta_i) = deg(epsilon) = 2,
    deg(beta) = 4,  deg(gamma) = 6,

and ``epsilon^2 = 1`` (the epsilon exponent is stored reduced mod 2).

A polynomial is a dict mapping exponent tuples to coefficients; zero
coefficients are never stored.  All operations return new values; instances
are never mutated after construction, so they are safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class LaurentU:
    """Laurent polynomial in u over Fraction, as a map u-exponent -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[int, Scalar]] = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = _fr(c)
                if c:
                    clean[int(k)] = c
        self.terms = clean

    @classmethod
    def coerce(cls, x: Union["LaurentU", Scalar]) -> "LaurentU":
        if isinstance(x, LaurentU):
            return x
        return cls({0: _fr(x)})

    @classmethod
    def u_power(cls, k: int, coeff: Scalar = 1) -> "LaurentU":
        return cls({k: _fr(coeff)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentU.coerce(other)
        if not isinstance(other, LaurentU):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "LaurentU":
        return LaurentU({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "LaurentU":
        other = LaurentU.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentU(out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentU":
        return self + (-LaurentU.coerce(other))

    def __rsub__(self, other) -> "LaurentU":
        return LaurentU.coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentU":
        other = LaurentU.coerce(other)
        out: Dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentU(out)

    __rmul__ = __mul__

    def evaluate(self, u_value: Scalar) -> Fraction:
        """Evaluate at a nonzero rational u (zero allowed only without negative powers)."""
        u = _fr(u_value)
        if u == 0 and any(k < 0 for k in self.terms):
            raise ValueError("cannot evaluate negative u-powers at u = 0")
        return sum((c * u ** k for k, c in self.terms.items()), Fraction(0))

    def is_constant(self) -> bool:
        return set(self.terms) <= {0}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("Laurent polynomial is not constant")
        return self.terms.get(0, Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*u")
            else:
                parts.append(f"{c}*u^{k}")
        return "(" + " + ".join(parts) + ")"

    __repr__ = __str__

    def to_json(self) -> list:
        return [{"u": k, "coeff": str(self.terms[k])} for k in sorted(self.terms)]

    @classmethod
    def from_json(cls, doc: list) -> "LaurentU":
        return cls({int(t["u"]): Fraction(t["coeff"]) for t in doc})


RATIONAL = "rational"
LAURENT_U = "laurent_u"
ALPHA = "alpha"
OMEGA = "omega"


@dataclass(frozen=True)
class RingDescriptor:
    """Ambient ring shape: number of marked points, coefficient kind, coordinate."""

    n: int
    coeff_kind: str = RATIONAL
    coordinate: str = ALPHA
    has_epsilon: bool = False

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise ValueError(f"n must be a positive odd integer, got {self.n}")
        if self.coeff_kind not in (RATIONAL, LAURENT_U):
            raise ValueError(f"unknown coeff_kind {self.coeff_kind!r}")
        if self.coordinate not in (ALPHA, OMEGA):
            raise ValueError(f"unknown coordinate {self.coordinate!r}")

    @property
    def m(self) -> int:
        return (self.n - 1) // 2

    @property
    def nvars(self) -> int:
        return 3 + self.n + (1 if self.has_epsilon else 0)

    @property
    def var_names(self) -> Tuple[str, ...]:
        names = [self.coordinate, "beta", "gamma"]
        names += [f"delta{i}" for i in range(1, self.n + 1)]
        if self.has_epsilon:
            names.append("epsilon")
        return tuple(names)

    @property
    def degrees(self) -> Tuple[int, ...]:
        degs = [2, 4, 6] + [2] * self.n
        if self.has_epsilon:
            degs.append(2)
        return tuple(degs)

    def with_coordinate(self, coordinate: str) -> "RingDescriptor":
        return RingDescriptor(self.n, self.coeff_kind, coordinate, self.has_epsilon)

    def with_n(self, n: int) -> "RingDescriptor":
        return RingDescriptor(n, self.coeff_kind, self.coordinate, self.has_epsilon)

    def var_index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise KeyError(f"ring has no variable {name!r}") from None

    def delta_slice(self) -> slice:
        return slice(3, 3 + self.n)

    def zero_exponents(self) -> Exponents:
        return (0,) * self.nvars

    def monomial_degree(self, exps: Exponents) -> int:
        degs = self.degrees
        return sum(e * d for e, d in zip(exps, degs))

    def sort_key(self, exps: Exponents) -> Tuple[int, ...]:
        # lexicographic priority (omega-or-alpha, delta_1..delta_n, beta, gamma, epsilon)
        key = (exps[0],) + tuple(exps[3:3 + self.n]) + (exps[1], exps[2])
        if self.has_epsilon:
            key += (exps[-1],)
        return key


def ring(n: int, coeff_kind: str = RATIONAL, coordinate: str = ALPHA,
         has_epsilon: bool = False) -> RingDescriptor:
    return RingDescriptor(n, coeff_kind, coordinate, has_epsilon)


class Poly:
    """Sparse polynomial over a :class:`RingDescriptor`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: Mapping[Exponents, object],
                 _normalized: bool = False):
        self.ring = ring
        if _normalized:
            self.terms = dict(terms)
            return
        laurent = ring.coeff_kind == LAURENT_U
        nv = ring.nvars
        clean: Dict[Exponents, object] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nv:
                raise ValueError(f"expected {nv} exponents, got {len(exps)}")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if ring.has_epsilon and exps[-1] > 1:
                exps = exps[:-1] + (exps[-1] % 2,)  # epsilon^2 = 1
            coeff = LaurentU.coerce(coeff) if laurent else _fr(coeff)
            if not coeff:
                continue
            acc = clean.get(exps)
            coeff = coeff if acc is None else acc + coeff
            if coeff:
                clean[exps] = coeff
            else:
                clean.pop(exps, None)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "Poly":
        return cls(ring, {}, _normalized=True)

    @classmethod
    def constant(cls, ring: RingDescriptor, c) -> "Poly":
        return cls(ring, {ring.zero_exponents(): c})

    @classmethod
    def variable(cls, ring: RingDescriptor, name: str) -> "Poly":
        idx = ring.var_index(name)
        exps = [0] * ring.nvars
        exps[idx] = 1
        return cls(ring, {tuple(exps): 1})

    @classmethod
    def monomial(cls, ring: RingDescriptor, exps: Exponents, coeff=1) -> "Poly":
        return cls(ring, {tuple(exps): coeff})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Exponents):
        c = self.terms.get(tuple(exps))
        if c is None:
            return LaurentU() if self.ring.coeff_kind == LAURENT_U else Fraction(0)
        return c

    def constant_term(self):
        return self.coefficient(self.ring.zero_exponents())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        mdeg = self.ring.monomial_degree
        return max(mdeg(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        mdeg = self.ring.monomial_degree
        degs = {mdeg(e) for e in self.terms}
        return len(degs) == 1

    def homogeneous_component(self, d: int) -> "Poly":
        mdeg = self.ring.monomial_degree
        return Poly(self.ring, {e: c for e, c in self.terms.items() if mdeg(e) == d},
                    _normalized=True)

    def homogeneous_components(self) -> Dict[int, "Poly"]:
        out: Dict[int, Dict[Exponents, object]] = {}
        mdeg = self.ring.monomial_degree
        for e, c in self.terms.items():
            out.setdefault(mdeg(e), {})[e] = c
        return {d: Poly(self.ring, t, _normalized=True) for d, t in sorted(out.items())}

    def leading_order(self) -> "Poly":
        """Top-degree homogeneous component; errors on zero input."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.homogeneous_component(self.degree())

    # -- arithmetic ---------------------------------------------------------

    def _coerce_scalar(self, c):
        return LaurentU.coerce(c) if self.ring.coeff_kind == LAURENT_U else _fr(c)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self + Poly.constant(self.ring, other)
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out, _normalized=True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return self + (-other)
        return self + (-self._coerce_scalar(other))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = self._coerce_scalar(other)
            if not c:
                return Poly.zero(self.ring)
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()},
                        _normalized=True)
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        has_eps = self.ring.has_epsilon
        out: Dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if has_eps and e[-1] > 1:
                    e = e[:-1] + (e[-1] % 2,)
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out, _normalized=True)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        return self * (Fraction(1) / _fr(scalar))

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms)))

    # -- structure maps -----------------------------------------------------

    def substitute(self, images: Mapping[str, "Poly"]) -> "Poly":
        """Ring homomorphism sending each named variable to the given polynomial."""
        target = next(iter(images.values())).ring if images else self.ring
        idx_image = {self.ring.var_index(name): img for name, img in images.items()}
        pow_cache: Dict[Tuple[int, int], Poly] = {}

        def power(idx: int, k: int) -> Poly:
            key = (idx, k)
            if key not in pow_cache:
                pow_cache[key] = idx_image[idx] ** k
            return pow_cache[key]

        out = Poly.zero(target)
        for exps, coeff in self.terms.items():
            fixed = [0] * target.nvars
            term = None
            ok = True
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in idx_image:
                    p = power(i, e)
                    term = p if term is None else term * p
                else:
                    name = self.ring.var_names[i]
                    try:
                        j = target.var_index(name)
                    except KeyError:
                        ok = False
                        break
                    fixed[j] = e
            if not ok:
                raise ValueError("substitution target ring lacks a needed variable")
            mono = Poly.monomial(target, tuple(fixed), coeff)
            out = out + (mono if term is None else mono * term)
        return out

    def cast(self, target: RingDescriptor) -> "Poly":
        """Reinterpret in a larger ring; variables absent from the target must be unused."""
        if target == self.ring:
            return self
        if target.coordinate != self.ring.coordinate:
            raise ValueError("cast cannot change coordinates; use change_coordinates")
        out: Dict[Exponents, object] = {}
        for exps, coeff in self.terms.items():
            fixed = [0] * target.nvars
            for i, e in enumerate(exps):
                if not e:
                    continue
                name = self.ring.var_names[i]
                fixed[target.var_index(name)] = e
            if target.coeff_kind == LAURENT_U:
                coeff = LaurentU.coerce(coeff)
            elif isinstance(coeff, LaurentU):
                coeff = coeff.constant_value()
            out[tuple(fixed)] = coeff
        return Poly(target, out)

    def change_coordinates(self, target_coordinate: str) -> "Poly":
        """Rewrite between alpha- and omega-coordinates: omega = alpha + (sum delta_i)/2."""
        if target_coordinate not in (ALPHA, OMEGA):
            raise ValueError(f"unknown coordinate {target_coordinate!r}")
        if self.ring.coordinate == target_coordinate:
            return self
        new_ring = self.ring.with_coordinate(target_coordinate)
        half = Fraction(1, 2)
        delta_sum = Poly.zero(new_ring)
        for i in range(1, new_ring.n + 1):
            delta_sum = delta_sum + Poly.variable(new_ring, f"delta{i}")
        first = Poly.variable(new_ring, target_coordinate)
        # alpha = omega - sum/2 ; omega = alpha + sum/2
        image = first - delta_sum * half if target_coordinate == OMEGA else first + delta_sum * half
        pow_cache: Dict[int, Poly] = {0: Poly.constant(new_ring, 1), 1: image}

        def power(k: int) -> Poly:
            if k not in pow_cache:
                pow_cache[k] = power(k - 1) * image
            return pow_cache[k]

        out = Poly.zero(new_ring)
        for exps, coeff in self.terms.items():
            rest = (0,) + exps[1:]
            mono = Poly.monomial(new_ring, rest, coeff)
            a = exps[0]
            out = out + (mono if a == 0 else mono * power(a))
        return out

    def flip(self, indices: Iterable[int]) -> "Poly":
        """Flip symmetry tau_I: fixes omega, beta, gamma and negates delta_i for i in I."""
        idx = set(indices)
        for i in idx:
            if not 1 <= i <= self.ring.n:
                raise ValueError(f"flip index {i} outside 1..{self.ring.n}")
        if not idx:
            return self
        if self.ring.coordinate == ALPHA:
            return self.change_coordinates(OMEGA).flip(idx).change_coordinates(ALPHA)
        cols = [2 + i for i in idx]  # delta_i exponent position
        out = {}
        for exps, coeff in self.terms.items():
            s = sum(exps[c] for c in cols)
            out[exps] = -coeff if s % 2 else coeff
        return Poly(self.ring, out, _normalized=True)

    def pi_reduce(self) -> "Poly":
        """Point-reduction homomorphism dropping the last two marked points.

        Fixes the first variable, beta, gamma and delta_1..delta_{n-2}; sends
        the last two deltas to -delta_{n-2} and delta_{n-2} respectively.
        """
        n = self.ring.n
        if n < 3:
            raise ValueError("pi_reduce needs at least 3 delta variables")
        new_ring = self.ring.with_n(n - 2)
        eps = 1 if self.ring.has_epsilon else 0
        out: Dict[Exponents, object] = {}
        for exps, coeff in self.terms.items():
            d_last, d_mid, d_keep = exps[2 + n], exps[1 + n], exps[n]
            head = exps[:n]  # first var, beta, gamma, delta_1..delta_{n-3}
            new = head + (d_keep + d_mid + d_last,)
            if eps:
                new += (exps[-1],)
            c = -coeff if d_mid % 2 else coeff
            s = out.get(new)
            s = c if s is None else s + c
            if s:
                out[new] = s
            else:
                out.pop(new, None)
        return Poly(new_ring, out, _normalized=True)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, point: Mapping[str, Scalar], u_value: Optional[Scalar] = None):
        """Evaluate at a rational point given by variable name; exact result.

        For Laurent coefficients the result stays a LaurentU unless ``u_value``
        is supplied.
        """
        vals = []
        for name in self.ring.var_names:
            if name not in point:
                raise KeyError(f"missing value for {name}")
            vals.append(_fr(point[name]))
        laurent = self.ring.coeff_kind == LAURENT_U
        total = LaurentU() if laurent else Fraction(0)
        for exps, coeff in self.terms.items():
            f = Fraction(1)
            for e, v in zip(exps, vals):
                if e:
                    f *= v ** e
            total = total + coeff * f
        if laurent and u_value is not None:
            return total.evaluate(u_value)
        return total

    def evaluate_alpha_point(self, alpha: Scalar, beta: Scalar, gamma: Scalar,
                             deltas: Sequence[Scalar], epsilon: Scalar = 1,
                             u_value: Optional[Scalar] = None):
        """Evaluate at a point given in (alpha, beta, gamma, delta_*) coordinates."""
        if len(deltas) != self.ring.n:
            raise ValueError("wrong number of delta values")
        point = {"beta": beta, "gamma": gamma}
        for i, d in enumerate(deltas, start=1):
            point[f"delta{i}"] = d
        if self.ring.coordinate == ALPHA:
            point["alpha"] = alpha
        else:
            point["omega"] = _fr(alpha) + sum(map(_fr, deltas), Fraction(0)) / 2
        if self.ring.has_epsilon:
            point["epsilon"] = epsilon
        return self.evaluate(point, u_value=u_value)

    # -- presentation ---------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Exponents, object]]:
        key = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def _format_monomial(self, exps: Exponents) -> str:
        parts = []
        for name, e in zip(self.ring.var_names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for exps, coeff in self.sorted_terms():
            mono = self._format_monomial(exps)
            cs = str(coeff)
            if mono:
                chunks.append(mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"{cs}*{mono}"))
            else:
                chunks.append(cs)
        text = " + ".join(chunks)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"

    # -- JSON -----------------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for exps, coeff in self.sorted_terms():
            cj = coeff.to_json() if isinstance(coeff, LaurentU) else str(coeff)
            terms.append({"coeff": cj, "exps": list(exps)})
        return {"vars": list(self.ring.var_names), "terms": terms}

    @classmethod
    def from_json(cls, doc: dict) -> "Poly":
        names = doc["vars"]
        coordinate = names[0]
        n = sum(1 for v in names if v.startswith("delta"))
        has_eps = "epsilon" in names
        laurent = any(isinstance(t["coeff"], list) for t in doc["terms"])
        rng = RingDescriptor(n, LAURENT_U if laurent else RATIONAL, coordinate, has_eps)
        if list(rng.var_names) != list(names):
            raise ValueError(f"unsupported variable layout {names}")
        terms = {}
        for t in doc["terms"]:
            c = t["coeff"]
            coeff = LaurentU.from_json(c) if isinstance(c, list) else Fraction(c)
            terms[tuple(t["exps"])] = coeff
        return cls(rng, terms)


# -- helpers -------------------------------------------------------------------


def alpha(ring: RingDescriptor) -> Poly:
    return Poly.variable(ring, ALPHA)


def omega(ring: RingDescriptor) -> Poly:
    return Poly.variable(ring, OMEGA)


def beta(ring: RingDescriptor) -> Poly:
    return Poly.variable(ring, "beta")


def gamma(ring: RingDescriptor) -> Poly:
    return Poly.variable(ring, "gamma")


def delta(ring: RingDescriptor, i: int) -> Poly:
    return Poly.variable(ring, f"delta{i}")


def epsilon(ring: RingDescriptor) -> Poly:
    return Poly.variable(ring, "epsilon")


def epsilon_hat(ring: RingDescriptor) -> Poly:
    """The sign-normalized epsilon: (-1)^((n-1)/2) * epsilon."""
    return epsilon(ring) * ((-1) ** ring.m)


def monomials_of_degree(ring: RingDescriptor, d: int) -> List[Exponents]:
    """All exponent tuples of total degree d, sorted by the display order (descending)."""
    if d < 0:
        return []
    degs = ring.degrees
    nv = ring.nvars
    out: List[Exponents] = []

    def rec(i: int, remaining: int, acc: List[int]):
        if i == nv:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = degs[i]
        top = remaining // w
        if ring.has_epsilon and i == nv - 1:
            top = min(top, 1)
        for e in range(top + 1):
            acc.append(e)
            rec(i + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, d, [])
    out.sort(key=ring.sort_key, reverse=True)
    return out
