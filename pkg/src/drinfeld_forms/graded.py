"""Weighted Laurent polynomials over K in the boundary generators.

For boundary rank s the ring is K[g_1, ..., g_{s-1}, h^{+-1}], graded by
weight(g_i) = q^i - 1 and weight(h) = (q^s - 1)/(q - 1).  The discriminant of
the boundary is never a generator of its own: it is always written as
(-1)^{s-1} h^{q-1}, so two elements are equal iff their term dicts agree.
"""

import functools
from dataclasses import dataclass

from .errors import WeightMismatch
from .fields import INF, InfLaurent, RatK, base_field


class CoeffRing:
    """The ring R_s over F_q; a light context shared by its elements."""

    def __init__(self, q, s):
        if s < 1:
            raise ValueError("boundary rank must be at least 1")
        self.q, self.s = q, s
        self.fld = base_field(q)
        self.nvars = s  # g_1..g_{s-1} then h
        self.gen_weights = tuple(q ** i - 1 for i in range(1, s)) + ((q ** s - 1) // (q - 1),)
        self.unit_key = (0,) * s
        self._one = RatK.of(self.fld, 1)

    def __repr__(self):
        return f"CoeffRing(q={self.q}, s={self.s})"

    def mono_weight(self, key):
        return sum(a * w for a, w in zip(key, self.gen_weights))

    def mono_type(self, key):
        return key[-1] % (self.q - 1)

    def K(self, num, den=None):
        return RatK.of(self.fld, num, den)

    def const(self, c):
        c = c if isinstance(c, RatK) else RatK.of(self.fld, c)
        return GradedElem(self, {self.unit_key: c} if not c.is_zero() else {}, 0)

    def zero(self, weight=None):
        return GradedElem(self, {}, weight)

    def one(self):
        return self.const(1)

    def monomial(self, key, coeff=1):
        c = coeff if isinstance(coeff, RatK) else RatK.of(self.fld, coeff)
        key = tuple(key)
        return GradedElem(self, {key: c} if not c.is_zero() else {}, self.mono_weight(key))

    def g(self, i):
        """Generator g_i for 1 <= i < s; g_s is the discriminant."""
        if i == self.s:
            return self.delta()
        if not 1 <= i < self.s:
            raise ValueError(f"g_{i} is not a generator of R_{self.s}")
        key = [0] * self.s
        key[i - 1] = 1
        return self.monomial(key)

    def h(self, power=1):
        key = [0] * self.s
        key[-1] = power
        return self.monomial(key)

    def delta(self):
        """(-1)^{s-1} h^{q-1}."""
        sign = -1 if (self.s - 1) % 2 else 1
        return self.monomial((0,) * (self.s - 1) + (self.q - 1,), sign)


@functools.cache
def coeff_ring(q, s):
    return CoeffRing(q, s)


def delta_of_boundary(q, s):
    return coeff_ring(q, s).delta()


@dataclass(frozen=True)
class WeightTag:
    weight: int
    type_l: int

    def consistent(self, q, s):
        return (self.weight - s * self.type_l) % (q - 1) == 0


class GradedElem:
    """Finite sum of coeff * monomial with RatK coefficients.

    ``weight`` is the declared weight (None when not homogeneous or unknown).
    """

    __slots__ = ("ring", "terms", "weight")

    def __init__(self, ring, terms, weight=None):
        self.ring = ring
        self.terms = terms
        self.weight = weight

    # -- construction helpers
    def _lift(self, other):
        if isinstance(other, GradedElem):
            return other
        return self.ring.const(other)

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        ws = {self.ring.mono_weight(k) for k in self.terms}
        return len(ws) <= 1

    def actual_weight(self):
        ws = {self.ring.mono_weight(k) for k in self.terms}
        if len(ws) > 1:
            return None
        return ws.pop() if ws else self.weight

    def tag(self):
        if not self.terms:
            return None
        types = {self.ring.mono_type(k) for k in self.terms}
        w = self.actual_weight()
        if w is None or len(types) > 1:
            return None
        return WeightTag(w, types.pop())

    def is_monomial(self):
        return len(self.terms) == 1

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and self.ring.unit_key in self.terms)

    def const_coeff(self):
        return self.terms.get(self.ring.unit_key, RatK.of(self.ring.fld, 0))

    # -- arithmetic
    def __add__(self, other):
        o = self._lift(other)
        if not o.terms:
            return self if self.weight is not None or o.weight is None else GradedElem(self.ring, self.terms, o.weight)
        if not self.terms:
            return o if o.weight is not None or self.weight is None else GradedElem(self.ring, o.terms, self.weight)
        if self.weight is not None and o.weight is not None and self.weight != o.weight:
            raise WeightMismatch(f"adding weight {self.weight} to weight {o.weight}")
        terms = dict(self.terms)
        for k, c in o.terms.items():
            if k in terms:
                s = terms[k] + c
                if s.is_zero():
                    del terms[k]
                else:
                    terms[k] = s
            else:
                terms[k] = c
        return GradedElem(self.ring, terms, self.weight if self.weight is not None else o.weight)

    __radd__ = __add__

    def __neg__(self):
        return GradedElem(self.ring, {k: -c for k, c in self.terms.items()}, self.weight)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        """Multiply by a scalar of K."""
        if not isinstance(c, RatK):
            c = RatK.of(self.ring.fld, c)
        if c.is_zero():
            return GradedElem(self.ring, {}, self.weight)
        if c.is_one():
            return self
        return GradedElem(self.ring, {k: v * c for k, v in self.terms.items()}, self.weight)

    def __mul__(self, other):
        if not isinstance(other, GradedElem):
            return self.scale(other)
        w = None if self.weight is None or other.weight is None else self.weight + other.weight
        a, b = self.terms, other.terms
        if not a or not b:
            return GradedElem(self.ring, {}, w)
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            key = tuple(x + y for x, y in zip(ka, kb))
            return GradedElem(self.ring, {key: ca * cb}, w)
        terms = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                prod = ca * cb
                if key in terms:
                    terms[key] = terms[key] + prod
                else:
                    terms[key] = prod
        return GradedElem(self.ring, {k: c for k, c in terms.items() if not c.is_zero()}, w)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse of a unit c * h^b."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials in h are invertible")
        (k, c), = self.terms.items()
        if any(k[:-1]):
            raise ZeroDivisionError("g-generators are not invertible")
        key = tuple(-x for x in k)
        return GradedElem(self.ring, {key: c.inverse()}, None if self.weight is None else -self.weight)

    def __truediv__(self, other):
        if isinstance(other, GradedElem):
            return self * other.inverse()
        return self.scale(RatK.of(self.ring.fld, 1) / other)

    def pth_power(self, v=1):
        """Raise to the p^v-th power (additive in characteristic p)."""
        k = self.ring.fld.p ** v
        terms = {tuple(x * k for x in key): c.frobenius(v) for key, c in self.terms.items()}
        return GradedElem(self.ring, terms, None if self.weight is None else self.weight * k)

    def frobenius_power(self, j=1):
        """Raise to the q^j-th power: c*m -> c^{q^j} m^{q^j}."""
        return self.pth_power(self.ring.fld.e * j)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.ring.one()
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return GradedElem(self.ring, {tuple(x * n for x in k): c ** n},
                              None if self.weight is None else self.weight * n)
        p = self.ring.fld.p
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        base = self.pth_power(v) if v else self
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def homothety_scale(self, c):
        """Multiply each term by c^{weight of the term}."""
        if not isinstance(c, RatK):
            c = RatK.of(self.ring.fld, c)
        terms = {k: v * c ** self.ring.mono_weight(k) for k, v in self.terms.items()}
        return GradedElem(self.ring, terms, self.weight)

    def __eq__(self, other):
        if isinstance(other, GradedElem):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, RatK)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((k, hash(c)) for k, c in self.terms.items())))

    # -- serialization
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: kc[0])

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        s = self.ring.s
        for key, c in self.sorted_terms():
            factors = []
            for i, a in enumerate(key):
                if a == 0:
                    continue
                name = "h" if i == s - 1 else f"g{i + 1}"
                factors.append(name if a == 1 else f"{name}^{a}")
            cs = str(c)
            if not factors:
                out.append(cs)
                continue
            if " + " in cs or "/" in cs:
                cs = f"({cs})"
            out.append(" * ".join([cs] + factors))
        return " + ".join(out)

    def __repr__(self):
        return f"GradedElem[{self}]"

    def to_data(self):
        return [[list(k), c.to_codes()] for k, c in self.sorted_terms()]

    @classmethod
    def from_data(cls, ring, data, weight=None):
        terms = {tuple(k): RatK.from_codes(ring.fld, c) for k, c in data}
        return cls(ring, terms, weight)


def homothety_scale(x, c):
    return x.homothety_scale(c)


def numeric_eval(x, gen_values=None, delta_value=None, prec=None):
    """Evaluate x at a point given by InfLaurent values of the generators.

    ``gen_values`` holds one value per generator (g_1, ..., g_{s-1}, h).  When
    every h-exponent is a multiple of q-1 the h-value may be replaced by the
    value of the boundary discriminant through ``delta_value``.  ``prec`` is the
    relative precision used for coefficients multiplying exactly known
    monomials.
    """
    ring = x.ring
    s, q = ring.s, ring.q
    vals = list(gen_values) if gen_values is not None else []
    if delta_value is not None:
        vals = vals[: s - 1] + [None]
    if len(vals) != s:
        raise ValueError(f"expected {s} generator values")
    ext = (delta_value if delta_value is not None else vals[-1]).ext
    total = InfLaurent.zero(ext)
    sign = -1 if (s - 1) % 2 else 1
    for key, c in x.sorted_terms():
        mono = InfLaurent.one(ext)
        for i, a in enumerate(key[:-1]):
            if a:
                mono = mono * vals[i] ** a
        b = key[-1]
        if b:
            if delta_value is not None:
                if b % (q - 1):
                    raise ValueError("h-exponent not divisible by q-1; an h-value is needed")
                m = b // (q - 1)
                d = delta_value if sign == 1 else -delta_value
                mono = mono * d ** m
            else:
                mono = mono * vals[-1] ** b
        rel = mono.rel_prec()
        if rel == INF:
            if prec is None:
                rel = 64
            else:
                rel = prec
        if mono.is_zero():
            term = InfLaurent.zero(ext, mono.prec + _lead_bound(c))
        else:
            term = InfLaurent.from_ratk(ext, c, rel) * mono
        total = total + term
    return total


def _lead_bound(c):
    """Exponent of T^{-1} of the leading term of c."""
    return c.den.degree() - c.num.degree()
