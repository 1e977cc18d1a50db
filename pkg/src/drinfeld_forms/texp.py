"""Truncated t-expansions sum_{n <= N} a_n t^n with coefficients in R_s.

Coefficients are stored sparsely; ``N`` is the largest index known exactly and
every operation records the tightest N its inputs justify.
"""

from .errors import NonUnitConstantTerm, NotMonic, TruncationUnderflow
from .fields import RatK
from .graded import GradedElem


class TExp:
    __slots__ = ("ring", "weight", "type_l", "N", "coeffs")

    def __init__(self, ring, coeffs, N, weight=0, type_l=0):
        if N < 0:
            raise TruncationUnderflow(f"truncation order {N} is negative")
        self.ring = ring
        self.N = N
        self.weight = weight
        self.type_l = type_l % (ring.q - 1) if ring.q > 2 else 0
        self.coeffs = {n: c for n, c in coeffs.items() if n <= N and not c.is_zero()}

    # -- constructors
    @classmethod
    def zero(cls, ring, N, weight=0, type_l=0):
        return cls(ring, {}, N, weight, type_l)

    @classmethod
    def one(cls, ring, N):
        return cls(ring, {0: ring.one()}, N, 0, 0)

    @classmethod
    def t(cls, ring, N):
        """The uniformizer itself (weight 1, type 1)."""
        return cls(ring, {1: ring.one()}, N, 1, 1)

    @classmethod
    def from_poly(cls, ring, poly, N, weight=0, type_l=0):
        return cls(ring, dict(poly), N, weight, type_l)

    # -- accessors
    @property
    def s(self):
        return self.ring.s

    @property
    def q(self):
        return self.ring.q

    def __getitem__(self, n):
        if n > self.N:
            raise IndexError(f"coefficient {n} is beyond the truncation {self.N}")
        return self.coeffs.get(n, self.ring.zero())

    def order(self):
        """Index of the first nonzero coefficient (N+1 if none is known)."""
        return min(self.coeffs) if self.coeffs else self.N + 1

    def items(self):
        return sorted(self.coeffs.items())

    def truncate(self, N):
        return TExp(self.ring, self.coeffs, min(N, self.N), self.weight, self.type_l)

    def retag(self, weight, type_l=None):
        return TExp(self.ring, self.coeffs, self.N, weight, self.type_l if type_l is None else type_l)

    def __eq__(self, other):
        if not isinstance(other, TExp):
            return NotImplemented
        return self.N == other.N and self.agrees(other)

    def agrees(self, other, N=None):
        """Equality of all coefficients up to min(N_f, N_g) (or N)."""
        M = min(self.N, other.N) if N is None else N
        if M > self.N or M > other.N:
            raise TruncationUnderflow("comparison beyond the known coefficients")
        keys = {n for n in self.coeffs if n <= M} | {n for n in other.coeffs if n <= M}
        return all(self[n] == other[n] for n in keys)

    # -- arithmetic
    def _type_sum(self, other):
        return (self.type_l + other.type_l)

    def __add__(self, other):
        if not isinstance(other, TExp):
            other = TExp(self.ring, {0: self.ring.const(other) if not isinstance(other, GradedElem) else other},
                         self.N, self.weight, self.type_l)
        N = min(self.N, other.N)
        out = {n: c for n, c in self.coeffs.items() if n <= N}
        for n, c in other.coeffs.items():
            if n > N:
                continue
            out[n] = out[n] + c if n in out else c
        return TExp(self.ring, out, N, self.weight, self.type_l)

    def __neg__(self):
        return TExp(self.ring, {n: -c for n, c in self.coeffs.items()}, self.N, self.weight, self.type_l)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c, weight=0, type_l=0):
        """Multiply by a constant (RatK or GradedElem of the given weight/type)."""
        if isinstance(c, GradedElem):
            out = {n: v * c for n, v in self.coeffs.items()}
            w = c.weight if c.weight is not None else weight
            t = c.tag().type_l if c.tag() is not None else type_l
            return TExp(self.ring, out, self.N, self.weight + w, self.type_l + t)
        if not isinstance(c, RatK):
            c = RatK.of(self.ring.fld, c)
        return TExp(self.ring, {n: v.scale(c) for n, v in self.coeffs.items()}, self.N, self.weight, self.type_l)

    def shift(self, m):
        """Multiply by t^m."""
        return TExp(self.ring, {n + m: c for n, c in self.coeffs.items()}, self.N + m,
                    self.weight + m, self.type_l + m)

    def __mul__(self, other):
        if not isinstance(other, TExp):
            return self.scale(other)
        N = min(self.N + other.order(), other.N + self.order())
        a, b = self.items(), other.items()
        out = {}
        for i, x in a:
            if i > N:
                break
            lim = N - i
            for j, y in b:
                if j > lim:
                    break
                v = x * y
                n = i + j
                if n in out:
                    out[n] = out[n] + v
                else:
                    out[n] = v
        return TExp(self.ring, out, N, self.weight + other.weight, self._type_sum(other))

    __rmul__ = __mul__

    def inverse(self):
        a0 = self.coeffs.get(0)
        if a0 is None or not a0.is_monomial() or any(next(iter(a0.terms))[:-1]):
            raise NonUnitConstantTerm("constant term is not a unit of the coefficient ring")
        inv0 = a0.inverse()
        N = self.N
        rest = [(n, c) for n, c in self.items() if n > 0]
        out = {0: inv0}
        for n in range(1, N + 1):
            acc = None
            for j, c in rest:
                if j > n:
                    break
                b = out.get(n - j)
                if b is None:
                    continue
                v = c * b
                acc = v if acc is None else acc + v
            if acc is not None and not acc.is_zero():
                out[n] = -(acc * inv0)
        return TExp(self.ring, out, N, -self.weight, -self.type_l)

    def pth_power(self, v=1):
        p = self.ring.fld.p ** v
        out = {n * p: c.pth_power(v) for n, c in self.coeffs.items()}
        return TExp(self.ring, out, p * (self.N + 1) - 1, self.weight * p, self.type_l * p)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return TExp.one(self.ring, self.N)
        p = self.ring.fld.p
        v = 0
        while e % p == 0:
            e //= p
            v += 1
        base = self.pth_power(v) if v else self
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def homothety_scale(self, c):
        """Apply homothety_scale to every coefficient."""
        return TExp(self.ring, {n: v.homothety_scale(c) for n, v in self.coeffs.items()},
                    self.N, self.weight, self.type_l)

    def __repr__(self):
        body = " + ".join(f"({c})*t^{n}" for n, c in self.items()) or "0"
        return f"{body} + O(t^{self.N + 1})"

    # -- serialization
    def to_data(self):
        return {"q": self.ring.q, "s": self.ring.s, "N": self.N, "weight": self.weight,
                "type": self.type_l, "coeffs": [[n, c.to_data()] for n, c in self.items()]}

    @classmethod
    def from_data(cls, data):
        from .graded import coeff_ring
        ring = coeff_ring(data["q"], data["s"])
        w = data["weight"]
        coeffs = {n: GradedElem.from_data(ring, c, w - n) for n, c in data["coeffs"]}
        return cls(ring, coeffs, data["N"], w, data["type"])

    # -- invariants
    def weight_defects(self):
        """Indices whose coefficient is not homogeneous of weight k - n."""
        bad = []
        for n, c in self.items():
            w = c.actual_weight()
            if w is None or w != self.weight - n:
                bad.append(n)
        return bad

    def support_defects(self):
        """Indices with a_n != 0 and n not congruent to the type mod q-1."""
        q = self.ring.q
        return [n for n in sorted(self.coeffs) if (n - self.type_l) % (q - 1)]


class PowerCache:
    """Powers arg^j of a series, computed on demand."""

    def __init__(self, arg):
        self.arg = arg
        self.powers = {1: arg}

    def __call__(self, j):
        if j in self.powers:
            return self.powers[j]
        half = j // 2
        out = self(half) * self(j - half)
        self.powers[j] = out
        return out


def t_a_series(ctx, a, N):
    """t_a = Delta_a^{-1} t^{q^{sd}} / S_a(t), truncated at N."""
    if a.is_zero() or not a.leading_coefficient().is_one():
        raise NotMonic("t_a needs a monic a")
    ring = ctx.ring
    order = ctx.q ** (ctx.s * a.degree())
    if order > N:
        return TExp(ring, {}, N, 1, 1)
    S = TExp(ring, ctx.s_poly(a), N - order, 0, 0)
    lead = ctx.delta_a(a).inverse()
    return S.inverse().scale(lead).shift(order).retag(1, 1)


def goss_at(table, n, arg, scale=None, powers=None):
    """G_n(scale * arg) for a series arg of positive order."""
    ring = table.ring
    if arg.coeffs and arg.order() < 1:
        raise ValueError("argument must have positive order")
    poly = table.poly(n)
    pw = powers if powers is not None else PowerCache(arg)
    N = arg.N
    ordr = arg.order()
    out = TExp(ring, {}, N, n, n)
    if scale is not None and not isinstance(scale, (GradedElem, RatK)):
        scale = RatK.of(ring.fld, scale)
    for j, c in sorted(poly.items()):
        if j * ordr > N:
            break
        if scale is None:
            coef = c
        elif isinstance(scale, RatK):
            coef = c.scale(scale ** j)
        else:
            coef = c * scale ** j
        term = pw(j)
        out = out + TExp(ring, {m: v * coef for m, v in term.coeffs.items()}, term.N, n, n)
    return TExp(ring, out.coeffs, N, n, n)
