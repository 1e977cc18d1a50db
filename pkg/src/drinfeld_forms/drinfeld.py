"""The generic Drinfeld module of rank s over R_s.

phi_T = T X + g_1 X^q + ... + g_{s-1} X^{q^{s-1}} + Delta X^{q^s}, with all
derived data (phi_a, exponential and logarithm coefficients, Eisenstein
values, reciprocal division polynomials S_a, torsion exponentials) memoized
on a ``DrinfeldContext``.
"""

import functools

from .errors import NotIrreducible, NotMonic, ZeroInput
from .fields import RatK, poly_key
from .graded import coeff_ring


class SkewPoly:
    """Sum of c_i X^{q^i}; multiplication is composition."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def identity(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def scalar(cls, ring, c):
        return cls(ring, [ring.const(c)])

    def degree(self):
        """Index i of the top term X^{q^i} (-1 for zero)."""
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero()

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ring, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ring, [self[i] - other[i] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def scale(self, c):
        return SkewPoly(self.ring, [x.scale(c) for x in self.coeffs])

    def __matmul__(self, other):
        return skew_mul(self, other)

    def __repr__(self):
        q = self.ring.q
        parts = [f"({c})*X^{q ** i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts) or "0"


def skew_mul(f, g):
    """Composition f(g(X)): coefficient k is sum_{i+j=k} f_i * g_j^{q^i}."""
    if not f.coeffs or not g.coeffs:
        return SkewPoly(f.ring, [])
    out = [f.ring.zero() for _ in range(len(f.coeffs) + len(g.coeffs) - 1)]
    for i, fi in enumerate(f.coeffs):
        if fi.is_zero():
            continue
        for j, gj in enumerate(g.coeffs):
            if gj.is_zero():
                continue
            out[i + j] = out[i + j] + fi * gj.frobenius_power(i)
    return SkewPoly(f.ring, out)


class DrinfeldContext:
    """Memo tables for the generic rank-s module over F_q."""

    def __init__(self, q, s):
        self.q, self.s = q, s
        self.ring = coeff_ring(q, s)
        self.fld = self.ring.fld
        R = self.ring
        T = R.const(self.fld.T)
        self.phi_T = SkewPoly(R, [T] + [R.g(i) for i in range(1, s + 1)])
        self._phi = {}
        self._alphas = [R.one()]
        self._betas = [R.one()]
        self._inv = [R.one()]  # coefficients of 1/(1 + sum alpha_i w^{(q^i-1)/(q-1)})
        self._spoly = {}
        self._torsion = {}

    def __repr__(self):
        return f"DrinfeldContext(q={self.q}, s={self.s})"

    def K(self, num, den=None):
        return RatK.of(self.fld, num, den)

    # -- phi_a
    def phi(self, a):
        if a.is_zero():
            raise ZeroInput("phi_a needs a nonzero a")
        key = poly_key(a)
        hit = self._phi.get(key)
        if hit is not None:
            return hit
        R = self.ring
        cs = a.coeffs()
        out = SkewPoly(R, [R.const(RatK.of(self.fld, self.fld.R([cs[-1]])))])
        for c in reversed(cs[:-1]):
            out = skew_mul(out, self.phi_T) + SkewPoly(R, [R.const(RatK.of(self.fld, self.fld.R([c])))])
        self._phi[key] = out
        return out

    # -- exponential and logarithm
    def alphas(self, up_to):
        """alpha_0 .. alpha_up_to of the exponential, from e(Tz) = phi_T(e(z))."""
        q, s, R = self.q, self.s, self.ring
        T = self.fld.T
        while len(self._alphas) <= up_to:
            k = len(self._alphas)
            acc = R.zero(q ** k - 1)
            for j in range(1, min(k, s) + 1):
                acc = acc + self.phi_T.coeffs[j] * self._alphas[k - j].frobenius_power(j)
            self._alphas.append(acc.scale(RatK.of(self.fld, 1, T ** (q ** k) - T)))
        return self._alphas[: up_to + 1]

    def betas(self, up_to):
        """Logarithm coefficients: sum_{i+j=k} beta_i alpha_j^{q^i} = 0."""
        al = self.alphas(up_to)
        while len(self._betas) <= up_to:
            k = len(self._betas)
            acc = self.ring.zero(self.q ** k - 1)
            for i in range(k):
                acc = acc + self._betas[i] * al[k - i].frobenius_power(i)
            self._betas.append(-acc)
        return self._betas[: up_to + 1]

    def eisenstein(self, k):
        """E_k of the boundary lattice, read off from 1/e(z) = 1/z - sum E_k z^{k-1}."""
        q = self.q
        if k < 1:
            raise ValueError("k must be positive")
        if k % (q - 1):
            return self.ring.zero(k)
        m = k // (q - 1)
        idx = 0
        while (q ** (idx + 1) - 1) // (q - 1) <= m:
            idx += 1
        al = self.alphas(idx)
        steps = [(i, (q ** i - 1) // (q - 1)) for i in range(1, idx + 1)]
        while len(self._inv) <= m:
            n = len(self._inv)
            acc = self.ring.zero(n * (q - 1))
            for i, e in steps:
                if e > n:
                    break
                acc = acc + al[i] * self._inv[n - e]
            self._inv.append(-acc)
        out = -self._inv[m]
        out.weight = k
        return out

    # -- reciprocal division polynomial
    def delta_a(self, a):
        """Top coefficient of phi_a."""
        return self.phi(a).coeffs[-1]

    def s_poly(self, a):
        """S_a(X) = Delta_a^{-1} X^{q^{sd}} phi_a(1/X) as {exponent: coefficient}."""
        if a.is_zero() or not a.leading_coefficient().is_one():
            raise NotMonic("S_a needs a monic a")
        key = poly_key(a)
        hit = self._spoly.get(key)
        if hit is not None:
            return hit
        ph = self.phi(a)
        top = ph.degree()
        inv = ph.coeffs[-1].inverse()
        Q = self.q ** top
        out = {}
        for i, c in enumerate(ph.coeffs):
            if not c.is_zero():
                out[Q - self.q ** i] = c * inv
        self._spoly[key] = out
        return out

    def torsion_alphas(self, pi):
        """Exponential coefficients pi^{-1} * (coefficients of phi_pi) of the pi-torsion."""
        if pi.is_zero() or not pi.leading_coefficient().is_one():
            raise NotMonic("pi must be monic")
        if not pi.is_irreducible():
            raise NotIrreducible(f"{self.fld.poly_str(pi)} is not irreducible")
        key = poly_key(pi)
        hit = self._torsion.get(key)
        if hit is None:
            inv = RatK.of(self.fld, 1, pi)
            hit = [c.scale(inv) for c in self.phi(pi).coeffs]
            self._torsion[key] = hit
        return list(hit)


@functools.cache
def drinfeld_context(q, s):
    return DrinfeldContext(q, s)


def phi_a(ctx, a):
    return ctx.phi(a)


def exp_coeffs(ctx, up_to):
    return ctx.alphas(up_to)


def eisenstein_value(ctx, k):
    return ctx.eisenstein(k)


def s_poly(ctx, a):
    return ctx.s_poly(a)


def torsion_exp(ctx, pi):
    return ctx.torsion_alphas(pi)
