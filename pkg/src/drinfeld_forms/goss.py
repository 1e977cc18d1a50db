"""Goss polynomials of a discrete F_q-module given by its exponential.

G_k(X) = X (G_{k-1} + alpha_1 G_{k-q} + alpha_2 G_{k-q^2} + ...), G_k = 0 for
k <= 0.  Polynomials are dicts {degree: GradedElem} without zero entries.
"""

from dataclasses import dataclass, field

from .errors import InsufficientAlphas


class GossTable:
    """Memo of G_1, G_2, ... for one module.

    ``alphas`` are alpha_0 = 1, alpha_1, ...  With ``finite=True`` the module is
    finite and every alpha beyond the list is zero; otherwise asking for G_k
    with q^i <= k beyond the list raises InsufficientAlphas.  ``max_degree``
    truncates every G_k to X-degree <= max_degree (the recursion never lets
    high degrees feed into low ones, so the kept part is exact).
    """

    def __init__(self, ring, alphas, finite=False, max_degree=None):
        self.ring = ring
        self.q = ring.q
        self.alphas = list(alphas)
        self.finite = finite
        self.max_degree = max_degree
        self._polys = [{}]

    @property
    def dimension(self):
        """F_q-dimension of a finite module (index of the last nonzero alpha)."""
        if not self.finite:
            return None
        m = len(self.alphas) - 1
        while m > 0 and self.alphas[m].is_zero():
            m -= 1
        return m

    def _alpha(self, i):
        if i < len(self.alphas):
            return self.alphas[i]
        if self.finite:
            return None
        raise InsufficientAlphas(f"alpha_{i} is needed but only {len(self.alphas) - 1} were supplied")

    def poly(self, k):
        if k < 1:
            return {}
        q, top = self.q, self.max_degree
        while len(self._polys) <= k:
            n = len(self._polys)
            acc = dict(self._polys[n - 1])
            i, qi = 1, q
            while qi <= n:
                a = self._alpha(i)
                if a is not None and not a.is_zero():
                    for d, c in self._polys[n - qi].items():
                        v = a * c
                        if d in acc:
                            v = acc[d] + v
                            if v.is_zero():
                                del acc[d]
                                continue
                        acc[d] = v
                i += 1
                qi *= q
            if n == 1:
                acc = {0: self.ring.one()}
            new = {d + 1: c for d, c in acc.items() if top is None or d + 1 <= top}
            self._polys.append(new)
        return self._polys[k]


def goss_poly(table, k):
    return table.poly(k)


def log_coeffs(table, up_to):
    """beta_0..beta_up_to of the logarithm inverse to the table's exponential."""
    al = [table.alphas[i] if i < len(table.alphas) else table.ring.zero() for i in range(up_to + 1)]
    betas = [table.ring.one()]
    for k in range(1, up_to + 1):
        acc = table.ring.zero()
        for i in range(k):
            if not al[k - i].is_zero():
                acc = acc + betas[i] * al[k - i].frobenius_power(i)
        betas.append(-acc)
    return betas


def poly_pth_power(poly, v=1):
    p = None
    out = {}
    for d, c in poly.items():
        if p is None:
            p = c.ring.fld.p ** v
        out[d * p] = c.pth_power(v)
    return out


def poly_eq(a, b):
    if a.keys() != b.keys():
        return False
    return all(a[d] == b[d] for d in a)


def x_adic_order(poly):
    return min(poly) if poly else None


def generating_oracle(table, k_max):
    """Independent route to G_1..G_k_max: sum_{k>=1} G_k(X) u^{k-1} = X / (1 - X e(u)).

    Returns a list indexed by k of {degree: coefficient} dicts.
    """
    ring, q = table.ring, table.q
    # e(u) truncated at u-degree k_max - 1
    e = {}
    i, qi = 0, 1
    while qi <= k_max - 1:
        a = table._alpha(i)
        if a is not None and not a.is_zero():
            e[qi] = a
        i += 1
        qi *= q
    out = [dict() for _ in range(k_max + 1)]
    power = {0: ring.one()}  # e(u)^n
    for n in range(0, k_max):
        for deg_u, c in power.items():
            k = deg_u + 1
            if k <= k_max:
                out[k][n + 1] = c
        nxt = {}
        for du, c in power.items():
            for de, a in e.items():
                d = du + de
                if d > k_max - 1:
                    continue
                v = c * a
                nxt[d] = nxt[d] + v if d in nxt else v
        power = {d: c for d, c in nxt.items() if not c.is_zero()}
        if not power:
            break
    return [{d: c for d, c in g.items() if not c.is_zero()} for g in out]


@dataclass
class GossReport:
    ok: bool = True
    failure: tuple = None
    checked: dict = field(default_factory=dict)

    def fail(self, prop, k):
        if self.ok:
            self.ok = False
            self.failure = (prop, k)

    def __str__(self):
        if self.ok:
            return "ok: " + ", ".join(f"{p}({n})" for p, n in sorted(self.checked.items()))
        return f"failed property {self.failure[0]} at k={self.failure[1]}"


def goss_property_check(table, k_max):
    """Check properties (ii)-(ix) of Goss polynomials for k <= k_max."""
    q, ring = table.q, table.ring
    p = ring.fld.p
    rep = GossReport()

    def mark(prop):
        rep.checked[prop] = rep.checked.get(prop, 0) + 1

    polys = [None] + [table.poly(k) for k in range(1, k_max + 2)]
    one = ring.one()
    oracle = generating_oracle(table, k_max)
    jmax = 0
    while q ** (jmax + 1) - 1 <= k_max:
        jmax += 1
    betas = log_coeffs(table, jmax)
    m = table.dimension
    for k in range(1, k_max + 1):
        g = polys[k]
        # (ii) monic of degree k
        if max(g) != k or g[k] != one:
            rep.fail("ii", k)
        mark("ii")
        # (iii) G_k(0) = 0
        if 0 in g:
            rep.fail("iii", k)
        mark("iii")
        # (iv) G_k = X^k for k <= q
        if k <= q:
            if not poly_eq(g, {k: one}):
                rep.fail("iv", k)
            mark("iv")
        # (v) G_{pk} = G_k^p
        if p * k <= k_max:
            if not poly_eq(polys[p * k], poly_pth_power(g)):
                rep.fail("v", k)
            mark("v")
        # (vi) X^2 G_k' = k G_{k+1}
        lhs = {}
        for d, c in g.items():
            if d % p:
                lhs[d + 1] = c.scale(d % p)
        rhs = {d: c.scale(k % p) for d, c in polys[k + 1].items()} if k % p else {}
        if not poly_eq(lhs, rhs):
            rep.fail("vi", k)
        mark("vi")
        # (vii) recursion against the generating-function oracle
        if not poly_eq(g, oracle[k]):
            rep.fail("vii", k)
        mark("vii")
        # (ix) X-adic divisibility for finite modules
        if m is not None:
            if x_adic_order(g) < k // q ** m + 1:
                rep.fail("ix", k)
            mark("ix")
    # (viii) k = q^j - 1
    for j in range(1, jmax + 1):
        k = q ** j - 1
        expect = {}
        for i in range(j):
            if not betas[i].is_zero():
                expect[q ** j - q ** i] = betas[i]
        if not poly_eq(polys[k], expect):
            rep.fail("viii", k)
        mark("viii")
    return rep
