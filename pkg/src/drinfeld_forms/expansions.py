"""t-expansions of Eisenstein series, the coefficient forms g_i, Delta, h and
the para-Eisenstein series alpha_i, in rank r over F_q.

Two independent routes are available for Delta = g_r: the product over the
reciprocal division polynomials S_a, and the bootstrap
g_k = [k] E_{q^k-1} + sum_{j<k} E_{q^{k-j}-1} g_j^{q^{k-j}} from Eisenstein
series, where [k] = T^{q^k} - T.
"""

from dataclasses import dataclass, field

from .drinfeld import DrinfeldContext
from .fields import RatK, monic_polys
from .goss import GossTable
from .texp import PowerCache, TExp, t_a_series


@dataclass(frozen=True)
class FormId:
    kind: str  # "E", "g", "delta", "h", "alpha"
    index: int = 0

    @classmethod
    def parse(cls, text):
        text = text.strip()
        low = text.lower()
        if low in ("delta", "d"):
            return cls("delta")
        if low == "h":
            return cls("h")
        if ":" in text:
            kind, _, idx = text.partition(":")
            kind = kind.strip()
            if kind.lower() == "e":
                kind = "E"
            if kind not in ("E", "g", "alpha"):
                raise ValueError(f"unknown form kind {kind!r}")
            i = int(idx)
            if i < (0 if kind == "alpha" else 1):
                raise ValueError(f"index {i} out of range for {kind}")
            return cls(kind, i)
        raise ValueError(f"cannot parse form {text!r}")

    def __str__(self):
        return self.kind if self.kind in ("delta", "h") else f"{self.kind}:{self.index}"

    def weight(self, q, r):
        if self.kind == "E":
            return self.index
        if self.kind in ("g", "alpha"):
            return q ** self.index - 1
        if self.kind == "delta":
            return q ** r - 1
        return (q ** r - 1) // (q - 1)

    def type_l(self, q):
        return 1 % (q - 1) if self.kind == "h" and q > 2 else 0


def monic_up_to(q, d):
    out = []
    for k in range(d + 1):
        out.extend(monic_polys(q, k))
    return out


class Expander:
    """Builds expansions for fixed (q, r), caching intermediate series."""

    def __init__(self, q, r):
        if r < 2:
            raise ValueError("rank must be at least 2")
        self.q, self.r, self.s = q, r, r - 1
        self.ctx = DrinfeldContext(q, r - 1)
        self.ring = self.ctx.ring
        self.fld = self.ctx.fld
        self._ta = {}
        self._cache = {}

    def _cached(self, key, N, build):
        hit = self._cache.get(key)
        if hit is not None and hit.N >= N:
            return hit.truncate(N)
        val = build()
        self._cache[key] = val
        return val.truncate(N)

    # -- building blocks
    def t_a(self, a, N):
        key = tuple(a.coeffs())
        hit = self._ta.get(key)
        if hit is not None and hit[0].N >= N:
            return hit[0].truncate(N), hit[1]
        ser = t_a_series(self.ctx, a, N)
        entry = (ser, PowerCache(ser))
        self._ta[key] = entry
        return ser, entry[1]

    def eisenstein_monics(self, N):
        """Monic a whose t_a has order <= N."""
        d = 0
        while self.q ** (self.s * (d + 1)) <= N:
            d += 1
        return monic_up_to(self.q, d)

    def product_monics(self, N):
        """Monic a of positive degree with order(S_a - 1) <= N."""
        q, s = self.q, self.s
        d = 1
        out = []
        while q ** (s * d) - q ** (s * d - 1) <= N:
            out.extend(monic_polys(q, d))
            d += 1
        return out

    # -- forms
    def eisenstein(self, k, N):
        return self._cached(("E", k), N, lambda: self._eisenstein(k, N))

    def _eisenstein(self, k, N):
        q, ring = self.q, self.ring
        if k % (q - 1):
            return TExp(ring, {}, N, k, 0)
        L = 0
        while q ** (L + 1) <= k:
            L += 1
        table = GossTable(ring, self.ctx.alphas(L))
        poly = table.poly(k)
        total = {0: self.ctx.eisenstein(k)}
        for a in self.eisenstein_monics(N):
            ta, pw = self.t_a(a, N)
            ordr = ta.order()
            for j, c in poly.items():
                if j * ordr > N:
                    continue
                for m, v in pw(j).coeffs.items():
                    if m > N:
                        continue
                    term = -(v * c)
                    total[m] = total[m] + term if m in total else term
        return TExp(ring, total, N, k, 0)

    def g(self, i, N):
        if not 1 <= i <= self.r:
            raise ValueError(f"g_{i} is not defined in rank {self.r}")
        return self._cached(("g", i), N, lambda: self._g(i, N))

    def _g(self, i, N):
        q = self.q
        T = self.fld.T
        out = self.eisenstein(q ** i - 1, N).scale(RatK.of(self.fld, T ** (q ** i) - T))
        for j in range(1, i):
            gj = self.g(j, N).pth_power(self.fld.e * (i - j))
            out = out + self.eisenstein(q ** (i - j) - 1, N) * gj
        return out.truncate(N).retag(q ** i - 1, 0)

    def product(self, N):
        return self._cached(("P",), N, lambda: self._product(N))

    def _product(self, N):
        ring = self.ring
        P = TExp.one(ring, N)
        for a in self.product_monics(N):
            P = P * TExp(ring, self.ctx.s_poly(a), N, 0, 0)
        return P

    def delta(self, N):
        return self._cached(("delta",), N, lambda: self._delta(N))

    def _delta(self, N):
        q, r, ring = self.q, self.r, self.ring
        w = q ** r - 1
        if N < q - 1:
            return TExp(ring, {}, N, w, 0)
        P = self.product(N - (q - 1))
        lead = -(ring.delta() ** q)
        body = (P ** ((q ** r - 1) * (q - 1))).truncate(N - (q - 1))
        return body.scale(lead).shift(q - 1).truncate(N).retag(w, 0)

    def h(self, N):
        return self._cached(("h",), N, lambda: self._h(N))

    def _h(self, N):
        q, r, ring = self.q, self.r, self.ring
        w = (q ** r - 1) // (q - 1)
        if N < 1:
            return TExp(ring, {}, N, w, 1)
        P = self.product(N - 1)
        body = (P ** (q ** r - 1)).truncate(N - 1)
        return body.scale(ring.h(q)).shift(1).truncate(N).retag(w, 1)

    def alpha(self, i, N):
        """Para-Eisenstein series: exponential coefficients of the rank-r module,
        from alpha_k [k] = sum_{j <= min(k, r)} g_j alpha_{k-j}^{q^j}."""
        return self._cached(("alpha", i), N, lambda: self._alpha(i, N))

    def _alpha(self, i, N):
        q, ring = self.q, self.ring
        if i == 0:
            return TExp.one(ring, N)
        T = self.fld.T
        acc = None
        for j in range(1, min(i, self.r) + 1):
            term = self.g(j, N) * self.alpha(i - j, N).pth_power(self.fld.e * j)
            acc = term if acc is None else acc + term
        return acc.scale(RatK.of(self.fld, 1, T ** (q ** i) - T)).truncate(N).retag(q ** i - 1, 0)

    def build(self, form, N):
        if isinstance(form, str):
            form = FormId.parse(form)
        if form.kind == "E":
            return self.eisenstein(form.index, N)
        if form.kind == "g":
            return self.g(form.index, N)
        if form.kind == "delta":
            return self.delta(N)
        if form.kind == "h":
            return self.h(N)
        if form.kind == "alpha":
            return self.alpha(form.index, N)
        raise ValueError(f"unknown form {form}")


def eisenstein_expansion(q, r, k, N):
    return Expander(q, r).eisenstein(k, N)


def g_expansion(q, r, i, N):
    return Expander(q, r).g(i, N)


def delta_expansion(q, r, N):
    return Expander(q, r).delta(N)


def h_expansion(q, r, N):
    return Expander(q, r).h(N)


def product_function(q, r, N):
    return Expander(q, r).product(N)


@dataclass
class CongruenceReport:
    ok: bool
    offending: list = field(default_factory=list)

    def __str__(self):
        return "pass" if self.ok else f"fail at n = {self.offending}"


def congruence_check(f):
    """a_n = 0 unless n = 0 mod (q-1) and n = 0 or -1 mod q."""
    q = f.ring.q
    bad = [n for n in sorted(f.coeffs) if n % (q - 1) or (n % q not in (0, q - 1))]
    return CongruenceReport(not bad, bad)


def boundary_restrict(f):
    """Constant term of the expansion, a form of rank r-1."""
    return f[0]
