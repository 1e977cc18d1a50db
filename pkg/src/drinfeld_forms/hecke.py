"""Hecke correspondences.

Counting of superlattices (Gaussian binomials and brute-force subspace
enumeration), the exact rank-2 operator on t-expansions, its action on single
Goss terms G_n(t_a), and eigenvalue checks.

In rank 2 the superlattices of Lambda = A w1 + A w2 with quotient A/p split as

* type 1: Lambda' is replaced by p^{-1} Lambda'; t becomes pi * t_pi and the
  coefficients are rescaled by homothety, which collapses to pi^k f(t_pi);
* type 2: Lambda' is kept and the P translates sum to G_{n,W}(pi t), with W
  the pi-torsion of the boundary module.
"""

import itertools
from dataclasses import dataclass

from .errors import (IndexOutOfRange, InsufficientInputOrder, NotIrreducible,
                     NotMonic, RankUnsupported, TooLarge)
from .fields import RatK, base_field, prime_power
from .goss import GossTable
from .texp import PowerCache, TExp, goss_at, t_a_series

ENUM_LIMIT = 2 ** 20


@dataclass(frozen=True)
class HeckeDescriptor:
    q: int
    pi: tuple  # coefficient codes of a monic irreducible, lowest degree first
    i: int
    r: int

    def __post_init__(self):
        if not 0 <= self.i <= self.r:
            raise IndexOutOfRange(f"i={self.i} outside 0..{self.r}")
        poly = base_field(self.q).poly(self.pi)
        if not poly.leading_coefficient().is_one():
            raise NotMonic("pi must be monic")
        if poly.degree() < 1 or not poly.is_irreducible():
            raise NotIrreducible("pi must be irreducible")

    @property
    def degree(self):
        return len(self.pi) - 1

    @property
    def P(self):
        return self.q ** self.degree


# -- counting

def gaussian_count(r, i, P):
    """Number c_{r,i} of i-dimensional subspaces of F_P^r."""
    if prime_power(P) is None:
        raise ValueError(f"P={P} is not a prime power")
    if not 0 <= i <= r:
        raise IndexOutOfRange(f"i={i} outside 0..{r}")
    num = den = 1
    for j in range(i):
        num *= P ** r - P ** j
        den *= P ** i - P ** j
    return num // den


def count_recursion_check(r, i, P):
    """c_{r,i} = c_{r-1,i} + P^{r-i} c_{r-1,i-1}."""
    return gaussian_count(r, i, P) == gaussian_count(r - 1, i, P) + P ** (r - i) * gaussian_count(r - 1, i - 1, P)


def _rref_bases(F, elems, r, i):
    """Row-reduced echelon i x r matrices over F, one per i-dimensional subspace."""
    zero, one = F(0), F(1)
    for pivots in itertools.combinations(range(r), i):
        free = [(row, col) for row, p in enumerate(pivots) for col in range(p + 1, r) if col not in pivots]
        for vals in itertools.product(elems, repeat=len(free)):
            rows = [[zero] * r for _ in range(i)]
            for row, p in enumerate(pivots):
                rows[row][p] = one
            for (row, col), v in zip(free, vals):
                rows[row][col] = v
            yield rows


def _span(F, elems, rows):
    out = set()
    r = len(rows[0]) if rows else 0
    for coeffs in itertools.product(elems, repeat=len(rows)):
        vec = [F(0)] * r
        for c, row in zip(coeffs, rows):
            if c != 0:
                vec = [a + c * b for a, b in zip(vec, row)]
        out.add(tuple(vec))
    return out


@dataclass
class SuperlatticeCount:
    total: int
    type1: int
    type2: int
    by_intersection: dict
    nu: dict = None


def superlattice_enumerate(r, P, i, with_nu=False):
    """Enumerate i-dimensional subspaces V of F_P^r = p^{-1}Lambda/Lambda.

    V is classified by dim(V cap H), H spanned by the last r-1 coordinates:
    dimension i gives type 1, dimension i-1 gives type 2.  With ``with_nu`` the
    number of V containing a fixed vector is tabulated as well (for the zero
    vector, i.e. lambda in Lambda, and for each nonzero vector).
    """
    if P ** r > ENUM_LIMIT:
        raise TooLarge(f"P^r = {P ** r} exceeds the enumeration limit")
    if not 0 <= i <= r:
        raise IndexOutOfRange(f"i={i} outside 0..{r}")
    fld = base_field(P)
    F = fld.F
    elems = list(fld.elements())
    by = {}
    nu = {} if with_nu else None
    total = 0
    for rows in _rref_bases(F, elems, r, i):
        total += 1
        # V -> F_P, v -> first coordinate; its kernel is V cap H
        rank = 1 if any(row[0] != 0 for row in rows) else 0
        dim = i - rank
        by[dim] = by.get(dim, 0) + 1
        if with_nu:
            for v in _span(F, elems, rows):
                key = tuple(fld.code(x) for x in v)
                nu[key] = nu.get(key, 0) + 1
    return SuperlatticeCount(total, by.get(i, 0), by.get(i - 1, 0), by, nu)


# -- the rank-2 operator

def _check_prime(fld, pi):
    if pi.is_zero() or not pi.leading_coefficient().is_one():
        raise NotMonic("pi must be monic")
    if pi.degree() < 1 or not pi.is_irreducible():
        raise NotIrreducible(f"{fld.poly_str(pi)} is not irreducible")


class HeckeR2:
    """T_{p,i} on rank-2 t-expansions for one prime, memoizing t_pi and W-data."""

    def __init__(self, ctx, pi, simplified=True):
        if ctx.s != 1:
            raise RankUnsupported("the symbolic Hecke operator is implemented for rank 2 only")
        _check_prime(ctx.fld, pi)
        self.ctx, self.pi = ctx, pi
        self.ring = ctx.ring
        self.P = ctx.q ** pi.degree()
        self.simplified = simplified
        self._tpi = None
        self._tables = {}

    def _t_pi(self, N):
        if self._tpi is None or self._tpi[0].N < N:
            ser = t_a_series(self.ctx, self.pi, N)
            self._tpi = (ser, PowerCache(ser))
        return self._tpi

    def _table(self, N_out):
        tab = self._tables.get(N_out)
        if tab is None:
            tab = GossTable(self.ring, self.ctx.torsion_alphas(self.pi), finite=True, max_degree=N_out)
            self._tables[N_out] = tab
        return tab

    def apply(self, f, i, N_out):
        ring, fld = self.ring, self.ctx.fld
        if f.ring is not ring:
            raise RankUnsupported("series is not over the rank-1 boundary ring")
        if not 0 <= i <= 2:
            raise IndexOutOfRange(f"i={i} outside 0..2")
        k = f.weight
        pi_k = RatK.of(fld, self.pi) ** k
        if i == 0:
            return f.truncate(N_out)
        if i == 2:
            return f.truncate(N_out).scale(pi_k)
        if f.N < N_out * self.P:
            raise InsufficientInputOrder(f"need input order {N_out * self.P}, have {f.N}")
        out = self._type1(f, N_out, pi_k) + self._type2(f, N_out)
        return TExp(ring, out.coeffs, N_out, f.weight, f.type_l)

    def _type1(self, f, N_out, pi_k):
        ring, fld = self.ring, self.ctx.fld
        tpi, pw = self._t_pi(N_out)
        acc = {}
        pi = RatK.of(fld, self.pi)
        for n, a in f.items():
            if n * self.P > N_out:
                break
            if n == 0:
                terms = {0: ring.one()}
            else:
                terms = pw(n).coeffs
            if self.simplified:
                c = a.scale(pi_k)
            else:
                c = a.homothety_scale(pi).scale(pi ** n)
            for m, v in terms.items():
                if m > N_out:
                    continue
                x = c * v
                acc[m] = acc[m] + x if m in acc else x
        return TExp(ring, acc, N_out, f.weight, f.type_l)

    def _type2(self, f, N_out):
        ring, fld = self.ring, self.ctx.fld
        tab = self._table(N_out)
        pi = RatK.of(fld, self.pi)
        pows = [RatK.of(fld, 1)]
        for _ in range(N_out):
            pows.append(pows[-1] * pi)
        acc = {}
        for n, a in f.items():
            if n == 0 or n > N_out * self.P:
                continue
            for j, c in tab.poly(n).items():
                x = a * c.scale(pows[j])
                acc[j] = acc[j] + x if j in acc else x
        return TExp(ring, acc, N_out, f.weight, f.type_l)


def hecke_r2(f, pi, i, N_out, ctx=None, simplified=True):
    """T_{p,i} f for a rank-2 expansion f known to order >= N_out * q^deg(pi)."""
    from .drinfeld import drinfeld_context
    ctx = ctx or drinfeld_context(f.ring.q, f.ring.s)
    return HeckeR2(ctx, pi, simplified).apply(f, i, N_out)


def goss_term_series(ctx, n, a, N, table=None, cache=None):
    """G_{n,Lambda'}(t_a) as a series of weight n and type n."""
    table = table or boundary_goss_table(ctx, n)
    ta = t_a_series(ctx, a, N)
    return goss_at(table, n, ta)


def boundary_goss_table(ctx, n):
    q = ctx.q
    L = 0
    while q ** (L + 1) <= n:
        L += 1
    return GossTable(ctx.ring, ctx.alphas(L))


def hecke_on_goss_term(ctx, n, a, pi, i, N):
    """Image of G_n(t_a) under T_{p,i} from the closed formula.

    i = 1: pi^n G_n(t_{a pi}) + pi^n G_n(t_a) if pi does not divide a, else
    only the first term.  i = 2: pi^n G_n(t_a).
    """
    fld = ctx.fld
    _check_prime(fld, pi)
    table = boundary_goss_table(ctx, n)
    pin = RatK.of(fld, pi) ** n
    if i == 2:
        return goss_at(table, n, t_a_series(ctx, a, N)).scale(pin)
    if i != 1:
        raise IndexOutOfRange("only i = 1, 2 are implemented in rank 2")
    out = goss_at(table, n, t_a_series(ctx, a * pi, N)).scale(pin)
    if not (a % pi).is_zero():
        out = out + goss_at(table, n, t_a_series(ctx, a, N)).scale(pin)
    return out


# -- eigenvalues

@dataclass
class EigenResult:
    is_eigen: bool
    eigenvalue: RatK = None
    detail: str = ""

    def __iter__(self):
        return iter((self.is_eigen, self.eigenvalue))


def proportionality(f, g):
    """The unique c in K with g = c f on the known support, or None."""
    N = min(f.N, g.N)
    ratio = None
    for n in sorted(set(f.coeffs) | set(g.coeffs)):
        if n > N:
            break
        a, b = f[n], g[n]
        if a.is_zero():
            if not b.is_zero():
                return None, f"t^{n}: image nonzero where the form vanishes"
            continue
        if ratio is None:
            key = next(iter(a.terms))
            if key not in b.terms:
                return None, f"t^{n}: no common monomial"
            ratio = b.terms[key] / a.terms[key]
        if a.scale(ratio) != b:
            return None, f"t^{n}: ratio differs"
    return ratio, ""


def eigencheck(form, pi, i, N, q=None, r=2, expander=None):
    """Check that T_{p,i} form = lambda * form to order N and return lambda."""
    from .expansions import Expander, FormId
    if isinstance(form, str):
        form = FormId.parse(form)
    if expander is None:
        expander = Expander(q, r)
    ex = expander
    fld = ex.fld
    _check_prime(fld, pi)
    k = form.weight(ex.q, ex.r)
    if i == ex.r:
        f = ex.build(form, N)
        g = f.scale(RatK.of(fld, pi) ** k)
    else:
        if ex.r != 2:
            raise RankUnsupported("T_{p,i} with i < r is implemented for rank 2 only")
        P = ex.q ** pi.degree()
        f_in = ex.build(form, N * P)
        g = HeckeR2(ex.ctx, pi).apply(f_in, i, N)
        f = f_in.truncate(N)
    ratio, why = proportionality(f, g)
    return EigenResult(ratio is not None, ratio, why)


def p_power_check(f, pi, i, N, ctx=None):
    """T(f^p) = (T f)^p to order N."""
    from .drinfeld import drinfeld_context
    ctx = ctx or drinfeld_context(f.ring.q, f.ring.s)
    op = HeckeR2(ctx, pi)
    lhs = op.apply(f.pth_power(1), i, N)
    rhs = op.apply(f, i, N).pth_power(1)
    return lhs.agrees(rhs, N)
