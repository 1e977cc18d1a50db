"""Growth of the coefficients of the product function P(t) = prod S_a(t).

Everything here is done on the exact log_q scale.  The combinatorial norms
come from the orthogonality of the coordinates of a point in F_k: for
w in F_k the lattice vector a w has log|a w| = max_i (deg a_i + k_i), so every
finite product of the form |z| prod'_{|a w| <= |z|} |z|/|a w| is a count.

The numeric path works at the boundary point w' whose lattice is F_Q[T] with
Q = q^{r-1} (lifts of an F_Q-basis).  There the Drinfeld module is the Carlitz
module of F_Q[T], so g'_i = 0 for i < r-1 exactly and the discriminant has a
rapidly converging product; a truncated lattice sum cross-checks it.
"""

import itertools
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import PrecisionExhausted, ZeroDivisionPoint
from .expansions import Expander
from .fields import INF, InfLaurent, base_field, ext_field, v_inf
from .graded import numeric_eval


@dataclass(frozen=True)
class FundIndex:
    k: tuple

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        object.__setattr__(self, "k", k)
        if not k:
            raise ValueError("empty index")
        if k[-1] != 0 or any(x < 0 for x in k) or any(a < b for a, b in zip(k, k[1:])):
            raise ValueError(f"{k} is not a fundamental index (k_1 >= ... >= k_r = 0)")

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(x) for x in text.split(",")))

    @classmethod
    def zero(cls, r):
        return cls((0,) * r)

    @property
    def r(self):
        return len(self.k)

    def prime(self):
        if self.r < 2:
            raise ValueError("rank-1 index has no boundary part")
        return FundIndex(self.k[1:])

    def __str__(self):
        return ",".join(map(str, self.k))


@dataclass(frozen=True)
class DivisionPoint:
    """u = n^{-1}(x_1, ..., x_r) in (K/A)^r; polynomials as coefficient codes."""
    q: int
    n: tuple
    x: tuple

    def __post_init__(self):
        fld = base_field(self.q)
        n = fld.poly(self.n)
        if n.is_zero() or not n.leading_coefficient().is_one():
            raise ValueError("denominator must be monic")
        xs = [fld.poly(c) for c in self.x]
        if any(x.degree() >= n.degree() for x in xs):
            raise ValueError("numerators must have degree below the denominator")
        g = n
        for x in xs:
            g = g.gcd(x)
        if g.degree() > 0:
            raise ValueError("representation is not reduced")

    @classmethod
    def from_polys(cls, q, n, xs):
        fld = base_field(q)
        return cls(q, tuple(fld.codes(n)), tuple(tuple(fld.codes(x)) for x in xs))

    @classmethod
    def u0(cls, q, r, n=None):
        """n^{-1}(T^{d-1}, 0, ..., 0), by default with n = T."""
        fld = base_field(q)
        n = fld.T if n is None else n
        x = fld.T ** (n.degree() - 1)
        g = n.gcd(x)
        n, x = n // g, x // g
        return cls.from_polys(q, n, [x] + [fld.zero_poly] * (r - 1))

    @property
    def r(self):
        return len(self.x)

    def is_zero(self):
        return all(not any(c) for c in self.x)

    def coord_logs(self):
        """log|u_i| = deg x_i - deg n (None for u_i = 0)."""
        fld = base_field(self.q)
        d = fld.poly(self.n).degree()
        out = []
        for c in self.x:
            x = fld.poly(c)
            out.append(None if x.is_zero() else x.degree() - d)
        return out


def count_le(q, k, m):
    """#{a in A^r : max_i(deg a_i + k_i) <= m}, zero vector included."""
    if m < 0:
        return 1
    out = 1
    for ki in k:
        out *= q ** max(0, m - ki + 1)
    return out


def _sum_below(q, k, top):
    """sum over nonzero a with log|a w| <= top of (top - log|a w|)."""
    total = 0
    for m in range(0, top + 1):
        total += (count_le(q, k, m) - count_le(q, k, m - 1)) * (top - m)
    return total


def log_norm_t(q, k):
    """log_q |t(w)| on F_k."""
    k = k if isinstance(k, FundIndex) else FundIndex(k)
    k1, kp = k.k[0], k.k[1:]
    return -k1 - _sum_below(q, kp, k1)


def log_uw(k, u):
    k = k if isinstance(k, FundIndex) else FundIndex(k)
    if u.r != k.r:
        raise ValueError("division point and index have different ranks")
    logs = [lg + ki for lg, ki in zip(u.coord_logs(), k.k) if lg is not None]
    if not logs:
        raise ZeroDivisionPoint("u = 0")
    return max(logs)


def log_norm_du(q, k, u):
    """log_q |d_u(w)| = log|u w| + sum'_{|a w| <= |u w|} (log|u w| - log|a w|) on F_k."""
    k = k if isinstance(k, FundIndex) else FundIndex(k)
    L = log_uw(k, u)
    return L + _sum_below(q, k.k, L)


def c_constant(q, kp):
    """log_q of the spectral norm of d_{u_0} on F'_{k'}."""
    kp = kp if isinstance(kp, FundIndex) else FundIndex(kp)
    return log_norm_du(q, kp, DivisionPoint.u0(q, kp.r))


def t_du_bound_check(q, k, u):
    """|t(w) d_u(w')| <= q^{-1} on F_k."""
    k = k if isinstance(k, FundIndex) else FundIndex(k)
    return log_norm_t(q, k) + log_norm_du(q, k.prime(), u) <= -1


def convergence_check(q, k):
    """|t| <= q^{-1} c(k')^{-1} on F_k, so P(t) converges there."""
    k = k if isinstance(k, FundIndex) else FundIndex(k)
    return log_norm_t(q, k) <= -1 - c_constant(q, k.prime())


def fundamental_indices(r, k1_max):
    """All fundamental indices of length r with k_1 <= k1_max."""
    for head in itertools.product(range(k1_max + 1), repeat=r - 1):
        k = head + (0,)
        if all(a >= b for a, b in zip(k, k[1:])):
            yield FundIndex(k)


def random_division_point(rng, q, r, max_deg):
    """Random nonzero reduced u = n^{-1}x with deg n in 1..max_deg."""
    fld = base_field(q)
    while True:
        d = rng.randint(1, max_deg)
        n = fld.poly([rng.randrange(q) for _ in range(d)] + [1])
        xs = [fld.poly([rng.randrange(q) for _ in range(d)]) for _ in range(r)]
        g = n
        for x in xs:
            g = g.gcd(x)
        if all(x.is_zero() for x in xs) or g.degree() > 0:
            continue
        return DivisionPoint.from_polys(q, n, xs)


# -- equality indices

def j_index(kp):
    """j with k_2 = ... = k_j > k_{j+1}, counted in the full index (k_1, k')."""
    kp = kp.k if isinstance(kp, FundIndex) else tuple(kp)
    lead = sum(1 for x in kp if x == kp[0])
    return 1 + lead


def q_values(q, r, kp, k_max):
    j = j_index(kp)
    out = []
    d = 1
    while q ** (r * d) - q ** (r * d - (j - 1)) <= k_max:
        out.append(q ** (r * d) - q ** (r * d - (j - 1)))
        d += 1
    return out


def equality_indices(q, r, kp, k_max):
    """Positive k <= k_max that are sums of distinct Q_d = q^{rd} - q^{rd-(j-1)}."""
    qs = q_values(q, r, kp, k_max)
    sums = {0}
    for v in qs:
        sums |= {s + v for s in sums if s + v <= k_max}
    return sorted(sums - {0})


def _r_choices(q, r, kp, k_max):
    """Per d, the numbers q^{rd} - q^{rd-i} for 1 <= i < j."""
    j = j_index(kp)
    out = []
    d = 1
    while q ** (r * d) - q ** (r * d - 1) <= k_max:
        out.append([q ** (r * d) - q ** (r * d - i) for i in range(1, j)])
        d += 1
    return out


def generic_equality_indices(q, r, kp, k_max):
    """Positive k <= k_max that are sums over distinct d of some q^{rd} - q^{rd-i},
    1 <= i < j.  Equality can only occur here; away from special points of F'
    it does (the indices from equality_indices are the ones forced everywhere)."""
    sums = {0}
    for opts in _r_choices(q, r, kp, k_max):
        sums |= {s + v for s in sums for v in opts if s + v <= k_max}
    return sorted(sums - {0})


def unmixedness_check(q, r, kp, k_max):
    """Each k <= k_max has at most one representation as a sum over distinct d of
    R_d in {q^{rd} - q^{rd-1}, ..., q^{rd} - q^{rd-(j-1)}}."""
    choices = _r_choices(q, r, kp, k_max)
    seen = {}
    for pick in itertools.product(*[[0] + c for c in choices]):
        s = sum(pick)
        if 0 < s <= k_max:
            seen[s] = seen.get(s, 0) + 1
    return all(v == 1 for v in seen.values())


# -- numeric boundary point

def ext_elements(ext):
    p, n = ext.base.p, ext.desc.e * ext.desc.m
    y = ext.gen()
    basis = [y ** i for i in range(n)]
    out = []
    for digits in itertools.product(range(p), repeat=n):
        acc = ext.F(0)
        for dgt, b in zip(digits, basis):
            if dgt:
                acc += ext.F(dgt) * b
        out.append(acc)
    return out


def carlitz_discriminant(ext, Q, rel_prec):
    """pibar^{Q-1} = -T^Q prod_{i>=1} (1 - T^{1-Q^i})^{1-Q} for the lattice F_Q[T]."""
    u = lambda e: InfLaurent.from_coeffs(ext, [1], lead=e)
    one = InfLaurent.one(ext)
    prod = one
    i = 1
    while Q ** i - 1 < rel_prec:
        prod = prod * (one - u(Q ** i - 1))
        i += 1
    prod = InfLaurent.make(ext, prod.lead, prod.body, rel_prec)
    val = -(u(-Q) * prod.inverse() ** (Q - 1))
    return InfLaurent.make(ext, val.lead, val.body, val.lead + rel_prec)


def lattice_sum_discriminant(ext, Q, D):
    """(T^Q - T) E_{Q-1}(F_Q[T]) with the lattice sum truncated at deg a <= D.

    c^{-(Q-1)} = 1 for c in F_Q^*, so the sum over each F_Q^*-orbit of a
    monic a is (Q-1) a^{-(Q-1)} = -a^{-(Q-1)}.  The discarded tail has
    valuation >= (Q-1)(D+1).
    """
    elems = ext_elements(ext)
    abs_prec = (Q - 1) * (D + 1)
    total = InfLaurent.zero(ext, abs_prec)
    for d in range(D + 1):
        for low in itertools.product(elems, repeat=d):
            cs = [ext.F(1)] + list(reversed(low))  # highest degree first
            a = InfLaurent.from_coeffs(ext, cs, lead=-d)
            term = (a ** (Q - 1)).inverse(abs_prec - (Q - 1) * d)
            total = total - term
    T = ext.base.T
    bracket = InfLaurent.from_poly(ext, T ** Q - T) if Q == ext.q else _ext_poly(ext, Q)
    return bracket * total


def _ext_poly(ext, Q):
    """T^Q - T as an exact InfLaurent."""
    cs = [ext.F(0)] * (Q + 1)
    cs[0] = ext.F(1)
    cs[Q - 1] = -ext.F(1)
    return InfLaurent.from_coeffs(ext, cs, lead=-Q)


@dataclass
class SamplePoint:
    q: int
    s: int
    gens: list  # g'_1, ..., g'_{s-1} as InfLaurent
    delta: InfLaurent  # boundary discriminant
    rel_prec: int
    lattice_digits: int = None
    lattice_agrees: bool = None
    h: InfLaurent = None  # needed when h' exponents are not multiples of q-1

    @property
    def log_delta(self):
        return -self.delta.valuation()


def sample_point(q, r, prec=256, lattice_degree=None):
    """The boundary point of rank s = r-1 with lattice F_{q^s}[T]."""
    s = r - 1
    Q = q ** s
    ext = ext_field(q, s)
    delta = carlitz_discriminant(ext, Q, prec)
    if lattice_degree is None:
        # about 4096 monic polynomials in the truncated sum
        lattice_degree = 2
        while Q ** (lattice_degree + 1) <= 4096:
            lattice_degree += 1
    check = lattice_sum_discriminant(ext, Q, lattice_degree)
    digits = check.prec - check.lead if not check.is_zero() else 0
    agrees = (not check.is_zero()) and (delta - check).is_zero()
    if not agrees:
        raise PrecisionExhausted("lattice sum and product formula disagree for the boundary discriminant")
    gens = [InfLaurent.zero(ext) for _ in range(s - 1)]
    return SamplePoint(q, s, gens, delta, prec, digits, agrees)


def generic_point(q, r, prec=256):
    """A point of F'_0 off the elliptic locus, given by its Drinfeld module.

    Rank-2 boundary with q = 2: g'_1 = T^2 and h' = Delta' = T^4, so that
    |j'| = |g'_1|^3 / |Delta'| = q^q.  That pins the lattice to F'_0 with unit
    scaling, and unlike the F_4[T] point |g'_1| takes its generic value q^q.
    """
    if (q, r) != (2, 3):
        raise ValueError("generic point is implemented for q = 2, r = 3")
    ext = ext_field(q, r - 1)
    fld = base_field(q)
    g1 = InfLaurent.from_poly(ext, fld.T ** q)
    h = InfLaurent.from_poly(ext, fld.T ** (q * q))
    return SamplePoint(q, r - 1, [g1], h, prec, h=h)


def evaluate_at(x, point, prec=None):
    prec = prec or point.rel_prec
    if point.h is not None:
        return numeric_eval(x, gen_values=list(point.gens) + [point.h], prec=prec)
    return numeric_eval(x, gen_values=point.gens, delta_value=point.delta, prec=prec)


# -- the growth report

@dataclass
class GrowthLine:
    series: str
    k: int
    bound: int
    attained: object  # exact log_q|coefficient|, "0" if it vanishes, or "<= -m"
    verdict: str

    def ok(self):
        return self.verdict in ("pass", "equal", "zero")

    def __str__(self):
        return f"{self.series} k={self.k} bound={self.bound} log={self.attained} {self.verdict}"


@dataclass
class GrowthReport:
    q: int
    r: int
    N: int
    c: int
    equality_at: list
    lines: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    certified_digits: int = None

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        d = asdict(self)
        d["lines"] = [asdict(x) for x in self.lines]
        d["failures"] = [asdict(x) for x in self.failures]
        d["lines"] = [{**x, "attained": str(x["attained"])} for x in d["lines"]]
        d["failures"] = [{**x, "attained": str(x["attained"])} for x in d["failures"]]
        return json.dumps(d, sort_keys=True)

    def summary(self):
        n = sum(1 for x in self.lines if x.verdict == "equal")
        return (f"growth q={self.q} r={self.r} N={self.N} c={self.c}: {len(self.lines)} coefficients, "
                f"{n} equalities, {len(self.failures)} failures")


def normalized_series(q, r, N, expander=None):
    """P(t), P^{(q^r-1)(q-1)} (coefficients a_k) and P^{q^r-1} (coefficients b_k)."""
    ex = expander or Expander(q, r)
    P = ex.product(N)
    a = (P ** ((q ** r - 1) * (q - 1))).truncate(N)
    b = (P ** (q ** r - 1)).truncate(N)
    return {"p": P, "a": a, "b": b}


def _symbolic_log(c, log_h):
    """Exact log_q|c| for c in K[h^{+-1}] (rank-1 boundary), |h| = q^{log_h}."""
    vals = set()
    for key, coeff in c.terms.items():
        vals.add(-v_inf(coeff) + key[-1] * log_h)
    if len(vals) != 1:
        raise ValueError("coefficient is not a single monomial")
    return vals.pop()


def growth_verify(q, r, N, prec=256, expander=None, series=("p", "a", "b"), numeric=None, point=None):
    """Check |p_k|, |a_k|, |b_k| <= q^{c k} for k <= N at the zero index, with
    equality at the guaranteed indices for the product function.

    For r = 2 the check is symbolic (each coefficient is c_k h'^{-k}) using
    |Delta'| from the lattice sum; pass ``numeric=True`` to evaluate at the
    sample point instead.  ``point`` replaces the F_Q[T] sample point (and
    forces the numeric path).
    """
    kp = FundIndex.zero(r - 1)
    c = c_constant(q, kp)
    eq = set(equality_indices(q, r, kp, N))
    data = normalized_series(q, r, N, expander)
    if point is not None:
        numeric = True
    numeric = (r > 2) if numeric is None else numeric
    point = point or sample_point(q, r, prec)
    rep = GrowthReport(q, r, N, c, sorted(eq))
    digits = []
    if not numeric:
        log_h = Fraction(point.log_delta, q - 1)
    for name in series:
        ser = data[name]
        for k in range(N + 1):
            bound = c * k
            coef = ser[k]
            want_eq = name == "p" and k in eq
            if coef.is_zero():
                line = GrowthLine(name, k, bound, "0", "fail" if want_eq else "zero")
            elif not numeric:
                lg = _symbolic_log(coef, log_h)
                line = GrowthLine(name, k, bound, lg, _verdict(lg, bound, want_eq))
            else:
                val = evaluate_at(coef, point)
                if val.is_zero() and val.is_exact():
                    line = GrowthLine(name, k, bound, "0", "fail" if want_eq else "zero")
                elif val.is_zero():
                    if want_eq or val.prec < -bound:
                        raise PrecisionExhausted(f"{name}_{k}: value is zero to precision {val.prec}")
                    line = GrowthLine(name, k, bound, f"<= {-val.prec}", "pass")
                else:
                    digits.append(val.rel_prec())
                    lg = -val.valuation()
                    line = GrowthLine(name, k, bound, lg, _verdict(lg, bound, want_eq))
            rep.lines.append(line)
            if not line.ok():
                rep.failures.append(line)
    finite = [d for d in digits if d != INF]
    rep.certified_digits = min(finite) if finite else None
    return rep


def _verdict(lg, bound, want_eq):
    if lg > bound:
        return "fail"
    if lg == bound:
        return "equal"
    return "fail" if want_eq else "pass"


# -- direct numeric norms at the zero index

def subfield_setup(q, s):
    """F_{q^{2s}} with an F_q-basis of its subfield F_{q^s} and an element outside it."""
    ext = ext_field(q, 2 * s)
    Q = q ** s
    sub = [x for x in ext_elements(ext) if x ** Q == x]
    basis = []
    span = {ext.F(0)}
    for x in sub:
        if x in span:
            continue
        basis.append(x)
        span = {a + ext.embed(base_field(q).elem(c)) * x for a in span for c in range(q)}
        if len(basis) == s:
            break
    outside = next(x for x in ext_elements(ext) if x ** Q != x)
    return ext, basis, outside


def numeric_log_exp(ext, basis, z, depth):
    """log_q|e(z)| for the lattice sum_i A b_i with constant orthogonal b_i.

    e(z) = z prod'(1 - z/lambda) and |1 - z/lambda| = 1 once |lambda| > |z|, so
    the product over lattice vectors with coordinates of degree <= depth is
    exact for the absolute value as soon as depth >= log|z|.
    """
    if -z.valuation() > depth:
        raise PrecisionExhausted("product depth below log|z|")
    fld = ext.base
    consts = [ext.embed(fld.elem(c)) for c in range(fld.q)]
    total = z.valuation()
    n = depth + 1
    for coeffs in itertools.product(consts, repeat=n * len(basis)):
        lam = InfLaurent.zero(ext)
        for i, b in enumerate(basis):
            cs = list(reversed(coeffs[i * n:(i + 1) * n]))
            lam = lam + InfLaurent.from_coeffs(ext, [c * b for c in cs], lead=-depth)
        if lam.is_zero():
            continue
        total += (lam - z).valuation() - lam.valuation()
    return -total


def numeric_log_t(q, k1, r):
    """log_q|t(w)| at w = (T^{k1} xi, w') with w' the F_{q^{r-1}}[T] point."""
    ext, basis, xi = subfield_setup(q, r - 1)
    z = InfLaurent.from_coeffs(ext, [xi], lead=-k1)
    return -numeric_log_exp(ext, basis, z, max(k1, 0))


def numeric_log_du0(q, r):
    """log_q|d_{u_0}(w')| at the F_{q^{r-1}}[T] point."""
    ext, basis, _ = subfield_setup(q, r - 1)
    z = InfLaurent.from_coeffs(ext, [basis[0]], lead=1)
    return numeric_log_exp(ext, basis, z, 0)
