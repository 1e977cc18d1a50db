"""Exact arithmetic in F_q, A = F_q[T], K = F_q(T) and in truncated Laurent
series in T^{-1} over finite extensions of F_q.

Polynomials are python-flint ``fq_default_poly`` objects; everything above
that (normal forms of fractions, the valuation at infinity, precision
tracking) lives here.
"""

import ctypes
import functools
import itertools
import math
from dataclasses import dataclass

import flint

from .errors import DivisionByZeroToPrecision, PrecisionExhausted

INF = math.inf
NEG_INF = -math.inf


def _pin(ctx):
    # Field contexts live for the whole process.  During interpreter shutdown
    # a context can otherwise be freed before polynomials that still use it,
    # and python-flint then crashes in the polynomial destructor.
    ctypes.pythonapi.Py_IncRef(ctypes.py_object(ctx))
    return ctx


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q):
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, n = 0, q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


@functools.cache
def first_irreducible(p, e):
    """Coefficients (lowest degree first, monic) of the lexicographically
    first irreducible polynomial of degree e over F_p."""
    ctx = flint.fmpz_mod_poly_ctx(p)
    for low in itertools.product(range(p), repeat=e):
        f = ctx(list(low) + [1])
        if f.is_irreducible():
            return tuple(low) + (1,)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldDesc:
    p: int
    e: int
    modulus: tuple
    m: int = 1
    ext_modulus: tuple = None

    @property
    def q(self):
        return self.p ** self.e


def degree(f):
    """Degree of a polynomial; -inf for the zero polynomial."""
    d = f.degree()
    return NEG_INF if d < 0 else d


class BaseField:
    """F_q together with the polynomial ring F_q[T]."""

    def __init__(self, q):
        self.q = q
        self.p, self.e = prime_power(q)
        modulus = first_irreducible(self.p, self.e)
        self.desc = FieldDesc(self.p, self.e, modulus)
        mod_poly = flint.fmpz_mod_poly_ctx(self.p)(list(modulus))
        self.F = _pin(flint.fq_default_ctx(self.p, self.e, "z", modulus=mod_poly))
        self.R = _pin(flint.fq_default_poly_ctx(self.F))
        self.T = self.R([0, 1])
        self.one_poly = self.R([1])
        self.zero_poly = self.R([])
        self._elems = [self._from_code(c) for c in range(q)]
        self._codes = {el: c for c, el in enumerate(self._elems)}

    def __repr__(self):
        return f"BaseField(q={self.q})"

    def _from_code(self, code):
        digits = []
        for _ in range(self.e):
            digits.append(code % self.p)
            code //= self.p
        return self.F(digits) if self.e > 1 else self.F(digits[0])

    def elem(self, code):
        return self._elems[code]

    def code(self, el):
        return self._codes[el]

    def elements(self):
        return list(self._elems)

    def poly(self, coeffs):
        """Polynomial from a list of element codes or field elements, lowest degree first."""
        return self.R([self._elems[c] if isinstance(c, int) else c for c in coeffs])

    def codes(self, f):
        return [self._codes[c] for c in f.coeffs()]

    def K(self, num, den=None):
        return RatK.of(self, num, den)

    def elem_str(self, el):
        if self.e == 1:
            return str(self._codes[el])
        s = str(el)
        return f"({s})" if ("+" in s or "*" in s) else s

    def parse_poly(self, text, var="T"):
        """Inverse of poly_str for integer coefficient codes, e.g. "2*T^2 + T + 1"."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty polynomial")
        coeffs = {}
        for term in text.split("+"):
            if not term:
                raise ValueError(f"malformed polynomial {text!r}")
            c, _, mono = term.rpartition("*") if "*" in term else ("", "", term)
            if var not in mono:
                c, mono = mono, ""
            code = int(c) if c else 1
            if not 0 <= code < self.q:
                raise ValueError(f"coefficient code {code} outside 0..{self.q - 1}")
            if not mono:
                deg = 0
            elif mono == var:
                deg = 1
            elif mono.startswith(var + "^"):
                deg = int(mono[len(var) + 1:])
            else:
                raise ValueError(f"malformed term {term!r}")
            coeffs[deg] = self._elems[(self._codes[coeffs[deg]] if deg in coeffs else 0)] + self._elems[code]
        top = max(coeffs)
        return self.R([coeffs.get(i, self.F(0)) for i in range(top + 1)])

    def poly_str(self, f, var="T"):
        if f.is_zero():
            return "0"
        parts = []
        cs = f.coeffs()
        for i in range(len(cs) - 1, -1, -1):
            c = cs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                parts.append(self.elem_str(c))
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"{self.elem_str(c)}*{mono}")
        return " + ".join(parts)


@functools.cache
def base_field(q):
    return BaseField(q)


def monic_irreducibles(q, d):
    """All monic irreducible polynomials of degree d over F_q, ordered
    lexicographically on the coefficient codes (c_0, ..., c_{d-1})."""
    if d < 1:
        raise ValueError("degree must be positive")
    fld = base_field(q)
    out = []
    for low in itertools.product(range(q), repeat=d):
        f = fld.poly(list(low) + [1])
        if f.is_irreducible():
            out.append(f)
    return out


def monic_polys(q, d):
    """All monic polynomials of degree exactly d, same order as above."""
    fld = base_field(q)
    return [fld.poly(list(low) + [1]) for low in itertools.product(range(q), repeat=d)]


def poly_key(f):
    """Hashable key for a flint polynomial."""
    return tuple(f.coeffs())


class RatK:
    """Element num/den of K = F_q(T) in lowest terms with monic den."""

    __slots__ = ("fld", "num", "den")

    def __init__(self, fld, num, den):
        self.fld = fld
        self.num = num
        self.den = den

    @classmethod
    def of(cls, fld, num, den=None):
        if isinstance(num, RatK):
            return num if den is None else num / cls.of(fld, den)
        num = _as_poly(fld, num)
        if den is None:
            return cls(fld, num, fld.one_poly)
        den = _as_poly(fld, den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls._reduce(fld, num, den)

    @staticmethod
    def _reduce(fld, num, den):
        if num.is_zero():
            return RatK(fld, num, fld.one_poly)
        g = num.gcd(den)
        if not g.is_one():
            num = num.exact_division(g)
            den = den.exact_division(g)
        lc = den.leading_coefficient()
        if not lc.is_one():
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        return RatK(fld, num, den)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    def _coerce(self, other):
        if isinstance(other, RatK):
            return other
        return RatK.of(self.fld, other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den.is_one() and o.den.is_one():
            return RatK(self.fld, self.num + o.num, self.den)
        if self.den == o.den:
            return RatK._reduce(self.fld, self.num + o.num, self.den)
        return RatK._reduce(self.fld, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatK(self.fld, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.den.is_one() and o.den.is_one():
            return RatK(self.fld, self.num * o.num, self.den)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if n1.is_zero() or n2.is_zero():
            return RatK(self.fld, self.fld.zero_poly, self.fld.one_poly)
        g = n1.gcd(d2)
        if not g.is_one():
            n1, d2 = n1.exact_division(g), d2.exact_division(g)
        g = n2.gcd(d1)
        if not g.is_one():
            n2, d1 = n2.exact_division(g), d1.exact_division(g)
        return RatK(self.fld, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        lc = self.num.leading_coefficient()
        if lc.is_one():
            return RatK(self.fld, self.den, self.num)
        inv = lc.inverse()
        return RatK(self.fld, self.den * inv, self.num * inv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RatK(self.fld, self.fld.one_poly, self.fld.one_poly)
        p = self.fld.p
        if n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            return (self ** n).frobenius(v)
        num = self.num ** n
        den = self.den if self.den.is_one() else self.den ** n
        return RatK(self.fld, num, den)

    def frobenius(self, v=1):
        """The p^v-th power, computed coefficientwise."""
        fld = self.fld
        k = fld.p ** v
        return RatK(fld, _frob_poly(fld, self.num, v, k), _frob_poly(fld, self.den, v, k))

    def __eq__(self, other):
        if not isinstance(other, RatK):
            if isinstance(other, int) or other is None:
                return other is not None and self == RatK.of(self.fld, other)
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))

    def v_inf(self):
        return v_inf(self)

    def __str__(self):
        fld = self.fld
        n = fld.poly_str(self.num)
        if self.den.is_one():
            return n
        d = fld.poly_str(self.den)
        if self.num.degree() > 0 and " + " in n:
            n = f"({n})"
        return f"{n}/({d})"

    def __repr__(self):
        return f"RatK({self})"

    def to_codes(self):
        return [self.fld.codes(self.num), self.fld.codes(self.den)]

    @classmethod
    def from_codes(cls, fld, data):
        return cls.of(fld, fld.poly(data[0]), fld.poly(data[1]))


def _as_poly(fld, x):
    if isinstance(x, int):
        return fld.R([fld.F(x % fld.p)])
    if isinstance(x, (list, tuple)):
        return fld.poly(list(x))
    if type(x).__name__ == "fq_default":
        return fld.R([x])
    return x


def _frob_poly(fld, f, v, k):
    if f.degree() <= 0 and f.is_one():
        return f
    if fld.e == 1 or v % fld.e == 0:
        return f.inflate(k)
    cs = [c.frobenius(v) for c in f.coeffs()]
    return fld.R(cs).inflate(k)


def v_inf(x):
    """Valuation at infinity: deg den - deg num, +inf for zero."""
    if not isinstance(x, RatK):
        return INF if x.is_zero() else -x.degree()
    if x.num.is_zero():
        return INF
    return x.den.degree() - x.num.degree()


def poly_divmod(f, g):
    return f.divmod(g)


# --------------------------------------------------------------------------
# Laurent series in u = T^{-1} over F_{q^m}


class ExtField:
    """F_{q^m} with a fixed embedding of F_q."""

    def __init__(self, q, m):
        base = base_field(q)
        self.base = base
        self.q, self.m = q, m
        p, e = base.p, base.e
        ext_mod = first_irreducible(p, e * m)
        self.desc = FieldDesc(p, e, base.desc.modulus, m, ext_mod)
        ctx = flint.fmpz_mod_poly_ctx(p)
        self.F = _pin(flint.fq_default_ctx(p, e * m, "y", modulus=ctx(list(ext_mod))))
        self.R = _pin(flint.fq_default_poly_ctx(self.F))
        if e == 1:
            self._embed = [self.F(c) for c in range(q)]
        else:
            modpoly = self.R([self.F(c) for c in base.desc.modulus])
            roots = sorted((r for r, _ in modpoly.roots()), key=self.code)
            root = roots[0]
            self._embed = []
            for c in range(q):
                digits, acc, pw = c, self.F(0), self.F(1)
                for _ in range(e):
                    acc += self.F(digits % p) * pw
                    pw *= root
                    digits //= p
                self._embed.append(acc)

    def code(self, el):
        out, mult = 0, 1
        for d in el.to_list():
            out += int(d) * mult
            mult *= self.base.p
        return out

    def embed(self, el):
        return self._embed[self.base.code(el)]

    def gen(self):
        return self.F.gen()

    def __repr__(self):
        return f"ExtField(q={self.q}, m={self.m})"


@functools.cache
def ext_field(q, m):
    return ExtField(q, m)


class InfLaurent:
    """u^lead * body(u) + O(u^prec) with u = T^{-1}.

    ``body`` is a flint polynomial with nonzero constant term, or zero when the
    value is zero to precision (then lead == prec).  ``prec`` may be +inf for
    exactly known finite expansions.
    """

    __slots__ = ("ext", "lead", "body", "prec")

    def __init__(self, ext, lead, body, prec):
        self.ext, self.lead, self.body, self.prec = ext, lead, body, prec

    @classmethod
    def make(cls, ext, lead, body, prec):
        if body.is_zero():
            return cls(ext, prec, body, prec)
        cs = body.coeffs()
        i = 0
        while cs[i].is_zero():
            i += 1
        if i:
            body = body.right_shift(i)
            lead += i
        if prec != INF:
            n = prec - lead
            if n <= 0:
                return cls(ext, prec, ext.R([]), prec)
            if body.length() > n:
                body = body.truncate(n)
        return cls(ext, lead, body, prec)

    @classmethod
    def zero(cls, ext, prec=INF):
        return cls(ext, prec, ext.R([]), prec)

    @classmethod
    def one(cls, ext):
        return cls(ext, 0, ext.R([1]), INF)

    @classmethod
    def from_coeffs(cls, ext, coeffs, lead=0, prec=INF):
        """coeffs[i] is the coefficient of T^{-(lead+i)}."""
        return cls.make(ext, lead, ext.R(list(coeffs)), prec)

    @classmethod
    def from_poly(cls, ext, f):
        """Exact value of a polynomial in T over F_q."""
        if f.is_zero():
            return cls.zero(ext)
        cs = [ext.embed(c) for c in f.coeffs()]
        cs.reverse()
        return cls.make(ext, -(len(cs) - 1), ext.R(cs), INF)

    @classmethod
    def from_ratk(cls, ext, x, rel_prec):
        """Expansion of x in K with at least ``rel_prec`` known digits."""
        num = cls.from_poly(ext, x.num)
        if x.den.is_one():
            return num
        den = cls.from_poly(ext, x.den)
        return num * den.inverse(rel_prec)

    def is_zero(self):
        """True if no nonzero digit is known (zero to precision)."""
        return self.body.is_zero()

    def is_exact(self):
        return self.prec == INF

    def rel_prec(self):
        return self.prec - self.lead

    def valuation(self):
        if self.body.is_zero():
            raise PrecisionExhausted(f"value is zero to precision {self.prec}")
        return self.lead

    def coefficient(self, j):
        if j >= self.prec:
            raise PrecisionExhausted(f"digit {j} is beyond precision {self.prec}")
        i = j - self.lead
        if i < 0 or self.body.is_zero() or i >= self.body.length():
            return self.ext.F(0)
        return self.body.coeffs()[i]

    def leading_coefficient(self):
        self.valuation()
        return self.body.coeffs()[0]

    def _check(self, other):
        if not isinstance(other, InfLaurent):
            raise TypeError("expected InfLaurent")
        if other.ext is not self.ext:
            raise ValueError("incompatible fields")

    def __add__(self, other):
        self._check(other)
        prec = min(self.prec, other.prec)
        if self.body.is_zero():
            return InfLaurent.make(self.ext, other.lead, other.body, prec)
        if other.body.is_zero():
            return InfLaurent.make(self.ext, self.lead, self.body, prec)
        low = min(self.lead, other.lead)
        a = self.body.left_shift(self.lead - low)
        b = other.body.left_shift(other.lead - low)
        return InfLaurent.make(self.ext, low, a + b, prec)

    def __neg__(self):
        return InfLaurent(self.ext, self.lead, -self.body, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, InfLaurent):
            return InfLaurent.make(self.ext, self.lead, self.body * other, self.prec)
        self._check(other)
        prec = min(self.prec + other.lead, other.prec + self.lead)
        if self.body.is_zero() or other.body.is_zero():
            return InfLaurent.zero(self.ext, prec)
        lead = self.lead + other.lead
        if prec == INF:
            body = self.body * other.body
        else:
            body = self.body.mul_low(other.body, prec - lead)
        return InfLaurent.make(self.ext, lead, body, prec)

    __rmul__ = __mul__

    def inverse(self, rel_prec=None):
        """Multiplicative inverse.  Exact inputs that are not monomials need an
        explicit relative precision."""
        if self.body.is_zero():
            raise DivisionByZeroToPrecision(f"inverse of a value that is zero to precision {self.prec}")
        n = self.prec - self.lead
        if n == INF:
            if self.body.length() == 1:
                return InfLaurent(self.ext, -self.lead, self.ext.R([self.body.coeffs()[0].inverse()]), INF)
            if rel_prec is None:
                raise PrecisionExhausted("inverse of an exact non-monomial needs a precision")
            n = rel_prec
        elif rel_prec is not None:
            n = min(n, rel_prec)
        body = self.body.inverse_series_trunc(n)
        return InfLaurent.make(self.ext, -self.lead, body, -self.lead + n)

    def frobenius(self):
        """p-th power."""
        p = self.ext.base.p
        cs = [c ** p for c in self.body.coeffs()]
        body = self.ext.R(cs).inflate(p) if cs else self.body
        prec = self.prec * p
        lead = self.lead * p if not self.body.is_zero() else prec
        return InfLaurent(self.ext, lead, body, prec)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return InfLaurent.one(self.ext)
        p = self.ext.base.p
        out = self
        while n % p == 0:
            out = out.frobenius()
            n //= p
        result = None
        base = out
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def agrees_with(self, other):
        """Equality of all digits known for both values."""
        return (self - other).is_zero()

    def __repr__(self):
        if self.body.is_zero():
            return f"O(T^-{self.prec})"
        terms = []
        for i, c in enumerate(self.body.coeffs()):
            if not c.is_zero():
                terms.append(f"({c})*T^{-(self.lead + i)}")
        tail = "" if self.prec == INF else f" + O(T^-{self.prec})"
        return " + ".join(terms) + tail
