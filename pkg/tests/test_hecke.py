import pytest
from hypothesis import given, strategies as st

from drinfeld_forms.drinfeld import DrinfeldContext
from drinfeld_forms.errors import (IndexOutOfRange, InsufficientInputOrder, NotIrreducible,
                                   RankUnsupported, TooLarge)
from drinfeld_forms.expansions import FormId
from drinfeld_forms.fields import RatK, base_field, monic_irreducibles
from drinfeld_forms.hecke import (HeckeDescriptor, HeckeR2, count_recursion_check, eigencheck,
                                  gaussian_count, goss_term_series, hecke_on_goss_term, hecke_r2,
                                  p_power_check, proportionality, superlattice_enumerate)
from drinfeld_forms.texp import TExp

from conftest import expander


def primes(q):
    T = base_field(q).T
    return [T, T + 1, monic_irreducibles(q, 2)[0]]


# -- counting

def test_gaussian_small_values():
    assert gaussian_count(2, 1, 2) == 3
    assert gaussian_count(3, 1, 2) == 7
    assert gaussian_count(4, 2, 3) == 130
    assert gaussian_count(3, 0, 5) == gaussian_count(3, 3, 5) == 1


@pytest.mark.parametrize("P", [2, 3, 4])
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_enumeration_matches_gaussian(r, P):
    for i in range(r + 1):
        got = superlattice_enumerate(r, P, i)
        assert got.total == gaussian_count(r, i, P)
        assert got.type1 == (gaussian_count(r - 1, i, P) if i < r else 0)
        if i:
            assert got.type2 == P ** (r - i) * gaussian_count(r - 1, i - 1, P)
        if 1 <= i < r:
            assert count_recursion_check(r, i, P)
        p = base_field(P).p
        assert gaussian_count(r, i, P) % p == 1
        assert gaussian_count(r, i, P) == gaussian_count(r, r - i, P)


def test_enumeration_vector_incidence():
    got = superlattice_enumerate(3, 3, 2, with_nu=True)
    zero = (0, 0, 0)
    assert got.nu[zero] == gaussian_count(3, 2, 3)
    assert {v for k, v in got.nu.items() if k != zero} == {gaussian_count(2, 1, 3)}


def test_enumeration_limits():
    with pytest.raises(TooLarge):
        superlattice_enumerate(5, 32, 1)
    with pytest.raises(IndexOutOfRange):
        gaussian_count(2, 3, 2)


def test_descriptor_validation():
    d = HeckeDescriptor(2, (1, 1, 1), 1, 2)
    assert d.degree == 2 and d.P == 4
    with pytest.raises(NotIrreducible):
        HeckeDescriptor(2, (0, 0, 1), 1, 2)
    with pytest.raises(IndexOutOfRange):
        HeckeDescriptor(2, (0, 1), 3, 2)


# -- the operator

def test_input_order_is_enforced():
    X = expander(2, 2)
    with pytest.raises(InsufficientInputOrder):
        hecke_r2(X.g(1, 10), base_field(2).T, 1, 8)


def test_rank_three_refused():
    X = expander(2, 3)
    with pytest.raises(RankUnsupported):
        HeckeR2(X.ctx, base_field(2).T)
    with pytest.raises(RankUnsupported):
        eigencheck(FormId("g", 1), base_field(2).T, 1, 4, expander=X)


@pytest.mark.parametrize("q", [2, 3])
def test_eigenvalues(q):
    X = expander(q, 2)
    N = 2 * q * q
    for pi in primes(q):
        p = RatK.of(X.fld, pi)
        cases = [("g:1", 1, q - 1), ("delta", 1, q - 1), ("delta", 2, q * q - 1), ("h", 1, 1),
                 (f"E:{q - 1}", 1, q - 1), (f"E:{q * q - 1}", 1, q * q - 1)]
        for form, i, e in cases:
            res = eigencheck(form, pi, i, N, expander=X)
            assert res.is_eigen, (form, i, res.detail)
            assert res.eigenvalue == p ** e, (form, i)


def test_non_eigenform_rejected():
    q = 2
    X = expander(q, 2)
    pi = base_field(q).T
    N = 8
    f = X.g(1, 2 * N) ** (q + 1) + X.delta(2 * N)
    g = hecke_r2(f, pi, 1, N)
    ratio, why = proportionality(f.truncate(N), g)
    assert ratio is None and why


@pytest.mark.parametrize("q", [2, 3])
def test_simplified_matches_unsimplified(q):
    X = expander(q, 2)
    N = q * q
    for pi in primes(q)[:2]:
        P = q ** pi.degree()
        for form in ("g:1", "delta", "h"):
            f = X.build(form, N * P)
            a = hecke_r2(f, pi, 1, N)
            b = hecke_r2(f, pi, 1, N, simplified=False)
            assert a == b


@pytest.mark.parametrize("q", [2, 3])
def test_goss_term_closed_formula(q):
    ctx = DrinfeldContext(q, 1)
    T = ctx.fld.T
    N = q ** 3
    for pi in (T, T + 1):
        for a in (ctx.fld.one_poly, T, T + 1, T * T):
            for n in range(1, q * q + 1):
                big = goss_term_series(ctx, n, a, N * q)
                lhs = hecke_on_goss_term(ctx, n, a, pi, 1, N)
                assert lhs == hecke_r2(big, pi, 1, N, ctx=ctx)
                assert lhs == hecke_r2(big, pi, 1, N, ctx=ctx, simplified=False)


@pytest.mark.parametrize("q", [2, 3])
def test_hecke_commutes_with_frobenius(q):
    X = expander(q, 2)
    N = q * q
    pi = base_field(q).T
    for form in ("g:1", "delta", "h"):
        f = X.build(form, q * N * q)
        assert p_power_check(f, pi, 1, N)
    assert p_power_check(TExp.t(X.ring, q * N * q), pi, 1, N)


def test_operators_commute():
    q = 2
    X = expander(q, 2)
    T = base_field(q).T
    N = 4
    f = X.g(1, 16) ** 3 + X.delta(16)
    ab = hecke_r2(hecke_r2(f, T + 1, 1, 8), T, 1, N)
    ba = hecke_r2(hecke_r2(f, T, 1, 8), T + 1, 1, N)
    assert ab == ba


@pytest.mark.parametrize("q", [2, 3])
def test_constant_term_scales_by_weight(q):
    # a_0 of T_{p,1} f is pi^k a_0(f): the type-2 terms add P a_0 = 0
    X = expander(q, 2)
    for pi in primes(q)[:2]:
        P = q ** pi.degree()
        for form in ("g:1", f"E:{q - 1}", f"E:{q * q - 1}"):
            f = X.build(form, 3 * P)
            k = FormId.parse(form).weight(q, 2)
            got = hecke_r2(f, pi, 1, 3)[0]
            assert got == f[0].scale(RatK.of(X.fld, pi) ** k)
            assert got == f[0].homothety_scale(RatK.of(X.fld, pi))


def test_trivial_indices():
    X = expander(3, 2)
    pi = base_field(3).T
    f = X.h(6)
    assert hecke_r2(f, pi, 0, 6) == f
    assert hecke_r2(f, pi, 2, 6) == f.scale(RatK.of(X.fld, pi) ** 4)
    with pytest.raises(IndexOutOfRange):
        hecke_r2(f, pi, 3, 2)


@given(st.integers(1, 9), st.sampled_from([0, 1, 2]))
def test_goss_term_type2_only_when_coprime(n, which):
    # T_{p,1} G_n(t_a) keeps the t_a term exactly when p does not divide a
    ctx = DrinfeldContext(3, 1)
    T = ctx.fld.T
    a = [T, T + 1, T * T][which]
    with_term = hecke_on_goss_term(ctx, n, a, T, 1, 9)
    only = goss_term_series(ctx, n, a * T, 9).scale(RatK.of(ctx.fld, T) ** n)
    visible = bool(goss_term_series(ctx, n, a, 9).coeffs)
    assert (with_term == only) == (which != 1 or not visible)
