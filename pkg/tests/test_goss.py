import pytest
from hypothesis import given, strategies as st

from drinfeld_forms.drinfeld import DrinfeldContext
from drinfeld_forms.errors import InsufficientAlphas
from drinfeld_forms.fields import RatK, monic_irreducibles
from drinfeld_forms.goss import GossTable, generating_oracle, goss_property_check, poly_eq


def lattice_table(q, s, n_alphas=3):
    ctx = DrinfeldContext(q, s)
    return ctx, GossTable(ctx.ring, ctx.alphas(n_alphas))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_small_k_are_monomials(q):
    ctx, tab = lattice_table(q, 1)
    one = ctx.ring.one()
    for k in range(1, q + 1):
        assert poly_eq(tab.poly(k), {k: one})


@pytest.mark.parametrize("q", [2, 3])
def test_torsion_q_plus_one(q):
    ctx = DrinfeldContext(q, 1)
    T = ctx.fld.T
    tab = GossTable(ctx.ring, ctx.torsion_alphas(T), finite=True)
    expect = {q + 1: ctx.ring.one(), 2: ctx.ring.delta().scale(RatK.of(ctx.fld, 1, T))}
    assert poly_eq(tab.poly(q + 1), expect)
    assert tab.dimension == 1


@pytest.mark.parametrize("q", [2, 3])
def test_q_power_minus_one_uses_log(q):
    ctx, tab = lattice_table(q, 2)
    be = ctx.betas(3)
    for j in range(1, 4):
        expect = {q ** j - q ** i: be[i] for i in range(j) if not be[i].is_zero()}
        assert poly_eq(tab.poly(q ** j - 1), expect)


def test_missing_alphas_raise():
    ctx = DrinfeldContext(2, 1)
    tab = GossTable(ctx.ring, ctx.alphas(1))
    tab.poly(3)
    with pytest.raises(InsufficientAlphas):
        tab.poly(4)


@pytest.mark.parametrize("q,s", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_property_suite_lattice(q, s):
    _, tab = lattice_table(q, s)
    rep = goss_property_check(tab, 3 * q * q)
    assert rep.ok, str(rep)
    assert "ix" not in rep.checked


@pytest.mark.parametrize("q,s,deg", [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 1), (3, 2, 1)])
def test_property_suite_torsion(q, s, deg):
    ctx = DrinfeldContext(q, s)
    pi = monic_irreducibles(q, deg)[0]
    tab = GossTable(ctx.ring, ctx.torsion_alphas(pi), finite=True)
    assert tab.dimension == s * deg
    rep = goss_property_check(tab, 3 * q * q)
    assert rep.ok, str(rep)
    assert rep.checked["ix"] == 3 * q * q


def test_property_check_detects_corruption():
    ctx, tab = lattice_table(3, 1)
    tab.poly(12)
    bad = dict(tab._polys[7])
    bad[3] = ctx.ring.delta() * ctx.ring.delta().inverse()
    tab._polys[7] = bad
    rep = goss_property_check(tab, 12)
    assert not rep.ok
    assert rep.failure[1] == 7


def test_truncated_table_agrees_on_low_degrees():
    ctx, full = lattice_table(2, 1, 5)
    cut = GossTable(ctx.ring, ctx.alphas(5), max_degree=6)
    for k in range(1, 40):
        want = {d: c for d, c in full.poly(k).items() if d <= 6}
        assert poly_eq(cut.poly(k), want)


@given(st.integers(1, 26))
def test_recursion_matches_generating_function(k):
    ctx, tab = lattice_table(3, 2)
    assert poly_eq(tab.poly(k), generating_oracle(tab, 26)[k])
