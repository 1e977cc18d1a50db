import pytest
from hypothesis import given, strategies as st

from drinfeld_forms.errors import WeightMismatch
from drinfeld_forms.fields import RatK
from drinfeld_forms.graded import GradedElem, WeightTag, coeff_ring


def test_generator_weights():
    R = coeff_ring(3, 3)
    assert R.gen_weights == (2, 8, 13)
    assert R.g(1).weight == 2 and R.g(2).weight == 8
    assert R.h().weight == 13


@pytest.mark.parametrize("q,s", [(2, 1), (3, 1), (2, 2), (3, 2), (3, 3)])
def test_delta_is_signed_h_power(q, s):
    R = coeff_ring(q, s)
    sign = -1 if (s - 1) % 2 else 1
    assert R.delta() == R.h() ** (q - 1) * sign
    assert R.g(s) == R.delta()
    assert R.delta().weight == q ** s - 1


def test_adding_different_weights_fails():
    R = coeff_ring(3, 2)
    with pytest.raises(WeightMismatch):
        R.g(1) + R.h()


def test_h_inverse_and_g_not_invertible():
    R = coeff_ring(2, 2)
    assert R.h() * R.h().inverse() == R.one()
    with pytest.raises(ZeroDivisionError):
        R.g(1).inverse()


def test_weight_tag_consistency():
    assert WeightTag(4, 1).consistent(3, 2)
    assert not WeightTag(3, 1).consistent(3, 2)
    assert coeff_ring(3, 1).h().tag() == WeightTag(1, 1)


def _elems(q, s):
    R = coeff_ring(q, s)
    mono = st.tuples(st.integers(0, 3), st.integers(-2, 3), st.integers(0, q - 1), st.integers(0, q - 1))

    def build(items):
        # mixed weights on purpose, so the element is left untagged
        out = GradedElem(R, {}, None)
        for a, b, c0, c1 in items:
            c = RatK.of(R.fld, R.fld.poly([c0, c1]))
            out = out + GradedElem(R, R.monomial((a, b), c).terms, None)
        return out

    return st.lists(mono, max_size=3).map(build)


@given(_elems(3, 2), _elems(3, 2), _elems(3, 2))
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x


@given(_elems(3, 2), _elems(3, 2))
def test_frobenius_additive(x, y):
    assert (x + y).pth_power() == x.pth_power() + y.pth_power()
    assert x.pth_power() == x ** 3


@given(_elems(2, 2))
def test_serialization_roundtrip(x):
    R = x.ring
    assert GradedElem.from_data(R, x.to_data()) == x


def test_homothety_scale_uses_weight():
    R = coeff_ring(3, 2)
    T = R.fld.T
    c = RatK.of(R.fld, T)
    assert R.g(1).homothety_scale(c) == R.g(1).scale(c ** 2)
    assert R.h().homothety_scale(c) == R.h().scale(c ** 4)
