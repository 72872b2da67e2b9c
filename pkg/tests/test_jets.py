import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aimbound import jets
from aimbound.jets import Jet, JetError, JetNonFiniteError, JetPoleError

coef = st.floats(-3, 3, allow_nan=False)
centers = st.floats(-5, 5, allow_nan=False)


@st.composite
def jet_pair(draw, min_order=0):
    order = draw(st.integers(min_order, 7))
    x0 = draw(centers)
    a = draw(st.lists(coef, min_size=order + 1, max_size=order + 1))
    b = draw(st.lists(coef, min_size=order + 1, max_size=order + 1))
    return Jet(x0, a), Jet(x0, b)


@pytest.mark.parametrize(
    "c, order, x0, expected",
    [(5, 2, 1.0, [5, 0, 0]), (0, 0, 0.0, [0]), (1, 3, 2.0, [1, 0, 0, 0])],
)
def test_const(c, order, x0, expected):
    j = jets.const(c, order, x0)
    assert j.coeffs.tolist() == expected
    assert j.center == x0


def test_const_rejects_nonfinite():
    with pytest.raises(JetError):
        jets.const(np.inf, 2, 0.0)


@pytest.mark.parametrize(
    "x0, order, expected",
    [(2.0, 3, [2, 1, 0, 0]), (0.0, 1, [0, 1]), (-1.5, 2, [-1.5, 1, 0])],
)
def test_var(x0, order, expected):
    assert jets.var(x0, order).coeffs.tolist() == expected


def test_var_needs_order_one():
    with pytest.raises(JetError):
        jets.var(1.0, 0)


def test_coefficients_must_be_finite():
    with pytest.raises(JetNonFiniteError):
        Jet(0.0, [1.0, np.nan])
    with pytest.raises(JetError):
        Jet(0.0, [])


def test_jets_are_immutable():
    j = jets.var(1.0, 2)
    with pytest.raises(ValueError):
        j.coeffs[0] = 3.0


def test_mul_truncates():
    a = Jet(0.0, [1, 1])
    assert jets.mul(a, a).coeffs.tolist() == [1, 2]


def test_mul_identity():
    a = Jet(0.3, [1.5, -2, 0.25])
    one = jets.const(1, 2, 0.3)
    assert (one * a).coeffs.tolist() == a.coeffs.tolist()


def test_add_and_scale():
    s = jets.add(Jet(0, [1, 2, 3]), Jet(0, [0, 0, 1]))
    assert s.coeffs.tolist() == [1, 2, 4]
    assert jets.scale(s, -2).coeffs.tolist() == [-2, -4, -8]


def test_add_truncates_to_shorter():
    s = Jet(0, [1, 2, 3]) + Jet(0, [1, 1])
    assert s.coeffs.tolist() == [2, 3]


def test_mismatched_centers_rejected():
    with pytest.raises(JetError, match="expansion points differ"):
        Jet(0.0, [1, 1]) * Jet(1.0, [1, 1])


def test_reciprocal_of_x():
    r = jets.recip(jets.var(2.0, 2))
    np.testing.assert_allclose(r.coeffs, [0.5, -0.25, 0.125], rtol=0, atol=1e-15)


def test_reciprocal_of_constant():
    assert jets.recip(jets.const(4, 2, 0)).coeffs.tolist() == [0.25, 0, 0]


def test_reciprocal_pole():
    with pytest.raises(JetPoleError):
        jets.recip(jets.var(0.0, 2))
    with pytest.raises(JetPoleError):
        jets.recip(Jet(0.0, [1e-13, 1.0]))


def test_derivative():
    assert jets.derivative(Jet(0, [1, 2, 3])).coeffs.tolist() == [2, 6]
    assert jets.var(2.0, 3).derivative().coeffs.tolist() == [1, 0, 0]
    with pytest.raises(JetError):
        jets.derivative(jets.const(1.0, 0, 0.0))


def test_exp_and_power_match_taylor():
    x = jets.var(0.7, 5)
    e = jets.exp(x * 2.0)
    k = np.arange(6)
    fact = np.array([1, 1, 2, 6, 24, 120], dtype=float)
    np.testing.assert_allclose(e.coeffs, np.exp(1.4) * 2.0**k / fact, rtol=1e-14)
    p = jets.power(x, 2.5)
    # d^k/dx^k x^2.5 / k!
    expect = [0.7**2.5]
    c = 2.5
    for i in range(1, 6):
        expect.append(expect[-1] * c / i / 0.7)
        c -= 1
    np.testing.assert_allclose(p.coeffs, expect, rtol=1e-13)


def test_power_needs_positive_base():
    with pytest.raises(JetPoleError):
        jets.power(jets.var(-1.0, 2), 0.5)


def test_batch_axis_matches_scalar_runs():
    lam = np.array([0.5, 1.0, 3.0])
    x = jets.var(1.3, 4)
    batch = (x * x + lam) * x.reciprocal()
    for i, l in enumerate(lam):
        single = (x * x + l) * x.reciprocal()
        np.testing.assert_allclose(batch.coeffs[:, i], single.coeffs, rtol=1e-15)


@settings(max_examples=200, deadline=None)
@given(jet_pair())
def test_mul_commutes(pair):
    a, b = pair
    np.testing.assert_allclose((a * b).coeffs, (b * a).coeffs, rtol=0, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(jet_pair(), st.lists(coef, min_size=8, max_size=8))
def test_mul_associates(pair, extra):
    a, b = pair
    c = Jet(a.center, extra[: a.order + 1])
    np.testing.assert_allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs, rtol=0, atol=1e-10)


@settings(max_examples=200, deadline=None)
@given(jet_pair(min_order=1))
def test_leibniz(pair):
    a, b = pair
    k = a.order - 1
    lhs = (a * b).derivative()
    rhs = a.derivative() * b.truncate(k) + a.truncate(k) * b.derivative()
    np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, rtol=0, atol=1e-10)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(0, 7),
    centers,
    st.floats(0.5, 3),
    st.sampled_from([-1.0, 1.0]),
    st.lists(coef, min_size=7, max_size=7),
)
def test_reciprocal_identity(order, x0, a0, sign, rest):
    a = Jet(x0, [sign * a0] + rest[:order])
    one = a * a.reciprocal()
    np.testing.assert_allclose(one.coeffs, np.eye(order + 1)[0], rtol=0, atol=1e-10)


@settings(max_examples=100, deadline=None)
@given(jet_pair(min_order=1))
def test_derivative_lowers_order_by_one(pair):
    a, _ = pair
    assert a.derivative().order == a.order - 1
