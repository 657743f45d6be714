import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from g2braid.errors import DivisionByZero, NotDivisible
from g2braid.qarith import (
    CycloContext, CycNumber, FloatContext, FormalContext, LaurentPoly, Q, RatFunc, cyclotomic_polynomial,
    euler_phi, exact_divide, qint, specialize,
)

laurent = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero())


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()


@given(laurent, laurent)
def test_bar_is_a_ring_involution(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert a.bar().bar() == a


@given(laurent, st.sampled_from([0.7, 1.3, cmath.exp(0.4j)]))
def test_evaluate_respects_multiplication(a, x):
    b = Q() ** 3 - 2
    assert abs((a * b).evaluate(x) - a.evaluate(x) * b.evaluate(x)) < 1e-6 * (1 + abs(a.evaluate(x)))


@given(laurent, nonzero_laurent)
def test_exact_divide_inverts_multiplication(a, b):
    assert exact_divide(a * b, b) == a


def test_exact_divide_rejects_remainders():
    with pytest.raises(NotDivisible):
        exact_divide(Q() + 1, Q() ** 2 + 1)


@pytest.mark.parametrize("n", range(0, 8))
def test_qint_is_symmetric_and_specializes_to_n(n):
    p = qint(n)
    assert p.bar() == p
    assert p.at_one() == n


def test_qint_two():
    assert qint(2) == Q() + Q() ** -1


@given(nonzero_laurent, nonzero_laurent)
def test_ratfunc_field_operations(a, b):
    f = RatFunc(a, b)
    assert f * f.inverse() == RatFunc(LaurentPoly.const(1))
    assert (f + f) / 2 == f
    assert (f - f).is_zero()


def test_ratfunc_division_by_zero():
    with pytest.raises(DivisionByZero):
        RatFunc(Q(), LaurentPoly())


@pytest.mark.parametrize("m", [1, 2, 3, 12, 13, 26, 30, 42, 60])
def test_euler_phi_matches_count(m):
    assert euler_phi(m) == sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)
    assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


@pytest.mark.parametrize("m", [5, 12, 26])
def test_cyclotomic_polynomial_vanishes_at_primitive_root(m):
    z = cmath.exp(2j * cmath.pi / m)
    value = sum(c * z**i for i, c in enumerate(cyclotomic_polynomial(m)))
    assert abs(value) < 1e-9


cyc_m = st.sampled_from([12, 26, 30, 42])


@given(cyc_m, st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4,
                                                                            max_size=4))
def test_cyclotomic_arithmetic_matches_complex(m, ca, cb):
    a = sum((CycNumber.zeta_power(m, i) * c for i, c in enumerate(ca)), CycNumber.from_rational(m, 0))
    b = sum((CycNumber.zeta_power(m, 2 * i + 1) * c for i, c in enumerate(cb)), CycNumber.from_rational(m, 0))
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9
    assert abs(complex(a + b) - (complex(a) + complex(b))) < 1e-9
    if not b.is_zero():
        assert (a / b) * b == a


def test_zeta_power_has_order_m():
    z = CycNumber.zeta_power(26, 1)
    assert z**26 == CycNumber.from_rational(26, 1)
    assert z**13 == CycNumber.from_rational(26, -1)


def test_cyclotomic_json_roundtrip():
    x = CycNumber.zeta_power(30, 7) + Fraction(1, 3)
    assert CycNumber.from_json(x.to_json()) == x


@pytest.mark.parametrize("e", [1, 5, 7])
def test_contexts_agree_on_powers(e):
    exact = CycloContext(26, e)
    approx = FloatContext(exact.q_complex)
    for k in (-12, -1, 0, 3, 25):
        assert abs(exact.to_complex(exact.qpow(k)) - approx.qpow(k)) < 1e-9


def test_specialize_laurent_polynomial():
    p = qint(3)
    assert specialize(p, FormalContext()) == p
    assert abs(complex(specialize(p, FloatContext(1.1))) - (1.1**2 + 1 + 1.1**-2)) < 1e-12
    ctx = CycloContext(6, 1)  # q^2 is a primitive cube root, so [3] vanishes
    assert specialize(p, ctx).is_zero()


def test_context_descriptions():
    assert FormalContext().describe() == "generic"
    assert CycloContext(26, 1).describe() == "root:26:1"
    assert FloatContext(1.1).describe().startswith("float:1.1")


def test_laurent_json_roundtrip():
    p = Q() ** 4 - Fraction(2, 3) * Q() ** -2
    assert LaurentPoly.from_json(p.to_json()) == p


@settings(max_examples=50)
@given(laurent)
def test_substitute_power_matches_evaluation(a):
    x = 1.05
    assert abs(a.substitute_power(2).evaluate(x) - a.evaluate(x * x)) < 1e-6 * (1 + abs(a.evaluate(x * x)))
