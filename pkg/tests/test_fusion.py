import pytest
from hypothesis import given, settings, strategies as st

from g2braid.dims import classical_dim
from g2braid.errors import NotInAlcove
from g2braid.fusion import (
    FusionVector, alcove_weights, fusion_coefficient, grothendieck_mul, product, tensor_adjoint, tensor_V,
    tensor_V_vector,
)
from g2braid.lattice import GENERIC, L1, L2, ZERO, Weight, in_alcove, level

small = st.integers(0, 4).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a))).map(
    lambda p: Weight.from_young(*p))
levels = st.sampled_from([-2, -1, 1, 2, 4, 5, 9])


@given(small)
def test_tensor_V_preserves_classical_dimension(lam):
    out = tensor_V(lam)
    assert sum(m * classical_dim(w) for w, m in out.items()) == 7 * classical_dim(lam)


@given(small)
def test_tensor_adjoint_preserves_classical_dimension(lam):
    out = tensor_adjoint(lam)
    assert sum(m * classical_dim(w) for w, m in out.items()) == 14 * classical_dim(lam)


@settings(max_examples=40)
@given(small, small)
def test_product_is_commutative_and_dimension_preserving(a, b):
    ab = product(a, b)
    assert ab == product(b, a)
    assert sum(m * classical_dim(w) for w, m in ab.items()) == classical_dim(a) * classical_dim(b)


@settings(max_examples=20, deadline=None)
@given(small, small, levels)
def test_truncated_product_stays_in_alcove(a, b, k):
    rule = level(k)
    if not (in_alcove(a, rule) and in_alcove(b, rule)):
        return
    ab = product(a, b, rule)
    assert ab.is_actual()
    assert all(in_alcove(w, rule) for w in ab.support())
    assert ab == product(b, a, rule)


@settings(max_examples=15, deadline=None)
@given(levels, st.data())
def test_truncated_product_is_associative(k, data):
    rule = level(k)
    labels = alcove_weights(rule)
    a, b, c = (data.draw(st.sampled_from(labels)) for _ in range(3))
    left = grothendieck_mul(product(a, b, rule), FusionVector({c: 1}), rule)
    right = grothendieck_mul(FusionVector({a: 1}), product(b, c, rule), rule)
    assert left == right


@given(levels)
def test_unit_and_duality(k):
    rule = level(k)
    for lam in alcove_weights(rule):
        assert product(ZERO, lam, rule) == FusionVector({lam: 1})
        # every G2 representation is self-dual
        assert product(lam, lam, rule)[ZERO] == 1


def test_level_one_fusion_of_V():
    rule = level(1)
    assert tensor_V(L1, rule) == FusionVector({ZERO: 1, L1: 1, L2: 1, Weight.from_young(2, 0): 1})
    top = Weight.from_young(3, 0)
    assert all(in_alcove(w, rule) for w in tensor_V(top, rule))


def test_fusion_coefficient_and_vector_tensor():
    two = Weight.from_young(2, 0)
    assert fusion_coefficient(Weight.from_young(2, 1), two, two) == 2
    x = FusionVector({ZERO: 1})
    assert tensor_V_vector(tensor_V_vector(x)) == tensor_V(L1)


def test_fusion_vector_arithmetic_and_json():
    a = FusionVector.of(L1, L1, L2)
    assert a[L1] == 2 and a[ZERO] == 0
    assert (a - a).support() == []
    assert (a * 3)[L2] == 3
    assert not (FusionVector({L1: 1}) - FusionVector({L2: 1})).is_actual()
    assert a.to_json() == {"[1,0]": 2, "[1,1]": 1}


def test_alcove_weights_sizes_and_errors():
    assert len(alcove_weights(level(1))) == 8
    assert len(alcove_weights(level(9))) == 6
    with pytest.raises(ValueError):
        alcove_weights(GENERIC)
    with pytest.raises(NotInAlcove):
        product(Weight.from_young(9, 9), L1, level(1))
