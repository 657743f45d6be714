import pytest
from hypothesis import given, strategies as st

from g2braid.errors import NotInAlcove
from g2braid.lattice import (
    ADJOINT_WEIGHTS, GENERIC, L1, L2, LONG_ROOTS, RHO, SHORT_ROOTS, V_WEIGHTS, ZERO, LevelRule, Weight, affine_reflect,
    casimir, dominant_weights, in_alcove, inner, level, require_alcove, straighten,
)

young_pairs = st.integers(0, 12).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a)))


@given(young_pairs)
def test_young_roundtrip(p):
    w = Weight.from_young(*p)
    assert w.young == p
    assert Weight.from_eps(w.eps) == w
    assert Weight.parse(f"{p[0]},{p[1]}") == w
    assert str(w) == f"[{p[0]},{p[1]}]"


def test_named_weights():
    assert L1.young == (1, 0) and L2.young == (1, 1) and ZERO.young == (0, 0)
    assert Weight(1, 0) == L1 and Weight(0, 1) == L2
    assert L1.eps == (1, 0, -1)


@pytest.mark.parametrize("young, value", [((0, 0), 0), ((1, 0), 12), ((1, 1), 24), ((2, 0), 28),
                                          ((2, 1), 42), ((3, 0), 48)])
def test_casimir_values(young, value):
    assert casimir(Weight.from_young(*young)) == value


@given(young_pairs)
def test_casimir_is_shifted_norm(p):
    w = Weight.from_young(*p)
    shifted = tuple(a + r for a, r in zip(w.eps, RHO))
    assert casimir(w) == inner(shifted, shifted) - inner(RHO, RHO)


def test_root_system_shape():
    assert len(SHORT_ROOTS) == 6 and len(LONG_ROOTS) == 6
    assert {inner(a, a) for a in SHORT_ROOTS} == {2}
    assert {inner(a, a) for a in LONG_ROOTS} == {6}
    assert len(V_WEIGHTS) == 7 and len(ADJOINT_WEIGHTS) == 14


@pytest.mark.parametrize("text", ["1", "a,b", "1,2", "-1,0", ""])
def test_parse_rejects_bad_labels(text):
    with pytest.raises(ValueError):
        Weight.parse(text)


def test_level_rule_parsing():
    assert LevelRule.parse("generic") == GENERIC
    assert LevelRule.parse("4") == level(4)
    with pytest.raises(ValueError):
        LevelRule.parse("-3")
    with pytest.raises(ValueError):
        LevelRule.parse("abc")


@pytest.mark.parametrize("k, inside, outside", [
    (3, [(1, 0)], [(1, 1), (2, 0)]),        # 3 | k: 3 (mu1 + mu2) <= k
    (1, [(3, 0), (2, 1), (1, 1)], [(4, 0), (3, 2)]),  # otherwise 2 mu1 + mu2 <= k + 6
    (9, [(2, 1), (3, 0)], [(2, 2), (4, 0)]),
])
def test_alcove_membership(k, inside, outside):
    rule = level(k)
    for p in inside:
        assert in_alcove(Weight.from_young(*p), rule)
    for p in outside:
        w = Weight.from_young(*p)
        assert not in_alcove(w, rule)
        with pytest.raises(NotInAlcove):
            require_alcove(w, rule)


@given(young_pairs)
def test_generic_alcove_contains_everything(p):
    assert in_alcove(Weight.from_young(*p), GENERIC)


@given(young_pairs)
def test_straighten_fixes_dominant_vectors(p):
    w = Weight.from_young(*p)
    shifted = tuple(a + r for a, r in zip(w.eps, RHO))
    assert straighten(shifted, GENERIC) == (w, 1)


@given(young_pairs, st.sampled_from(SHORT_ROOTS + LONG_ROOTS))
def test_straighten_is_weyl_invariant_up_to_sign(p, alpha):
    w = Weight.from_young(*p)
    v = tuple(a + r for a, r in zip(w.eps, RHO))
    t = inner(v, alpha) * 2 // inner(alpha, alpha)
    reflected = tuple(x - t * a for x, a in zip(v, alpha))
    result = straighten(reflected, GENERIC)
    if inner(v, alpha) == 0:
        assert result is None
    else:
        assert result == (w, -1)


def test_straighten_wall_returns_none():
    assert straighten((1, 1, -2), GENERIC) is None


@given(st.sampled_from([1, 2, 4, 5, 9]), young_pairs)
def test_affine_reflection_is_an_involution(k, p):
    rule = level(k)
    lam = Weight.from_young(*p)
    image, sign, _ = affine_reflect(lam, rule)
    assert sign == -1
    if isinstance(image, Weight):
        assert affine_reflect(image, rule)[0] == lam


def test_affine_reflection_example():
    assert affine_reflect(Weight.from_young(2, 1), level(3)) == (Weight.from_young(1, 0), -1, False)
    with pytest.raises(ValueError):
        affine_reflect(L1, GENERIC)


def test_dominant_weights_enumerates_by_size():
    ws = list(dominant_weights(3))
    assert len(ws) == len(set(ws))
    assert {w.size for w in ws} <= {0, 1, 2, 3}
    assert Weight.from_young(2, 1) in ws and Weight.from_young(2, 2) not in ws
