import cmath

import pytest
from hypothesis import given, settings, strategies as st

from g2braid.dims import (
    DENOMINATOR_FACTORS, admissible_q, classical_dim, dim_recursion_check, numerator_factors, qdim, qdim_laurent,
    vanishing_scan,
)
from g2braid.errors import InadmissibleQ
from g2braid.fusion import alcove_weights, tensor_V
from g2braid.lattice import GENERIC, L1, ZERO, Weight, level
from g2braid.qarith import CycloContext, FloatContext, FormalContext, LaurentPoly

small = st.integers(0, 6).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a))).map(
    lambda p: Weight.from_young(*p))


@given(small)
def test_qdim_is_bar_invariant_and_specializes_classically(w):
    p = qdim_laurent(w)
    assert isinstance(p, LaurentPoly)
    assert p.bar() == p
    assert p.at_one() == classical_dim(w)


@settings(max_examples=30, deadline=None)
@given(small)
def test_qdim_is_multiplicative_generically(w):
    lhs = qdim_laurent(w) * qdim_laurent(L1)
    rhs = sum((m * qdim_laurent(v) for v, m in tensor_V(w).items()), LaurentPoly())
    assert lhs == rhs


def test_numerator_factor_count_matches_denominator():
    assert len(numerator_factors(Weight.from_young(2, 1))) == len(DENOMINATOR_FACTORS) == 6
    assert qdim_laurent(ZERO) == LaurentPoly.const(1)


@pytest.mark.parametrize("m, e", [(26, 1), (26, 5), (42, 1), (30, 7)])
def test_laurent_and_quotient_methods_agree(m, e):
    ctx = CycloContext(m, e)
    for w in [Weight.from_young(*p) for p in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0)]]:
        assert ctx.equal(qdim(w, ctx, method="laurent"), qdim(w, ctx, method="quotient"))


def test_float_qdim_matches_laurent_evaluation():
    p = qdim_laurent(L1)
    assert abs(complex(qdim(L1, FloatContext(1.1))) - p.evaluate(1.1)) < 1e-12
    assert qdim(L1, FormalContext()) == p


def test_vanishing_scan_level_one_boundary():
    # q = exp(pi i / 13): [4,0] sits just outside the level-1 alcove and has zero dimension
    zeros = [w for w, z in vanishing_scan(13, 4) if z]
    assert Weight.from_young(4, 0) in zeros
    assert all(w.size <= 4 for w, _ in vanishing_scan(13, 4))


@pytest.mark.parametrize("k", [1, 2, 4, 9])
def test_alcove_dimensions_are_nonzero(k):
    ctx = CycloContext(2 * (k + 12), 1)
    for w in alcove_weights(level(k)):
        assert not ctx.is_zero(qdim(w, ctx))


@pytest.mark.parametrize("k", [1, 4])
def test_dim_recursion_at_levels(k):
    report = dim_recursion_check(level(k), 6, CycloContext(2 * (k + 12), 1))
    assert report.boundary_zero, "expected at least one boundary weight within degree 6"
    assert report.nonzero_alcove == alcove_weights(level(k))
    assert len(report.to_json()["checked"]) == len(report.checked)


def test_dim_recursion_generic():
    report = dim_recursion_check(GENERIC, 5)
    assert Weight.from_young(5, 0) in report.checked
    assert report.boundary_zero == [] and report.nonzero_alcove == []


def test_dim_recursion_reports_mismatch(monkeypatch):
    import g2braid.dims as dims
    from g2braid.errors import Mismatch

    real = dims.qdim
    bad = Weight.from_young(2, 1)
    monkeypatch.setattr(dims, "qdim", lambda w, ctx=None, method="laurent": real(w, ctx) + (1 if w == bad else 0))
    with pytest.raises(Mismatch) as info:
        dim_recursion_check(GENERIC, 3)
    assert info.value.witness == bad


def test_admissible_q():
    adm = admissible_q(level(1))
    assert adm.accepts(CycloContext(26, 1))
    assert adm.accepts(CycloContext(26, 3))
    assert not adm.accepts(CycloContext(28, 1))
    assert adm.accepts(FloatContext(cmath.exp(1j * cmath.pi / 13)))
    assert not adm.accepts(FloatContext(1.1))
    with pytest.raises(InadmissibleQ):
        adm.require(CycloContext(28, 1))
    assert admissible_q(GENERIC).accepts(FloatContext(1.1))
    assert 13 not in adm.exponents and 1 in adm.exponents
