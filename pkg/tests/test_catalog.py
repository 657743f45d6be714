import cmath
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g2braid.braidrep import eigen_data
from g2braid.catalog import (
    IRREDUCIBLE, PERMUTATIONS, EigenPoly, b3_semisimple, classify_W, degeneracy_conditions, degeneracy_report,
    generic_table, subquotient_table, table_json, theta_values, w_cases, weight_multiplicities,
)
from g2braid.qarith import CycloContext, CycNumber, FloatContext, FormalContext

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.lists(st.tuples(exps, st.integers(-3, 3), st.integers(0, 2)), max_size=3).map(
    lambda terms: sum((EigenPoly.mono(*e, coeff=c, theta=t) for e, c, t in terms), EigenPoly.mono(coeff=0)))
points = st.tuples(*(st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0) for _ in range(3)))


@settings(max_examples=60)
@given(polys, polys, points, st.sampled_from(PERMUTATIONS))
def test_eigenpoly_evaluation_is_a_ring_map(a, b, lams, perm):
    ctx = FloatContext(1.1)
    theta = cmath.exp(2j * cmath.pi / 3)
    ev = lambda p, x=lams: complex(p.evaluate(x, ctx, theta))  # noqa: E731
    assert abs(ev(a * b) - ev(a) * ev(b)) < 1e-6 * (1 + abs(ev(a)) * abs(ev(b)))
    assert abs(ev(a + b) - ev(a) - ev(b)) < 1e-6 * (1 + abs(ev(a)) + abs(ev(b)))
    # permuting the variables is the same as permuting the evaluation point
    # (l_i -> l_perm[i])
    moved = tuple(lams[perm[i] - 1] for i in range(3))
    assert abs(ev(a.permute(perm)) - ev(a, moved)) < 1e-6 * (1 + abs(ev(a)))


def test_eigenpoly_printing_and_theta():
    p = EigenPoly.mono(2, 0, 0) - EigenPoly.mono(0, 1, 1, theta=1)
    assert str(p) == "l1^2 - theta l2 l3"
    assert p.uses_theta and not (p * p.conj_theta()).simplified().is_monomial
    assert EigenPoly.parse_exps({1: 4, 2: 2, 3: 2}).exponents == (4, 2, 2)


def test_table_sizes():
    assert len(generic_table(closed=False)) == 8
    assert len(generic_table()) == 24
    assert len(degeneracy_conditions()) == 66
    assert len(subquotient_table()) == 21
    assert [c.case for c in w_cases()] == [1, 2, 3, 4, 5, 6]


def test_generic_rows_are_closed_under_permutation():
    keys = {r.key() for r in generic_table()}
    for row in generic_table():
        for perm in PERMUTATIONS:
            assert row.permuted(perm).key() in keys


@pytest.mark.parametrize("row", generic_table(), ids=lambda r: r.label)
def test_generic_row_consistency(row):
    checks = row.consistency()
    assert checks and all(checks.values()), checks


@pytest.mark.parametrize("sub", subquotient_table(), ids=lambda s: s.notation)
def test_subquotient_consistency(sub):
    assert all(sub.consistency(samples=4, seed=7).values())


@pytest.mark.parametrize("case", w_cases(), ids=lambda c: str(c.case))
def test_w_case_consistency(case):
    assert all(case.consistency().values())


def test_theta_values():
    assert len(theta_values(FloatContext(1.1))) == 2
    assert theta_values(CycloContext(26, 1)) == []
    assert theta_values(FormalContext()) == []
    th = theta_values(CycloContext(30, 1))
    assert th[0] ** 3 == CycNumber.from_rational(30, 1) and th[0] != th[1]


def test_b3_semisimple():
    ctx = FloatContext(1.1)
    assert b3_semisimple(1.0, 2.0, 3.0, ctx) == (True, [])
    ok, failed = b3_semisimple(1.0, -1.0, 5.0, ctx)
    assert not ok and failed
    zeta6 = cmath.exp(1j * cmath.pi / 3)
    assert not b3_semisimple(1.0, zeta6, 7.0, ctx)[0]


def test_b3_semisimple_with_cube_roots_of_unity():
    """(1, theta, theta^2) makes no listed condition vanish."""
    th = cmath.exp(2j * cmath.pi / 3)
    assert b3_semisimple(1.0, th, th * th, FloatContext(1.1)) == (True, [])


def test_classify_w_generic_and_special():
    ctx = FloatContext(1.1)
    eig = eigen_data(ctx)
    assert classify_W(eig.l1, eig.l2, eig.l3, ctx) == IRREDUCIBLE
    special = CycloContext(30, 1)
    eig = eigen_data(special)
    case = classify_W(eig.l1, eig.l2, eig.l3, special)
    assert case.case == 2
    assert case.to_json()["relations"] == ["l1^2 - theta l2 l3"]
    with pytest.raises(ValueError):
        classify_W(1.0, 1.0, 2.0, ctx)


def test_degeneracy_report():
    ctx = FloatContext(1.1)
    eig = eigen_data(ctx)
    assert degeneracy_report(eig.l1, eig.l2, eig.l3, ctx) == {"families": [], "subquotients": []}
    special = CycloContext(30, 1)
    eig = eigen_data(special)
    report = degeneracy_report(eig.l1, eig.l2, eig.l3, special)
    names = {f["representation"] for f in report["families"]}
    assert "{l1^4l2^2l3^2}" in names
    # l2 = -l3 gives the four-dimensional subquotient
    report = degeneracy_report(1.5, 2.0, -2.0, ctx)
    assert any(s["dim"] == 4 for s in report["subquotients"])


def test_weight_multiplicities_of_commuting_diagonal_pair():
    ev = [1.0, 2.0, 3.0]
    s1 = np.diag([1.0, 1.0, 2.0, 3.0])
    s3 = np.diag([2.0, 3.0, 1.0, 1.0])
    assert weight_multiplicities(s1, s3, ev) == {(1, 2): 1, (1, 3): 1, (2, 1): 1, (3, 1): 1}


def test_table_json_is_valid():
    data = json.loads(table_json())
    assert set(data) == {"generic", "degeneracy", "subquotients", "w_cases"}
    assert len(data["generic"]) == 24
