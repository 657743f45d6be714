import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g2braid.bratteli import EIGEN_GAMMA, homdim
from g2braid.braidrep import (
    ab2_params, assemble, block_roles, eigen_data, intermediates, markov_diagonal, synth_block, tl_elements, twist,
)
from g2braid.fusion import tensor_V
from g2braid.errors import ConditionsViolated, InadmissibleQ, NotInAlcove, SolverFailed
from g2braid.lattice import GENERIC, L1, ZERO, Weight, casimir, dominant_weights, level
from g2braid.qarith import CycloContext, CycNumber, FloatContext, FormalContext


def _young(a, b):
    return Weight.from_young(a, b)


@pytest.mark.parametrize("ctx", [FloatContext(1.1), CycloContext(26, 1), FormalContext()])
def test_eigenvalues_square_to_twist_ratios(ctx):
    eig = eigen_data(ctx)
    for idx, gamma in EIGEN_GAMMA.items():
        lam = eig.value(idx)
        assert ctx.equal(lam * lam, ctx.qpow(casimir(gamma) - 2 * casimir(L1)))


def test_eigenvalues_at_float_q():
    ev = eigen_data(FloatContext(1.1)).as_complex()
    assert np.allclose([ev[1], ev[2], ev[3], ev[4]], [1.1**2, -1, -(1.1**-6), 1.1**-12])


def test_twist_is_q_to_casimir():
    ctx = CycloContext(26, 1)
    assert twist(_young(2, 1), ctx) == ctx.qpow(42)


@pytest.mark.parametrize("multiset, method", [
    ((3,), "diagonal"),
    ((1, 3), "two_eig"),
    ((1, 2, 3), "ab2_closed_form"),
    ((1, 1, 2, 3), "ab2_closed_form"),
    ((1, 2, 3, 4), "four_eig_solver"),
    ((2, 2), "diagonal"),
])
def test_block_roles(multiset, method):
    assert block_roles(multiset)[0] == method


def test_block_roles_rejects_repeated_rank_one_eigenvalues():
    with pytest.raises(ConditionsViolated):
        block_roles((1, 1, 2, 2, 3, 3))


def test_level_two_block_has_colliding_twists():
    rule, ctx = level(2), CycloContext(28, 1)
    mids = intermediates(L1, L1, rule)
    with pytest.raises(ConditionsViolated) as info:
        ab2_params(L1, L1, mids, ctx, rule)
    assert info.value.failed == ["x_distinct"]
    params = ab2_params(L1, L1, mids, ctx, rule, strict=False)
    assert params.failed() == ["x_distinct"]


def test_synth_block_exact_two_by_two():
    ctx = FormalContext()
    lam, nu = L1, _young(2, 1)
    params = ab2_params(lam, nu, intermediates(lam, nu), ctx)
    assert params.method == "two_eig"
    mat, info = synth_block(params, ctx)
    eig = eigen_data(ctx)
    a, b = (eig.value(i) for i in params.pair)
    trace = mat[0][0] + mat[1][1]
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    assert trace == a + b and det == a * b
    assert info["projected"] == params.pair[1]


def test_synth_block_needs_float_for_four_eigenvalues():
    ctx = FormalContext()
    params = ab2_params(L1, L1, intermediates(L1, L1), ctx)
    assert params.method == "four_eig_solver"
    with pytest.raises(SolverFailed):
        synth_block(params, ctx)


@pytest.mark.parametrize("lam", [_young(2, 0), _young(2, 1), _young(3, 1)])
def test_markov_weights_sum_to_one(lam):
    ctx = FloatContext(1.1)
    out = tensor_V(lam)
    mids = list(out)
    diag = markov_diagonal(lam, mids, ctx)
    assert abs(sum(out[m] * complex(x) for m, x in zip(mids, diag)) - 1) < 1e-12


labels = st.sampled_from([_young(*p) for p in [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (2, 2), (3, 1)]])


@settings(max_examples=15, deadline=None)
@given(labels, st.integers(2, 4), st.floats(1.05, 1.6))
def test_assembled_generators_satisfy_braid_and_cubic_relations(mu, n, q):
    if homdim(mu, n) == 0:
        return
    rep = assemble(mu, n, GENERIC, FloatContext(q))
    mats = rep.matrices
    d = rep.dim
    eye = np.eye(d)
    for i in range(len(mats) - 1):
        a, b = mats[i], mats[i + 1]
        assert np.abs(a @ b @ a - b @ a @ b).max() < 1e-8
    for i in range(len(mats)):
        for j in range(i + 2, len(mats)):
            assert np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]).max() < 1e-8
    ev = rep.eig
    for s in mats:
        poly = eye.astype(complex)
        for idx in (1, 2, 3, 4):
            poly = poly @ (s - ev[idx] * eye)
        assert np.abs(poly).max() < 1e-7 * max(1.0, np.abs(s).max() ** 4)


def test_assembly_is_deterministic():
    a = assemble(_young(2, 1), 4, GENERIC, FloatContext(1.1), seed=3)
    b = assemble(_young(2, 1), 4, GENERIC, FloatContext(1.1), seed=3)
    assert all(np.array_equal(x, y) for x, y in zip(a.matrices, b.matrices))


def test_exact_mode_records_cyclotomic_blocks():
    rep = assemble(_young(2, 0), 3, level(1), CycloContext(26, 1), mode="exact")
    assert rep.exact_blocks
    entry = next(iter(rep.exact_blocks.values()))
    assert {"method", "exact"} <= set(entry)
    for data in rep.exact_blocks.values():
        if data["exact"]:
            cells = [CycNumber.from_json(c) for row in data["matrix"] for c in row]
            assert all(c.m == 26 for c in cells)


def test_assembly_guards():
    with pytest.raises(ValueError):
        assemble(L1, 6, GENERIC, FloatContext(1.1))
    with pytest.raises(ValueError):
        assemble(L1, 3, GENERIC, FormalContext())
    with pytest.raises(InadmissibleQ):
        assemble(L1, 3, level(1), CycloContext(28, 1))
    with pytest.raises(NotInAlcove):
        assemble(_young(4, 0), 4, level(1), CycloContext(26, 1))
    with pytest.raises(ConditionsViolated):
        assemble(L1, 3, level(2), CycloContext(28, 1))


def test_temperley_lieb_elements():
    rep = assemble(_young(2, 2), 4, GENERIC, FloatContext(1.1))
    es = tl_elements(rep)
    assert len(es) == 3
    for e in es:
        assert np.allclose(e @ e, e, atol=1e-9)
    with pytest.raises(ValueError):
        tl_elements(assemble(_young(2, 1), 4, GENERIC, FloatContext(1.1)))


def test_representation_json():
    rep = assemble(_young(1, 1), 3, GENERIC, FloatContext(1.1))
    data = rep.to_json()
    assert data["mu"] == [1, 1] and data["n"] == 3
    assert len(data["paths"]) == rep.dim == homdim(_young(1, 1), 3)
    assert len(data["generators"]) == 2


def test_trivial_hom_space():
    rep = assemble(ZERO, 2, GENERIC, FloatContext(1.1))
    assert rep.dim == 1
    assert np.allclose(rep.matrices[0], [[rep.eig[4]]])


def test_every_label_up_to_three_assembles():
    for mu in dominant_weights(3):
        for n in range(1, 4):
            if homdim(mu, n):
                assert assemble(mu, n, GENERIC, FloatContext(1.3)).dim == homdim(mu, n)
