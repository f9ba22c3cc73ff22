import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conesel.constraints import Configuration, ConstraintSet, mask, nullspace_basis
from conesel.errors import DimensionError, NonFiniteError


def test_nullspace_examples():
    nb = nullspace_basis(ConstraintSet([[1.0, -1.0]], [1.0, 1.0]))
    assert nb.k == 1
    assert np.abs(nb.N[:, 0]) == pytest.approx([2 ** -0.5] * 2)
    assert nb.BA[0] == pytest.approx(2 ** 0.5)
    assert nullspace_basis(ConstraintSet(np.eye(2), [1.0, 1.0])).k == 0
    nb = nullspace_basis(ConstraintSet([[1.0, 0, 0], [0, 1.0, 0]], [0.0, 0, 0]))
    assert nb.k == 1
    assert np.abs(nb.N[:, 0]) == pytest.approx([0, 0, 1])


def test_invalid_sets():
    with pytest.raises(DimensionError):
        ConstraintSet(np.ones((2, 3)), np.ones(2))
    with pytest.raises(DimensionError):
        ConstraintSet(np.ones((2, 3)), np.ones(3), n_hard=4)
    with pytest.raises(NonFiniteError):
        ConstraintSet(np.ones((1, 2)), [1.0, np.inf])


matrices = st.tuples(st.integers(1, 4), st.integers(1, 10)).flatmap(
    lambda s: arrays(np.float64, s, elements=st.floats(-3, 3, allow_nan=False)))


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_rank_nullity(A):
    cs = ConstraintSet(A, np.zeros(A.shape[1]))
    nb = nullspace_basis(cs)
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > 1e-9 * max(1.0, s.max(initial=0))))
    assert nb.k + rank == cs.c
    assert np.abs(A @ nb.N).max(initial=0) <= 1e-9 * max(1.0, np.abs(A).max())
    assert np.allclose(nb.N.T @ nb.N, np.eye(nb.k), atol=1e-12)


def test_rank_nullity_random():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        m, c = rng.integers(1, 5), rng.integers(1, 12)
        A = rng.uniform(-2, 2, (m, c))
        if rng.random() < 0.3 and m > 1:
            A[-1] = A[0] * rng.uniform(-2, 2)  # rank deficient
        nb = nullspace_basis(ConstraintSet(A, np.zeros(c)))
        assert nb.k + np.linalg.matrix_rank(A) == c


def test_mask():
    cs = ConstraintSet(np.arange(10.0).reshape(2, 5), np.arange(5.0), n_hard=2)
    A, B = mask(cs, cs.all_ones())
    assert np.array_equal(A, cs.A) and np.array_equal(B, cs.B)
    A, B = mask(cs, cs.hard_only())
    assert np.array_equal(A, cs.A[:, :2]) and np.array_equal(B, [0.0, 1.0])
    cs3 = ConstraintSet(np.arange(3.0).reshape(1, 3), np.arange(3.0))
    A, _ = mask(cs3, Configuration([1, 0, 1]))
    assert np.array_equal(A, [[0.0, 2.0]])
    with pytest.raises(DimensionError):
        mask(cs3, Configuration([1, 0]))


def test_configuration_value_semantics():
    a = Configuration([1, 0, 1])
    assert a == Configuration([True, False, True])
    assert hash(a) == hash(Configuration([1, 0, 1]))
    assert a.with_bit(1, True).n_enforced == 3 and a.n_enforced == 2
    assert repr(a) == "Configuration(101)"
    with pytest.raises(ValueError):
        a.bits[0] = False
    cs = ConstraintSet(np.ones((1, 3)), np.ones(3), n_hard=2)
    assert not a.respects(cs) and Configuration([1, 1, 0]).respects(cs)


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_text_round_trip(A, data):
    c = A.shape[1]
    B = data.draw(arrays(np.float64, c, elements=st.floats(-1e6, 1e6, allow_nan=False)))
    n_hard = data.draw(st.integers(0, c))
    cs = ConstraintSet(A, B, n_hard)
    back = ConstraintSet.from_text(cs.to_text())
    assert np.array_equal(back.A, cs.A) and np.array_equal(back.B, cs.B)
    assert back.n_hard == cs.n_hard
