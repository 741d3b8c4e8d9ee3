import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from iturlab.errors import DomainError, SingularMatrixError, UnsupportedNormPairError
from iturlab.matgeo import (
    SPIN_BASIS_CHANGE,
    TransformMatrix,
    condition_number,
    dft_matrix,
    distance_to_singularity,
    mixed_norm,
    overlap_bound_c,
    supported_pair,
)

from oracles import singular_perturbation


def _vnorm(x, a):
    return np.abs(x).max() if math.isinf(a) else (np.abs(x) ** a).sum() ** (1 / a)


@pytest.mark.parametrize("pair", [(1.0, 1.0), (1.0, 3.0), (1.0, math.inf), (2.0, 2.0), (1.5, math.inf), (math.inf, 1.0)])
def test_norm_dominates_samples_and_is_attained(pair):
    # random directions never exceed the norm; the best one comes close
    rng = np.random.default_rng(1)
    a, b = pair
    A = rng.normal(size=(4, 4))
    N = mixed_norm(A, a, b)
    X = rng.normal(size=(4, 20000))
    if a == 1.0:
        X = np.where(rng.random(X.shape) < 0.8, X * 1e-3, X)
    if math.isinf(a):
        X = np.sign(X)
    ratios = [_vnorm(A @ x, b) / _vnorm(x, a) for x in X.T]
    assert max(ratios) <= N * (1 + 1e-12)
    assert max(ratios) >= 0.9 * N


def test_known_closed_forms():
    A = np.array([[1.0, -2.0], [3.0, 4.0]])
    assert mixed_norm(A, 1, 1) == 6.0
    assert mixed_norm(A, math.inf, math.inf) == 7.0
    assert mixed_norm(A, 1, math.inf) == 4.0
    assert mixed_norm(A, 2, 2) == pytest.approx(np.linalg.svd(A, compute_uv=False)[0])
    assert mixed_norm(A, math.inf, 1) == 8.0  # s = (1, 1) gives |-1| + |7|


def test_unsupported():
    with pytest.raises(UnsupportedNormPairError):
        mixed_norm(np.eye(2), 3.0, 2.0)
    with pytest.raises(UnsupportedNormPairError):
        mixed_norm(np.eye(2) * 1j, math.inf, 1.0)
    with pytest.raises(UnsupportedNormPairError):
        condition_number(np.eye(2), 1.0, 2.0)
    with pytest.raises(DomainError):
        mixed_norm(np.eye(2), 0.5, 1.0)
    assert supported_pair(2.0, math.inf) and not supported_pair(2.0, 3.0)


def test_singular():
    with pytest.raises(SingularMatrixError):
        condition_number([[1.0, 2.0], [2.0, 4.0]], 2, 2)
    with pytest.raises(SingularMatrixError):
        distance_to_singularity([[1.0, 0.0], [0.0, 1e-14]], 2, 2)


def test_condition_of_unitary():
    U = unitary_group.rvs(5, random_state=3)
    assert condition_number(U, 2, 2) == pytest.approx(1.0)
    assert distance_to_singularity(U, 2, 2) == pytest.approx(1.0)


def test_condition_at_least_one():
    rng = np.random.default_rng(2)
    for _ in range(200):
        A = rng.normal(size=(3, 3))
        for pair in [(1.0, 1.0), (2.0, 2.0), (math.inf, math.inf), (1.0, math.inf), (math.inf, 1.0)]:
            assert condition_number(A, *pair) >= 1 - 1e-12


def test_perturbation_oracle_on_identity_scaled():
    A = np.diag([3.0, 0.5, 2.0])
    dA = singular_perturbation(A, (2.0, 2.0))
    assert np.linalg.norm(dA, 2) == pytest.approx(distance_to_singularity(A, 2, 2)) == pytest.approx(0.5)


def test_overlap_constant():
    assert overlap_bound_c(SPIN_BASIS_CHANGE) == 1 / math.sqrt(2)
    for n in (2, 3, 5, 8):
        assert overlap_bound_c(dft_matrix(n)) == pytest.approx(1 / math.sqrt(n))
        assert dft_matrix(n).is_unitary()
    assert overlap_bound_c(np.eye(3)) == 1.0
    U = unitary_group.rvs(4, random_state=0)
    assert overlap_bound_c(U) <= 1.0
    assert overlap_bound_c(U) == pytest.approx(mixed_norm(U, 1, math.inf))


def test_transform_matrix():
    T = TransformMatrix(np.array([[1, 2, 3], [4, 5, 6]]))
    assert (T.rows, T.cols) == (2, 3) and T.is_real
    assert not T.is_unitary()
    assert SPIN_BASIS_CHANGE.unitarity_defect() < 1e-15
    with pytest.raises(DomainError):
        condition_number(T, 1, 1)
