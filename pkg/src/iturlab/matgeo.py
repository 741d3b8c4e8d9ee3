"""Mixed matrix norms, condition numbers and distance to singularity.

The convention is ``y = A @ x``. The mixed norm is
``||A||_{a,b} = max ||A x||_b / ||x||_a``; only pairs with a closed form are
evaluated, plus the real ``(inf, 1)`` norm by vertex enumeration, which the
``(1, inf)`` condition number needs for the inverse.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import INF
from .errors import DomainError, SingularMatrixError, UnsupportedNormPairError

RANK_TOL = 1e-12
MAX_BRUTE_DIM = 16


@dataclass(frozen=True, eq=False)
class TransformMatrix:
    """A dense matrix ``A`` acting as ``y = A @ x``."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.size == 0:
            raise DomainError("a transform matrix must be a non-empty 2-D array")
        a = a.astype(complex if np.iscomplexobj(a) else float)
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix entries must be finite")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.entries)

    def unitarity_defect(self) -> float:
        """``max |A^H A - I|``."""
        a = self.entries
        return float(np.max(np.abs(a.conj().T @ a - np.eye(self.cols))))

    def is_unitary(self, tol: float = 1e-10) -> bool:
        return self.rows == self.cols and self.unitarity_defect() <= tol


def _as_matrix(A) -> TransformMatrix:
    return A if isinstance(A, TransformMatrix) else TransformMatrix(np.asarray(A))


def _vec_norm(m: np.ndarray, a: float, axis: int) -> np.ndarray:
    if math.isinf(a):
        return m.max(axis=axis)
    return np.sum(m**a, axis=axis) ** (1.0 / a)


def _conj_exp(a: float) -> float:
    if a == 1:
        return INF
    if math.isinf(a):
        return 1.0
    return a / (a - 1.0)


def _inf_one_real(a: np.ndarray) -> float:
    n = a.shape[1]
    if n > MAX_BRUTE_DIM:
        raise UnsupportedNormPairError(f"(inf, 1) norm enumeration limited to {MAX_BRUTE_DIM} columns")
    # s and -s give the same value, so fix the first sign.
    tails = np.array(list(itertools.product((1.0, -1.0), repeat=n - 1))).reshape(-1, n - 1)
    signs = np.hstack([np.ones((tails.shape[0], 1)), tails])
    return float(np.abs(a @ signs.T).sum(axis=0).max())


def supported_pair(alpha: float, beta: float) -> bool:
    return alpha == 1 or math.isinf(beta) or (alpha == 2 and beta == 2) or (math.isinf(alpha) and beta == 1)


def mixed_norm(A, alpha: float, beta: float) -> float:
    """Mixed operator norm ``||A||_{alpha,beta}``.

    Closed forms: ``(1, b)`` is the largest column ``b``-norm, ``(a, inf)`` the
    largest row ``a'``-norm, ``(2, 2)`` the largest singular value. In
    particular ``(1, inf)`` is ``max |a_ij|``, ``(1, 1)`` the largest column
    sum and ``(inf, inf)`` the largest row sum. ``(inf, 1)`` is evaluated for
    real matrices by enumerating sign vectors (at most 16 columns). Other
    pairs raise :class:`UnsupportedNormPairError`.
    """
    A = _as_matrix(A)
    alpha, beta = float(alpha), float(beta)
    if alpha < 1 or beta < 1:
        raise DomainError("norm exponents must be >= 1")
    m = np.abs(A.entries)
    if alpha == 1:
        return float(_vec_norm(m, beta, axis=0).max())
    if math.isinf(beta):
        return float(_vec_norm(m, _conj_exp(alpha), axis=1).max())
    if alpha == 2 and beta == 2:
        return float(np.linalg.norm(A.entries, 2))
    if math.isinf(alpha) and beta == 1:
        if not A.is_real:
            raise UnsupportedNormPairError("the (inf, 1) norm is only evaluated for real matrices")
        return _inf_one_real(A.entries)
    raise UnsupportedNormPairError(f"no closed form for the ({alpha}, {beta}) norm")


def _checked_inverse(A: TransformMatrix) -> np.ndarray:
    if A.rows != A.cols:
        raise DomainError("condition numbers need a square matrix")
    s = np.linalg.svd(A.entries, compute_uv=False)
    if s[-1] < RANK_TOL * s[0] or s[0] == 0:
        raise SingularMatrixError(f"matrix is numerically singular (sigma_min/sigma_max = {s[-1] / s[0] if s[0] else 0:.3g})")
    return np.linalg.inv(A.entries)


def condition_number(A, alpha: float, beta: float) -> float:
    """``kappa = ||A||_{alpha,beta} ||A^-1||_{beta,alpha}``, always ``>= 1``."""
    A = _as_matrix(A)
    for a, b in ((alpha, beta), (beta, alpha)):
        if not supported_pair(float(a), float(b)):
            raise UnsupportedNormPairError(f"no closed form for the ({a}, {b}) norm")
    inv = _checked_inverse(A)
    return mixed_norm(A, alpha, beta) * mixed_norm(TransformMatrix(inv), beta, alpha)


def distance_to_singularity(A, alpha: float, beta: float) -> float:
    """Smallest ``||dA||_{alpha,beta}`` making ``A + dA`` singular: ``1 / ||A^-1||_{beta,alpha}``."""
    A = _as_matrix(A)
    if not supported_pair(float(beta), float(alpha)):
        raise UnsupportedNormPairError(f"no closed form for the ({beta}, {alpha}) norm")
    inv = _checked_inverse(A)
    return 1.0 / mixed_norm(TransformMatrix(inv), beta, alpha)


def overlap_bound_c(A) -> float:
    """Overlap constant ``c = max |a_ij| = ||A||_{1,inf}``.

    For unitary ``A`` the entries are bounded by one, so ``c <= 1``.
    """
    A = _as_matrix(A)
    c = float(np.abs(A.entries).max())
    if A.is_unitary() and c > 1.0 + 1e-12:
        raise ArithmeticError(f"unitary matrix with entry modulus {c}")
    return c


def dft_matrix(n: int) -> TransformMatrix:
    """Unitary discrete Fourier matrix, all entries of modulus ``1/sqrt(n)``."""
    k = np.arange(n)
    return TransformMatrix(np.exp(-2j * np.pi * np.outer(k, k) / n) / math.sqrt(n))


SPIN_BASIS_CHANGE = TransformMatrix(np.array([[1.0, 1.0], [-1.0, 1.0]]) / math.sqrt(2.0))
