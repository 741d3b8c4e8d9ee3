"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import math

import mpmath
import numpy as np

from iturlab.core import GriddedDensity


def mp_renyi(probs, alpha) -> float:
    """Discrete Renyi entropy in bits at 50 digits."""
    mpmath.mp.dps = 50
    ps = [mpmath.mpf(p) for p in probs if p > 0]
    total = mpmath.fsum(ps)
    ps = [p / total for p in ps]
    if alpha == 1:
        return float(-sum(p * mpmath.log(p, 2) for p in ps))
    if math.isinf(alpha):
        return float(-mpmath.log(max(ps), 2))
    a = mpmath.mpf(alpha)
    return float(mpmath.log(sum(p**a for p in ps), 2) / (1 - a))


def mixture_density(weights, means, sds, lo=-16.0, hi=16.0, n=2048) -> GriddedDensity:
    w = np.asarray(weights, float) / np.sum(weights)

    def f(x):
        return sum(wi * np.exp(-0.5 * ((x - m) / s) ** 2) / (s * math.sqrt(2 * math.pi)) for wi, m, s in zip(w, means, sds))

    return GriddedDensity.from_function(f, lo, hi, n, normalize=True)


def random_mixture(rng, **kw) -> GriddedDensity:
    w = rng.uniform(0.1, 1.0, 2)
    means = rng.uniform(-3.0, 3.0, 2)
    sds = rng.uniform(0.4, 1.5, 2)
    return mixture_density(w, means, sds, **kw)


def singular_perturbation(A: np.ndarray, pair: tuple[float, float]) -> np.ndarray:
    """Rank-one ``dA`` with ``A + dA`` singular and ``||dA||_{a,b} = 1/||A^-1||_{b,a}``.

    Picks ``y`` with ``||y||_b = 1`` maximizing ``||A^-1 y||_a``, sets
    ``z = A^-1 y`` and ``dA = -y zhat^T / ||z||_a`` with ``zhat`` dual to ``z``.
    """
    inv = np.linalg.inv(A)
    if pair == (2.0, 2.0):
        u, s, vt = np.linalg.svd(A)
        y = u[:, -1]
        z = inv @ y
        zhat = z.conj() / np.linalg.norm(z)
        return -np.outer(y, zhat) / np.linalg.norm(z)
    if pair == (1.0, math.inf):
        n = A.shape[0]
        best, y = -1.0, None
        for signs in itertools.product((1.0, -1.0), repeat=n):
            s = np.array(signs)
            v = np.abs(inv @ s).sum()
            if v > best:
                best, y = v, s
        z = inv @ y
        zhat = np.sign(z)
        return -np.outer(y, zhat) / np.abs(z).sum()
    raise ValueError(pair)


def laplace_density(b=1.0, lo=-40.0, hi=40.0, n=2**15) -> GriddedDensity:
    return GriddedDensity.from_function(lambda x: np.exp(-np.abs(x) / b) / (2 * b), lo, hi, n, normalize=True)
