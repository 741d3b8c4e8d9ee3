"""Renyi and Shannon entropies of discrete distributions and gridded densities.

Discrete entropies are ``I_a(P) = log2(sum p**a) / (1 - a)``; the
differential versions replace the sum by the midpoint quadrature of
``int F**a dx`` plus any analytic complements carried by the density.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .core import INF, LN2, DiscreteDistribution, GriddedDensity, validate_distribution
from .errors import DomainError, GridMismatchError, QuadratureError

SHANNON_SWITCH = 1e-6
DIVERGENCE_RATIO = 1.0 + 1e-6
# Edge log-slope at or below which a tail counts as non-integrable.
EDGE_SLOPE = 1.02


class EntropyResult(NamedTuple):
    value: float
    divergent: bool = False


def _check_alpha(alpha) -> float:
    a = float(alpha)
    if math.isnan(a) or a < 0:
        raise DomainError(f"Renyi order must satisfy alpha >= 0, got {alpha}")
    return a


def _scale(unit: str) -> float:
    if unit == "bits":
        return 1.0 / LN2
    if unit == "nats":
        return 1.0
    raise DomainError(f"unknown unit {unit!r}; use 'bits' or 'nats'")


def _as_distribution(P) -> DiscreteDistribution:
    return P if isinstance(P, DiscreteDistribution) else validate_distribution(P)


# ---------------------------------------------------------------------------
# Discrete
# ---------------------------------------------------------------------------


def _renyi_discrete_nats(p: np.ndarray, a: float) -> float:
    p = p[p > 0]
    if math.isinf(a):
        return -math.log(p.max())
    logp = np.log(p)
    shannon = -math.fsum(p * logp)
    if a == 1.0:
        return shannon
    if abs(a - 1.0) < SHANNON_SWITCH:
        var = math.fsum(p * (logp + shannon) ** 2)
        return shannon - 0.5 * (a - 1.0) * var
    m = logp.max()
    log_sum = a * m + math.log(math.fsum(np.exp(a * (logp - m))))
    return log_sum / (1.0 - a)


def renyi_discrete(P: DiscreteDistribution | Sequence[float], alpha: float, unit: str = "bits") -> float:
    """Renyi entropy of order ``alpha`` of a finite distribution.

    ``alpha = 1`` gives the Shannon entropy (with ``0 log 0 = 0``) and
    ``alpha = inf`` the min-entropy ``-log2 max p``. Orders within 1e-6 of one
    use the first-order expansion ``H - (alpha - 1) Var[ln p] / 2``.

    >>> round(renyi_discrete([0.8, 0.2], 2), 6)
    0.556393
    """
    a = _check_alpha(alpha)
    P = _as_distribution(P)
    return float(_renyi_discrete_nats(P.probs, a) * _scale(unit))


def shannon_discrete(P, unit: str = "bits") -> float:
    return renyi_discrete(P, 1.0, unit)


# ---------------------------------------------------------------------------
# Gridded densities
# ---------------------------------------------------------------------------


def _shell_divergent(values: np.ndarray, x: np.ndarray, center: float) -> bool:
    """Heuristic test for an integrand whose tail does not decay.

    Two conditions must both hold. First, the sum over the whole grid must
    exceed the sum over the window of half the radius around ``center`` by a
    relative ``1e-6``. Second, on at least one side the integrand must fall by
    no more than ``2**EDGE_SLOPE`` between half the edge distance and the edge
    itself, i.e. decay no faster than ``|x|**-EDGE_SLOPE``. Tails that decay
    faster than ``1/|x|`` are integrable and so do not count.
    """
    dist = np.abs(x - center)
    r0 = dist.max()
    if r0 <= 0:
        return False
    s0 = math.fsum(values)
    s1 = math.fsum(values[dist <= r0 / 2])
    if s1 > 0 and s0 / s1 <= DIVERGENCE_RATIO:
        return False
    for side in (x < center, x > center):
        if not np.any(side):
            continue
        xs, vs = x[side], values[side]
        ds = np.abs(xs - center)
        edge = int(np.argmax(ds))
        half = int(np.argmin(np.abs(ds - 0.5 * ds[edge])))
        g_edge, g_half = vs[edge], vs[half]
        if g_edge <= 0:
            continue
        if g_half <= 0 or g_half / g_edge <= 2.0**EDGE_SLOPE:
            return True
    return False


def _peak_center(F: GriddedDensity) -> float:
    return float(F.x[int(np.argmax(F.values))])


def grid_peak(F: GriddedDensity, refine: bool = True) -> float:
    """Estimate ``max F``.

    A registered analytic peak wins. Otherwise the largest sample is used,
    optionally refined by the vertex of the parabola through ``ln F`` at the
    maximal sample and its two neighbours (exact for Gaussian peaks). The
    refinement is skipped at the grid edge or when a neighbour vanishes.
    """
    if F.peak is not None:
        return float(F.peak)
    v = F.values
    i = int(np.argmax(v))
    vmax = float(v[i])
    if not refine or i == 0 or i == v.size - 1 or v[i - 1] <= 0 or v[i + 1] <= 0:
        return vmax
    y0, y1, y2 = math.log(v[i - 1]), math.log(vmax), math.log(v[i + 1])
    curv = y0 - 2 * y1 + y2
    if curv >= 0:
        return vmax
    off = 0.5 * (y0 - y2) / curv
    if abs(off) > 0.5:
        return vmax
    return math.exp(y1 - 0.125 * (y0 - y2) ** 2 / curv)


def power_integral(F: GriddedDensity, alpha: float, check_tail: bool = True) -> EntropyResult:
    """``int F**alpha dx`` with complements; ``inf`` (flagged) when divergent."""
    a = _check_alpha(alpha)
    v = F.values
    if a == 0:
        core = np.where(v > 0, 1.0, 0.0)
    else:
        with np.errstate(divide="ignore"):
            core = np.where(v > 0, np.power(v, a, where=v > 0), 0.0)
    extra = sum(c.power(F, a) for c in F.complements)
    if math.isinf(extra):
        return EntropyResult(INF, True)
    if a < 1 and check_tail and not F.complements and _shell_divergent(core, F.x, _peak_center(F)):
        return EntropyResult(INF, True)
    return EntropyResult(F.l * math.fsum(core) + extra, False)


def shannon_nats(F: GriddedDensity) -> float:
    v = F.values
    pos = v > 0
    core = -math.fsum(v[pos] * np.log(v[pos])) * F.l
    return core + sum(c.entropy(F) for c in F.complements)


def renyi_differential_result(
    F: GriddedDensity, alpha: float, unit: str = "bits", *, refine_peak: bool = True, check_tail: bool = True
) -> EntropyResult:
    """Differential Renyi entropy together with a divergence flag.

    For ``alpha < 1`` on a heavy tail the integral ``int F**alpha`` may
    diverge; the result is then ``inf`` with ``divergent=True``. The test
    looks at how fast the integrand decays toward the grid edges, so a
    density that fills its grid (a uniform one, say) needs
    ``check_tail=False``. Densities
    with a registered singular peak (``F.peak == inf``) give ``-inf`` at
    ``alpha = inf``.
    """
    a = _check_alpha(alpha)
    s = _scale(unit)
    if math.isinf(a):
        peak = grid_peak(F, refine_peak)
        return EntropyResult(-INF if math.isinf(peak) else -math.log(peak) * s, False)
    if a == 1.0 or (abs(a - 1.0) < SHANNON_SWITCH and F.complements):
        return EntropyResult(shannon_nats(F) * s, False)
    if abs(a - 1.0) < SHANNON_SWITCH:
        v = F.values
        pos = v > 0
        w = v[pos] * F.l
        logv = np.log(v[pos])
        h = -math.fsum(w * logv)
        var = math.fsum(w * (logv + h) ** 2)
        return EntropyResult((h - 0.5 * (a - 1.0) * var) * s, False)
    integral, divergent = power_integral(F, a, check_tail)
    if divergent:
        return EntropyResult(INF, True)
    if not integral > 0:
        raise QuadratureError(f"non-positive power integral {integral!r}")
    return EntropyResult(math.log(integral) / (1.0 - a) * s, False)


def renyi_differential(
    F: GriddedDensity, alpha: float, unit: str = "bits", *, refine_peak: bool = True, check_tail: bool = True
) -> float:
    """Differential Renyi entropy ``log2(int F**alpha) / (1 - alpha)``.

    May be negative; returns ``inf`` when the ``alpha < 1`` integral diverges
    (see :func:`renyi_differential_result` for the flag). ``alpha = 1`` is the
    differential Shannon entropy and ``alpha = inf`` is ``-log2 max F``.
    ``refine_peak`` and ``check_tail`` switch off the two shape heuristics,
    which assume a density that is smooth across cells.
    """
    return renyi_differential_result(F, alpha, unit, refine_peak=refine_peak, check_tail=check_tail).value


def renyi_relative_volume(F: GriddedDensity, alpha: float, unit: str = "bits", **kw) -> float:
    """Entropy relative to the uniform density on ``[lo, hi]``: ``I_a(F) - log2 V``."""
    return renyi_differential(F, alpha, unit, **kw) - math.log(F.volume) * _scale(unit)


def discretize(F: GriddedDensity, l: float) -> DiscreteDistribution:
    """Integrate ``F`` over consecutive cells of width ``l``.

    ``l`` must be a whole multiple of the grid spacing that tiles ``[lo, hi]``;
    the cell masses are renormalized to sum to one.
    """
    if not l > 0:
        raise GridMismatchError("mesh size must be positive")
    ratio = l / F.l
    k = int(round(ratio))
    if k < 1 or abs(ratio - k) > 1e-9 * max(1.0, ratio):
        raise GridMismatchError(f"mesh {l} is not a multiple of the grid spacing {F.l}")
    if F.n % k:
        raise GridMismatchError(f"mesh {l} does not tile a grid of {F.n} cells")
    masses = F.values.reshape(-1, k).sum(axis=1) * F.l
    total = math.fsum(masses)
    return DiscreteDistribution(masses / total)


# ---------------------------------------------------------------------------
# Entropy powers and Gaussian closed forms
# ---------------------------------------------------------------------------


def _check_power_order(p) -> float:
    p = float(p)
    if math.isnan(p) or not p > 0:
        raise DomainError(f"entropy power order must satisfy p > 0, got {p}")
    return p


def _log_prefactor(p: float) -> float:
    # ln[(1/2pi) p^(-1/(p-1))], with the p -> 1 and p -> inf limits
    if math.isinf(p):
        return -math.log(2 * math.pi)
    if p == 1.0:
        return -math.log(2 * math.pi) - 1.0
    return -math.log(2 * math.pi) - math.log1p(p - 1.0) / (p - 1.0)


def renyi_entropy_power(source, p: float, D: int = 1, unit: str = "nats") -> float:
    """Renyi entropy power ``N_p = (1/2pi) p^(-p'/p) exp(2 I_p / D)``.

    ``source`` is a :class:`GriddedDensity` or a precomputed entropy ``I_p``
    expressed in ``unit`` (nats by default). ``p = 1`` uses the Shannon
    prefactor ``1/(2 pi e)`` and ``p = inf`` the limit ``1/(2 pi)``. Orders in
    ``(0, 1)`` are accepted too, as the product form of the uncertainty
    relations needs them. A Gaussian of variance ``sigma**2`` has
    ``N_p = sigma**2`` for every ``p``.
    """
    p = _check_power_order(p)
    if not (isinstance(D, (int, np.integer)) and D >= 1):
        raise DomainError("D must be a positive integer")
    if isinstance(source, GriddedDensity):
        if D != 1:
            raise DomainError("gridded densities are one-dimensional")
        h = renyi_differential(source, p, "nats")
    else:
        h = float(source) / _scale(unit)
    if math.isinf(h):
        return INF if h > 0 else 0.0
    return math.exp(_log_prefactor(p) + 2.0 * h / D)


def shannon_entropy_power(source, D: int = 1, unit: str = "nats") -> float:
    return renyi_entropy_power(source, 1.0, D, unit)


def gaussian_renyi_closed(sigma: float, p: float, D: int = 1, unit: str = "bits") -> float:
    """Order-``p`` entropy of an isotropic Gaussian with per-axis spread ``sigma``.

    ``(D/2) log2(2 pi p^(1/(p-1))) + D log2 sigma``; ``p = 1`` gives
    ``(D/2) log2(2 pi e)``.
    """
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    p = _check_power_order(p)
    nats = -0.5 * D * _log_prefactor(p) + D * math.log(sigma)
    return nats * _scale(unit)


def gaussian_renyi_cov(K, p: float, unit: str = "bits") -> float:
    """Order-``p`` entropy of a Gaussian vector with covariance matrix ``K``."""
    K = np.atleast_2d(np.asarray(K, dtype=float))
    D = K.shape[0]
    sign, logdet = np.linalg.slogdet(K)
    if K.shape != (D, D) or sign <= 0:
        raise DomainError("covariance must be symmetric positive definite")
    p = _check_power_order(p)
    nats = -0.5 * D * _log_prefactor(p) + 0.5 * logdet
    return nats * _scale(unit)
