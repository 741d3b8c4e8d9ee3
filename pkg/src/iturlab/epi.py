"""Convolution of densities and entropy-power inequalities.

The generalized inequality checked here is, for ``0 < lambda < 1`` and
``r >= 1`` with ``q = r / ((1 - lambda) + lambda r)`` and
``p = r / (lambda + (1 - lambda) r)``::

    N_r(X1 + X2) >= (N_q(X1) / (1 - lambda))**(1 - lambda) * (N_p(X2) / lambda)**lambda

which reduces to the Shannon inequality ``N(X1 + X2) >= N(X1) + N(X2)`` at
``r = 1`` with the optimal ``lambda = N2 / (N1 + N2)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.signal import fftconvolve

from .core import BoundReport, GriddedDensity, GriddedWaveFunction, conjugate
from .errors import BoundViolationError, DomainError, GridMismatchError, InfiniteVarianceError, NormalizationError
from .renyi import _shell_divergent, renyi_entropy_power, shannon_nats

EPI_REL_TOL = 1e-9
CONVOLVE_DRIFT = 1e-6


def convolve(F1: GriddedDensity, F2: GriddedDensity) -> GriddedDensity:
    """Density of ``X1 + X2`` for independent ``X1 ~ F1`` and ``X2 ~ F2``.

    Both grids must share the cell width ``l``. The result is the linear
    (non-circular) convolution times ``l``; sums of midpoints are again
    midpoints of a grid that runs from ``lo1 + lo2 + l/2`` to
    ``hi1 + hi2 - l/2`` with ``n1 + n2 - 1`` cells. Analytic complements are
    not propagated.
    """
    l = F1.l
    if not math.isclose(l, F2.l, rel_tol=1e-9):
        raise GridMismatchError(f"cell widths differ: {F1.l} vs {F2.l}")
    out = fftconvolve(F1.values, F2.values) * l
    out = np.clip(out, 0.0, None)
    lo = F1.lo + F2.lo + 0.5 * l
    n = out.size
    mass = l * math.fsum(out)
    if abs(mass - 1.0) > CONVOLVE_DRIFT:
        raise NormalizationError(f"convolution carries mass {mass!r}")
    return GriddedDensity(lo, lo + n * l, out / mass)


def hoelder_norm(values: np.ndarray, l: float, a: float) -> float:
    """Quadrature norm ``(l sum |v|**a)**(1/a)``; ``a = inf`` is the max modulus."""
    m = np.abs(values)
    if math.isinf(a):
        return float(m.max())
    return float((l * math.fsum(m**a)) ** (1.0 / a))


def _c_squared(x: float) -> float:
    if x == 1.0 or math.isinf(x):
        return 1.0
    xp = conjugate(x).p_prime
    return x ** (1.0 / x) / xp ** (1.0 / xp)


def babenko_beckner_constant(x: float, D: int = 1) -> float:
    """``C_x**D`` with ``C_x = (x**(1/x) / x'**(1/x'))**(1/2)``."""
    if not x >= 1:
        raise DomainError(f"exponent must be >= 1, got {x}")
    return math.sqrt(_c_squared(float(x))) ** D


def young_constant(q: float, p: float, r: float) -> float:
    """Sharp constant ``C = C_p C_q / C_r`` of Young's convolution inequality.

    Needs ``q, p, r >= 1`` with ``1/q + 1/p = 1 + 1/r``.

    >>> round(young_constant(4 / 3, 4 / 3, 2), 5)
    0.87738
    """
    vals = [float(v) for v in (q, p, r)]
    if any(math.isnan(v) or v < 1 for v in vals):
        raise DomainError(f"Young exponents must be >= 1, got {vals}")
    inv = [0.0 if math.isinf(v) else 1.0 / v for v in vals]
    if abs(inv[0] + inv[1] - 1.0 - inv[2]) > 1e-10:
        raise DomainError(f"{vals} is not a Hoelder triple (1/q + 1/p != 1 + 1/r)")
    q, p, r = vals
    return math.sqrt(_c_squared(p) * _c_squared(q) / _c_squared(r))


@dataclass(frozen=True)
class EpiReport:
    """Both sides of the generalized entropy-power inequality."""

    lhs_power: float
    rhs_power: float
    lam: float
    holds: bool
    q: float = math.nan
    p: float = math.nan
    r: float = math.nan

    @property
    def lhsPower(self) -> float:
        return self.lhs_power

    @property
    def rhsPower(self) -> float:
        return self.rhs_power

    def to_dict(self) -> dict:
        return {"lhsPower": self.lhs_power, "rhsPower": self.rhs_power, "lambda": self.lam, "holds": self.holds}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def epi_holds(lhs: float, rhs: float) -> bool:
    return lhs >= rhs - EPI_REL_TOL * max(1.0, rhs)


def epi_orders(lam: float, r: float) -> tuple[float, float]:
    """Orders ``(q, p)`` paired with ``r`` at weight ``lam``."""
    if not 0 < lam < 1:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    if not r >= 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if math.isinf(r):
        return 1.0 / lam, 1.0 / (1.0 - lam)
    return r / ((1.0 - lam) + lam * r), r / (lam + (1.0 - lam) * r)


def epi_rhs(Nq: float, Np: float, lam: float) -> float:
    return (Nq / (1.0 - lam)) ** (1.0 - lam) * (Np / lam) ** lam


def check_generalized_epi(F1: GriddedDensity, F2: GriddedDensity, lam: float, r: float) -> EpiReport:
    """Evaluate the lambda-weighted Renyi entropy-power inequality.

    The left side is computed on :func:`convolve` of the two densities.
    """
    q, p = epi_orders(lam, r)
    Nq = renyi_entropy_power(F1, q)
    Np = renyi_entropy_power(F2, p)
    Nr = renyi_entropy_power(convolve(F1, F2), r)
    rhs = epi_rhs(Nq, Np, lam)
    return EpiReport(Nr, rhs, lam, epi_holds(Nr, rhs), q, p, float(r))


def optimal_lambda(N1: float, N2: float) -> float:
    """Weight ``N2 / (N1 + N2)`` maximizing the right side at ``r = 1``."""
    if not (N1 > 0 and N2 > 0) or math.isinf(N1) or math.isinf(N2):
        raise DomainError("entropy powers must be positive and finite")
    return N2 / (N1 + N2)


def check_shannon_epi(F1: GriddedDensity, F2: GriddedDensity) -> EpiReport:
    """``N(X1 + X2) >= N(X1) + N(X2)``, i.e. the generalized form at ``r = 1``."""
    N1, N2 = renyi_entropy_power(F1, 1.0), renyi_entropy_power(F2, 1.0)
    Ns = renyi_entropy_power(convolve(F1, F2), 1.0)
    lam = optimal_lambda(N1, N2)
    return EpiReport(Ns, N1 + N2, lam, epi_holds(Ns, N1 + N2), 1.0, 1.0, 1.0)


# ---------------------------------------------------------------------------
# Variance / entropy power chain
# ---------------------------------------------------------------------------


class VarianceChain(NamedTuple):
    variance: float
    entropy_power: float
    holds: bool


def density_variance(F: GriddedDensity) -> float:
    """Variance of ``F``; :class:`InfiniteVarianceError` on heavy tails."""
    x, v, l = F.x, F.values, F.l
    mass = F.mass()
    mean = l * math.fsum(x * v) / mass
    extra = sum(c.second_moment(F, mean) for c in F.complements)
    w = (x - mean) ** 2 * v
    if math.isinf(extra) or (not F.complements and _shell_divergent(w, x, mean)):
        raise InfiniteVarianceError("the second moment diverges")
    return (l * math.fsum(w) + extra) / mass


def variance_entropy_chain(F: GriddedDensity, rel_tol: float = 1e-8) -> VarianceChain:
    """Return ``(sigma**2, N)`` and check ``N <= sigma**2`` (equality for Gaussians).

    Raises :class:`InfiniteVarianceError` when the variance diverges, where
    the chain carries no information, and :class:`BoundViolationError` if the
    entropy power exceeds the variance beyond ``rel_tol``.
    """
    var = density_variance(F)
    N = renyi_entropy_power(shannon_nats(F), 1.0)
    holds = N <= var * (1.0 + rel_tol)
    if not holds:
        raise BoundViolationError(f"entropy power {N!r} exceeds variance {var!r}")
    return VarianceChain(var, N, holds)


# ---------------------------------------------------------------------------
# Hausdorff-Young
# ---------------------------------------------------------------------------


def hausdorff_young_check(f: GriddedWaveFunction, n: float, sharp: bool = True, tolerance: float = 1e-6) -> BoundReport:
    """Check ``||f||_{n'} <= k s ||f_hat||_n`` for ``n`` in ``[1, 2]`` (log2 units).

    ``s = (2 pi hbar)**((1/n' - 1/n)/2)`` absorbs the hbar-scaled kernel and
    ``k`` is the Babenko-Beckner constant ``C_n`` (``sharp=True``) or 1.
    Report fields: ``lhs = log2(k s ||f_hat||_n)`` and ``bound = log2 ||f||_{n'}``.
    Gaussians saturate the sharp form; ``n = 2`` is Plancherel's identity.
    """
    from .itur_continuous import fourier_dual

    n = float(n)
    if not 1.0 <= n <= 2.0:
        raise DomainError(f"n must lie in [1, 2], got {n}")
    n_prime = conjugate(n).p_prime
    g = fourier_dual(f)
    inv_np = 0.0 if math.isinf(n_prime) else 1.0 / n_prime
    log_s = 0.5 * (inv_np - 1.0 / n) * math.log2(2 * math.pi * f.hbar)
    log_k = math.log2(babenko_beckner_constant(n)) if sharp else 0.0
    lhs = log_k + log_s + math.log2(hoelder_norm(g.amplitudes, g.l, n))
    bound = math.log2(hoelder_norm(f.amplitudes, f.l, n_prime))
    return BoundReport.evaluate(lhs, bound, tolerance)
