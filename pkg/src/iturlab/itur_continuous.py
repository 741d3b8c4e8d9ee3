"""Fourier-dual wave functions and continuous entropic uncertainty relations.

The momentum representation uses the unitary kernel
``exp(-i p x / hbar) / sqrt(2 pi hbar)``. For every ITUR pair ``(t, r)``::

    I_{1+t}(|psi|^2) + I_{1+r}(|psi_hat|^2) >= bb_rhs(t) >= log2(2 pi hbar)

per dimension. ``t = 0`` is the Shannon (Hirschman) relation with bound
``log2(e pi hbar)``; ``hbar = 1/(2 pi)`` makes the weak bound vanish.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import INF, LN2, BoundReport, GriddedDensity, GriddedWaveFunction, conjugate, itur_pair
from .errors import AliasingError, BoundViolationError, DivergentEntropyError, DomainError
from .renyi import discretize, renyi_discrete, renyi_differential_result, renyi_entropy_power

ALIAS_TAIL_TOL = 1e-10
CENTRAL_FRACTION = 0.8


def edge_mass(psi: GriddedWaveFunction, central: float = CENTRAL_FRACTION) -> float:
    """Probability outside the central ``central`` fraction of the grid."""
    mid = 0.5 * (psi.lo + psi.hi)
    half = 0.5 * central * (psi.hi - psi.lo)
    outside = np.abs(psi.x - mid) > half
    return psi.l * math.fsum(np.abs(psi.amplitudes[outside]) ** 2)


def fourier_dual(
    psi: GriddedWaveFunction, tail_tol: float = ALIAS_TAIL_TOL, tail_amplitude=None
) -> GriddedWaveFunction:
    """Momentum-space amplitudes ``psi_hat(p)`` on the reciprocal midpoint grid.

    With ``N`` cells of width ``l`` the momenta are ``(k + 1/2) dp`` for
    ``k = -N/2 .. N/2 - 1`` and ``dp = 2 pi hbar / (N l)``, so the momentum grid
    is centred on zero and avoids ``p = 0``. The discrete map is exactly
    unitary, and applying it twice to a grid symmetric about zero returns the
    parity-reflected state.

    Raises :class:`AliasingError` when more than ``tail_tol`` of the
    probability lies outside the central 80 % of the grid; heavy-tailed
    states need a relaxed ``tail_tol``. For such states ``tail_amplitude(p)``
    may supply the transform of the part of ``psi`` lying off the grid, which
    is added to the grid transform. The result then samples the true momentum
    amplitude, whose midpoint norm can fall well short of one near a
    singularity, so the norm is not checked in that case.
    """
    tail = edge_mass(psi)
    if tail > tail_tol:
        raise AliasingError(f"edge mass {tail:.3g} exceeds {tail_tol:.3g}; widen the grid")
    n, l, hbar = psi.n, psi.l, psi.hbar
    dp = 2 * math.pi * hbar / (n * l)
    j = np.arange(n)
    x0 = psi.lo + 0.5 * l
    spec = np.fft.fftshift(np.fft.fft(psi.amplitudes * np.exp(-1j * math.pi * j / n)))
    p = (np.arange(n) - n // 2 + 0.5) * dp
    amp = (l / math.sqrt(2 * math.pi * hbar)) * np.exp(-1j * p * x0 / hbar) * spec
    if tail_amplitude is not None:
        amp = amp + np.asarray(tail_amplitude(p), dtype=complex)
    half = 0.5 * n * dp
    tol = max(psi.norm_tol, 1e-8) if tail_amplitude is None else math.inf
    return GriddedWaveFunction(-half, half, amp, hbar, norm_tol=tol)


def momentum_density(psi: GriddedWaveFunction, tail_tol: float = ALIAS_TAIL_TOL, tail_amplitude=None) -> GriddedDensity:
    return fourier_dual(psi, tail_tol, tail_amplitude).density()


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


def _g(x: float) -> float:
    # log2(1 + x) / x with its limits
    if math.isinf(x):
        return 0.0
    if x == 0:
        return 1.0 / LN2
    return math.log1p(x) / x / LN2


def weak_bound(D: int = 1, hbar: float = 1.0) -> float:
    """Universal bound ``D log2(2 pi hbar)`` (bits)."""
    _check_hbar(hbar)
    return D * math.log2(2 * math.pi * hbar)


def _check_hbar(hbar: float) -> None:
    if not (hbar > 0 and math.isfinite(hbar)):
        raise DomainError(f"hbar must be positive, got {hbar}")


def _partner(t: float) -> float:
    return itur_pair(t).t


def bb_rhs(t: float, D: int = 1, hbar: float = 1.0) -> float:
    """Sharp lower bound on ``I_{1+t}(|psi|^2) + I_{1+r}(|psi_hat|^2)`` in bits.

    ``(1/r) log2((1+r)/(pi hbar))^(D/2) + (1/t) log2((1+t)/(pi hbar))^(D/2)``
    rewritten with ``1/t + 1/r = -2`` as
    ``D log2(pi hbar) + (D/2) (g(r) + g(t))`` where ``g(x) = log2(1+x)/x``,
    which is continuous at ``t`` in ``{-1/2, 0, inf}``.

    >>> round(bb_rhs(0.0), 5)
    3.09419
    """
    _check_hbar(hbar)
    if not (isinstance(D, (int, np.integer)) and D >= 1):
        raise DomainError("D must be a positive integer")
    r = _partner(t)
    return D * math.log2(math.pi * hbar) + 0.5 * D * (_g(t) + _g(r))


def _finite_pair(t: float) -> float:
    r = _partner(t)
    if t == 0 or math.isinf(t) or r == 0 or math.isinf(r):
        raise DomainError("this form needs finite non-zero t and r")
    return r


def bb_rhs_minus_d(t: float, D: int = 1) -> float:
    """Bound at ``hbar = 1/(2 pi)`` written as ``-D + (D/2)(log2(1+r)/r + log2(1+t)/t)``."""
    r = _finite_pair(t)
    return -D + (0.5 * D / r) * math.log2(1 + r) + (0.5 * D / t) * math.log2(1 + t)


def bb_rhs_doubled(t: float, D: int = 1) -> float:
    """Bound at ``hbar = 1/(2 pi)`` written as ``(D/2)(log2(2(1+r))/r + log2(2(1+t))/t)``."""
    r = _finite_pair(t)
    return (0.5 * D / r) * math.log2(2 * (1 + r)) + (0.5 * D / t) * math.log2(2 * (1 + t))


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuousIturReport(BoundReport):
    """Report against the sharp bound plus the slack against the weak one."""

    weak_bound: float = math.nan
    weak_slack: float = math.nan
    position_entropy: float = math.nan
    momentum_entropy: float = math.nan

    @property
    def weak_holds(self) -> bool:
        return self.weak_slack >= -self.tolerance


def _entropy_or_raise(F: GriddedDensity, order: float, side: str) -> float:
    res = renyi_differential_result(F, order)
    if res.divergent or not math.isfinite(res.value):
        raise DivergentEntropyError(f"the order-{order:g} entropy of the {side} density is {res.value}", side=side)
    return res.value


def check_continuous_itur_densities(
    Fx: GriddedDensity, Fp: GriddedDensity, t: float, hbar: float = 1.0, tolerance: float = 1e-6
) -> ContinuousIturReport:
    """Continuous ITUR for given position and momentum densities."""
    r = _partner(t)
    ix = _entropy_or_raise(Fx, 1.0 + t, "position")
    ip = _entropy_or_raise(Fp, 1.0 + r, "momentum")
    lhs = ix + ip
    weak = weak_bound(1, hbar)
    return ContinuousIturReport.evaluate(
        lhs,
        bb_rhs(t, 1, hbar),
        tolerance,
        weak_bound=weak,
        weak_slack=lhs - weak,
        position_entropy=ix,
        momentum_entropy=ip,
    )


def check_continuous_itur(
    psi: GriddedWaveFunction, t: float, tolerance: float = 1e-6, tail_tol: float = ALIAS_TAIL_TOL
) -> ContinuousIturReport:
    """``I_{1+t}(|psi|^2) + I_{1+r}(|psi_hat|^2)`` against :func:`bb_rhs` and the weak bound.

    Raises :class:`DivergentEntropyError` naming the side whose entropy is
    infinite.
    """
    Fp = momentum_density(psi, tail_tol)
    return check_continuous_itur_densities(psi.density(), Fp, t, psi.hbar, tolerance)


def coarse_itur_check(
    psi: GriddedWaveFunction,
    t: float,
    l: float,
    l_p: float | None = None,
    tolerance: float = 1e-9,
    tail_tol: float = ALIAS_TAIL_TOL,
) -> BoundReport:
    """Mesh version ``I_{1+t}(P_x) + I_{1+r}(P_p) >= log2(2 pi hbar / (l l_p))``.

    ``P_x`` and ``P_p`` are the cell probabilities for position cells of width
    ``l`` and momentum cells of width ``l_p``. By default ``l_p`` spans as
    many momentum grid cells as ``l`` spans position cells. With
    ``hbar = 1/(2 pi)`` and ``l_p = l`` the bound is ``-2 log2 l``.
    """
    r = _partner(t)
    dual = fourier_dual(psi, tail_tol)
    if l_p is None:
        l_p = l * dual.l / psi.l
    Px = discretize(psi.density(), l)
    Pp = discretize(dual.density(), l_p)
    lhs = renyi_discrete(Px, 1.0 + t) + renyi_discrete(Pp, 1.0 + r)
    bound = math.log2(2 * math.pi * psi.hbar / (l * l_p))
    return BoundReport.evaluate(lhs, bound, tolerance)


def entropy_power_product_from_entropies(ix_nats: float, ip_nats: float, t: float) -> float:
    """``N_{1+t} N_{1+r}`` from position and momentum entropies in nats."""
    r = _partner(t)
    return renyi_entropy_power(ix_nats, 1.0 + t) * renyi_entropy_power(ip_nats, 1.0 + r)


def entropy_power_product(
    psi: GriddedWaveFunction, t: float, rel_tol: float = 1e-9, tail_tol: float = ALIAS_TAIL_TOL
) -> float:
    """``N_{1+t}(|psi|^2) N_{1+r}(|psi_hat|^2)``, which is at least ``hbar**2 / 4``.

    Raises :class:`BoundViolationError` if the product falls below
    ``hbar**2/4`` by more than ``rel_tol`` relative.
    """
    r = _partner(t)
    ix = _entropy_or_raise(psi.density(), 1.0 + t, "position") * LN2
    ip = _entropy_or_raise(momentum_density(psi, tail_tol), 1.0 + r, "momentum") * LN2
    prod = entropy_power_product_from_entropies(ix, ip, t)
    floor = 0.25 * psi.hbar**2
    if prod < floor * (1.0 - rel_tol):
        raise BoundViolationError(f"entropy power product {prod!r} below hbar^2/4 = {floor!r}")
    return prod


class TailGap(NamedTuple):
    lhs_gap: float
    rhs_gap: float
    improves: bool

    @property
    def delta(self) -> float:
        return self.lhs_gap - self.rhs_gap


def heavy_tail_gap(Fx: GriddedDensity, Fp: GriddedDensity, p: float) -> TailGap:
    """Compare ``H(Fx) - I_{p/2}(Fx)`` with ``I_{q/2}(Fp) - H(Fp)``, ``q = p'``.

    ``improves`` is true when the first gap is at least the second, i.e. the
    Renyi entropy-power form of the uncertainty relation is sharper than the
    Shannon one for this pair.
    """
    p = float(p)
    if not p >= 2:
        raise DomainError(f"p must be >= 2, got {p}")
    q = conjugate(p).p_prime
    hx = _entropy_or_raise(Fx, 1.0, "position")
    ix = _entropy_or_raise(Fx, p / 2.0, "position")
    hp = _entropy_or_raise(Fp, 1.0, "momentum")
    ip = _entropy_or_raise(Fp, q / 2.0, "momentum")
    lhs, rhs = hx - ix, ip - hp
    return TailGap(lhs, rhs, lhs >= rhs - 1e-12)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def default_t_grid() -> list[float]:
    """Twenty orders spanning ``[-1/2, inf]``."""
    return [-0.5, *np.linspace(-0.4, -0.05, 8).tolist(), 0.0, *np.geomspace(0.05, 50.0, 9).tolist(), INF]


class SweepRow(NamedTuple):
    t: float
    r: float
    lhs_bits: float
    strong_bound_bits: float
    weak_bound_bits: float
    slack_bits: float


SWEEP_HEADER = SweepRow._fields


def sweep_continuous(Fx: GriddedDensity, Fp: GriddedDensity, ts=None, hbar: float = 1.0, executor=None) -> list[SweepRow]:
    ts = default_t_grid() if ts is None else list(ts)

    def row(t):
        rep = check_continuous_itur_densities(Fx, Fp, t, hbar)
        r = _partner(t)
        return SweepRow(t, r, rep.lhs, rep.bound, rep.weak_bound, rep.slack)

    return list(executor.map(row, ts)) if executor is not None else [row(t) for t in ts]


def rows_to_csv(header, rows, fmt=lambda v: f"{v:.9g}") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(float(v)) for v in row])
    return buf.getvalue()
