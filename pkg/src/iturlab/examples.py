"""Closed-form quantum case studies.

* Cauchy-Lorentz position density ``(c/pi) / (c^2 + (x-m)^2)`` whose
  square-root wave function has momentum density
  ``(2c / (pi^2 hbar)) K0(c|p|/hbar)^2``.
* The Levy-Smirnov wave function supported on ``x > m``.
* Even and odd Schroedinger cat states and their two homodyne quadratures.

Naming follows the observable: ``pos``/``x0`` for position-like and
``mom``/``xq`` for momentum-like densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.special import betainc, beta as beta_fn, erf, sici

from .core import AnalyticComplement, ExactPatch, GriddedDensity, GriddedWaveFunction, LN2
from .errors import DomainError, SupportError, TailMassError
from .itur_continuous import rows_to_csv
from .renyi import renyi_differential
from .special import bessel_k0

PI = math.pi
# int_0^inf K0(y)^2 dy
K0_SQUARED_INTEGRAL = PI**2 / 4
# Four-digit value of int K0^2 log2 K0 used in the closed-form momentum Shannon entropy.
K0_LOG_CONSTANT = 2.8945


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CauchyParams:
    c: float = 1.0
    m: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"Cauchy scale must be positive, got {self.c}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive, got {self.hbar}")


@dataclass(frozen=True)
class CatParams:
    """Cat state ``N (|beta> + sign |-beta>)`` with real amplitude ``beta``."""

    beta: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if not math.isfinite(self.beta):
            raise DomainError("beta must be finite")
        if self.sign == -1 and self.beta == 0:
            raise DomainError("the odd cat state does not exist at beta = 0")

    @property
    def norm(self) -> float:
        return 1.0 / math.sqrt(2.0 * (1.0 + self.sign * math.exp(-2.0 * self.beta**2)))


@dataclass(frozen=True)
class RegulatorWindow:
    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise DomainError(f"regulator radius must be positive, got {self.R}")


# ---------------------------------------------------------------------------
# Cauchy-Lorentz pair
# ---------------------------------------------------------------------------


class CauchyTail(AnalyticComplement):
    """Exact contributions of a Cauchy density beyond ``|x - m| > X``."""

    def __init__(self, c: float, m: float, X: float):
        self.c, self.m, self.X = c, m, X
        self.eps = math.atan(c / X)

    def mass(self, density):
        return 2.0 / PI * self.eps

    def power(self, density, alpha):
        if alpha <= 0.5:
            return math.inf
        if alpha == 1:
            return self.mass(density)
        a = alpha - 0.5
        return (PI * self.c) ** -alpha * self.c * beta_fn(a, 0.5) * betainc(a, 0.5, math.sin(self.eps) ** 2)

    def entropy(self, density):
        e = self.eps
        # int_0^e ln sin u du = e ln e - e + int_0^e ln(sin u / u) du
        smooth = quad(lambda u: math.log(math.sin(u) / u) if u > 0 else 0.0, 0.0, e, epsabs=1e-16)[0]
        log_sin = e * math.log(e) - e + smooth
        return 2.0 / PI * (e * math.log(PI * self.c) - 2.0 * log_sin)

    def second_moment(self, density, center):
        return math.inf


def cauchy_position_pdf(x, params: CauchyParams):
    c = params.c
    return (c / PI) / (c * c + (np.asarray(x) - params.m) ** 2)


def cauchy_momentum_pdf(p, params: CauchyParams):
    c, h = params.c, params.hbar
    return (2 * c / (PI**2 * h)) * bessel_k0(c * np.abs(p) / h) ** 2


def cauchy_pdfs(
    params: CauchyParams = CauchyParams(),
    n: int = 2**15,
    half_width: float | None = None,
    momentum_half_width: float | None = None,
    analytic_tail: bool = True,
) -> tuple[GriddedDensity, GriddedDensity]:
    """Gridded position and momentum densities of the Cauchy pair.

    The position grid spans ``m +- half_width`` (``256 c`` by default); with
    ``analytic_tail`` the tail beyond the grid enters every integral exactly,
    so entropies do not depend on the grid width. Without it the grid itself
    must hold all but ``1e-6`` of the mass, which takes ``half_width`` of
    order ``6e5 c``; otherwise :class:`TailMassError` is raised.

    The momentum grid spans ``+- 32 hbar / c`` by default. Zero sits on a cell
    edge, and the cells within ``2 hbar / c`` of it are integrated adaptively
    to capture the logarithmic singularity of ``K0``.
    """
    c, m, h = params.c, params.m, params.hbar
    X = 256.0 * c if half_width is None else float(half_width)
    tail_mass = 2.0 / PI * math.atan(c / X)
    if analytic_tail:
        comps = (CauchyTail(c, m, X),)
        Fpos = GriddedDensity.from_function(
            lambda x: cauchy_position_pdf(x, params), m - X, m + X, n, complements=comps, peak=1.0 / (PI * c)
        )
    else:
        if tail_mass > 1e-6:
            raise TailMassError(f"grid misses {tail_mass:.3g} of the Cauchy mass; widen it or use analytic_tail")
        Fpos = GriddedDensity.from_function(
            lambda x: cauchy_position_pdf(x, params), m - X, m + X, n, peak=1.0 / (PI * c), norm_tol=2e-6
        )

    P = 32.0 * h / c if momentum_half_width is None else float(momentum_half_width)
    lp = 2 * P / n
    a = min(P, lp * math.ceil((2.0 * h / c) / lp))
    patch = ExactPatch(lambda p: float(cauchy_momentum_pdf(p, params)), -a, a, points=(0.0,))
    Fmom = GriddedDensity.from_function(
        lambda p: cauchy_momentum_pdf(p, params), -P, P, n, complements=(patch,), peak=math.inf
    )
    return Fpos, Fmom


def cauchy_wavefunction(params: CauchyParams = CauchyParams(), n: int = 2**15, half_width: float | None = None):
    """``psi = sqrt(F_pos)`` on ``m +- half_width``, not renormalized.

    Returns ``(psi, tail)`` where ``tail(p)`` is the momentum amplitude of the
    off-grid part, to be passed to :func:`fourier_dual` as ``tail_amplitude``.
    The grid norm falls short of one by the tail mass, so the wave function is
    built with a matching ``norm_tol``.
    """
    c, m, h = params.c, params.m, params.hbar
    X = 256.0 * c if half_width is None else float(half_width)
    missing = 2.0 / PI * math.atan(c / X)
    psi = GriddedWaveFunction.from_function(
        lambda x: np.sqrt(cauchy_position_pdf(x, params)),
        m - X,
        m + X,
        n,
        h,
        normalize=False,
        norm_tol=1.01 * missing + 1e-8,
    )

    def tail(p):
        # 2 sqrt(c/pi) / sqrt(2 pi hbar) int_X^inf cos(k x) (c^2 + x^2)^(-1/2) dx, two terms
        k = np.abs(np.asarray(p, dtype=float)) / h
        z = k * X
        _, ci = sici(z)
        i0 = -ci
        i1 = np.cos(z) / (2 * X**2) - k * np.sin(z) / (2 * X) + 0.5 * k**2 * ci
        return np.exp(-1j * np.asarray(p) * m / h) * (2 * math.sqrt(c / PI) / math.sqrt(2 * PI * h)) * (i0 - 0.5 * c**2 * i1)

    return psi, tail


def k0_log_moment(unit: str = "bits") -> float:
    """``int_0^inf K0(y)^2 log K0(y) dy`` by adaptive quadrature."""

    def f(y):
        k = bessel_k0(y)
        return 0.0 if k == 0 or y > 700 else k * k * math.log(k)

    pts = [0.0, 1e-8, 1e-4, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0]
    val = math.fsum(quad(f, a, b, limit=400, epsabs=1e-15, epsrel=1e-13)[0] for a, b in zip(pts[:-1], pts[1:]))
    return val / LN2 if unit == "bits" else val


class CauchyEntropies(NamedTuple):
    Hpos: float
    Hmom: float
    Ihalf_mom: float
    Iinf_pos: float

    @property
    def shannon_sum(self) -> float:
        return self.Hpos + self.Hmom

    @property
    def renyi_sum(self) -> float:
        return self.Ihalf_mom + self.Iinf_pos


def cauchy_closed_entropies(params: CauchyParams = CauchyParams(), constant: float = K0_LOG_CONSTANT) -> CauchyEntropies:
    """Closed-form entropies (bits) of the Cauchy pair.

    ``constant`` is ``int K0^2 log2 K0``; the default is the four-digit value
    ``2.8945``, pass :func:`k0_log_moment` for full precision.
    """
    c, h = params.c, params.hbar
    return CauchyEntropies(
        Hpos=math.log2(4 * PI * c),
        Hmom=math.log2(PI**2 * h / (2 * c)) - 8 / PI**2 * constant,
        Ihalf_mom=math.log2(2 * h / c),
        Iinf_pos=math.log2(PI * c),
    )


def cauchy_power_integral(alpha: float, params: CauchyParams = CauchyParams()) -> float:
    """``int F_pos**alpha dx = (pi c)^(1-alpha) Gamma(alpha - 1/2) / (sqrt(pi) Gamma(alpha))``, ``alpha > 1/2``."""
    if not alpha > 0.5:
        return math.inf
    c = params.c
    return (PI * c) ** (1 - alpha) * math.exp(math.lgamma(alpha - 0.5) - math.lgamma(alpha)) / math.sqrt(PI)


def cauchy_entropy_power_product(params: CauchyParams = CauchyParams()) -> float:
    """``N_inf(F_pos) N_{1/2}(F_mom)`` from the closed forms: ``hbar**2 / 4``."""
    from .renyi import renyi_entropy_power

    e = cauchy_closed_entropies(params)
    return renyi_entropy_power(e.Iinf_pos, math.inf, unit="bits") * renyi_entropy_power(e.Ihalf_mom, 0.5, unit="bits")


class CauchyRegulated(NamedTuple):
    R: float
    ihalf_pos: float
    iinf_mom: float

    @property
    def sum(self) -> float:
        return self.ihalf_pos + self.iinf_mom


def cauchy_regulated(params: CauchyParams, window: RegulatorWindow) -> CauchyRegulated:
    """Regulated ``I_{1/2}(F_pos)`` and ``I_inf(F_mom)`` (bits) at cutoff ``R``.

    ``I_{1/2}(F_pos) = 2 log2(sqrt(c/pi) ln(4 R^2 / c^2))`` grows without bound
    and ``I_inf(F_mom) = -log2((2c / (hbar pi^2)) K0(c/R)^2)`` falls without
    bound as ``R`` grows.
    """
    c, h, R = params.c, params.hbar, window.R
    if not R > c:
        raise DomainError(f"the regulator needs R > c, got R = {R}, c = {c}")
    ihalf = 2 * math.log2(math.sqrt(c / PI) * math.log(4 * R * R / (c * c)))
    iinf = -math.log2(2 * c / (h * PI**2) * bessel_k0(c / R) ** 2)
    return CauchyRegulated(R, ihalf, iinf)


REGULATED_HEADER = ("R", "ihalf_pos", "iinf_mom", "sum")


def regulated_table(params: CauchyParams = CauchyParams(), ratios=None) -> list[tuple]:
    ratios = np.geomspace(1e2, 1e8, 13) if ratios is None else ratios
    out = []
    for q in ratios:
        row = cauchy_regulated(params, RegulatorWindow(float(q) * params.c))
        out.append((row.R, row.ihalf_pos, row.iinf_mom, row.sum))
    return out


def regulated_csv(params: CauchyParams = CauchyParams(), ratios=None) -> str:
    return rows_to_csv(REGULATED_HEADER, regulated_table(params, ratios))


# ---------------------------------------------------------------------------
# Levy-Smirnov
# ---------------------------------------------------------------------------


def levy_smirnov_pdf(x, c: float, m: float = 0.0):
    y = np.asarray(x, dtype=float) - m
    out = np.zeros_like(y)
    pos = y > 0
    out[pos] = np.sqrt(c / (2 * PI)) * np.exp(-c / (2 * y[pos])) / y[pos] ** 1.5
    return out


def levy_smirnov_tail_mass(c: float, width: float) -> float:
    """Probability beyond ``m + width``: ``erf(sqrt(c / (2 width)))``."""
    return float(erf(math.sqrt(c / (2.0 * width))))


def levy_smirnov_wavefunction(
    c: float = 1.0,
    m: float = 0.0,
    p0: float = 0.0,
    hbar: float = 1.0,
    n: int = 2**17,
    lo: float | None = None,
    hi: float | None = None,
) -> GriddedWaveFunction:
    """``(c/2pi)^(1/4) exp(-c / (4 (x-m)) + i p0 x / hbar) / (x-m)^(3/4)``, normalized on the grid.

    The grid defaults to ``[m, m + 2000 c]``; it must not reach below ``m``.
    """
    if not c > 0:
        raise DomainError("c must be positive")
    lo = m if lo is None else float(lo)
    hi = m + 2000.0 * c if hi is None else float(hi)
    if lo < m:
        raise SupportError(f"the wave function lives on x > {m}; grid starts at {lo}")

    def amp(x):
        return np.sqrt(levy_smirnov_pdf(x, c, m)) * np.exp(1j * p0 * x / hbar)

    return GriddedWaveFunction.from_function(amp, lo, hi, n, hbar)


# ---------------------------------------------------------------------------
# Cat states
# ---------------------------------------------------------------------------


def cat_grid_half_width(beta: float) -> float:
    return max(6.0, abs(beta) * math.sqrt(2.0) + 6.0)


def cat_amplitudes(x, params: CatParams):
    """Real quadrature amplitudes ``(psi_x0, psi_xq)`` at ``x`` (hbar = 1 kernel)."""
    x = np.asarray(x, dtype=float)
    b, s, N = params.beta, params.sign, params.norm
    k = math.sqrt(2.0) * b
    pref = 2 * N * PI**-0.25
    if s == 1:
        # cosh(kx) exp(-x^2/2 - b^2) written to avoid overflow
        x0 = pref * 0.5 * (np.exp(-0.5 * (x - k) ** 2) + np.exp(-0.5 * (x + k) ** 2))
        xq = pref * np.cos(k * x) * np.exp(-0.5 * x * x)
    else:
        x0 = pref * 0.5 * (np.exp(-0.5 * (x - k) ** 2) - np.exp(-0.5 * (x + k) ** 2))
        xq = pref * np.sin(k * x) * np.exp(-0.5 * x * x)
    return x0, xq


def cat_pdfs(params: CatParams, n: int = 2**13) -> tuple[GriddedDensity, GriddedDensity]:
    """Homodyne densities ``F_x0 = psi_x0**2`` and ``F_xq = psi_xq**2``.

    Both live on ``+- max(6, sqrt(2) beta + 6)`` and are renormalized on the
    grid. The peak of the even ``F_xq`` is registered exactly (it sits at 0).
    """
    X = cat_grid_half_width(params.beta)
    l = 2 * X / n
    x = -X + (np.arange(n) + 0.5) * l
    a0, aq = cat_amplitudes(x, params)
    f0, fq = a0**2, aq**2
    f0 = f0 / (l * math.fsum(f0))
    fq_mass = l * math.fsum(fq)
    fq = fq / fq_mass
    peak_q = (2 * params.norm) ** 2 / math.sqrt(PI) / fq_mass if params.sign == 1 else None
    return GriddedDensity(-X, X, f0), GriddedDensity(-X, X, fq, peak=peak_q)


class CatVariances(NamedTuple):
    var_x0: float
    var_xq: float


def cat_variances(params: CatParams, convention: str = "wavefunction") -> CatVariances:
    """Closed-form quadrature variances.

    ``convention="wavefunction"`` matches the densities of :func:`cat_pdfs`
    (vacuum variance 1/2). ``"commutator"`` rescales to quadratures
    ``X = (b + b^dagger)/2`` with ``[X0, Xq] = i/2`` (vacuum variance 1/4).
    """
    b, s = params.beta, params.sign
    N2 = params.norm**2
    e = math.exp(-2 * b * b)
    v0 = N2 * (1 + 4 * b * b + s * e)
    vq = N2 * (1 + s * e * (1 - 4 * b * b))
    if convention == "wavefunction":
        return CatVariances(v0, vq)
    if convention == "commutator":
        return CatVariances(0.5 * v0, 0.5 * vq)
    raise DomainError(f"unknown convention {convention!r}")


class CatCurveRow(NamedTuple):
    beta: float
    shannon_sum: float
    shannon_bound: float
    renyi_iii: float
    renyi_iv: float
    renyi_bound: float


CAT_HEADER = CatCurveRow._fields


def cat_row(beta: float, n: int = 2**13) -> CatCurveRow:
    F0, Fq = cat_pdfs(CatParams(abs(beta)), n)
    h = renyi_differential(F0, 1.0) + renyi_differential(Fq, 1.0)
    iii = renyi_differential(Fq, 0.5) + renyi_differential(F0, math.inf)
    iv = renyi_differential(F0, 0.5) + renyi_differential(Fq, math.inf)
    return CatCurveRow(float(beta), h, math.log2(math.e * PI), iii, iv, math.log2(2 * PI))


def default_beta_grid() -> list[float]:
    return np.linspace(0.0, 4.0, 40).tolist()


def cat_itur_curves(beta_grid=None, n: int = 2**13, executor=None) -> list[CatCurveRow]:
    """Entropic uncertainty curves of the even cat state versus ``beta``.

    Columns: (i) ``H(F_x0) + H(F_xq)``; (ii) ``log2(e pi)``;
    (iii) ``I_{1/2}(F_xq) + I_inf(F_x0)``; (iv) ``I_{1/2}(F_x0) + I_inf(F_xq)``;
    (v) ``log2(2 pi)``. Curve (iv) equals (v) identically.
    """
    betas = default_beta_grid() if beta_grid is None else list(beta_grid)
    if any(not math.isfinite(b) for b in betas):
        raise DomainError("beta values must be finite")
    if executor is not None:
        return list(executor.map(lambda b: cat_row(b, n), betas))
    return [cat_row(b, n) for b in betas]


def cat_csv(rows) -> str:
    return rows_to_csv(CAT_HEADER, rows)
