"""Domain types, validation and Hoelder/ITUR parameter algebra.

Conventions used throughout the package:

* Entropies are reported in bits unless a function says otherwise; entropy
  powers are computed from entropies in nats.
* Gridded data live on a uniform grid over ``[lo, hi]`` made of ``n`` cells of
  width ``l``; samples sit at the cell midpoints ``lo + (k + 1/2) l`` and every
  integral is the composite midpoint sum ``l * sum(f)``.  Continuous norms are
  therefore quadrature approximations of the integrals, for functions and
  sequences alike.
* Extended reals are carried as ``math.inf`` rather than raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, GridError, NegativeProbabilityError, NormalizationError

LN2 = math.log(2.0)
INF = math.inf

DISCRETE_TOL = 1e-12
GRID_TOL = 1e-8


def _readonly(a) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


# ---------------------------------------------------------------------------
# Hoelder conjugates and (t, r) pairs
# ---------------------------------------------------------------------------


def _recip(x: float) -> float:
    return 0.0 if math.isinf(x) else 1.0 / x


@dataclass(frozen=True)
class HoelderPair:
    """Exponents ``(p, pPrime)`` with ``1/p + 1/p' = 1`` (``1/inf = 0``)."""

    p: float
    p_prime: float

    def __post_init__(self):
        if not (self.p >= 1 and self.p_prime >= 1):
            raise DomainError(f"Hoelder exponents must be >= 1, got {self.p}, {self.p_prime}")
        if abs(_recip(self.p) + _recip(self.p_prime) - 1.0) > 1e-12:
            raise DomainError(f"{self.p} and {self.p_prime} are not Hoelder conjugates")

    @property
    def pPrime(self) -> float:
        return self.p_prime


def conjugate(p: float) -> HoelderPair:
    """Return the Hoelder pair ``(p, p/(p-1))`` with ``1 <-> inf`` at the ends.

    >>> conjugate(4 / 3).p_prime
    4.000000000000001
    """
    p = float(p)
    if math.isnan(p) or p < 1:
        raise DomainError(f"Hoelder exponent must satisfy p >= 1, got {p}")
    if p == 1.0:
        return HoelderPair(1.0, INF)
    if math.isinf(p):
        return HoelderPair(INF, 1.0)
    return HoelderPair(p, p / (p - 1.0))


def _t_of_r(r: float) -> float:
    if r == -0.5:
        return INF
    if math.isinf(r):
        return -0.5
    return -r / (2.0 * r + 1.0)


@dataclass(frozen=True)
class IturPair:
    """Orders ``(t, r)`` tied by ``t = -r/(2r+1)``, i.e. ``1/t + 1/r = -2``.

    The entropic relations pair the order ``1 + t`` on one side with ``1 + r``
    on the other. The map is an involution, so the roles of ``t`` and ``r`` can
    be swapped freely.
    """

    t: float
    r: float

    def __post_init__(self):
        for v in (self.t, self.r):
            if math.isnan(v) or v < -0.5:
                raise DomainError(f"ITUR orders must lie in [-1/2, inf], got t={self.t}, r={self.r}")
        expected = _t_of_r(self.r)
        if math.isinf(expected) or math.isinf(self.t):
            ok = expected == self.t
        else:
            ok = math.isclose(self.t, expected, rel_tol=1e-12, abs_tol=1e-12)
        if not ok:
            raise DomainError(f"t={self.t} does not match -r/(2r+1) for r={self.r}")


def itur_pair(r: float) -> IturPair:
    """Complete ``r`` to the pair ``(t, r)``; ``r = -1/2`` gives ``t = inf``."""
    r = float(r)
    if math.isnan(r) or r < -0.5:
        raise DomainError(f"r must satisfy r >= -1/2, got {r}")
    return IturPair(_t_of_r(r), r)


# ---------------------------------------------------------------------------
# Discrete distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """A finite probability vector.

    Construct through :func:`validate_distribution` when the input may carry
    round-off (tiny negative entries, sums off by ~1e-13).
    """

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if p.size < 1:
            raise DomainError("a distribution needs at least one outcome")
        if not np.all(np.isfinite(p)):
            raise DomainError("probabilities must be finite")
        if np.any(p < 0):
            raise NegativeProbabilityError(f"negative probability {p.min()!r}")
        s = math.fsum(p)
        if abs(s - 1.0) > DISCRETE_TOL:
            raise NormalizationError(f"probabilities sum to {s!r}, not 1")
        object.__setattr__(self, "probs", _readonly(p))

    @property
    def n(self) -> int:
        return int(self.probs.size)

    @property
    def sqrt_likelihood(self) -> np.ndarray:
        """The unit vector ``xi_i = sqrt(p_i)`` on the positive orthant."""
        return np.sqrt(self.probs)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"DiscreteDistribution({self.probs.tolist()!r})"


def validate_distribution(raw: Sequence[float]) -> DiscreteDistribution:
    """Validate ``raw`` as a probability vector.

    Entries in ``[-1e-14, 0)`` are clamped to zero; anything more negative is
    rejected. After clamping, a sum that drifts from one by at most ``1e-12``
    is renormalized, a larger drift raises :class:`NormalizationError`.
    """
    p = np.asarray(raw, dtype=float).ravel()
    if p.size < 1:
        raise DomainError("a distribution needs at least one outcome")
    if not np.all(np.isfinite(p)):
        raise DomainError("probabilities must be finite")
    if np.any(p < -1e-14):
        raise NegativeProbabilityError(f"negative probability {p.min()!r}")
    p = np.where(p < 0, 0.0, p)
    s = math.fsum(p)
    if abs(s - 1.0) > DISCRETE_TOL:
        raise NormalizationError(f"probabilities sum to {s!r}, not 1")
    return DiscreteDistribution(p / s)


# ---------------------------------------------------------------------------
# Gridded densities
# ---------------------------------------------------------------------------


class AnalyticComplement:
    """Exact contributions that the gridded midpoint sums miss.

    A density may carry pieces that are poorly represented on its grid: heavy
    tails beyond the grid edges, or integrable singularities near a cell.
    Each piece adds (or, for a patch replacing grid cells, corrects) the
    integrals below. All methods receive the owning density.
    """

    def mass(self, density: "GriddedDensity") -> float:
        return 0.0

    def power(self, density: "GriddedDensity", alpha: float) -> float:
        """Contribution to ``int F**alpha dx``; ``inf`` when it diverges."""
        return 0.0

    def entropy(self, density: "GriddedDensity") -> float:
        """Contribution to ``-int F ln F dx`` (nats)."""
        return 0.0

    def second_moment(self, density: "GriddedDensity", center: float) -> float:
        """Contribution to ``int (x - center)**2 F dx``; ``inf`` when it diverges."""
        return 0.0


class ExactPatch(AnalyticComplement):
    """Replace the midpoint sums over the grid cells inside ``[a, b]`` by
    adaptive quadrature of the exact density ``fn``.

    Meant for integrable singularities (for example a logarithmic one at a
    cell edge) that the midpoint rule resolves poorly. ``a`` and ``b`` must
    fall on cell edges. ``points`` are passed to the integrator as break
    points.
    """

    def __init__(self, fn, a: float, b: float, points=()):
        if not b > a:
            raise GridError("patch needs a < b")
        self.fn, self.a, self.b, self.points = fn, float(a), float(b), tuple(points)

    def _cells(self, density):
        x = density.x
        inside = (x > self.a) & (x < self.b)
        for edge in (self.a, self.b):
            k = (edge - density.lo) / density.l
            if abs(k - round(k)) > 1e-6:
                raise GridError(f"patch edge {edge} is not a cell edge")
        return inside

    def _exact(self, g) -> float:
        import warnings

        from scipy.integrate import IntegrationWarning, quad

        pts = sorted({self.a, *[p for p in self.points if self.a < p < self.b], self.b})
        # the requested accuracy sits at the round-off floor; quad warns spuriously
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            return math.fsum(
                quad(g, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13)[0] for lo, hi in zip(pts[:-1], pts[1:])
            )

    def _correction(self, density, g_exact, g_grid) -> float:
        inside = self._cells(density)
        return self._exact(g_exact) - density.l * math.fsum(g_grid(density.values[inside], density.x[inside]))

    def mass(self, density):
        return self._correction(density, self.fn, lambda v, x: v)

    def power(self, density, alpha):
        return self._correction(density, lambda x: self.fn(x) ** alpha, lambda v, x: v**alpha)

    def entropy(self, density):
        def h(x):
            f = self.fn(x)
            return -f * math.log(f) if f > 0 else 0.0

        def hg(v, x):
            out = np.zeros_like(v)
            pos = v > 0
            out[pos] = -v[pos] * np.log(v[pos])
            return out

        return self._correction(density, h, hg)

    def second_moment(self, density, center):
        return self._correction(density, lambda x: (x - center) ** 2 * self.fn(x), lambda v, x: (x - center) ** 2 * v)


def _check_grid(lo: float, hi: float, n: int) -> None:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise GridError("grid endpoints must be finite")
    if not hi > lo:
        raise GridError(f"empty grid [{lo}, {hi}]")
    if n < 1:
        raise GridError("a grid needs at least one cell")


@dataclass(frozen=True, eq=False)
class GriddedDensity:
    """A probability density sampled at the midpoints of a uniform grid.

    ``complements`` hold analytic corrections (see :class:`AnalyticComplement`)
    and ``peak`` an optional exact value of ``max F`` used by the order-infinity
    entropy; ``math.inf`` marks an integrable singularity.
    """

    lo: float
    hi: float
    values: np.ndarray
    complements: tuple = ()
    peak: float | None = None
    norm_tol: float = field(default=GRID_TOL, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        _check_grid(self.lo, self.hi, v.size)
        if not np.all(np.isfinite(v)):
            raise GridError("density samples must be finite")
        if np.any(v < 0):
            raise NegativeProbabilityError(f"negative density sample {v.min()!r}")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "values", _readonly(v))
        object.__setattr__(self, "complements", tuple(self.complements))
        total = self.mass()
        if abs(total - 1.0) > self.norm_tol:
            raise NormalizationError(f"density integrates to {total!r}, not 1")

    D = 1

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def l(self) -> float:
        return (self.hi - self.lo) / self.n

    @property
    def volume(self) -> float:
        return self.hi - self.lo

    @property
    def x(self) -> np.ndarray:
        return self.lo + (np.arange(self.n) + 0.5) * self.l

    def grid_mass(self) -> float:
        return self.l * math.fsum(self.values)

    def mass(self) -> float:
        return self.grid_mass() + sum(c.mass(self) for c in self.complements)

    def with_values(self, values, **kw) -> "GriddedDensity":
        """Same grid, new samples; complements and peak are dropped."""
        return GriddedDensity(self.lo, self.hi, values, **kw)

    @classmethod
    def from_function(cls, f, lo: float, hi: float, n: int, *, normalize: bool = False, **kw):
        """Sample ``f`` at the midpoints of ``n`` cells on ``[lo, hi]``."""
        _check_grid(lo, hi, n)
        l = (hi - lo) / n
        x = lo + (np.arange(n) + 0.5) * l
        v = np.asarray(f(x), dtype=float)
        if normalize:
            v = v / (l * math.fsum(v))
        return cls(lo, hi, v, **kw)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True, eq=False)
class GriddedWaveFunction:
    """Complex amplitudes on a uniform midpoint grid with unit L2 norm.

    The number of cells must be a power of two (the momentum representation
    is obtained by FFT). ``hbar`` fixes the Fourier kernel
    ``exp(-i p x / hbar) / sqrt(2 pi hbar)``.
    """

    lo: float
    hi: float
    amplitudes: np.ndarray
    hbar: float = 1.0
    norm_tol: float = field(default=GRID_TOL, repr=False)

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).ravel()
        _check_grid(self.lo, self.hi, a.size)
        if not _is_power_of_two(a.size):
            raise GridError(f"wave function grids need 2**k cells, got {a.size}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not np.all(np.isfinite(a)):
            raise GridError("amplitudes must be finite")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "hbar", float(self.hbar))
        object.__setattr__(self, "amplitudes", _readonly(a))
        norm2 = self.norm2()
        if abs(norm2 - 1.0) > self.norm_tol:
            raise NormalizationError(f"wave function has squared norm {norm2!r}, not 1")

    @property
    def n(self) -> int:
        return int(self.amplitudes.size)

    @property
    def l(self) -> float:
        return (self.hi - self.lo) / self.n

    @property
    def x(self) -> np.ndarray:
        return self.lo + (np.arange(self.n) + 0.5) * self.l

    def norm2(self) -> float:
        return self.l * math.fsum(np.abs(self.amplitudes) ** 2)

    def density(self) -> GriddedDensity:
        return GriddedDensity(self.lo, self.hi, np.abs(self.amplitudes) ** 2, norm_tol=max(self.norm_tol, GRID_TOL))

    @classmethod
    def from_function(cls, f, lo: float, hi: float, n: int, hbar: float = 1.0, *, normalize: bool = True, **kw):
        _check_grid(lo, hi, n)
        l = (hi - lo) / n
        x = lo + (np.arange(n) + 0.5) * l
        a = np.asarray(f(x), dtype=complex)
        if normalize:
            a = a / math.sqrt(l * math.fsum(np.abs(a) ** 2))
        return cls(lo, hi, a, hbar, **kw)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking ``lhs >= bound`` (both in bits)."""

    lhs: float
    bound: float
    slack: float
    saturated: bool
    tolerance: float = 1e-6

    @classmethod
    def evaluate(cls, lhs: float, bound: float, tolerance: float = 1e-6, **extra):
        lhs, bound = float(lhs), float(bound)
        slack = lhs - bound if not (math.isinf(lhs) and lhs == bound) else 0.0
        return cls(lhs=lhs, bound=bound, slack=slack, saturated=abs(slack) <= tolerance, tolerance=tolerance, **extra)

    @property
    def holds(self) -> bool:
        return self.slack >= -self.tolerance

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["holds"] = self.holds
        return d


# ---------------------------------------------------------------------------
# Gaussian building blocks
# ---------------------------------------------------------------------------


def gaussian_density(sigma: float = 1.0, mean: float = 0.0, n: int = 2**14, half_width: float | None = None) -> GriddedDensity:
    """Normal density ``N(mean, sigma**2)`` on ``mean +- half_width`` (10 sigma by default)."""
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    hw = 10.0 * sigma if half_width is None else half_width
    return GriddedDensity.from_function(
        lambda x: np.exp(-0.5 * ((x - mean) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi)),
        mean - hw,
        mean + hw,
        n,
    )


def balanced_half_width(sigma_x: float, n: int) -> float:
    """Half-width giving a Gaussian of position spread ``sigma_x`` equal
    coverage (in units of its spread) on the position and momentum grids."""
    return sigma_x * math.sqrt(math.pi * n)


def gaussian_wavefunction(
    sigma_x: float | None = None,
    hbar: float = 1.0,
    n: int = 2**14,
    x0: float = 0.0,
    p0: float = 0.0,
    half_width: float | None = None,
    center: float | None = None,
) -> GriddedWaveFunction:
    """Gaussian wave packet whose ``|psi|**2`` has standard deviation ``sigma_x``.

    The default ``sigma_x = sqrt(hbar/2)`` is the minimum-uncertainty state
    with equal spreads in position and momentum.
    """
    if sigma_x is None:
        sigma_x = math.sqrt(hbar / 2.0)
    if not sigma_x > 0:
        raise DomainError("sigma_x must be positive")
    hw = balanced_half_width(sigma_x, n) if half_width is None else half_width
    c = x0 if center is None else center

    def amp(x):
        return (2 * math.pi * sigma_x**2) ** -0.25 * np.exp(-((x - x0) ** 2) / (4 * sigma_x**2) + 1j * p0 * x / hbar)

    return GriddedWaveFunction.from_function(amp, c - hw, c + hw, n, hbar)
