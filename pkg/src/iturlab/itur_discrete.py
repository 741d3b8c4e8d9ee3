"""Discrete entropic uncertainty relations and the two-level spin study.

For observables whose eigenbases are related by ``A`` with overlap
``c = max |a_ij|``, the Renyi relation reads
``I_{1+t}(P2) + I_{1+r}(P1) >= -2 log2 c`` for every ITUR pair ``(t, r)``;
``r = 0`` is the Shannon (Maassen-Kraus) case.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import NamedTuple

from scipy.optimize import brentq

from .core import BoundReport, DiscreteDistribution, itur_pair, validate_distribution
from .errors import DomainError
from .renyi import renyi_discrete

TABLE1_P = (0.5, 0.6, 0.7, 0.8, 0.9)
TABLE1_PHASE = math.pi / 6
BISECTION_TOL = 1e-9


class Interval(NamedTuple):
    lo: float
    hi: float

    def contains(self, other: "Interval", tol: float = 0.0) -> bool:
        return self.lo <= other.lo + tol and other.hi <= self.hi + tol

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class SpinScenario:
    """Two-level pure state: ``p = max P(S_x)`` and relative phase ``phase``."""

    p: float
    phase: float = 0.0

    def __post_init__(self):
        if not 0.5 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [1/2, 1], got {self.p}")
        object.__setattr__(self, "phase", float(self.phase) % (2 * math.pi))

    def distributions(self) -> tuple[DiscreteDistribution, DiscreteDistribution]:
        """``(P, Q)``: statistics in the ``S_x`` and ``S_z`` bases.

        The state has amplitudes ``(sqrt(p), sqrt(1-p) e^{i phase})`` in the
        ``S_x`` basis; the ``S_z`` amplitudes follow from the spin basis change.
        """
        a = math.sqrt(self.p)
        b = math.sqrt(1.0 - self.p) * complex(math.cos(self.phase), math.sin(self.phase))
        up = abs((a - b) / math.sqrt(2)) ** 2
        down = abs((a + b) / math.sqrt(2)) ** 2
        return validate_distribution([self.p, 1.0 - self.p]), validate_distribution([up, down])


def itur_bound(c: float) -> float:
    """``-2 log2 c`` (bits). ``c > 1`` is allowed with a warning."""
    c = float(c)
    if not c > 0 or math.isinf(c):
        raise DomainError(f"overlap constant must be positive, got {c}")
    if c > 1:
        warnings.warn(f"c = {c} > 1: the relation carries no uncertainty information", RuntimeWarning, stacklevel=2)
    return -2.0 * math.log2(c)


def check_renyi_itur(P1, P2, r: float, c: float, tolerance: float = 1e-9) -> BoundReport:
    """Evaluate ``I_{1+t}(P2) + I_{1+r}(P1)`` against ``-2 log2 c``."""
    pair = itur_pair(r)
    lhs = renyi_discrete(P2, 1.0 + pair.t) + renyi_discrete(P1, 1.0 + pair.r)
    return BoundReport.evaluate(lhs, itur_bound(c), tolerance)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.5 <= p <= 1.0:
        raise DomainError(f"p must lie in [1/2, 1], got {p}")
    return p


def _symmetric(half_width_sq: float) -> Interval:
    # {q : q(1-q) >= k} = [(1 - sqrt(1-4k))/2, (1 + sqrt(1-4k))/2]
    d = math.sqrt(max(0.0, 1.0 - 4.0 * half_width_sq))
    return Interval(0.5 * (1.0 - d), 0.5 * (1.0 + d))


def spin_feasible_q_renyi(p: float) -> Interval:
    """``q`` compatible with ``I_inf(P) + I_{1/2}(Q) >= 1``: ``sqrt(q(1-q)) + 1/2 >= p``."""
    p = _check_p(p)
    return _symmetric((p - 0.5) ** 2)


def _h2(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -(x * math.log2(x) + (1 - x) * math.log2(1 - x))


def spin_feasible_q_shannon(p: float) -> Interval:
    """``q`` compatible with ``H(P) + H(Q) >= 1``, by bisection on ``[0, 1/2]``."""
    p = _check_p(p)
    need = 1.0 - _h2(p)
    if need <= 0:
        return Interval(0.0, 1.0)
    if need >= 1:
        return Interval(0.5, 0.5)
    q = brentq(lambda x: _h2(x) - need, 0.0, 0.5, xtol=BISECTION_TOL * 1e-3)
    return Interval(q, 1.0 - q)


def spin_feasible_q_vur(p: float, phase: float) -> Interval:
    """``q`` allowed by the variance relation ``q(1-q) >= sin(phase)**2 / 4``.

    The interval does not depend on ``p``.
    """
    _check_p(p)
    return _symmetric(0.25 * math.sin(phase) ** 2)


def _round3(x: float, decimals: int) -> float:
    return float(Decimal(repr(x)).quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_EVEN))


class Table1Row(NamedTuple):
    p: float
    vur: Interval
    shannon: Interval
    renyi: Interval


def table1(decimals: int | None = 3) -> list[Table1Row]:
    """Feasible ``q`` intervals for ``p`` in 0.5..0.9 from the three relations.

    Columns: variance relation at phase ``pi/6``, Shannon relation, Renyi
    relation in the ``(inf, 1/2)`` pairing. Endpoints are rounded half-even to
    ``decimals`` places (``None`` keeps full precision).
    """
    rows = []
    for p in TABLE1_P:
        ivs = [spin_feasible_q_vur(p, TABLE1_PHASE), spin_feasible_q_shannon(p), spin_feasible_q_renyi(p)]
        if decimals is not None:
            ivs = [Interval(_round3(i.lo, decimals), _round3(i.hi, decimals)) for i in ivs]
        rows.append(Table1Row(p, *ivs))
    return rows


TABLE1_HEADER = ("p", "vur_lo", "vur_hi", "s_lo", "s_hi", "r_lo", "r_hi")


def table1_records(rows=None) -> list[dict]:
    rows = table1() if rows is None else rows
    return [
        dict(zip(TABLE1_HEADER, (r.p, r.vur.lo, r.vur.hi, r.shannon.lo, r.shannon.hi, r.renyi.lo, r.renyi.hi)))
        for r in rows
    ]


def table1_csv(rows=None, fmt=lambda v: f"{v:.9g}") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE1_HEADER)
    for rec in table1_records(rows):
        w.writerow([fmt(v) for v in rec.values()])
    return buf.getvalue()
