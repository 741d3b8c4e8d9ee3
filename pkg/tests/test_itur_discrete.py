import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from iturlab.errors import DomainError
from iturlab.itur_discrete import (
    TABLE1_HEADER,
    Interval,
    SpinScenario,
    check_renyi_itur,
    itur_bound,
    spin_feasible_q_renyi,
    spin_feasible_q_shannon,
    spin_feasible_q_vur,
    table1,
    table1_csv,
    table1_records,
)
from iturlab.matgeo import dft_matrix, overlap_bound_c
from iturlab.renyi import renyi_discrete, shannon_discrete


def test_bound_values():
    assert itur_bound(1.0) == 0.0
    assert itur_bound(0.5) == 2.0
    with pytest.warns(RuntimeWarning):
        assert itur_bound(2.0) == -2.0
    with pytest.raises(DomainError):
        itur_bound(0.0)


def test_random_unitaries_satisfy_relation():
    rng = np.random.default_rng(7)
    for k in range(300):
        n = int(rng.integers(2, 6))
        U = unitary_group.rvs(n, random_state=k)
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi /= np.linalg.norm(psi)
        P1, P2 = np.abs(psi) ** 2, np.abs(U @ psi) ** 2
        r = float(rng.uniform(-0.49, 5.0))
        rep = check_renyi_itur(P1, P2, r, overlap_bound_c(U))
        assert rep.holds, (n, r, rep)


def test_dft_basis_state_saturates():
    n = 4
    P1 = np.eye(n)[0]
    P2 = np.abs(dft_matrix(n).entries @ P1) ** 2
    for r in (0.0, 1.0, -0.5, math.inf):
        rep = check_renyi_itur(P1, P2, r, 1 / math.sqrt(n))
        assert rep.saturated


def test_marginal_pair_violates_renyi_but_not_shannon():
    P, Q = [0.8, 0.2], [0.951, 0.049]
    c = 1 / math.sqrt(2)
    assert check_renyi_itur(P, Q, 0.0, c).holds
    for r in (-0.5, math.inf):
        assert not check_renyi_itur(P, Q, r, c).holds


def test_shannon_interval_endpoints_on_boundary():
    for p in (0.6, 0.75, 0.9, 0.99):
        iv = spin_feasible_q_shannon(p)
        assert shannon_discrete([p, 1 - p]) + shannon_discrete([iv.lo, 1 - iv.lo]) == pytest.approx(1.0, abs=1e-9)
        assert iv.lo + iv.hi == pytest.approx(1.0)


def test_renyi_interval_endpoints_on_boundary():
    for p in (0.6, 0.75, 0.9):
        iv = spin_feasible_q_renyi(p)
        s = renyi_discrete([p, 1 - p], math.inf) + renyi_discrete([iv.lo, 1 - iv.lo], 0.5)
        assert s == pytest.approx(1.0, abs=1e-12)


def test_renyi_tighter_than_shannon():
    for p in (0.6, 0.7, 0.8, 0.9):
        assert spin_feasible_q_shannon(p).contains(spin_feasible_q_renyi(p))
    assert spin_feasible_q_renyi(0.5) == Interval(0.0, 1.0)
    assert spin_feasible_q_shannon(1.0) == Interval(0.5, 0.5)


def test_states_lie_in_feasible_sets():
    rng = np.random.default_rng(4)
    for _ in range(500):
        s = SpinScenario(float(rng.uniform(0.5, 1.0)), float(rng.uniform(0, 2 * math.pi)))
        P, Q = s.distributions()
        q = Q.probs[0]
        assert spin_feasible_q_shannon(s.p).contains(Interval(q, q), tol=1e-9)
        assert spin_feasible_q_renyi(s.p).contains(Interval(q, q), tol=1e-9)


def test_vur_phase_only():
    a, b = spin_feasible_q_vur(0.6, math.pi / 6), spin_feasible_q_vur(0.9, math.pi / 6)
    assert a == b
    assert a.lo == pytest.approx((1 - math.sqrt(3) / 2) / 2)
    assert spin_feasible_q_vur(0.7, 0.0) == Interval(0.0, 1.0)


def test_scenario_rejects():
    with pytest.raises(DomainError):
        SpinScenario(0.3)
    with pytest.raises(DomainError):
        spin_feasible_q_renyi(1.2)


def test_table_rounding():
    rows = table1()
    assert [r.p for r in rows] == [0.5, 0.6, 0.7, 0.8, 0.9]
    assert rows[3].renyi == Interval(0.1, 0.9)
    assert rows[1].shannon == Interval(0.003, 0.997)
    assert all(r.vur == Interval(0.067, 0.933) for r in rows)


def test_table_csv():
    text = table1_csv()
    lines = text.strip().splitlines()
    assert lines[0] == ",".join(TABLE1_HEADER)
    assert len(lines) == 6
    assert table1_records()[0]["p"] == 0.5
