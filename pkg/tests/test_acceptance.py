"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line that the terminal summary prints.
"""

import math
import time

import numpy as np
import pytest

from iturlab import (
    CauchyParams,
    RegulatorWindow,
    cauchy_closed_entropies,
    cauchy_pdfs,
    cauchy_regulated,
    check_continuous_itur,
    check_generalized_epi,
    condition_number,
    distance_to_singularity,
    gaussian_density,
    gaussian_wavefunction,
    itur_bound,
    mixed_norm,
    optimal_lambda,
    overlap_bound_c,
    renyi_differential,
    renyi_discrete,
    renyi_entropy_power,
    table1,
)
from iturlab.examples import cat_row, cauchy_entropy_power_product, k0_log_moment
from iturlab.itur_continuous import entropy_power_product_from_entropies
from iturlab.matgeo import SPIN_BASIS_CHANGE, supported_pair

from oracles import mixture_density, random_mixture, singular_perturbation

TWO_PI = 2 * math.pi

# Reference intervals, three decimals: p -> (VUR, S-ITUR, R-ITUR).
TABLE1_REFERENCE = {
    0.5: ((0.067, 0.933), (0.0, 1.0), (0.0, 1.0)),
    0.6: ((0.067, 0.933), (0.003, 0.997), (0.010, 0.990)),
    0.7: ((0.067, 0.933), (0.017, 0.983), (0.042, 0.958)),
    0.8: ((0.067, 0.933), (0.049, 0.951), (0.1, 0.9)),
    0.9: ((0.067, 0.933), (0.121, 0.879), (0.2, 0.8)),
}


def test_c01_table1(acceptance):
    t0 = time.perf_counter()
    rows = table1(decimals=None)
    elapsed = time.perf_counter() - t0
    worst = 0.0
    for row in rows:
        for got, want in zip((row.vur, row.shannon, row.renyi), TABLE1_REFERENCE[row.p]):
            worst = max(worst, abs(got.lo - want[0]), abs(got.hi - want[1]))
    ok = worst <= 1e-3 and elapsed < 1.0 and len(rows) == 5
    acceptance("C1 Table I endpoints within 1e-3, < 1 s", ok, f"max dev {worst:.2e}, {elapsed:.3f} s")
    assert ok


def test_c02_two_level_bound(acceptance):
    c = overlap_bound_c(SPIN_BASIS_CHANGE)
    b = itur_bound(c)
    # 1/sqrt(2) has no exact binary form; "exactly" is taken as a couple of ulp.
    ok = c == 1 / math.sqrt(2) and abs(b - 1.0) <= 4 * np.spacing(1.0)
    acceptance("C2 c = 1/sqrt2 and ITUR bound = 1 bit", ok, f"c = {c!r}, bound = {b!r}")
    assert ok


def test_c03_gaussian_hirschman(acceptance):
    t0 = time.perf_counter()
    psi = gaussian_wavefunction(n=2**14)
    slacks = [check_continuous_itur(psi, t).slack for t in (0.0, 1e-4)]
    elapsed = time.perf_counter() - t0
    ok = all(abs(s) <= 1e-4 for s in slacks) and elapsed < 1.0
    acceptance("C3 Gaussian Hirschman slack <= 1e-4, < 1 s", ok, f"slacks {slacks[0]:.1e} {slacks[1]:.1e}, {elapsed:.3f} s")
    assert ok


@pytest.mark.parametrize("c,hbar", [(1.0, 1.0), (2.5, 1.0), (1.0, 0.5)])
def test_c04_cauchy_renyi_saturation(acceptance, c, hbar):
    params = CauchyParams(c=c, hbar=hbar)
    target = math.log2(TWO_PI * hbar)
    closed = cauchy_closed_entropies(params)
    Fx, Fp = cauchy_pdfs(params)
    quad = renyi_differential(Fp, 0.5) + renyi_differential(Fx, math.inf)
    prod_closed = cauchy_entropy_power_product(params)
    ix, ip = renyi_differential(Fx, math.inf, "nats"), renyi_differential(Fp, 0.5, "nats")
    prod_quad = entropy_power_product_from_entropies(ix, ip, math.inf)
    floor = hbar**2 / 4
    dev = [abs(closed.renyi_sum - target), abs(quad - target), abs(prod_closed / floor - 1), abs(prod_quad / floor - 1)]
    ok = dev[0] <= 1e-12 and dev[1] <= 1e-3 and dev[2] <= 1e-6 and dev[3] <= 1e-6
    acceptance(
        f"C4 Cauchy Renyi saturation (c={c}, hbar={hbar})",
        ok,
        "closed {:.1e}, quad {:.1e}, product {:.1e}/{:.1e}".format(*dev),
    )
    assert ok


@pytest.mark.parametrize("c", [1.0, 2.5])
def test_c05_cauchy_shannon(acceptance, c):
    params = CauchyParams(c=c)
    target = math.log2(2 * math.pi**3) - 8 / math.pi**2 * 2.8945
    Fx, Fp = cauchy_pdfs(params)
    total = renyi_differential(Fx, 1.0) + renyi_differential(Fp, 1.0)
    const = k0_log_moment()
    excess = total - math.log2(math.e * math.pi)
    ok = abs(total - target) <= 5e-3 and abs(const - 2.8945) <= 5e-4 and excess > 0
    acceptance(
        f"C5 Cauchy Shannon sum (c={c})",
        ok,
        f"sum dev {total - target:.1e}, constant {const:.6f}, excess {excess:.4f}",
    )
    assert ok


def test_c06a_regulated_value(acceptance):
    # The regulated expressions approach log2(2 pi hbar) only like 1/ln R;
    # at R/c = 1e6 the gap is about 0.12 bit. See the decisions ledger.
    params = CauchyParams()
    s = cauchy_regulated(params, RegulatorWindow(1e6 * params.c)).sum
    gap = s - math.log2(TWO_PI)
    ok = abs(gap) <= 1e-2
    acceptance("C6a regulated sum within 1e-2 of log2(2 pi) at R/c = 1e6", ok, f"gap {gap:.4f}")
    assert ok


def test_c06b_regulated_monotone(acceptance):
    params = CauchyParams()
    ratios = np.geomspace(1e2, 1e8, 61)
    sums = np.array([cauchy_regulated(params, RegulatorWindow(q * params.c)).sum for q in ratios])
    gaps = sums - math.log2(TWO_PI)
    ok = bool(np.all(np.diff(sums) < 0) and np.all(gaps > 0))
    acceptance("C6b regulated sum monotone over R/c in [1e2, 1e8]", ok, f"gap {gaps[0]:.3f} -> {gaps[-1]:.3f}")
    assert ok


def test_c07_cat_curves(acceptance):
    betas = np.linspace(0.0, 3.0, 20)
    rows = [cat_row(b) for b in betas]
    iv_dev = max(abs(r.renyi_iv - math.log2(TWO_PI)) for r in rows)
    i0_dev = abs(rows[0].shannon_sum - math.log2(math.e * math.pi))
    r3, r4 = cat_row(3.0), cat_row(4.0)
    plateau = max(abs(a - b) for a, b in zip(r3[1:], r4[1:]))
    ok = iv_dev <= 2e-2 and i0_dev <= 1e-3 and plateau < 2e-2
    acceptance("C7 cat-state curves", ok, f"(iv) dev {iv_dev:.1e}, (i) at 0 dev {i0_dev:.1e}, plateau {plateau:.1e}")
    assert ok


def test_c08_generalized_epi(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    grid = dict(lo=-15.0, hi=15.0, n=2048)
    violations, worst = 0, math.inf
    for _ in range(100):
        F1, F2 = random_mixture(rng, **grid), random_mixture(rng, **grid)
        for r in (1.5, 2.0, 3.0):
            for lam in (0.25, 0.5, 0.75):
                rep = check_generalized_epi(F1, F2, lam, r)
                violations += not rep.holds
                worst = min(worst, rep.lhs_power / rep.rhs_power - 1)
    eq_dev = 0.0
    for s1, s2 in [(1.0, 1.0), (0.5, 2.0), (1.3, 0.7)]:
        G1 = mixture_density([1], [0], [s1], **grid)
        G2 = mixture_density([1], [0], [s2], **grid)
        lam = optimal_lambda(s1**2, s2**2)
        for r in (1.5, 2.0, 3.0):
            rep = check_generalized_epi(G1, G2, lam, r)
            eq_dev = max(eq_dev, abs(rep.lhs_power / rep.rhs_power - 1))
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and eq_dev <= 1e-6 and elapsed < 60
    acceptance(
        "C8 generalized EPI suite (900 cases) and Gaussian equality",
        ok,
        f"{violations} violations, min margin {worst:.2e}, equality dev {eq_dev:.1e}, {elapsed:.1f} s",
    )
    assert ok


def test_c09_gaussian_entropy_power(acceptance):
    worst = 0.0
    for sigma in (0.5, 1.0, 2.0):
        F = gaussian_density(sigma)
        for p in (1.0, 1.5, 2.0, 4.0, math.inf):
            worst = max(worst, abs(renyi_entropy_power(F, p) / sigma**2 - 1))
    ok = worst <= 1e-6
    acceptance("C9 N_p(sigma Z) = sigma^2", ok, f"max rel dev {worst:.1e}")
    assert ok


# pairs whose reverse also has a closed form, as the inverse needs it
PAIRS = [(1.0, 1.0), (1.0, math.inf), (2.0, 2.0), (math.inf, math.inf), (math.inf, 1.0)]


def test_c10_matrix_geometry(acceptance):
    rng = np.random.default_rng(10)
    bad = 0
    worst = 0.0
    for k in range(1000):
        n = int(rng.integers(2, 6))
        A = rng.normal(size=(n, n))
        a, b = PAIRS[k % len(PAIRS)]
        if k % 3 == 0 and a == b:  # the (inf, 1) norm is real-only
            A = A + 1j * rng.normal(size=(n, n))
        assert supported_pair(b, a)
        kappa = condition_number(A, a, b)
        rel = abs(distance_to_singularity(A, a, b) * kappa / mixed_norm(A, a, b) - 1)
        worst = max(worst, rel)
        bad += not (kappa >= 1 - 1e-12 and rel <= 1e-12)
    oracle_dev = 0.0
    for k in range(20):
        n = int(rng.integers(2, 6))
        A = rng.normal(size=(n, n))
        pair = (2.0, 2.0) if k % 2 == 0 else (1.0, math.inf)
        dA = singular_perturbation(A, pair)
        size = np.linalg.norm(dA, 2) if pair == (2.0, 2.0) else np.abs(dA).max()
        s = np.linalg.svd(A + dA, compute_uv=False)
        assert s[-1] <= 1e-10 * s[0]
        oracle_dev = max(oracle_dev, abs(size / distance_to_singularity(A, *pair) - 1))
    ok = bad == 0 and oracle_dev <= 1e-10
    acceptance("C10 matrix geometry", ok, f"{bad} failures, identity dev {worst:.1e}, oracle dev {oracle_dev:.1e}")
    assert ok


def _random_dist(rng, n):
    w = rng.exponential(size=n) ** rng.uniform(0.5, 3.0)
    if rng.random() < 0.2:
        w[rng.integers(n)] = 0.0
    return w / w.sum()


def test_c11_renyi_properties(acceptance):
    rng = np.random.default_rng(11)
    mono = bounds = shuffle = 0
    for _ in range(1000):
        n = int(rng.integers(2, 12))
        P = _random_dist(rng, n)
        a1, a2 = np.sort(rng.uniform(0.05, 8.0, 2))
        vals = [renyi_discrete(P, a) for a in (0.0, a1, 1.0, a2, math.inf)]
        order = sorted(((0.0, vals[0]), (a1, vals[1]), (1.0, vals[2]), (a2, vals[3]), (math.inf, vals[4])))
        mono += any(y2 > y1 + 1e-12 for (_, y1), (_, y2) in zip(order, order[1:]))
        a = rng.uniform(0.05, 8.0)
        h = renyi_discrete(P, a)
        bounds += not (-1e-12 <= h <= math.log2(n) + 1e-12 and h >= vals[4] - 1e-12)
        perm = rng.permutation(n)
        shuffle += abs(renyi_discrete(P[perm], a) - h) > 1e-12
    # reshuffling cells of a gridded density leaves every continuous entropy unchanged
    cont = 0
    base = mixture_density([0.6, 0.4], [-1.0, 1.5], [0.7, 1.1], n=1024)
    for _ in range(1000):
        a = float(rng.choice([0.5, 1.0, 2.0, math.inf, rng.uniform(0.2, 5.0)]))
        G = base.with_values(base.values[rng.permutation(base.n)])
        h0 = renyi_differential(base, a, refine_peak=False, check_tail=False)
        cont += abs(renyi_differential(G, a, refine_peak=False, check_tail=False) - h0) > 1e-9
    ok = mono == bounds == shuffle == cont == 0
    acceptance(
        "C11 Renyi monotonicity/bounds/reshuffling (1000 each)",
        ok,
        f"violations: monotone {mono}, bounds {bounds}, discrete shuffle {shuffle}, gridded shuffle {cont}",
    )
    assert ok


@pytest.mark.run_last
def test_c12_suite_wall_clock(acceptance, session_elapsed):
    elapsed = session_elapsed()
    ok = elapsed < 300
    acceptance("C12 full suite under 5 minutes", ok, f"{elapsed:.1f} s")
    assert ok
