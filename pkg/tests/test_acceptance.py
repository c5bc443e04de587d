"""End-to-end acceptance suite.

Ten numbered criteria covering the closed forms, the worked-example
families, the brute-force oracles, and the invariance properties.  Each
test prints one verdict line ("criterion N: PASS/FAIL (worst=...)")
before asserting, so a full run leaves a scannable scorecard.

Criterion 8 asserts that the greedy two-step measurement search agrees
with the joint two-sided search on arbitrary states.  It does not: the
greedy construction fixes the first-stage axis before the second stage
runs, and on generic states that axis is not the jointly optimal one
(deviations around 1e-4, always in the greedy direction).  The test
states the claimed identity faithfully and fails on it; see
tests/test_oracle.py for the pinned counterexample.
"""

import numpy as np

from geodiscord import (
    XStateParams,
    classify_x_case,
    example1,
    example2,
    example3,
    example4,
    example5,
    gap_x,
    gd_bruteforce,
    gd_dakic,
    gd_x,
    ggqd_bruteforce,
    ggqd_general,
    ggqd_matrix_form,
    ggqd_x,
    normalize_x_phases,
    purity,
    random_density,
    random_x_params,
    tqc_sequential,
    x_state,
)

ROOT6 = np.sqrt(6.0)


def report(n: int, ok: bool, worst: float) -> None:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} (worst={float(worst)!r})")


def test_criterion_01():
    """Rank-deficient corner family: both measures equal a^2/2."""
    worst = 0.0
    for a in np.linspace(0.01, 1.0, 101):
        p = example1(float(a))
        target = a * a / 2.0
        worst = max(worst, abs(gd_x(p).value - target),
                    abs(ggqd_x(p).value - target))
    report(1, worst <= 1e-12, worst)
    assert worst <= 1e-12


def test_criterion_02():
    """Piecewise structure with distinct kinks at 1/2 and 3/5."""
    worst = 0.0
    worst_margin = np.inf
    gd_at_1 = ggqd_at_1 = None
    for a in np.linspace(0.0, 1.0, 101):
        a = float(a)
        p = example2(a)
        gd_v = gd_x(p).value
        gg_v = ggqd_x(p).value
        gd_ref = a * a / 2.0 if a <= 0.5 else (1.0 - 3.0 * a + 3.0 * a * a) / 2.0
        gg_ref = a * a / 2.0 if a <= 0.6 else (3.0 - 8.0 * a + 7.0 * a * a) / 4.0
        worst = max(worst, abs(gd_v - gd_ref), abs(gg_v - gg_ref))
        if a > 0.5:
            worst_margin = min(worst_margin, gg_v - gd_v)
        if a == 1.0:
            gd_at_1, ggqd_at_1 = gd_v, gg_v
    end_gap = abs(ggqd_at_1 - gd_at_1)
    ok = worst <= 1e-12 and worst_margin >= -1e-12 and end_gap <= 1e-12
    report(2, ok, max(worst, end_gap, -min(worst_margin, 0.0)))
    assert worst <= 1e-12
    assert worst_margin >= -1e-12
    assert end_gap <= 1e-12


def test_criterion_03():
    """Symmetric family: curves, shared minimum 5/36 at a=1/2, symmetry."""
    grid = np.linspace(0.0, 1.0, 101)
    gd_vals, gg_vals = [], []
    worst = 0.0
    for a in grid:
        a = float(a)
        p = example3(a)
        gd_v = gd_x(p).value
        gg_v = ggqd_x(p).value
        worst = max(worst, abs(gd_v - (3.0 - 2.0 * a + 2.0 * a * a) / 18.0),
                    abs(gg_v - (7.0 - 8.0 * a + 8.0 * a * a) / 36.0))
        gd_vals.append(gd_v)
        gg_vals.append(gg_v)
    for vals in (gd_vals, gg_vals):
        k = int(np.argmin(vals))
        worst = max(worst, abs(grid[k] - 0.5), abs(vals[k] - 5.0 / 36.0))
        for i in range(101):
            worst = max(worst, abs(vals[i] - vals[100 - i]))
    report(3, worst <= 1e-12, worst)
    assert worst <= 1e-12


def test_criterion_04():
    """Two atoms in a lossless cavity: period-1 recurrence in tau."""
    inv_root2 = 1.0 / np.sqrt(2.0)

    def at(tau: float):
        p = example4(inv_root2, inv_root2, 2.0 * np.pi * tau / ROOT6)
        return gd_x(p).value, ggqd_x(p).value

    gd0, gg0 = at(0.0)
    worst_init = max(abs(gd0 - 0.5), abs(gg0 - 0.5))
    worst_rec = 0.0
    worst_margin = np.inf
    for tau in np.linspace(0.0, 1.0, 50):
        tau = float(tau)
        gd_a, gg_a = at(tau)
        gd_b, gg_b = at(tau + 1.0)
        worst_rec = max(worst_rec, abs(gd_a - gd_b), abs(gg_a - gg_b))
        worst_margin = min(worst_margin, gg_a - gd_a, gg_b - gd_b)
    ok = worst_init <= 1e-12 and worst_rec <= 1e-10 and worst_margin >= -1e-10
    report(4, ok, max(worst_init, worst_rec, -min(worst_margin, 0.0)))
    assert worst_init <= 1e-12
    assert worst_rec <= 1e-10
    assert worst_margin >= -1e-10


def test_criterion_05():
    """Atom pair leaking into independent reservoirs: start and decay."""
    p0 = example5(0.1, 0.0)
    worst_init = max(abs(gd_x(p0).value - 0.0198),
                     abs(ggqd_x(p0).value - 0.0198))
    p_late = example5(0.1, 20.0)
    late = max(gd_x(p_late).value, ggqd_x(p_late).value)
    ok = worst_init <= 1e-12 and late < 1e-6
    report(5, ok, max(worst_init, late))
    assert worst_init <= 1e-12
    assert late < 1e-6


def test_criterion_06():
    """Brute-force search agrees with the closed forms and with dakic."""
    rng = np.random.default_rng(6)
    worst_base = worst_refined = 0.0
    for _ in range(200):
        p = normalize_x_phases(random_x_params(rng)).normalized
        state = x_state(p)
        target = ggqd_x(p).value
        res = ggqd_bruteforce(state)
        base_value = purity(state) - res.history[0]
        worst_base = max(worst_base, abs(base_value - target))
        worst_refined = max(worst_refined, abs(res.value - target))
    worst_gd = 0.0
    for _ in range(200):
        state = random_density(rng)
        worst_gd = max(worst_gd, abs(gd_bruteforce(state).value
                                     - gd_dakic(state).value))
    ok = worst_base <= 1e-4 and worst_refined <= 1e-7 and worst_gd <= 1e-7
    print(f"criterion 6: {'PASS' if ok else 'FAIL'} "
          f"(base={worst_base!r}, refined={worst_refined!r}, gd={worst_gd!r})")
    assert worst_base <= 1e-4
    assert worst_refined <= 1e-7
    assert worst_gd <= 1e-7


def test_criterion_07():
    """Two-sided dominates one-sided; per-case gap formulas are exact."""
    rng = np.random.default_rng(7)
    worst_margin = np.inf
    worst_by_case = {1: 0.0, 2: 0.0, 3: 0.0}
    counts = {1: 0, 2: 0, 3: 0}
    for _ in range(10_000):
        p = normalize_x_phases(random_x_params(rng)).normalized
        diff = ggqd_x(p).value - gd_x(p).value
        worst_margin = min(worst_margin, diff)
        tag = classify_x_case(p).tag.value
        counts[tag] += 1
        worst_by_case[tag] = max(worst_by_case[tag], abs(gap_x(p) - diff))
    worst_gap = max(worst_by_case.values())
    covered = min(counts.values()) > 0
    ok = worst_margin >= -1e-12 and worst_gap <= 1e-12 and covered
    report(7, ok, max(worst_gap, -min(worst_margin, 0.0)))
    assert worst_margin >= -1e-12
    assert worst_gap <= 1e-12
    assert covered, f"case draw counts {counts}"


def test_criterion_08():
    """Greedy sequential search equals the joint search on generic states.

    This is the one criterion the implementation cannot meet, because the
    claim itself fails: the greedy first-stage axis is generally not the
    jointly optimal one, so the sequential total exceeds the joint value
    by around 1e-4 on random states.  The deviation is deterministic for
    the seed below.
    """
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        state = random_density(rng)
        dev = abs(tqc_sequential(state).value - ggqd_bruteforce(state).value)
        worst = max(worst, dev)
    report(8, worst <= 2e-6, worst)
    assert worst <= 2e-6, (
        f"greedy sequential exceeds the joint optimum by up to {worst!r}; "
        "the two searches optimize different quantities on non-X states"
    )


def test_criterion_09():
    """All two-sided evaluators coincide on X states; dakic matches gd_x."""
    rng = np.random.default_rng(9)
    worst_gg = worst_gd = 0.0
    for _ in range(500):
        p = random_x_params(rng, complex_phases=False)
        state = x_state(p)
        reference = ggqd_x(p).value
        worst_gg = max(worst_gg,
                       abs(ggqd_general(state).value - reference),
                       abs(ggqd_matrix_form(state).value - reference))
        worst_gd = max(worst_gd, abs(gd_dakic(state).value - gd_x(p).value))
    ok = worst_gg <= 1e-8 and worst_gd <= 1e-10
    report(9, ok, max(worst_gg, worst_gd))
    assert worst_gg <= 1e-8
    assert worst_gd <= 1e-10


def test_criterion_10():
    """Phase normalization is a local unitary; SWAP symmetry is exact."""
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(200):
        p = random_x_params(rng)
        norm = normalize_x_phases(p).normalized
        state, state_n = x_state(p), x_state(norm)
        worst = max(worst,
                    abs(gd_dakic(state).value - gd_dakic(state_n).value),
                    abs(ggqd_general(state).value - ggqd_general(state_n).value))
        swapped = XStateParams(norm.d0, norm.d2, norm.d1, norm.d3,
                               norm.a03, norm.a12)
        assert ggqd_x(swapped).value == ggqd_x(norm).value
    report(10, worst <= 1e-8, worst)
    assert worst <= 1e-8
