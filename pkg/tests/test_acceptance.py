"""Exit criteria. Every check prints one PASS/FAIL line in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py``.
"""

from functools import lru_cache

import numpy as np
import pytest

from histfit.census import census
from histfit.criteria import Ordering, compare_histograms, fitness2
from histfit.experiments import compare_criteria, mutation_analysis
from histfit.search import SearchConfig, run_batch
from histfit.boolfn import TruthTable, random_balanced
from histfit.spectrum import WalshSpectrum, fwht, fwht_rows, naive_wht_rows, nonlinearity, signs, update_after_swap
from histfit.stats import ContingencyTable2x2, fisher_exact, mann_whitney_u

SEED = 0
FLIP = {Ordering.PREFER_FIRST: Ordering.PREFER_SECOND, Ordering.PREFER_SECOND: Ordering.PREFER_FIRST,
        Ordering.TIE: Ordering.TIE}


def random_balanced_matrix(rng, n, count):
    size = 1 << n
    rows = np.zeros((count, size), dtype=np.uint8)
    rows[:, : size // 2] = 1
    return rng.permuted(rows, axis=1)


# -- 1 -------------------------------------------------------------------------


def test_c1_transform_correctness(acceptance_report):
    rng = np.random.default_rng(SEED)
    checked = 0
    for n in range(1, 9):
        tables = rng.integers(0, 2, (1000, 1 << n), dtype=np.uint8)
        assert np.array_equal(fwht_rows(signs(tables)), naive_wht_rows(tables)), f"fwht != naive at N={n}"
        checked += 1000
    for n in (4, 6, 8):
        t = random_balanced(n, rng)
        spec = fwht(t)
        for _ in range(200):
            i = int(rng.choice(np.flatnonzero(t.bits == 0)))
            j = int(rng.choice(np.flatnonzero(t.bits == 1)))
            spec = update_after_swap(spec, t, i, j)
            bits = t.bits.copy()
            bits[i], bits[j] = 1, 0
            t = TruthTable(bits, n)
            assert spec == fwht(t), f"incremental update diverged at N={n}"
    acceptance_report("C1 transform correctness", True,
                      f"fwht == naive on {checked} tables (N=1..8); 200-swap chains exact at N=4,6,8")


# -- 2 -------------------------------------------------------------------------


def test_c2_spectrum_invariants(acceptance_report):
    rng = np.random.default_rng(SEED + 1)
    total = 0
    for n in range(1, 10):
        size = 1 << n
        spectra = fwht_rows(signs(random_balanced_matrix(rng, n, 10_000))).astype(np.int64)
        assert np.all((spectra ** 2).sum(axis=1) == size * size), f"Parseval fails at N={n}"
        assert np.all(spectra[:, 0] == 0), f"W(0) != 0 at N={n}"
        if n >= 2:
            assert np.all(spectra % 4 == 0), f"divisibility by 4 fails at N={n}"
        total += spectra.shape[0]
    acceptance_report("C2 spectrum invariants", True, f"Parseval, W(0)=0, 4 | W on {total} balanced tables")


# -- 3 -------------------------------------------------------------------------


def test_c3_census(acceptance_report):
    r3, r4 = census(3), census(4)
    ok = (r3.total_balanced, r3.max_nl, r4.total_balanced, r4.max_nl) == (70, 2, 12870, 4)
    acceptance_report("C3 census", ok, f"N=3: {r3.total_balanced} tables max nl {r3.max_nl}; "
                                       f"N=4: {r4.total_balanced} tables max nl {r4.max_nl}")
    assert ok


# -- 4 -------------------------------------------------------------------------


def _spectrum_pool(rng):
    pool = []
    for n, count in ((4, 150), (5, 150)):
        pool += [WalshSpectrum(s) for s in fwht_rows(signs(random_balanced_matrix(rng, n, count)))]
    # end states of short searches share nl and differ deeper in the tail
    for seed in range(150):
        res = run_batch(SearchConfig(6, "fit1", 24, 10_000, seed), 1).runs[0]
        pool.append(fwht(res.final_table))
    return pool


def _sorted_lex(x, y):
    sx = sorted(np.abs(x.coeffs).tolist(), reverse=True)
    sy = sorted(np.abs(y.coeffs).tolist(), reverse=True)
    return Ordering.TIE if sx == sy else (Ordering.PREFER_FIRST if sx < sy else Ordering.PREFER_SECOND)


def test_c4_comparator_laws(acceptance_report):
    rng = np.random.default_rng(SEED + 2)
    pool = _spectrum_pool(rng)
    by_size: dict[int, list] = {}
    for s in pool:
        by_size.setdefault(s.n_vars, []).append(s)
    pairs = ties = 0
    for group in by_size.values():
        cmp = lru_cache(maxsize=None)(lambda i, j, g=group: compare_histograms(g[i], g[j]))
        for _ in range(4000):
            i, j, k = (int(v) for v in rng.integers(0, len(group), 3))
            x, y = group[i], group[j]
            xy, yx, yz, xz = cmp(i, j), cmp(j, i), cmp(j, k), cmp(i, k)
            assert yx is FLIP[xy], "antisymmetry"
            assert xy is _sorted_lex(x, y), "disagrees with sorted-descending oracle"
            if xy is Ordering.TIE:
                ties += 1
                assert xz is yz, "Tie is not an equivalence"
            if xy is Ordering.PREFER_FIRST and yz is Ordering.PREFER_FIRST:
                assert xz is Ordering.PREFER_FIRST, "transitivity"
            nx, ny = nonlinearity(x), nonlinearity(y)
            fx, fy = fitness2(x), fitness2(y)
            if nx != ny:
                assert (xy is Ordering.PREFER_FIRST) == (fx > fy) == (nx > ny), "fitness2 / nl agreement"
            elif fx > fy:
                assert xy is not Ordering.PREFER_SECOND, "does not refine fitness2"
            pairs += 1
    acceptance_report("C4 comparator laws", True,
                      f"{pairs} pairs/triples, {ties} ties; antisymmetry, transitivity, "
                      f"tie equivalence, fitness2 refinement, sorted-lex agreement")
    assert pairs >= 10_000


# -- 5 -------------------------------------------------------------------------

TABLE2_BANDS = {
    "swap:1": ((0.80, 0.92), 0.8638),
    "swap:3": ((0.60, 0.78), 0.6943),
    "shift": ((-0.02, 0.15), 0.0583),
    "inversion": ((0.18, 0.38), 0.2779),
}


@lru_cache(maxsize=1)
def table2_rows():
    rows = mutation_analysis(8, 5000, 2, list(TABLE2_BANDS), seed=SEED)
    return {r.mutation: r for r in rows}


@pytest.mark.parametrize("mutation", list(TABLE2_BANDS))
def test_c5_mutation_correlations(mutation, acceptance_report):
    (lo, hi), published = TABLE2_BANDS[mutation]
    rho = table2_rows()[mutation].spearman
    ok = lo <= rho <= hi
    acceptance_report(f"C5 Spearman {mutation}", ok,
                      f"{rho:.4f} in [{lo}, {hi}] (published {published})")
    assert ok, f"{mutation}: Spearman {rho:.4f} outside [{lo}, {hi}]"


# -- 6 / 7 -----------------------------------------------------------------------

PUBLISHED_MEDIANS = {6: (317, 242), 7: (2642.5, 1871)}  # (fit2, hist)


@lru_cache(maxsize=None)
def comparison(n):
    return compare_criteria(n, n_runs=100, eval_budget=500_000, seed=SEED)


@pytest.mark.parametrize("n", [6, 7])
def test_c6_local_search_reproduction(n, acceptance_report):
    cmp = comparison(n)
    fit2_med = cmp.fit2.evaluation_summary.median
    hist_med = cmp.hist.evaluation_summary.median
    paper_fit2, paper_hist = PUBLISHED_MEDIANS[n]
    checks = {
        "hist success >= 90%": cmp.hist.success_rate >= 90.0,
        "hist median < fit2 median": hist_med < fit2_med,
        "hist median within 2x of published": paper_hist / 2 <= hist_med <= paper_hist * 2,
    }
    ok = all(checks.values())
    acceptance_report(
        f"C6 N={n} LS-HISTFIT vs LS-FIT2", ok,
        f"success {cmp.hist.success_rate:.1f}% vs {cmp.fit2.success_rate:.1f}%; "
        f"median evals {hist_med:g} vs {fit2_med:g} (published {paper_hist:g} vs {paper_fit2:g})"
        + "".join(f"; {k} FAILED" for k, v in checks.items() if not v),
    )
    assert ok


def test_c7_mann_whitney_superiority(acceptance_report):
    cmp = comparison(6)
    res = mann_whitney_u(cmp.hist.successful_evaluations(), cmp.fit2.successful_evaluations(), "less")
    ok = res.p_value < 0.01
    acceptance_report("C7 Mann-Whitney hist < fit2 at N=6", ok, f"U={res.statistic:g}, p={res.p_value:.2e} (< 0.01)")
    assert ok


# -- 8 -------------------------------------------------------------------------


@pytest.mark.parametrize("n, counts, published", [
    (6, (183, 17, 198, 2), 0.0006),
    (7, (194, 6, 199, 1), 0.12171),
])
def test_c8_fisher_published_counts(n, counts, published, acceptance_report):
    table = ContingencyTable2x2(*counts)
    pvals = {alt: fisher_exact(table, alt).p_value for alt in ("two-sided", "less", "greater")}
    matching = [alt for alt, p in pvals.items() if abs(p - published) <= 0.2 * published]
    ok = bool(matching)
    acceptance_report(f"C8 Fisher N={n}", ok,
                      ", ".join(f"{a} p={p:.5g}" for a, p in pvals.items())
                      + f"; published {published} matched by {matching or 'none'}")
    assert ok


def test_c8_mann_whitney_exact(acceptance_report):
    res = mann_whitney_u([1, 2], [3, 4], "less")
    ok = res.statistic == 0 and res.p_value == 1 / 6
    acceptance_report("C8 Mann-Whitney exact", ok, f"U={res.statistic:g}, p={res.p_value!r} (1/6)")
    assert ok


# -- 9 -------------------------------------------------------------------------


def test_c9_n8_feasibility(acceptance_report):
    batch = run_batch(SearchConfig(8, "hist", 116, 500_000, SEED), 25)
    median = batch.evaluation_summary.median
    ok = batch.success_rate >= 80.0 and 14974 / 2 <= median <= 14974 * 2
    acceptance_report("C9 N=8 feasibility", ok,
                      f"success {batch.success_rate:.1f}% (>= 80), median evals {median:g} (published 14974)")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
