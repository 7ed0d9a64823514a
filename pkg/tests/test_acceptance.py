"""End-to-end acceptance checks for the whole stack.

Every test prints one ACCEPTANCE line so a scan of the output shows
which guarantees held. Run with `pytest tests/test_acceptance.py -v -s`
to see the lines as they appear; the slow full-scale rerun is opt-in
via `pytest -m slow`.
"""

import math

import numpy as np
import pytest

import gossipavg as ga
from gossipavg import harness, streams
from gossipavg.engine import _select_greedy, _select_randomized, _select_sample_greedy
from gossipavg.fields import FieldSpec
from gossipavg.harness import ExperimentConfig

FIELDS = (
    FieldSpec(kind="gaussian_bumps"),
    FieldSpec(kind="linear"),
    FieldSpec(kind="spike", spike=0),
    FieldSpec(kind="random_normal"),
)


def report(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"{name}: {detail}"


def step_once(algorithm, state, g, p, node_rng, act_rng):
    if algorithm == "randomized":
        return ga.randomized_step(state, g, node_rng)
    if algorithm == "greedy":
        return ga.greedy_step(state, g, node_rng)
    return ga.sample_greedy_step(state, g, p, node_rng, act_rng)


def test_mass_conservation_all_algorithms():
    g = ga.generate_random_geometric(200, 2.0, 2024)
    a0 = ga.make_field(g, FieldSpec(kind="gaussian_bumps"))
    total0 = math.fsum(a0)
    tol = 1e-12 * max(1.0, abs(total0))
    worst = 0.0
    for algorithm in ga.ALGORITHMS:
        node_rng = streams.stream(11, 0, streams.NODE)
        act_rng = streams.stream(11, 0, streams.ACTIVATION)
        state = ga.make_state(a0)
        for _ in range(10_000):
            state, _rec = step_once(algorithm, state, g, 0.5, node_rng, act_rng)
            drift = abs(math.fsum(state.values) - total0)
            if drift > worst:
                worst = drift
    report("conservation", worst <= tol,
           f"max drift {worst:.3e} over tolerance {tol:.3e}")


def test_squared_error_drop_matches_half_discrepancy():
    g = ga.generate_random_geometric(50, 2.0, 808)
    a0 = ga.make_field(g, FieldSpec(kind="gaussian_bumps"))
    mean = math.fsum(a0) / g.n
    worst = 0.0
    for algorithm in ga.ALGORITHMS:
        node_rng = streams.stream(17, 0, streams.NODE)
        act_rng = streams.stream(17, 0, streams.ACTIVATION)
        state = ga.make_state(a0)
        resid = state.values - mean
        err_sq = float(resid @ resid)
        for _ in range(1000):
            state, rec = step_once(algorithm, state, g, 0.5, node_rng, act_rng)
            resid = state.values - mean
            nxt = float(resid @ resid)
            drop = err_sq - nxt
            rel = abs(drop - 0.5 * rec.discrepancy_sq) / max(err_sq, 1e-300)
            if rel > worst:
                worst = rel
            err_sq = nxt
    report("per-step-identity", worst <= 1e-10,
           f"worst relative mismatch {worst:.3e}")


def test_closed_form_matches_subset_enumeration():
    rng = np.random.default_rng(7)
    graphs = 0
    worst = 0.0
    while graphs < 100:
        n = int(rng.integers(4, 16))
        d = 2.0 if n <= 13 else 0.7
        g = ga.generate_random_geometric(n, d, int(rng.integers(0, 2**63)))
        if int(g.degrees.max()) > 12:
            continue
        graphs += 1
        for _ in range(10):
            a = rng.normal(size=n)
            for p in (0.1, 0.3, 0.5, 0.7, 0.9):
                closed = ga.sgg_expected_reduction(a, g, p)
                brute = ga.sgg_expected_reduction_bruteforce(a, g, p)
                rel = abs(closed - brute) / max(abs(brute), 1e-300)
                if rel > worst:
                    worst = rel
    report("closed-form-oracle", worst <= 1e-10,
           f"worst relative gap {worst:.3e} across 5000 evaluations")


def test_expected_reduction_sandwich():
    rng = np.random.default_rng(99)
    violations = 0
    for _ in range(10_000):
        n = int(rng.integers(5, 26))
        g = ga.generate_random_geometric(n, 2.0, int(rng.integers(0, 2**63)))
        a = rng.normal(size=n)
        p = float(rng.uniform())
        rg = ga.rg_expected_reduction(a, g)
        sgg = ga.sgg_expected_reduction(a, g, p)
        gg = ga.gg_expected_reduction(a, g)
        slack = 1e-12 * max(1.0, gg)
        if not (rg <= sgg + slack and sgg <= gg + slack):
            violations += 1
    report("reduction-sandwich", violations == 0,
           f"{violations} ordering violations in 10000 triples")


def test_expected_reduction_monotone_in_p():
    rng = np.random.default_rng(41)
    grid = np.linspace(0.0, 1.0, 11)
    failures = 0
    for _ in range(1000):
        n = int(rng.integers(5, 26))
        g = ga.generate_random_geometric(n, 2.0, int(rng.integers(0, 2**63)))
        a = rng.normal(size=n)
        if not ga.monotonicity_check(a, g, grid):
            failures += 1
    report("p-monotonicity", failures == 0,
           f"{failures} non-monotone profiles in 1000 states")


def test_endpoint_traces_match_baselines():
    mismatches = []
    for seed in range(100):
        g = ga.generate_random_geometric(
            50, 2.0, streams.substream_seed(seed, 0, streams.GRAPH))
        a0 = ga.make_field(g, FieldSpec(kind="random_normal"),
                           rng=streams.stream(seed, 0, streams.FIELD))
        kw = dict(iterations=200, master_seed=seed, record_pairs=True)
        base_r = ga.run(g, a0, "randomized", **kw)
        sgg0 = ga.run(g, a0, "sample_greedy", p=0.0, **kw)
        base_g = ga.run(g, a0, "greedy", **kw)
        sgg1 = ga.run(g, a0, "sample_greedy", p=1.0, **kw)
        # p=0 probe counts differ by schema: the empty-activation fallback
        # still bills one probe while plain randomized selection bills none.
        same0 = (np.array_equal(sgg0.rel_error, base_r.rel_error)
                 and np.array_equal(sgg0.sources, base_r.sources)
                 and np.array_equal(sgg0.partners, base_r.partners)
                 and np.array_equal(sgg0.final_values, base_r.final_values)
                 and np.array_equal(sgg0.exchange_messages, base_r.exchange_messages))
        same1 = (np.array_equal(sgg1.rel_error, base_g.rel_error)
                 and np.array_equal(sgg1.sources, base_g.sources)
                 and np.array_equal(sgg1.partners, base_g.partners)
                 and np.array_equal(sgg1.final_values, base_g.final_values)
                 and np.array_equal(sgg1.probe_messages, base_g.probe_messages)
                 and np.array_equal(sgg1.exchange_messages, base_g.exchange_messages))
        if not (same0 and same1):
            mismatches.append(seed)
    report("endpoint-degeneration", not mismatches,
           f"seeds with diverging traces: {mismatches}")


def test_monte_carlo_selection_matches_analysis():
    g = ga.generate_random_geometric(20, 2.0, 515)
    a = ga.make_field(g, FieldSpec(kind="gaussian_bumps"))
    steps = 1_000_000
    configs = [("randomized", 0.0), ("greedy", 1.0),
               ("sample_greedy", 0.25), ("sample_greedy", 0.5),
               ("sample_greedy", 0.75)]
    gaps = []
    ok = True
    for algorithm, p in configs:
        node_rng = streams.stream(21, 0, streams.NODE)
        act_rng = streams.stream(21, 0, streams.ACTIVATION)
        samples = np.empty(steps)
        for i in range(steps):
            if algorithm == "randomized":
                s, t, _aset, _probe = _select_randomized(a, g, node_rng)
            elif algorithm == "greedy":
                s, t, _aset, _probe = _select_greedy(a, g, node_rng)
            else:
                s, t, _aset, _probe = _select_sample_greedy(a, g, p, node_rng, act_rng)
            diff = a[s] - a[t]
            samples[i] = 0.5 * diff * diff
        if algorithm == "randomized":
            target = ga.rg_expected_reduction(a, g)
        elif algorithm == "greedy":
            target = ga.gg_expected_reduction(a, g)
        else:
            target = ga.sgg_expected_reduction(a, g, p)
        se = samples.std(ddof=1) / math.sqrt(steps)
        gap = abs(float(samples.mean()) - target)
        gaps.append(f"{algorithm}@p={p}: {gap:.2e} vs 3se={3 * se:.2e}")
        ok = ok and gap <= 3.0 * se
    report("mc-one-step", ok, "; ".join(gaps))


def test_spectral_gap_and_eps_time_bound():
    worst = 0.0
    for n in range(2, 21):
        lam = ga.lambda2(ga.rg_mean_update_matrix(ga.complete_graph(n)))
        err = abs(lam - (1.0 - 1.0 / (n - 1)))
        if err > worst:
            worst = err
    ok_spectrum = worst <= 1e-10

    g = ga.generate_random_geometric(30, 2.0, 777)
    lam = ga.lambda2(ga.rg_mean_update_matrix(g))
    bound = ga.rg_eps_time_bound(lam, 0.01)
    L = int(math.ceil(bound))
    a0 = ga.make_field(g, FieldSpec(kind="random_normal"),
                       rng=streams.stream(5, 0, streams.FIELD))
    traces = [ga.run(g, a0, "randomized", iterations=L, master_seed=5, run_index=j)
              for j in range(500)]
    est = ga.empirical_eps_time(traces, 0.01, rg_upper_bound=bound)
    ok_time = est.empirical_T is not None and est.empirical_T <= bound
    report("spectral-bound", ok_spectrum and ok_time,
           f"complete-graph eigenvalue error {worst:.2e}; "
           f"empirical T {est.empirical_T} vs bound {bound:.1f}")


def ordering_violations(n, runs, L, threads):
    """Error-curve ordering and probe-rate accounting over all four fields."""
    bad = []
    for field in FIELDS:
        cfg = ExperimentConfig(
            n=n, d=2.0, algorithms=("randomized", "greedy", "sample_greedy"),
            p_values=(0.5,), L=L, runs=runs, field=field, master_seed=2718,
        )
        rows = harness.run_experiment(cfg, threads=threads)
        curves = {}
        for r in rows:
            curves.setdefault(r["algorithm"], {})[r["iteration"]] = r
        for it in sorted(curves["randomized"]):
            if it < 50:
                continue
            e_g = curves["greedy"][it]["mean_rel_error"]
            e_s = curves["sample_greedy"][it]["mean_rel_error"]
            e_r = curves["randomized"][it]["mean_rel_error"]
            if not (e_g <= e_s <= e_r):
                bad.append(f"{field.kind}@{it}: {e_g:.4f}/{e_s:.4f}/{e_r:.4f}")

        last = max(curves["sample_greedy"])
        probe_rate = curves["sample_greedy"][last]["mean_probe_msgs"] / last
        mean_deg = np.mean([
            ga.generate_random_geometric(
                n, cfg.d, streams.substream_seed(cfg.master_seed, j, streams.GRAPH)
            ).mean_degree()
            for j in range(runs)
        ])
        target = 0.5 * mean_deg
        if abs(probe_rate - target) > 0.05 * target:
            bad.append(f"{field.kind} probe rate {probe_rate:.3f} vs {target:.3f}")
    return bad


def test_error_curve_ordering_desk_scale():
    bad = ordering_violations(n=50, runs=200, L=500, threads=4)
    report("curve-ordering", not bad, "; ".join(bad[:8]))


@pytest.mark.slow
def test_error_curve_ordering_full_scale():
    bad = ordering_violations(n=200, runs=1000, L=10_000, threads=4)
    report("curve-ordering-full", not bad, "; ".join(bad[:8]))


def test_sweep_trends_in_p_and_density():
    issues = []
    cfg = ExperimentConfig(
        n=50, d=2.0, algorithms=("randomized", "greedy", "sample_greedy"),
        p_values=(0.0, 0.25, 0.5, 0.75, 1.0), L=500, runs=200,
        field=FieldSpec(kind="gaussian_bumps"), master_seed=1234,
    )
    rows = harness.sweep_p(cfg, threads=4)
    finals = {}
    for r in rows:
        if r["iteration"] == cfg.L:
            finals[(r["algorithm"], r["p"])] = r
    for lo, hi in zip(cfg.p_values, cfg.p_values[1:]):
        a = finals[("sample_greedy", lo)]
        b = finals[("sample_greedy", hi)]
        pooled = math.sqrt(a["std_rel_error"] ** 2 + b["std_rel_error"] ** 2) \
            / math.sqrt(cfg.runs)
        if b["mean_rel_error"] > a["mean_rel_error"] + 2.0 * pooled:
            issues.append(f"p {lo}->{hi} rose {a['mean_rel_error']:.4f}"
                          f"->{b['mean_rel_error']:.4f}")
    if finals[("sample_greedy", 0.0)]["mean_rel_error"] \
            != finals[("randomized", 0.0)]["mean_rel_error"]:
        issues.append("p=0 cell differs from randomized baseline")
    if finals[("sample_greedy", 1.0)]["mean_rel_error"] \
            != finals[("greedy", 1.0)]["mean_rel_error"]:
        issues.append("p=1 cell differs from greedy baseline")

    dcfg = ExperimentConfig(
        n=50, d=1.0, algorithms=("randomized", "sample_greedy"),
        p_values=(0.5,), L=100, runs=200,
        field=FieldSpec(kind="gaussian_bumps"), master_seed=4321,
        d_values=(1.0, 2.0, 4.0),
    )
    drows = harness.sweep_d(dcfg, threads=4)
    dfinals = {}
    for r in drows:
        if r["iteration"] == dcfg.L:
            dfinals[(r["algorithm"], r["d"])] = r["mean_rel_error"]
    gaps = [dfinals[("randomized", d)] - dfinals[("sample_greedy", d)]
            for d in dcfg.d_values]
    if not (gaps[0] < gaps[1] < gaps[2]):
        issues.append(f"density gaps not increasing: {gaps}")
    report("sweep-trends", not issues, "; ".join(issues))
