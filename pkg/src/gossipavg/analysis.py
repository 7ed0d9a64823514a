"""Closed-form expected reductions, spectral bounds, and their oracles.

The central quantity is the expected one-step reduction of the squared
distance to the network average, E[half the squared discrepancy of the
exchanged pair], evaluated exactly for the three partner-selection
rules.  The sample-greedy form uses an order-statistic reduction of the
exponential subset sum; a literal subset enumeration is kept as the
oracle that justifies it.

Accumulations use math.fsum so the oracle tolerances stay honest at
degree 20, and the sample-greedy form degenerates bitwise to the
randomized form at p=0 and to the greedy form at p=1 (the endpoint
weights are exact zeros and ones, and the fallback term shares the
per-node mean helper).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import pairwise

import numpy as np

MAX_BRUTEFORCE_DEGREE = 20

# Full membership matrices are cached up to this degree; beyond it the
# subset enumeration streams over mask chunks instead.
_CACHE_DEGREE = 12
_CHUNK = 1 << 16
_MASK_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}

UpdateMatrix = np.ndarray


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"activation probability must be in [0, 1], got {p}")
    return p


def _node_dsq(a: np.ndarray, g, s: int) -> np.ndarray:
    """Squared discrepancies of node s against each neighbor."""
    diff = a[s] - a[g.adjacency[s]]
    return diff * diff


def _node_mean(d: np.ndarray) -> float:
    return math.fsum(d) / d.size


def rg_expected_reduction(a, g) -> float:
    """Randomized gossip: (1/2N) sum_s mean over neighbors of (a_s-a_t)^2."""
    a = np.asarray(a, dtype=float)
    contribs = [_node_mean(_node_dsq(a, g, s)) for s in range(g.n)]
    return math.fsum(contribs) / (2.0 * g.n)


def gg_expected_reduction(a, g) -> float:
    """Greedy gossip: (1/2N) sum_s max over neighbors of (a_s-a_t)^2."""
    a = np.asarray(a, dtype=float)
    contribs = [float(np.max(_node_dsq(a, g, s))) for s in range(g.n)]
    return math.fsum(contribs) / (2.0 * g.n)


def sgg_expected_reduction(a, g, p) -> float:
    """Sample-greedy gossip expected reduction, order-statistic form.

    Per source node, sort the squared discrepancies descending
    d(1) >= ... >= d(K).  The k-th largest is exchanged iff neighbor (k)
    activates and all larger ones do not, so its weight is p(1-p)^(k-1);
    the all-inactive event, weight (1-p)^K, falls back to a uniform
    neighbor, contributing the plain mean.  At p=0 only the fallback
    survives and the result equals rg_expected_reduction bitwise; at p=1
    only k=1 survives and it equals gg_expected_reduction bitwise.
    """
    p = _check_p(p)
    a = np.asarray(a, dtype=float)
    q = 1.0 - p
    contribs = []
    for s in range(g.n):
        d = _node_dsq(a, g, s)
        desc = np.sort(d, kind="stable")[::-1]
        terms = [p * q**k * desc[k] for k in range(d.size)]
        terms.append(q ** d.size * _node_mean(d))
        contribs.append(math.fsum(terms))
    return math.fsum(contribs) / (2.0 * g.n)


def _mask_tables(K: int) -> tuple[np.ndarray, np.ndarray]:
    """Membership matrix and popcounts for all nonempty K-bit masks."""
    cached = _MASK_CACHE.get(K)
    if cached is None:
        masks = np.arange(1, 1 << K, dtype=np.uint32)
        member = ((masks[:, None] >> np.arange(K, dtype=np.uint32)[None, :]) & 1).astype(bool)
        cached = (member, member.sum(axis=1))
        _MASK_CACHE[K] = cached
    return cached


def _subset_terms(d: np.ndarray, p: float, q: float, member: np.ndarray, m: np.ndarray) -> float:
    best = np.where(member, d[None, :], 0.0).max(axis=1)
    w = p**m * q ** (d.size - m)
    return float(w @ best)


def sgg_expected_reduction_bruteforce(a, g, p) -> float:
    """Literal enumeration over all activation patterns of every source.

    Each nonempty pattern contributes its maximum discrepancy weighted
    p^m (1-p)^(K-m); the empty pattern contributes the neighbor mean.
    Cost is 2^degree per node, capped at degree 20.  This is the oracle
    the closed form above is validated against.
    """
    p = _check_p(p)
    a = np.asarray(a, dtype=float)
    q = 1.0 - p
    contribs = []
    for s in range(g.n):
        d = _node_dsq(a, g, s)
        K = d.size
        if K > MAX_BRUTEFORCE_DEGREE:
            raise ValueError(
                f"degree {K} of node {s} exceeds brute-force cap {MAX_BRUTEFORCE_DEGREE}"
            )
        terms = [q**K * _node_mean(d)]
        if K <= _CACHE_DEGREE:
            member, m = _mask_tables(K)
            terms.append(_subset_terms(d, p, q, member, m))
        else:
            bits = np.arange(K, dtype=np.uint64)[None, :]
            for lo in range(1, 1 << K, _CHUNK):
                masks = np.arange(lo, min(lo + _CHUNK, 1 << K), dtype=np.uint64)
                member = ((masks[:, None] >> bits) & 1).astype(bool)
                terms.append(_subset_terms(d, p, q, member, member.sum(axis=1)))
        contribs.append(math.fsum(terms))
    return math.fsum(contribs) / (2.0 * g.n)


def eta(a, g, p) -> float:
    """Sample-greedy advantage over randomized gossip (>= 0)."""
    return sgg_expected_reduction(a, g, p) - rg_expected_reduction(a, g)


def gamma(a, g, p) -> float:
    """Greedy advantage over sample-greedy gossip (>= 0)."""
    return gg_expected_reduction(a, g) - sgg_expected_reduction(a, g, p)


def pair_update_matrix(n: int, s: int, t: int) -> UpdateMatrix:
    """One-step realization averaging nodes s and t: I - (e_s-e_t)(e_s-e_t)^T / 2."""
    if s == t:
        raise ValueError(f"pair must be distinct, got s=t={s}")
    W = np.eye(n)
    W[s, s] = W[t, t] = 0.5
    W[s, t] = W[t, s] = 0.5
    return W


def rg_mean_update_matrix(g) -> UpdateMatrix:
    """Expected one-step update matrix of randomized gossip.

    Mean over uniform source s and uniform neighbor t of the pair
    realization; symmetric and doubly stochastic by construction.
    """
    if (g.degrees == 0).any():
        isolated = int(np.flatnonzero(g.degrees == 0)[0])
        raise ValueError(f"node {isolated} has no neighbors; no gossip step is defined")
    n = g.n
    W = np.eye(n)
    for s in range(n):
        w = 1.0 / (2.0 * n * g.degrees[s])
        for t in g.adjacency[s]:
            W[s, s] -= w
            W[t, t] -= w
            W[s, t] += w
            W[t, s] += w
    return W


def lambda2(W: UpdateMatrix) -> float:
    """Second-largest eigenvalue of a symmetric update matrix."""
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {W.shape}")
    if W.shape[0] < 2:
        raise ValueError("second eigenvalue needs at least a 2x2 matrix")
    if not np.allclose(W, W.T, rtol=0.0, atol=1e-12):
        raise ValueError("update matrix must be symmetric")
    vals = np.linalg.eigvalsh(W)
    return float(vals[-2])


def rg_eps_time_bound(lam2: float, epsilon: float) -> float:
    """Upper bound 3 ln(1/eps) / ln(1/lambda2) on the eps-averaging time."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if lam2 >= 1.0:
        raise ValueError(
            f"lambda2 = {lam2} >= 1: the underlying graph is disconnected, no bound exists"
        )
    if lam2 <= 0.0:
        raise ValueError(f"bound needs 0 < lambda2 < 1, got {lam2}")
    return 3.0 * math.log(1.0 / epsilon) / math.log(1.0 / lam2)


@dataclass(frozen=True)
class EpsilonTimeEstimate:
    """Empirical eps-averaging time of a trace ensemble.

    empirical_T is None when no recorded iteration drives the exceedance
    fraction below epsilon ("not reached"); rg_upper_bound carries the
    analytic randomized-gossip bound when the caller supplies one.
    """

    epsilon: float
    empirical_T: int | None
    rg_upper_bound: float | None = None


def empirical_eps_time(traces, epsilon: float, rg_upper_bound: float | None = None,
                       min_runs: int = 100) -> EpsilonTimeEstimate:
    """Smallest iteration where P(relative error >= eps) drops to <= eps.

    All traces must come from one configuration (same algorithm, p,
    network size, master seed, length); mixed sets are rejected.  The
    probability is the fraction of runs, so at least min_runs traces are
    required for the estimate to mean anything.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    traces = list(traces)
    if len(traces) < min_runs:
        raise ValueError(f"need at least {min_runs} runs, got {len(traces)}")
    key = lambda tr: (tr.algorithm, tr.p, tr.n, tr.master_seed, len(tr.rel_error))
    first = key(traces[0])
    for tr in traces:
        if key(tr) != first:
            raise ValueError(f"mixed-configuration trace set: {key(tr)} vs {first}")
    errors = np.stack([tr.rel_error for tr in traces])
    frac = (errors >= epsilon).mean(axis=0)
    hits = np.flatnonzero(frac <= epsilon)
    T = int(hits[0]) if hits.size else None
    return EpsilonTimeEstimate(epsilon=epsilon, empirical_T=T, rg_upper_bound=rg_upper_bound)


def _has_spread_discrepancies(a: np.ndarray, g, rel_tol: float = 1e-6) -> bool:
    """True when some node sees materially distinct squared discrepancies.

    Exactly then the sample-greedy reduction grows strictly with p: a
    node whose discrepancies are all equal (degree 1 included) has the
    same reduction under every selection rule.
    """
    spreads = []
    peak = 0.0
    for s in range(g.n):
        d = _node_dsq(a, g, s)
        peak = max(peak, float(d.max()))
        spreads.append(float(d.max() - d.min()))
    return max(spreads) > rel_tol * max(peak, 1e-300)


def monotonicity_check(a, g, p_grid) -> bool:
    """Verify the reduction is non-decreasing in p along an ascending grid.

    When the state gives some node materially distinct discrepancies the
    growth must also be strict between distinct grid points; otherwise
    (uniform state, degree-1 graphs, states with per-node equal
    discrepancies) a constant profile passes.  Comparisons carry a
    1e-12 relative slack for floating-point noise.
    """
    a = np.asarray(a, dtype=float)
    grid = [_check_p(x) for x in p_grid]
    if any(p1 < p0 for p0, p1 in pairwise(grid)):
        raise ValueError("p_grid must be ascending")
    vals = [sgg_expected_reduction(a, g, p) for p in grid]
    slack = 1e-12 * max(1.0, max(map(abs, vals), default=0.0))
    strict = _has_spread_discrepancies(a, g)
    for (p0, v0), (p1, v1) in pairwise(zip(grid, vals)):
        if v1 < v0 - slack:
            return False
        if strict and p1 > p0 and v1 - v0 <= slack:
            return False
    return True


@dataclass(frozen=True)
class BoundReport:
    """Snapshot of every analytic quantity at one (state, graph, p)."""

    p: float
    rg_reduction: float
    sgg_reduction: float
    gg_reduction: float
    eta: float
    gamma: float
    lambda2: float
    rg_bound_eps: float
    epsilon: float

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "rg": self.rg_reduction,
            "sgg": self.sgg_reduction,
            "gg": self.gg_reduction,
            "eta": self.eta,
            "gamma": self.gamma,
            "lambda2": self.lambda2,
            "rg_bound_eps": self.rg_bound_eps,
        }


def bound_report(a, g, p, epsilon: float = 0.01) -> BoundReport:
    """Evaluate all closed forms for one state on one graph."""
    p = _check_p(p)
    a = np.asarray(a, dtype=float)
    rg = rg_expected_reduction(a, g)
    sgg = sgg_expected_reduction(a, g, p)
    gg = gg_expected_reduction(a, g)
    lam2 = lambda2(rg_mean_update_matrix(g))
    return BoundReport(
        p=p,
        rg_reduction=rg,
        sgg_reduction=sgg,
        gg_reduction=gg,
        eta=sgg - rg,
        gamma=gg - sgg,
        lambda2=lam2,
        rg_bound_eps=rg_eps_time_bound(lam2, epsilon),
        epsilon=epsilon,
    )
