"""The three gossip state machines: one pairwise exchange per iteration.

randomized: wake a uniform node, average with a uniform neighbor.
greedy: wake a uniform node, average with the neighbor of largest
squared discrepancy (lowest node id on ties).
sample_greedy: each neighbor activates independently with probability p,
the greedy rule runs inside the activated subset, and an empty subset
falls back to a uniform neighbor.

Node selection and neighbor activation consume two separate streams, so
sample_greedy at p=0 replays randomized gossip and at p=1 replays greedy
gossip exactly, step for step, under a shared seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import streams

RANDOMIZED = "randomized"
GREEDY = "greedy"
SAMPLE_GREEDY = "sample_greedy"
ALGORITHMS = (RANDOMIZED, GREEDY, SAMPLE_GREEDY)


@dataclass(frozen=True, slots=True)
class StateVector:
    """Node values a(l) plus the iteration count l that produced them."""

    values: np.ndarray
    iteration: int = 0


def make_state(values, iteration: int = 0) -> StateVector:
    return StateVector(np.array(values, dtype=float), int(iteration))


@dataclass(frozen=True, slots=True)
class StepRecord:
    """Bookkeeping for a single exchange.

    active_set is empty for randomized steps and for sample-greedy
    fallbacks, and is the full neighborhood for greedy steps.
    probe_messages counts value solicitations during partner selection
    (randomized 0, greedy the full degree, sample-greedy the activated
    count, fallback 1); the exchange itself is always one message.
    """

    iteration: int
    source: int
    active_set: tuple[int, ...]
    partner: int
    discrepancy_sq: float
    probe_messages: int
    exchange_messages: int = 1


@dataclass(frozen=True)
class Trace:
    """One full run: relative errors and cumulative message counts.

    rel_error[l] = |a(l) - avg| / |a(0) - avg| for l = 0..L;
    probe_messages and exchange_messages are cumulative over the same
    index.  degenerate flags a(0) already equal to the average, in which
    case rel_error is identically 0 by convention.  sources/partners
    hold the exchanged pair per iteration when pair recording was
    requested, else None.
    """

    algorithm: str
    p: float
    n: int
    master_seed: int
    run_index: int
    rel_error: np.ndarray
    probe_messages: np.ndarray
    exchange_messages: np.ndarray
    final_values: np.ndarray
    degenerate: bool
    sources: np.ndarray | None = None
    partners: np.ndarray | None = None

    @property
    def iterations(self) -> int:
        return len(self.rel_error) - 1


def _uniform_index(rng: np.random.Generator, k: int) -> int:
    # One uniform double per draw; measurably faster than integers() in
    # the step hot path and part of the reproducibility contract (the
    # guard covers the k*random() == k float edge, bias is < k/2^53).
    i = int(rng.random() * k)
    return i if i < k else k - 1


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"activation probability must be in [0, 1], got {p}")
    return p


def _select_randomized(a, g, node_rng):
    s = _uniform_index(node_rng, g.n)
    nbrs = g.adjacency[s]
    t = nbrs[_uniform_index(node_rng, len(nbrs))]
    return s, int(t), (), 0


def _select_greedy(a, g, node_rng):
    s = _uniform_index(node_rng, g.n)
    nbrs = g.adjacency[s]
    diff = a[s] - a[nbrs]
    # adjacency is ascending and argmax takes the first maximum, so ties
    # break toward the lowest node id
    t = nbrs[np.argmax(diff * diff)]
    return s, int(t), tuple(int(x) for x in nbrs), len(nbrs)


def _select_sample_greedy(a, g, p, node_rng, activation_rng):
    s = _uniform_index(node_rng, g.n)
    nbrs = g.adjacency[s]
    draws = activation_rng.random(len(nbrs))
    if p > 0.0:
        mask = draws <= p
        active = int(mask.sum())
    else:
        # q <= 0 never activates in the continuous model; skip the
        # comparison so a 0.0 draw cannot break the p=0 degeneration
        active = 0
    if active == 0:
        t = nbrs[_uniform_index(node_rng, len(nbrs))]
        return s, int(t), (), 1
    cand = nbrs[mask]
    diff = a[s] - a[cand]
    t = cand[np.argmax(diff * diff)]
    return s, int(t), tuple(int(x) for x in cand), active


def pairwise_average(state: StateVector, s: int, t: int) -> StateVector:
    """Replace a_s and a_t by their midpoint; everything else unchanged."""
    if s == t:
        raise ValueError(f"exchange needs two distinct nodes, got s=t={s}")
    n = len(state.values)
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"pair ({s},{t}) out of range for n={n}")
    values = state.values.copy()
    mid = 0.5 * (values[s] + values[t])
    values[s] = mid
    values[t] = mid
    return StateVector(values, state.iteration + 1)


def _apply(state, s, t, active_set, probe):
    dsq = float((state.values[s] - state.values[t]) ** 2)
    new = pairwise_average(state, s, t)
    rec = StepRecord(
        iteration=new.iteration,
        source=s,
        active_set=active_set,
        partner=t,
        discrepancy_sq=dsq,
        probe_messages=probe,
    )
    return new, rec


def randomized_step(state: StateVector, g, node_rng) -> tuple[StateVector, StepRecord]:
    """Uniform source, uniform neighbor."""
    s, t, aset, probe = _select_randomized(state.values, g, node_rng)
    return _apply(state, s, t, aset, probe)


def greedy_step(state: StateVector, g, node_rng) -> tuple[StateVector, StepRecord]:
    """Uniform source, neighbor of largest squared discrepancy."""
    s, t, aset, probe = _select_greedy(state.values, g, node_rng)
    return _apply(state, s, t, aset, probe)


def sample_greedy_step(state: StateVector, g, p, node_rng,
                       activation_rng) -> tuple[StateVector, StepRecord]:
    """Greedy over the Bernoulli(p)-activated subset, uniform fallback."""
    p = _check_p(p)
    s, t, aset, probe = _select_sample_greedy(state.values, g, p, node_rng, activation_rng)
    return _apply(state, s, t, aset, probe)


def run(g, a0, algorithm: str, p: float = 0.5, iterations: int = 0,
        master_seed: int = 0, run_index: int = 0, record_pairs: bool = False) -> Trace:
    """Execute L iterations of one algorithm and record the trace.

    The node-selection and activation streams are derived from
    (master_seed, run_index); everything else being equal the trace is
    bit-identical across invocations.  a0 may be a StateVector or a
    plain length-n array.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}, expected one of {ALGORITHMS}")
    p = _check_p(p)
    L = int(iterations)
    if L < 0:
        raise ValueError(f"iterations must be >= 0, got {L}")
    values = a0.values if isinstance(a0, StateVector) else a0
    a = np.array(values, dtype=float)
    if a.shape != (g.n,):
        raise ValueError(f"initial state has shape {a.shape}, expected ({g.n},)")

    node_rng = streams.stream(master_seed, run_index, streams.NODE)
    activation_rng = streams.stream(master_seed, run_index, streams.ACTIVATION)
    if algorithm == RANDOMIZED:
        select = lambda: _select_randomized(a, g, node_rng)
    elif algorithm == GREEDY:
        select = lambda: _select_greedy(a, g, node_rng)
    else:
        select = lambda: _select_sample_greedy(a, g, p, node_rng, activation_rng)

    mean = math.fsum(a) / g.n
    resid = a - mean
    denom_sq = float(np.dot(resid, resid))
    degenerate = denom_sq == 0.0

    rel = np.zeros(L + 1)
    probe = np.zeros(L + 1, dtype=np.int64)
    exch = np.zeros(L + 1, dtype=np.int64)
    rel[0] = 0.0 if degenerate else 1.0
    sources = np.empty(L, dtype=np.int64) if record_pairs else None
    partners = np.empty(L, dtype=np.int64) if record_pairs else None

    for l in range(1, L + 1):
        s, t, _aset, pr = select()
        mid = 0.5 * (a[s] + a[t])
        a[s] = mid
        a[t] = mid
        probe[l] = probe[l - 1] + pr
        exch[l] = exch[l - 1] + 1
        if degenerate:
            rel[l] = 0.0
        else:
            resid = a - mean
            rel[l] = math.sqrt(np.dot(resid, resid) / denom_sq)
        if record_pairs:
            sources[l - 1] = s
            partners[l - 1] = t

    return Trace(
        algorithm=algorithm,
        p=p,
        n=g.n,
        master_seed=int(master_seed),
        run_index=int(run_index),
        rel_error=rel,
        probe_messages=probe,
        exchange_messages=exch,
        final_values=a,
        degenerate=degenerate,
        sources=sources,
        partners=partners,
    )
