"""Initial value assignments over a network's node positions.

Four generators: a sum of Gaussian bumps, a linear ramp, a single spike,
and i.i.d. standard normal draws.  All are pure functions of the graph,
their parameters, and (for the normal field) the caller's stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

DEFAULT_BUMPS = ((0.3, 0.3, 1.0, 0.15), (0.7, 0.7, 0.5, 0.15))


@dataclass(frozen=True)
class FieldSpec:
    """Declarative field choice, parsed from experiment configs.

    kind is one of gaussian_bumps, linear, spike, random_normal.  bumps
    holds (center_x, center_y, amplitude, width) tuples; spike is a node
    id; seed feeds the normal field when the caller does not pass its
    own stream.
    """

    kind: str
    bumps: tuple = DEFAULT_BUMPS
    spike: int = 0
    seed: int | None = None

    KINDS = ("gaussian_bumps", "linear", "spike", "random_normal")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}, expected one of {self.KINDS}")
        if self.kind == "gaussian_bumps":
            if not self.bumps:
                raise ValueError("gaussian_bumps needs at least one bump")
            for b in self.bumps:
                if len(b) != 4:
                    raise ValueError(f"bump must be (cx, cy, amplitude, width), got {b!r}")
                if b[3] <= 0:
                    raise ValueError(f"bump width must be > 0, got {b[3]}")

    @classmethod
    def from_dict(cls, obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        kwargs = {}
        if "bumps" in obj:
            kwargs["bumps"] = tuple(tuple(float(v) for v in b) for b in obj["bumps"])
        if "spike" in obj:
            kwargs["spike"] = int(obj["spike"])
        if "seed" in obj:
            kwargs["seed"] = int(obj["seed"])
        return cls(kind=kind, **kwargs)


def gaussian_bumps(g, bumps=DEFAULT_BUMPS) -> np.ndarray:
    """Sum of isotropic Gaussians evaluated at each node position.

    a_s = sum_b amplitude_b * exp(-((x_s-cx_b)^2 + (y_s-cy_b)^2) / (2 w_b^2))
    """
    if not bumps:
        raise ValueError("gaussian_bumps needs at least one bump")
    out = np.zeros(g.n)
    for cx, cy, amplitude, width in bumps:
        if width <= 0:
            raise ValueError(f"bump width must be > 0, got {width}")
        dist_sq = (g.positions[:, 0] - cx) ** 2 + (g.positions[:, 1] - cy) ** 2
        out += amplitude * np.exp(-dist_sq / (2.0 * width**2))
    return out


def linear_field(g) -> np.ndarray:
    """Linear ramp a_s = x_s + y_s across the unit square."""
    return g.positions[:, 0] + g.positions[:, 1]


def spike_field(g, spike: int) -> np.ndarray:
    """One node holds 1, everyone else 0."""
    spike = int(spike)
    if not 0 <= spike < g.n:
        raise IndexError(f"spike node {spike} out of range for n={g.n}")
    out = np.zeros(g.n)
    out[spike] = 1.0
    return out


def random_normal_field(g, rng: np.random.Generator) -> np.ndarray:
    """I.i.d. standard normal values, one per node.

    Generated by inverse-CDF over 53-bit uniforms on the open unit
    interval rather than the stream's native normal method, so a given
    stream state reproduces the same vector on any build.
    """
    u = rng.integers(1, 1 << 53, size=g.n) / float(1 << 53)
    return ndtri(u)


def make_field(g, spec: FieldSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """Evaluate a FieldSpec against a graph.

    random_normal uses ``rng`` when given, otherwise a fresh stream from
    ``spec.seed``.
    """
    if spec.kind == "gaussian_bumps":
        return gaussian_bumps(g, spec.bumps)
    if spec.kind == "linear":
        return linear_field(g)
    if spec.kind == "spike":
        return spike_field(g, spec.spike)
    if rng is None:
        if spec.seed is None:
            raise ValueError("random_normal field needs a stream or a seed")
        rng = np.random.default_rng(spec.seed)
    return random_normal_field(g, rng)
