"""Shared numeric configuration for comparisons, limit schedules, and sampling.

A single frozen dataclass travels through every estimator and check so that a
run is fully determined by (inputs, config).  ``seed`` drives every random
sample drawn anywhere in the package.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from .exceptions import ParseError


@dataclass(frozen=True)
class Config:
    # comparison / feasibility tolerances
    cmp_tol: float = 1e-12      # endpoint tie tolerance for dominance tests
    conv_tol: float = 1e-6      # Cauchy window / cross-schedule agreement tolerance
    feas_tol: float = 1e-8      # feasibility and zero-containment slack
    slack_tol: float = 1e-8     # complementary-slackness tolerance

    # limit schedule: step_k = step0 * decay**k, perturbation eps_k = perturb0 * decay**k
    step0: float = 0.1
    decay: float = 0.5
    max_steps: int = 30
    num_seeds: int = 4          # randomized perturbation schedules per joint limit
    perturb0: float = 0.1
    norm_cap: float = 1e6       # iterate norm beyond which a schedule is declared divergent

    # sampling
    num_directions: int = 64    # direction samples for for-all-direction checks
    grid_resolution: int = 401  # grid points per axis for region scans
    random_points: int = 128    # additional random region samples
    convexity_samples: int = 300
    linearity_scales: tuple = (2.0, 0.5, -1.0)

    # cone probing
    cone_step0: float = 1e-3
    cone_probes: int = 8

    # multiplier search
    fj_direction_mode: str = "for_all"   # or "exists"

    # desk-scale SVM guards
    svm_max_dim: int = 4
    svm_max_samples: int = 50
    svm_enum_cap: int = 200_000

    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.decay < 1.0):
            raise ValueError("decay must lie in (0, 1)")
        if self.step0 <= 0 or self.perturb0 < 0:
            raise ValueError("step0 must be positive and perturb0 nonnegative")
        if self.max_steps < 4:
            raise ValueError("max_steps must be at least 4")
        if self.fj_direction_mode not in ("for_all", "exists"):
            raise ValueError("fj_direction_mode must be 'for_all' or 'exists'")

    def replace(self, **kw) -> "Config":
        return dataclasses.replace(self, **kw)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["linearity_scales"] = list(self.linearity_scales)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ParseError(f"unknown config keys: {sorted(unknown)}")
        if "linearity_scales" in d:
            d = dict(d, linearity_scales=tuple(d["linearity_scales"]))
        try:
            return cls(**d)
        except (TypeError, ValueError) as e:
            raise ParseError(f"bad config value: {e}") from e

    @classmethod
    def from_json(cls, path) -> "Config":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"cannot read config {path}: {e}") from e
        if not isinstance(data, dict):
            raise ParseError("config file must hold a JSON object")
        data.pop("format", None)   # presentation-only key, consumed by the CLI
        return cls.from_dict(data)


DEFAULT_CONFIG = Config()
