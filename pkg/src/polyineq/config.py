"""Numeric tolerances, resolutions and sweep sizes in one place.

Every operation that depends on a tunable takes an optional ``config``
argument; ``None`` means :data:`DEFAULT_CONFIG`.  Reports serialize the
config they were produced with so that rows can be recomputed.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Config:
    # geometry
    contain_tol: float = 1e-9
    unit_tol: float = 1e-12
    angle_cells: int = 720
    refine_cells: int = 4
    angle_tol: float = 1e-13
    n_starts: int = 64
    ascent_max_iter: int = 400
    alpha_tol: float = 1e-10

    # inscribed ellipses
    ellipse_cert_tol: float = 1e-9
    disc_cuts: int = 2048

    # LP
    lp_tol: float = 1e-9
    lp_max_iter: int = 200000

    # oracle discretization
    grid_resolution: int = 41
    grid_resolution_1d: int = 401
    boundary_samples: int = 64
    c_sweep: int = 33
    sweep_delta: float = 2.5e-4
    c_refine_tol: float = 1e-4
    local_steps: int = 15
    local_radius: float = 0.03

    # pluripotential normal derivative
    eps_max: float = 1e-3
    eps_min: float = 1e-7
    eps_count: int = 9

    # scans
    scan_grid: int = 10
    square_grid: int = 100
    hyp_grid: int = 5
    scan_directions: int = 8
    scan_degree: int = 2
    conj_grid: int = 3
    conj_directions: int = 4
    conj_c_sweep: int = 9
    conj_resolution: int = 21
    conj_flag_tol: float = 0.02
    hyp_tol: float = 1e-3
    ineq_slack: float = 1e-9
    oracle_bracket_tol: float = 0.02
    square_lo: float = 2.25
    square_hi: float = 2.2883

    seed: int = 0
    workers: int = 1
    record_timestamps: bool = False

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name in ("seed", "record_timestamps"):
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"config field {f.name!r} must be numeric")
            if value <= 0:
                raise ValueError(f"config field {f.name!r} must be positive, got {value}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.sweep_delta >= 1:
            raise ValueError("sweep_delta must lie in (0, 1)")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path) -> "Config":
        return cls.from_dict(json.loads(Path(path).read_text()))


DEFAULT_CONFIG = Config()


def resolve(config: Config | None) -> Config:
    return DEFAULT_CONFIG if config is None else config
