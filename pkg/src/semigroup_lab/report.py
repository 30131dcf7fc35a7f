"""Structured pass/fail records for residual and property checks."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


def inputs_digest(params: dict) -> str:
    """Stable hash of a resolved parameter mapping."""
    canon = json.dumps(params, sort_keys=True, default=repr)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


@dataclass
class VerificationReport:
    """Outcome of one named check: residuals against tolerances."""

    name: str
    inputs_digest: str = ""
    residuals: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(
            self.residuals[k] <= self.tolerances[k]
            for k in self.tolerances
            if k in self.residuals
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs_digest": self.inputs_digest,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "tolerances": {k: float(v) for k, v in self.tolerances.items()},
            "pass": self.passed,
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
