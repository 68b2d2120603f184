"""Run configuration: resource bounds, shear search bound, seed, pole convention."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path

import yaml

from .groebner import DEFAULT_MAX_BASIS_SIZE, DEFAULT_MAX_DEGREE, Limits


@dataclass(frozen=True)
class Config:
    max_basis_size: int = DEFAULT_MAX_BASIS_SIZE
    max_degree: int = DEFAULT_MAX_DEGREE
    shear_search_bound: int = 200
    seed: int = 0
    strict_pole: bool = False

    @property
    def limits(self) -> Limits:
        return Limits(self.max_basis_size, self.max_degree)

    @property
    def min_pole(self) -> int:
        """Smallest accepted pole order of a transition coefficient."""
        return 2 if self.strict_pole else 1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_mapping(cls, data: dict) -> "Config":
        known = {f.name: f.type for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        out = {}
        for k, v in data.items():
            if k == "strict_pole":
                if not isinstance(v, bool):
                    raise ValueError("strict_pole must be a boolean")
            elif not isinstance(v, int) or isinstance(v, bool) or (v < 1 and k != "seed"):
                raise ValueError(f"{k} must be a positive integer")
            out[k] = v
        return cls(**out)


def load_config(path: str | Path) -> Config:
    """Read a YAML (or JSON, which is valid YAML) mapping of configuration keys."""
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: configuration must be a mapping")
    return Config.from_mapping(data)
