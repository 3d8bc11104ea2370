"""Run configuration: one flat document, JSON or TOML, overridable by flags.

Every pipeline command resolves a single RunConfig and echoes it into the
artifacts it writes, so a run directory records exactly how it was made.
Data paths left unset fall back to the bundled toy dataset.
"""
from __future__ import annotations

import json

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .data import toy_paths

VARIANTS = ("mfs", "selectk", "sensecontext", "selfattn", "dense-gru", "dense-transformer")
LOCALIZED_VARIANTS = ("mfs", "selectk", "sensecontext", "selfattn")
MODEL_KINDS = ("gold", "gru", "transformer")
CONTEXT_KINDS = ("average", "gru")

CONFIG_FORMAT = "multisense-run-config"


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass
class RunConfig:
    # data paths (None -> bundled toy dataset)
    pretrain: str | None = None
    labelled: str | None = None
    inventory: str | None = None
    vectors: str | None = None
    out_dir: str = "runs"
    # model selection
    lm: str = "gru"
    variant: str = "mfs"
    k: int = 1
    context: str = "average"
    context_window: int = 20
    use_graph: bool = False
    max_area_nodes: int = 32
    # sizes and training
    hidden_dim: int = 64
    num_layers: int = 3
    num_heads: int = 4
    ff_mult: int = 4
    embed_dim: int = 32
    context_len: int = 64
    lr: float = 2e-3
    epochs: int = 10
    window: int = 16
    min_freq: int = 2
    seed: int = 0

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        path = Path(path)
        if path.suffix == ".toml":
            raw = tomllib.loads(path.read_text())
        else:
            raw = json.loads(path.read_text())
        raw.pop("format", None)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"{path}: unknown config key(s): {', '.join(unknown)}")
        return cls(**raw)

    def apply_overrides(self, overrides: dict) -> "RunConfig":
        """New config with the non-None entries of ``overrides`` applied."""
        merged = asdict(self)
        for key, value in overrides.items():
            if value is not None:
                if key not in merged:
                    raise ConfigError(f"unknown config key: {key}")
                merged[key] = value
        return RunConfig(**merged)

    def validate(self) -> "RunConfig":
        if self.lm not in MODEL_KINDS:
            raise ConfigError(f"lm must be one of {MODEL_KINDS}, got {self.lm!r}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.context not in CONTEXT_KINDS:
            raise ConfigError(f"context must be one of {CONTEXT_KINDS}, got {self.context!r}")
        if self.variant in LOCALIZED_VARIANTS and self.k < 1:
            raise ConfigError(f"variant {self.variant!r} needs k >= 1, got {self.k}")
        positive = (
            ("context_window", self.context_window),
            ("max_area_nodes", self.max_area_nodes),
            ("hidden_dim", self.hidden_dim),
            ("num_layers", self.num_layers),
            ("num_heads", self.num_heads),
            ("ff_mult", self.ff_mult),
            ("embed_dim", self.embed_dim),
            ("window", self.window),
            ("min_freq", self.min_freq),
        )
        for name, value in positive:
            if value < 1:
                raise ConfigError(f"{name} must be >= 1, got {value}")
        if self.context_len < 2:
            raise ConfigError(f"context_len must be >= 2, got {self.context_len}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.lr <= 0:
            raise ConfigError(f"lr must be positive, got {self.lr}")
        return self

    def resolved_paths(self) -> dict[str, Path]:
        """Data paths with the bundled toy dataset filling the gaps."""
        toy = toy_paths()
        chosen = {
            "pretrain": self.pretrain,
            "labelled": self.labelled,
            "inventory": self.inventory,
            "vectors": self.vectors,
        }
        out = {}
        for name, value in chosen.items():
            path = Path(value) if value is not None else toy[name]
            if not path.exists():
                raise FileNotFoundError(f"{name} file does not exist: {path}")
            out[name] = path
        return out

    def to_json(self) -> dict:
        payload = {"format": CONFIG_FORMAT}
        payload.update(asdict(self))
        return payload

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n")
