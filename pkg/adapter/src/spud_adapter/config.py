"""Adapter run configuration."""

from __future__ import annotations

from dataclasses import dataclass

REGIMES = ("alm", "mlm_pppl", "mlm_pppl_l2r")


@dataclass
class AdapterConfig:
    model: str
    regime: str = "mlm_pppl"
    layer: int | None = None
    batch_size: int = 16
    device: str = "cpu"
    randomize_weights: bool = False

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}, got {self.regime!r}")
        if self.layer is not None and self.layer < 0:
            raise ValueError("layer index must be non-negative")
        if self.batch_size < 1:
            raise ValueError("batch size must be positive")
