"""Snapshot and label records shared by the simulator, dataset IO, and training."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Label", "IQSnapshot", "angles_from_displacement"]


def angles_from_displacement(dx: float, dy: float, dz: float) -> tuple[float, float]:
    """Azimuth in [-180, 180) and elevation in [-90, 90], degrees."""
    alpha = float(np.degrees(np.arctan2(dy, dx)))
    if alpha >= 180.0:
        alpha -= 360.0
    beta = float(np.degrees(np.arctan2(dz, np.hypot(dx, dy))))
    return alpha, beta


@dataclass
class Label:
    """Jammer-minus-antenna displacement (m), derived angles (deg), class ids."""

    dx: float
    dy: float
    dz: float
    alpha_deg: float
    beta_deg: float
    class_id: int
    subclass_id: int

    @classmethod
    def from_displacement(cls, delta, class_id: int = -1, subclass_id: int = -1) -> "Label":
        dx, dy, dz = (float(v) for v in delta)
        alpha, beta = angles_from_displacement(dx, dy, dz)
        return cls(dx, dy, dz, alpha, beta, int(class_id), int(subclass_id))

    @property
    def displacement(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz])


@dataclass
class IQSnapshot:
    """One 4-patch complex baseband snapshot with its ground truth."""

    samples: np.ndarray          # (4, snapshot_len) complex
    label: Label
    scenario_tag: str = ""

    def __post_init__(self):
        self.samples = np.asarray(self.samples)
        if self.samples.ndim != 2 or self.samples.shape[0] != 4:
            raise ValueError(f"snapshot needs 4 channels, got shape {self.samples.shape}")
