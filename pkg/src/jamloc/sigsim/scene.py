"""Hall propagation model: direct path plus first-order image-source
reflections, free-space loss, per-crossing wall attenuation, narrowband
steering, and additive receiver noise.

Walls and reflectors are vertical surfaces given by 2-D plan-view segments;
crossing tests and mirror images are computed in the plan and combined with
the source height for 3-D path lengths and arrival directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import C_LIGHT, ArrayGeometry
from .records import IQSnapshot, Label

__all__ = ["WallSegment", "Reflector", "SceneConfig", "PropPath",
           "compute_paths", "propagate"]


@dataclass(frozen=True)
class WallSegment:
    """Absorber wall: attenuates every crossing path; may also reflect."""

    x1: float
    y1: float
    x2: float
    y2: float
    transmission_loss_db: float
    reflection_coeff: float = 0.1

    def __post_init__(self):
        if not 0.0 <= self.reflection_coeff <= 1.0:
            raise ValueError("reflection_coeff must be in [0, 1]")

    @property
    def a(self) -> np.ndarray:
        return np.array([self.x1, self.y1])

    @property
    def b(self) -> np.ndarray:
        return np.array([self.x2, self.y2])


@dataclass(frozen=True)
class Reflector:
    """Purely reflective surface (hall boundary); never crossed by interior paths."""

    x1: float
    y1: float
    x2: float
    y2: float
    reflection_coeff: float

    @property
    def a(self) -> np.ndarray:
        return np.array([self.x1, self.y1])

    @property
    def b(self) -> np.ndarray:
        return np.array([self.x2, self.y2])


@dataclass
class SceneConfig:
    """Hall with x in [-ex/2, ex/2], y in [0, ey], z in [0, ez]."""

    hall_extent: tuple = (20.0, 30.0, 8.0)
    antenna_position: tuple = (0.0, 1.0, 1.0)
    wall_segments: list = field(default_factory=list)
    ambient_reflectors: list = field(default_factory=list)
    noise_floor_dbm: float | None = -90.0
    sample_rate: float = 1e8
    snapshot_len: int = 1024


@dataclass
class PropPath:
    direction: np.ndarray        # unit vector antenna -> (image) source
    distance: float              # 3-D path length, m
    gain: float                  # reflection x transmission product (free space excluded)
    kind: str


# ----------------------------------------------------------------------
# 2-D plan geometry
# ----------------------------------------------------------------------

def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segments_cross(p, q, a, b) -> bool:
    """Strict proper intersection of open segments pq and ab."""
    d1 = _cross(a, b, p)
    d2 = _cross(a, b, q)
    d3 = _cross(p, q, a)
    d4 = _cross(p, q, b)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def _intersect_param(p, q, a, b):
    """Parameter t on pq and u on ab of the line intersection, or None if parallel."""
    d1 = q - p
    d2 = b - a
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < 1e-12:
        return None
    w = a - p
    t = (w[0] * d2[1] - w[1] * d2[0]) / denom
    u = (w[0] * d1[1] - w[1] * d1[0]) / denom
    return t, u


def _mirror_point(p, a, b) -> np.ndarray:
    d = b - a
    d = d / np.linalg.norm(d)
    v = p - a
    proj = a + d * (v @ d)
    return 2.0 * proj - p


def _side(p, a, b) -> float:
    return _cross(a, b, p)


def _transmission_gain(leg_p, leg_q, walls, exclude=None) -> float:
    gain = 1.0
    for w in walls:
        if w is exclude:
            continue
        if _segments_cross(leg_p, leg_q, w.a, w.b):
            gain *= 10.0 ** (-w.transmission_loss_db / 20.0)
    return gain


# ----------------------------------------------------------------------
# path enumeration
# ----------------------------------------------------------------------

def compute_paths(scene: SceneConfig, antenna: np.ndarray, jammer: np.ndarray) -> list[PropPath]:
    """Direct path plus one single-bounce path per reflecting surface."""
    ant_xy, jam_xy = antenna[:2], jammer[:2]
    walls = list(scene.wall_segments)
    paths = []

    delta = jammer - antenna
    d_direct = float(np.linalg.norm(delta))
    paths.append(PropPath(direction=delta / d_direct, distance=d_direct,
                          gain=_transmission_gain(ant_xy, jam_xy, walls), kind="direct"))

    surfaces = [(r, r.reflection_coeff) for r in scene.ambient_reflectors]
    surfaces += [(w, w.reflection_coeff) for w in walls]
    for i, (s, coeff) in enumerate(surfaces):
        if coeff <= 0.0:
            continue
        side_j = _side(jam_xy, s.a, s.b)
        side_a = _side(ant_xy, s.a, s.b)
        if side_j * side_a <= 0:       # both must sit strictly on the same side
            continue
        img_xy = _mirror_point(jam_xy, s.a, s.b)
        hit = _intersect_param(ant_xy, img_xy, s.a, s.b)
        if hit is None:
            continue
        t, u = hit
        if not (0.0 < t < 1.0 and 0.0 <= u <= 1.0):
            continue
        refl_xy = ant_xy + t * (img_xy - ant_xy)
        img3 = np.array([img_xy[0], img_xy[1], jammer[2]])
        vec = img3 - antenna
        dist = float(np.linalg.norm(vec))
        gain = coeff
        gain *= _transmission_gain(jam_xy, refl_xy, walls, exclude=s)
        gain *= _transmission_gain(refl_xy, ant_xy, walls, exclude=s)
        paths.append(PropPath(direction=vec / dist, distance=dist, gain=gain,
                              kind=f"reflect:{i}"))
    return paths


# ----------------------------------------------------------------------
# snapshot synthesis
# ----------------------------------------------------------------------

def propagate(scene: SceneConfig, geometry: ArrayGeometry, jammer_pos,
              waveform: np.ndarray, rng: np.random.Generator, *,
              class_id: int = -1, subclass_id: int = -1,
              scenario_tag: str = "") -> IQSnapshot:
    """Synthesize the 4-channel snapshot received from a jammer at ``jammer_pos``.

    ``waveform`` carries the transmit scale: unit average power corresponds
    to 0 dBm, and amplitudes combine free-space loss 20*log10(4 pi d / lambda),
    wall crossings, and reflection coefficients. Per-path delay is an
    integer-sample shift plus the exact carrier phase rotation.
    """
    jammer = np.asarray(jammer_pos, dtype=np.float64)
    antenna = np.asarray(scene.antenna_position, dtype=np.float64)
    ex, ey, ez = scene.hall_extent
    if not (abs(jammer[0]) <= ex / 2 and 0 <= jammer[1] <= ey and 0 <= jammer[2] <= ez):
        raise ValueError(f"jammer {jammer.tolist()} outside hall extent {scene.hall_extent}")
    if np.linalg.norm(jammer - antenna) < 1e-6:
        raise ValueError("jammer coincides with the antenna position")

    waveform = np.asarray(waveform)
    n = waveform.shape[-1]
    lam = geometry.wavelength
    fs = scene.sample_rate
    paths = compute_paths(scene, antenna, jammer)
    d_ref = paths[0].distance

    out = np.zeros((4, n), dtype=np.complex128)
    for p in paths:
        amp = (lam / (4.0 * np.pi * p.distance)) * p.gain
        if amp == 0.0:
            continue
        carrier = np.exp(-2j * np.pi * p.distance / lam)
        shift = int(round((p.distance - d_ref) / C_LIGHT * fs))
        if shift >= n:
            continue
        delayed = waveform if shift == 0 else np.concatenate(
            [np.zeros(shift, dtype=waveform.dtype), waveform[: n - shift]])
        steer = geometry.steering_vector(p.direction)
        out += (amp * carrier) * steer[:, None] * delayed[None, :]

    if scene.noise_floor_dbm is not None:
        sigma = np.sqrt(10.0 ** (scene.noise_floor_dbm / 10.0) / 2.0)
        out += rng.normal(scale=sigma, size=(4, n)) + 1j * rng.normal(scale=sigma, size=(4, n))

    label = Label.from_displacement(jammer - antenna, class_id, subclass_id)
    return IQSnapshot(samples=out, label=label, scenario_tag=scenario_tag)
