"""Labeled snapshot dataset generation.

Each pose draws from an independent generator seeded by
(seed, seed_channel, pose_index), so generation is order-stable and can be
split across workers without changing the result.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geometry import ArrayGeometry
from .jammers import JammerProfile, gen_baseband
from .records import IQSnapshot
from .scene import SceneConfig, propagate
from .trajectory import DEFAULT_HEIGHTS, gen_trajectory

__all__ = ["SimConfig", "make_dataset"]


@dataclass
class SimConfig:
    """Simulation section of a run: scene, trajectory, and jammer profiles.

    assignment "cycle" gives pose i the profile i mod len(profiles) (one
    snapshot per pose); "cross" emits one snapshot per (pose, profile) pair.
    """

    scene: SceneConfig = field(default_factory=SceneConfig)
    trajectory_kind: str = "circles"
    trajectory_params: dict = field(default_factory=dict)
    heights: tuple = DEFAULT_HEIGHTS
    profiles: list[JammerProfile] = field(default_factory=list)
    assignment: str = "cycle"
    pose_jitter_m: float = 0.0
    scenario_tag: str = "Random"
    seed_channel: int = 0


def _pose_snapshots(cfg: SimConfig, geometry: ArrayGeometry, seed: int,
                    index: int, pose: np.ndarray) -> list[IQSnapshot]:
    rng = np.random.default_rng([seed, cfg.seed_channel, index])
    if cfg.pose_jitter_m > 0:
        pose = pose.copy()
        pose[:2] += rng.uniform(-cfg.pose_jitter_m, cfg.pose_jitter_m, size=2)
    if cfg.assignment == "cycle":
        profiles = [cfg.profiles[index % len(cfg.profiles)]]
    elif cfg.assignment == "cross":
        profiles = cfg.profiles
    else:
        raise ValueError(f"unknown profile assignment {cfg.assignment!r}")
    out = []
    for prof in profiles:
        wf = gen_baseband(prof, cfg.scene.snapshot_len, cfg.scene.sample_rate, rng)
        wf = wf * 10.0 ** (prof.power_dbm / 20.0)
        out.append(propagate(cfg.scene, geometry, pose, wf, rng,
                             class_id=prof.class_id, subclass_id=prof.subclass_id,
                             scenario_tag=cfg.scenario_tag))
    return out


def _pose_chunk(args) -> list[IQSnapshot]:
    cfg, geometry, seed, chunk = args
    out = []
    for index, pose in chunk:
        out.extend(_pose_snapshots(cfg, geometry, seed, index, pose))
    return out


def make_dataset(cfg: SimConfig, geometry: ArrayGeometry, seed: int,
                 jobs: int = 1) -> list[IQSnapshot]:
    """Generate one labeled snapshot list; deterministic for a fixed seed."""
    if not cfg.profiles:
        raise ValueError("no jammer profiles configured")
    for p in cfg.profiles:
        if not isinstance(p, JammerProfile):
            raise TypeError("profiles must be JammerProfile instances")
    poses = gen_trajectory(cfg.trajectory_kind, cfg.trajectory_params, cfg.heights)
    if len(poses) == 0:
        raise ValueError("trajectory produced no poses")

    if jobs <= 1:
        snapshots = []
        for index, pose in enumerate(poses):
            snapshots.extend(_pose_snapshots(cfg, geometry, seed, index, pose))
        return snapshots

    indexed = list(enumerate(poses))
    chunks = [indexed[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_pose_chunk, [(cfg, geometry, seed, c) for c in chunks]))
    # reassemble in pose order regardless of scheduling
    merged: list[tuple[int, IQSnapshot]] = []
    for chunk, snaps in zip(chunks, results):
        per_pose = len(snaps) // max(len(chunk), 1)
        for (index, _), start in zip(chunk, range(0, len(snaps), per_pose)):
            for k in range(per_pose):
                merged.append((index * per_pose + k, snaps[start + k]))
    merged.sort(key=lambda t: t[0])
    return [s for _, s in merged]
