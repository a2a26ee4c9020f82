"""Model checkpointing: weight file plus a metadata block carrying the model
kind, its config echo, and the fitted normalization statistics, so inference
is self-contained."""

from __future__ import annotations

import numpy as np

from ..dsp import NormalizationSpec
from ..nn import CheckpointError, load_checkpoint, save_checkpoint
from .fusion import FusionConfig, FusionModel
from .mcaff import McaffConfig, McaffModel

__all__ = ["save_model", "load_model"]


def save_model(path, model, norm: NormalizationSpec | None = None,
               extra: dict | None = None) -> None:
    meta = {"kind": model.KIND, "config": model.cfg.to_dict()}
    if norm is not None:
        meta["norm"] = norm.to_dict()
    if extra:
        meta["extra"] = extra
    save_checkpoint(path, model.params(), meta)


def load_model(path, dtype=np.float32):
    """Rebuild the model from its config echo and load the stored weights.

    Returns (model, normalization or None, metadata dict).
    """
    arrays, meta = load_checkpoint(path)
    if not meta or "kind" not in meta or "config" not in meta:
        raise CheckpointError(f"{path} has no model metadata block")
    kind = meta["kind"]
    if kind == FusionModel.KIND:
        model = FusionModel(FusionConfig.from_dict(meta["config"]), dtype=dtype)
    elif kind == McaffModel.KIND:
        model = McaffModel(McaffConfig.from_dict(meta["config"]), dtype=dtype)
    else:
        raise CheckpointError(f"unknown model kind {kind!r}")
    params = model.params()
    if len(params) != len(arrays):
        raise CheckpointError(
            f"checkpoint holds {len(arrays)} tensors, model expects {len(params)}")
    for p, a in zip(params, arrays):
        if p.data.shape != a.shape:
            raise CheckpointError(f"shape mismatch: {p.data.shape} vs stored {a.shape}")
        p.data[...] = a.astype(p.data.dtype)
    norm = NormalizationSpec.from_dict(meta["norm"]) if "norm" in meta else None
    return model, norm, meta
