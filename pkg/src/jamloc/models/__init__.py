"""Localization models and their checkpoint IO."""

from .common import ALPHA_SCALE, BETA_SCALE, Prediction
from .fusion import (AoaEncoder, FusionConfig, FusionModel, IQEncoder,
                     SpectrogramEncoder, tiny_fusion_config)
from .io import load_model, save_model
from .mcaff import (ALL_PATHS, MCAFF_PRESETS, McaffConfig, McaffModel,
                    SharedAttention, tiny_mcaff_config)

__all__ = [
    "Prediction", "ALPHA_SCALE", "BETA_SCALE",
    "FusionConfig", "FusionModel", "tiny_fusion_config",
    "SpectrogramEncoder", "IQEncoder", "AoaEncoder",
    "McaffConfig", "McaffModel", "tiny_mcaff_config",
    "SharedAttention", "MCAFF_PRESETS", "ALL_PATHS",
    "save_model", "load_model",
]
