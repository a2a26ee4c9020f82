"""Classical angle-of-arrival feature vector: 22 statistics per antenna patch.

Groups: temporal (6), spectral (6), energy (3), envelope (4), and phase
difference against the reference patch 0 (3). All depend on the sample
magnitudes or on inter-patch phase differences, except the zero-crossing
rate of the in-phase component, which is the one feature sensitive to a
global phase rotation.
"""

from __future__ import annotations

import logging

import numpy as np

from .fourier import fft, fftshift

__all__ = ["aoa_features", "fit_aoa_stats", "standardize_aoa", "N_AOA_FEATURES", "AOA_FEATURE_NAMES"]

logger = logging.getLogger(__name__)

N_AOA_FEATURES = 22

AOA_FEATURE_NAMES = (
    "env_mean_t", "env_std_t", "env_skew", "env_kurtosis", "rms", "zcr_i",
    "spec_centroid", "spec_spread", "spec_flatness", "spec_rolloff85",
    "spec_peak_freq", "spec_entropy",
    "energy_total", "papr", "energy_central_frac",
    "env_mean", "env_std", "env_max", "env_crest",
    "phasediff_circ_mean", "phasediff_circ_std", "if_diff_mean",
)

_EPS = 1e-20


def aoa_features(samples: np.ndarray, fs: float) -> np.ndarray:
    """(4, N) or (M, 4, N) complex samples -> (4, 22) or (M, 4, 22) features.

    Patch 0 is the phase reference, so its three phase-difference features
    are identically zero. Zero-energy channels get zeroed spectral/envelope
    features and are flagged in the log.
    """
    x = np.asarray(samples)
    single = x.ndim == 2
    if single:
        x = x[None]
    if x.ndim != 3 or x.shape[1] != 4:
        raise ValueError(f"aoa_features expects (4, N) or (M, 4, N), got {np.shape(samples)}")
    M, _, N = x.shape
    out = np.zeros((M, 4, N_AOA_FEATURES), dtype=np.float64)

    env = np.abs(x)
    energy = (env ** 2).sum(axis=-1)                      # (M, 4)
    dead = energy == 0
    if np.any(dead):
        logger.warning("aoa_features: %d zero-energy channel(s); spectral/envelope features set to 0",
                       int(dead.sum()))

    # temporal -----------------------------------------------------------
    mu = env.mean(axis=-1)
    sig = env.std(axis=-1)
    cen = env - mu[..., None]
    safe_sig = np.where(sig > 0, sig, 1.0)
    out[..., 0] = mu
    out[..., 1] = sig
    out[..., 2] = np.where(sig > 0, (cen ** 3).mean(axis=-1) / safe_sig ** 3, 0.0)
    out[..., 3] = np.where(sig > 0, (cen ** 4).mean(axis=-1) / safe_sig ** 4, 0.0)
    rms = np.sqrt((env ** 2).mean(axis=-1))
    out[..., 4] = rms
    i_part = x.real
    out[..., 5] = (i_part[..., 1:] * i_part[..., :-1] < 0).mean(axis=-1)

    # spectral (on the shifted 1024-bin power spectrum) -------------------
    P = fftshift(np.abs(fft(x)) ** 2)
    f = (np.arange(N) - N // 2) * (fs / N)                # shifted bin freqs, Hz
    Ptot = P.sum(axis=-1)
    Psafe = np.where(Ptot > 0, Ptot, 1.0)
    p = P / Psafe[..., None]
    centroid = (f * p).sum(axis=-1)
    out[..., 6] = centroid
    out[..., 7] = np.sqrt((((f - centroid[..., None]) ** 2) * p).sum(axis=-1))
    out[..., 8] = np.exp(np.log(P + _EPS).mean(axis=-1)) / (P.mean(axis=-1) + _EPS)
    cum = np.cumsum(P, axis=-1)
    roll_idx = np.argmax(cum >= 0.85 * Ptot[..., None], axis=-1)
    out[..., 9] = f[roll_idx]
    out[..., 10] = f[np.argmax(P, axis=-1)]
    out[..., 11] = -(p * np.log(p + _EPS)).sum(axis=-1)

    # energy ---------------------------------------------------------------
    out[..., 12] = energy
    peak = (env ** 2).max(axis=-1)
    mean_pow = np.where(energy > 0, energy / N, 1.0)
    out[..., 13] = np.where(energy > 0, peak / mean_pow, 0.0)
    central = np.abs(f) <= fs / 4
    out[..., 14] = P[..., central].sum(axis=-1) / Psafe

    # envelope ---------------------------------------------------------------
    out[..., 15] = mu
    out[..., 16] = sig
    out[..., 17] = env.max(axis=-1)
    out[..., 18] = np.where(rms > 0, env.max(axis=-1) / np.where(rms > 0, rms, 1.0), 0.0)

    # phase difference vs patch 0 ------------------------------------------
    z = x * np.conj(x[:, :1])                            # (M, 4, N)
    zmag = np.abs(z)
    unit = np.where(zmag > 0, z / np.where(zmag > 0, zmag, 1.0), 0.0)
    count = (zmag > 0).sum(axis=-1)
    m = unit.sum(axis=-1) / np.maximum(count, 1)
    m = np.where(count > 0, m, 1.0 + 0.0j)               # dead pair: mean 0, std 0
    out[..., 19] = np.angle(m)
    R = np.clip(np.abs(m), 1e-12, 1.0)
    out[..., 20] = np.sqrt(-2.0 * np.log(R))

    inc = x[..., 1:] * np.conj(x[..., :-1])
    phi = np.where(np.abs(inc) > 0, np.angle(inc), 0.0)
    mean_if = phi.mean(axis=-1) * fs / (2.0 * np.pi)
    out[..., 21] = mean_if - mean_if[:, :1]
    out[:, 0, 19:22] = 0.0               # self-reference: exactly zero by definition

    # zero out spectral + envelope features of dead channels
    spectral_env = [6, 7, 8, 9, 10, 11, 13, 14, 15, 16, 17, 18]
    if np.any(dead):
        out[dead[..., None] & np.isin(np.arange(N_AOA_FEATURES), spectral_env)] = 0.0

    return out[0] if single else out


def fit_aoa_stats(features: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-(patch, feature) mean/std over a training batch (M, 4, 22).

    Features that are constant on the fit split (the patch-0 phase
    references, by construction) get std 1 so they standardize to 0.
    """
    feats = np.asarray(features)
    if feats.ndim != 3:
        raise ValueError("fit_aoa_stats expects a batch (M, 4, 22)")
    mean = feats.mean(axis=0)
    std = feats.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return mean, std


def standardize_aoa(features: np.ndarray, norm) -> np.ndarray:
    """Apply fitted train-split statistics: (..., 4, 22) -> same shape."""
    if norm.aoa_mean is None or norm.aoa_std is None:
        raise ValueError("normalization spec has no fitted AoA statistics")
    return (np.asarray(features) - norm.aoa_mean) / norm.aoa_std
