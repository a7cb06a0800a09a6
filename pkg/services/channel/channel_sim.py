import logging
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from services.algebra.models import ComplexDataset
from services.channel.models import ChannelConfig
from services.errors.validation import InputError

logger = logging.getLogger(__name__)


def generate_source(n: int, rho: float, rng: np.random.Generator, scale: float = 0.70) -> np.ndarray:
    """s(n) = scale (sqrt(1 - ρ^2) X(n) + j ρ Y(n)) with X, Y iid standard normal.

    Circular for ρ = 1/sqrt(2); increasingly noncircular as ρ approaches 0 or 1.
    """
    if not 0 < rho < 1:
        raise InputError(f"rho must lie in (0, 1), got {rho}")
    if n < 1:
        raise InputError(f"source length must be >= 1, got {n}")
    real = rng.standard_normal(n)
    imag = rng.standard_normal(n)
    return scale * (np.sqrt(1.0 - rho**2) * real + 1j * rho * imag)


def apply_channel(
    s: ArrayLike,
    taps: Sequence[complex] = ChannelConfig.taps,
    nonlinearity: Sequence[complex] = ChannelConfig.nonlinearity,
) -> np.ndarray:
    """t(n) = h0 s(n) + h1 s(n-1) with s(-1) = 0, then q(n) = t + c2 t^2 + c3 t^3"""
    s = np.asarray(s, dtype=np.complex128)
    if s.ndim != 1 or s.size < 2:
        raise InputError(f"channel input needs at least 2 samples, got shape {s.shape}")
    h0, h1 = taps
    c2, c3 = nonlinearity
    delayed = np.concatenate([[0j], s[:-1]])
    t = h0 * s + h1 * delayed
    return t + c2 * t**2 + c3 * t**3


def add_awgn(q: ArrayLike, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """Add circular white Gaussian noise at snr_db against the empirical power of q"""
    q = np.asarray(q, dtype=np.complex128)
    if np.isnan(snr_db) or snr_db == -np.inf:
        raise InputError(f"snr_db must be a number or +inf, got {snr_db}")
    power = float(np.mean(np.abs(q) ** 2)) if q.size else 0.0
    if power == 0.0:
        raise InputError("cannot set an SNR against a zero-power signal")
    if snr_db == np.inf:
        return q.copy()
    variance = power / 10.0 ** (snr_db / 10.0)
    noise = np.sqrt(variance / 2.0) * (rng.standard_normal(q.size) + 1j * rng.standard_normal(q.size))
    return q + noise


def equalizer_window_range(stream_length: int, filter_length: int, delay: int) -> range:
    """Indices n with a fully defined window [r(n+D), ..., r(n+D-L+1)]"""
    return range(max(0, filter_length - 1 - delay), stream_length - delay)


def build_equalizer_dataset(r: ArrayLike, s: ArrayLike, filter_length: int, delay: int) -> ComplexDataset:
    """Pairs (x(n), s(n)) with x(n) = [r(n+D), r(n+D-1), ..., r(n+D-L+1)], in stream order"""
    r = np.asarray(r, dtype=np.complex128)
    s = np.asarray(s, dtype=np.complex128)
    if r.shape != s.shape or r.ndim != 1:
        raise InputError(f"received and source streams must be equal-length vectors, got {r.shape} and {s.shape}")
    if filter_length < 1 or delay < 0:
        raise InputError(f"need L >= 1 and D >= 0, got L={filter_length}, D={delay}")
    indices = np.asarray(equalizer_window_range(r.size, filter_length, delay))
    if indices.size == 0:
        raise InputError(
            f"stream of {r.size} samples is too short for L={filter_length}, D={delay}"
        )
    window = indices[:, None] + delay - np.arange(filter_length)[None, :]
    return ComplexDataset(X=r[window], y=s[indices])


def simulate_stream(channel: ChannelConfig, source_rng: np.random.Generator, noise_rng: np.random.Generator) -> ComplexDataset:
    """Source -> channel -> noise -> equalizer windows for one trial"""
    s = generate_source(channel.n, channel.rho, source_rng, scale=channel.source_scale)
    q = apply_channel(s, channel.taps, channel.nonlinearity)
    r = add_awgn(q, channel.snr_db, noise_rng)
    return build_equalizer_dataset(r, s, channel.filter_length, channel.delay)
