"""Monte Carlo oracle: Rayleigh link sampling and outage/SER estimation.

Independence from the closed forms is the whole point here; nothing in this
module touches the analytic module. Reproducibility contract: every sample's
randomness is a pure function of (seed, estimator tag, sample index) through
counter-based Philox streams, so estimates are bit-identical for any chunking
or worker count. Chunk partials are combined with math.fsum (exactly rounded,
hence order-independent).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox
from scipy.special import erfc, ndtri

from .errors import DomainError, UnsupportedModulationError
from .model import LinkStats, SystemConfig

__all__ = [
    "McEstimate",
    "stream",
    "draw_gammas",
    "sinr_exact",
    "sinr_approx",
    "estimate_outage",
    "estimate_ser_semianalytic",
    "estimate_ser_symbol_level",
    "CHUNK_SAMPLES",
]

# Samples per deterministic chunk. Philox counts blocks of 4 uint64 outputs,
# so chunk boundaries must land on multiples of 4 consumed uniforms; any
# multiple of 4 works for both 3- and 9-uniform samples.
CHUNK_SAMPLES = 400_000

_TAG_DRAW = 0
_TAG_OUTAGE = 1
_TAG_SER = 2
_TAG_SYMBOL = 3

_MIN_SAMPLES = 10_000
_MIN_SYMBOLS = 100_000


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo probability estimate with its standard error."""

    value: float
    std_error: float
    n_samples: int
    seed: int


def stream(seed: int, tag: int = _TAG_DRAW, uniform_offset: int = 0) -> Generator:
    """Counter-based uniform stream positioned at `uniform_offset` draws.

    The offset must be a multiple of 4 (one Philox block).
    """
    if uniform_offset % 4:
        raise DomainError("uniform_offset must be a multiple of 4")
    key = (int(seed) & 0xFFFFFFFFFFFFFFFF) + (tag << 64)
    return Generator(Philox(key=key, counter=uniform_offset // 4))


def draw_gammas(stats: LinkStats, gen: Generator, n: int = 1):
    """Draw n independent triples of exponential link SNRs.

    Inverse-CDF from uniforms (3 per sample, consumed in sample order) so the
    consumption count is fixed. gamma_li is identically 0 when lambda_li = 0.
    """
    u = gen.random(3 * n).reshape(n, 3)
    g_sr = -stats.lambda_sr * np.log1p(-u[:, 0])
    g_rd = -stats.lambda_rd * np.log1p(-u[:, 1])
    g_li = -stats.lambda_li * np.log1p(-u[:, 2])
    return g_sr, g_rd, g_li


def sinr_exact(g_sr, g_rd, g_li):
    """End-to-end SINR a*b / (a + b + 1) with a = g_sr / (g_li + 1), b = g_rd."""
    a = g_sr / (g_li + 1.0)
    b = g_rd
    return a * b / (a + b + 1.0)


def sinr_approx(g_sr, g_rd, g_li):
    """Rearranged form g_sr g_rd / (g_sr + (g_rd + 1)(g_li + 1)).

    Algebraically identical to sinr_exact once the direct path is dropped;
    kept as a cross-check of the two published arrangements.
    """
    return g_sr * g_rd / (g_sr + (g_rd + 1.0) * (g_li + 1.0))


def _q_func(x):
    # Gaussian tail Q(x) = erfc(x / sqrt 2) / 2, vectorized
    return 0.5 * erfc(x / math.sqrt(2.0))


def _chunks(n: int):
    for j in range((n + CHUNK_SAMPLES - 1) // CHUNK_SAMPLES):
        lo = j * CHUNK_SAMPLES
        yield j, lo, min(n, lo + CHUNK_SAMPLES)


def _map_chunks(fn, n: int, workers: int):
    jobs = list(_chunks(n))
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))


def _check_n(n: int, minimum: int, label: str) -> None:
    if n < minimum:
        raise DomainError(f"{label}: need at least {minimum} samples, got {n}")


def estimate_outage(stats: LinkStats, threshold: float, n: int, seed: int,
                    workers: int = 1) -> McEstimate:
    """Fraction of channel draws whose end-to-end SINR falls below threshold."""
    _check_n(n, _MIN_SAMPLES, "estimate_outage")
    if threshold < 0.0:
        raise DomainError(f"threshold must be >= 0, got {threshold}")

    def chunk(j, lo, hi):
        gen = stream(seed, _TAG_OUTAGE, 3 * lo)
        g_sr, g_rd, g_li = draw_gammas(stats, gen, hi - lo)
        return int(np.count_nonzero(sinr_exact(g_sr, g_rd, g_li) < threshold))

    count = sum(_map_chunks(chunk, n, workers))
    p = count / n
    return McEstimate(value=p, std_error=math.sqrt(p * (1.0 - p) / n),
                      n_samples=n, seed=seed)


def estimate_ser_semianalytic(stats: LinkStats, cfg: SystemConfig, n: int,
                              seed: int, workers: int = 1) -> McEstimate:
    """Sample mean of alpha Q(sqrt(beta * SINR)) over channel draws.

    This is the low-variance estimator of the average SER: the noise
    expectation is taken analytically, only the fading is sampled.
    """
    _check_n(n, _MIN_SAMPLES, "estimate_ser_semianalytic")
    alpha = cfg.alpha_mod
    beta = cfg.beta_mod

    def chunk(j, lo, hi):
        gen = stream(seed, _TAG_SER, 3 * lo)
        g_sr, g_rd, g_li = draw_gammas(stats, gen, hi - lo)
        q = alpha * _q_func(np.sqrt(beta * sinr_exact(g_sr, g_rd, g_li)))
        return float(q.sum()), float((q * q).sum())

    parts = _map_chunks(chunk, n, workers)
    s1 = math.fsum(p[0] for p in parts)
    s2 = math.fsum(p[1] for p in parts)
    mean = s1 / n
    var = max(s2 / n - mean * mean, 0.0) * n / (n - 1)
    return McEstimate(value=mean, std_error=math.sqrt(var / n),
                      n_samples=n, seed=seed)


def estimate_ser_symbol_level(stats: LinkStats, cfg: SystemConfig,
                              n_symbols: int, seed: int,
                              workers: int = 1) -> McEstimate:
    """End-to-end BPSK bit errors through the explicit amplify-and-forward chain.

    Per symbol: the relay receives the unit-power BPSK symbol over the
    source-relay fade plus a unit-power self-interference stream over the
    loopback fade plus noise, scales by the amplification gain
    1/sqrt(g_sr + g_li + 1) that meets the unit output-power constraint, and
    forwards; the destination decodes by sign. The interference stream is an
    independent circular Gaussian symbol (the forwarded signal of an
    amplify-and-forward relay is a scaled mixture, not a clean constellation
    point), which is what makes this chain agree with the semi-analytic
    estimator in expectation.

    Consumes 9 uniforms per symbol: 3 fades, 2 for the interference symbol,
    4 for relay/destination noise. Channel phases are absorbed by circular
    symmetry; only fade magnitudes are drawn.
    """
    if not cfg.is_bpsk:
        raise UnsupportedModulationError(
            "estimate_ser_symbol_level supports BPSK only (alpha=1, beta=2)"
        )
    _check_n(n_symbols, _MIN_SYMBOLS, "estimate_ser_symbol_level")
    inv_sqrt2 = 1.0 / math.sqrt(2.0)

    def chunk(j, lo, hi):
        gen = stream(seed, _TAG_SYMBOL, 9 * lo)
        m = hi - lo
        u = gen.random(9 * m).reshape(m, 9)
        g_sr = -stats.lambda_sr * np.log1p(-u[:, 0])
        g_rd = -stats.lambda_rd * np.log1p(-u[:, 1])
        g_li = -stats.lambda_li * np.log1p(-u[:, 2])
        x_int = (ndtri(u[:, 3]) + 1j * ndtri(u[:, 4])) * inv_sqrt2
        n_r = (ndtri(u[:, 5]) + 1j * ndtri(u[:, 6])) * inv_sqrt2
        n_d = (ndtri(u[:, 7]) + 1j * ndtri(u[:, 8])) * inv_sqrt2
        # transmitted symbol fixed at +1; BPSK error rate is symbol-symmetric
        y_r = np.sqrt(g_sr) + np.sqrt(g_li) * x_int + n_r
        gain = 1.0 / np.sqrt(g_sr + g_li + 1.0)
        y_d = np.sqrt(g_rd) * gain * y_r + n_d
        return int(np.count_nonzero(y_d.real < 0.0))

    errors = sum(_map_chunks(chunk, n_symbols, workers))
    p = errors / n_symbols
    return McEstimate(value=p, std_error=math.sqrt(p * (1.0 - p) / n_symbols),
                      n_samples=n_symbols, seed=seed)
