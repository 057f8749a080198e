"""Shared fixtures and independent oracle helpers.

Oracles here deliberately avoid the library's own code paths: scipy.special
for vectorized closed-form surfaces, mpmath for high-precision point values.
"""

import math

import numpy as np
import pytest
from scipy import special

from fdrelay import Allocation, SystemConfig, link_stats

CANONICAL_P_DB = 20.0

# first three staged-exponential pairs, kept as plain floats for oracles
ORACLE_A = (1.0, 0.5, 19.0 / 72.0)
ORACLE_B = (1.0, 5.0 / 3.0, 1963.0 / 855.0)


@pytest.fixture
def canonical_cfg() -> SystemConfig:
    """P = 20 dB, eps = 0.1, v = 3, D = 1, BPSK."""
    return SystemConfig.bpsk(total_power=100.0, rsi_level=0.1, pathloss_exp=3.0)


@pytest.fixture
def symmetric_alloc() -> Allocation:
    return Allocation(rho_lambda=0.5, rho_d=0.5)


def cfg_at(p_db: float, eps: float, v: float = 3.0) -> SystemConfig:
    return SystemConfig.bpsk(total_power=10.0 ** (p_db / 10.0), rsi_level=eps,
                             pathloss_exp=v)


def stats_at(p_db: float, eps: float, v: float = 3.0,
             rho_lambda: float = 0.5, rho_d: float = 0.5):
    cfg = cfg_at(p_db, eps, v)
    return cfg, link_stats(cfg, Allocation(rho_lambda, rho_d))


def ser_series_grid_oracle(cfg: SystemConfig, rho_lambda: np.ndarray,
                           rho_d: np.ndarray, n_terms: int = 3) -> np.ndarray:
    """Vectorized scipy evaluation of the SER series over an allocation grid.

    Independent of the library's special functions; used as the exhaustive
    search oracle for the joint optimizer.
    """
    rl, rd = np.meshgrid(rho_lambda, rho_d, indexing="ij")
    p = cfg.total_power
    v = cfg.pathloss_exp
    d = cfg.sum_distance
    alpha = cfg.alpha_mod
    beta = cfg.beta_mod
    lsr = rl * p * (rd * d) ** -v
    lrd = (1.0 - rl) * p * ((1.0 - rd) * d) ** -v
    eta = cfg.rsi_level * (1.0 - rl) / rl * (rd * d) ** v
    s_plus = (1.0 / np.sqrt(lsr) + 1.0 / np.sqrt(lrd)) ** 2
    s_minus = (1.0 / np.sqrt(lsr) - 1.0 / np.sqrt(lrd)) ** 2
    total = np.zeros_like(rl)
    for i in range(n_terms):
        c_i = special.gamma(2 * i + 2.5) * special.gamma(2 * i + 0.5) / math.factorial(2 * i + 1)
        x_i = beta / 2.0 + eta * ORACLE_B[i] + s_plus
        y_i = beta / 2.0 + eta * ORACLE_B[i] + s_minus
        total += (
            c_i
            * (2.0 * alpha * np.sqrt(2.0 * beta) / (lsr * lrd))
            * (ORACLE_A[i] * eta ** (2 * i) / x_i ** (2 * i + 2.5))
            * special.hyp2f1(2 * i + 2.5, 1.5, 2 * i + 2, y_i / x_i)
        )
    return np.clip(0.5 - total, 0.0, 0.5)
