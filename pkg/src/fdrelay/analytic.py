"""Closed-form performance expressions for the two-hop full-duplex link.

Covers the end-to-end SINR CDF (asymptotic closed form plus its exact
integral evaluated numerically), the SER series built on the staged
exponential approximation of 1/(1+x), the high-power reduction, the
interference-limited floor, and the convex surrogate objective behind the
power/location optimizers.

Conventions: stats holds mean link SNRs (see model.LinkStats), cfg holds
(alpha_mod, beta_mod) of the Q-function SER model. SER outputs are clamped
to [0, 1/2]; clamping is logged at debug level because the asymptotic series
is only meaningful where it stays in range.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from scipy.integrate import quad

from .errors import DomainError, NonConvergenceError, QuadratureError
from .model import Allocation, LinkStats, SystemConfig
from .sfun import bessel_k1, exp_integral_e1, gamma_fn, hyp2f1_complement

__all__ = [
    "ApproxCoeffs",
    "approx_coeffs",
    "sinr_cdf_asymptotic",
    "sinr_cdf_exact_numeric",
    "cdf_truncation_bound",
    "outage",
    "ser_series",
    "ser_series_terms",
    "ser_quadrature",
    "ser_from_cdf",
    "ser_high_power",
    "ser_floor",
    "ser_location_optimized",
    "ser_power_optimized",
    "f_objective",
    "f_gradient",
    "kappa",
    "DEFAULT_N_TERMS",
]

logger = logging.getLogger(__name__)

DEFAULT_N_TERMS = 3

_2PI = 2.0 * math.pi


def kappa(cfg: SystemConfig) -> float:
    """Prefactor alpha sqrt(beta) Gamma(1/2) / (2 sqrt(2 pi)); equals 1/2 for BPSK."""
    return cfg.alpha_mod * math.sqrt(cfg.beta_mod) / (2.0 * math.sqrt(_2PI)) * gamma_fn(0.5)


# ---------------------------------------------------------------------------
# staged exponential approximation of 1/(1+x)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproxCoeffs:
    """Pairs (A_i, B_i) of the approximation 1/(1+x) ~ sum A_i x^(2i) e^(-B_i x).

    `exact` carries the rational values; `pairs` the float projections used
    in evaluation. A_0 = B_0 = 1 always.
    """

    exact: tuple[tuple[Fraction, Fraction], ...]

    @property
    def pairs(self) -> tuple[tuple[float, float], ...]:
        return tuple((float(a), float(b)) for a, b in self.exact)

    @property
    def n_terms(self) -> int:
        return len(self.exact)

    def eval_approx(self, x: float) -> float:
        """The approximating function itself; matches the Taylor series of
        1/(1+x) through order x^(2 n_terms - 1)."""
        return math.fsum(
            float(a) * x ** (2 * i) * math.exp(-float(b) * x)
            for i, (a, b) in enumerate(self.exact)
        )


@lru_cache(maxsize=32)
def approx_coeffs(n_terms: int) -> ApproxCoeffs:
    """Generate the first n_terms coefficient pairs by the sequential
    recurrence that matches consecutive Taylor coefficients of 1/(1+x).

    A_i = 1 - sum_{j<i} A_j B_j^(2i-2j) / (2i-2j)!
    B_i = (1 - sum_{j<i} A_j B_j^(2i-2j+1) / (2i-2j+1)!) / A_i
    """
    if n_terms < 1:
        raise DomainError(f"approx_coeffs: n_terms must be >= 1, got {n_terms}")
    a: list[Fraction] = [Fraction(1)]
    b: list[Fraction] = [Fraction(1)]
    for i in range(1, n_terms):
        ai = Fraction(1) - sum(
            a[j] * b[j] ** (2 * i - 2 * j) / math.factorial(2 * i - 2 * j)
            for j in range(i)
        )
        if ai == 0:
            raise NonConvergenceError(f"approx_coeffs: A_{i} vanished; cannot divide")
        bi = (
            Fraction(1)
            - sum(
                a[j] * b[j] ** (2 * i - 2 * j + 1) / math.factorial(2 * i - 2 * j + 1)
                for j in range(i)
            )
        ) / ai
        a.append(ai)
        b.append(bi)
    return ApproxCoeffs(exact=tuple(zip(a, b)))


# ---------------------------------------------------------------------------
# SINR CDF
# ---------------------------------------------------------------------------

def sinr_cdf_asymptotic(x: float, stats: LinkStats) -> float:
    """High-power closed form of the end-to-end SINR CDF.

    F(x) = 1 - e^{-(1/l_sr + 1/l_rd) x} / (1 + eta x) * u K1(u),
    u = 2x / sqrt(l_sr l_rd). Exact at eta = 0; otherwise a lower bound of
    the exact CDF whose gap is controlled by cdf_truncation_bound().
    """
    if math.isnan(x) or x < 0.0:
        raise DomainError(f"sinr_cdf_asymptotic: x must be >= 0, got {x}")
    if x == 0.0:
        return 0.0
    u = 2.0 * x / math.sqrt(stats.lambda_sr * stats.lambda_rd)
    # u K1(u) -> 1 with O(u^2 ln u) error; shortcut also avoids 1/u overflow
    # for denormal u
    uk1 = 1.0 if u < 1e-12 else u * bessel_k1(u)
    surv = (
        math.exp(-(1.0 / stats.lambda_sr + 1.0 / stats.lambda_rd) * x)
        / (1.0 + stats.eta * x)
        * uk1
    )
    return min(max(1.0 - surv, 0.0), 1.0)


def sinr_cdf_exact_numeric(x: float, stats: LinkStats, abs_tol: float = 1e-10) -> float:
    """Exact CDF of the two-hop SINR ratio form, by adaptive quadrature.

    The survivor function is the semi-infinite integral over the second-hop
    SNR t of

        (1/l_rd) exp(-(x + x^2/(t-x))/l_sr - t/l_rd) / (1 + eta (x + x^2/(t-x)))

    from t = x upward. Substituting t = x + e^u turns the two disparate
    scales (the first-hop layer at t - x ~ x^2/l_sr and the exponential tail
    at t ~ l_rd) into unit-width smooth features at known positions, so the
    integrator stays at full accuracy even for wildly asymmetric links.
    """
    if math.isnan(x) or x < 0.0:
        raise DomainError(f"sinr_cdf_exact_numeric: x must be >= 0, got {x}")
    if x < 1e-200:
        # CDF scales like (1/l_sr + 1/l_rd + eta) x here, far below abs_tol
        return 0.0
    lsr = stats.lambda_sr
    lrd = stats.lambda_rd
    eta = stats.eta

    def integrand(u: float) -> float:
        eu = math.exp(u)
        y = x * x / eu
        expo = -(x + y) / lsr - (x + eu) / lrd
        if expo < -745.0:
            return 0.0
        return (eu / lrd) * math.exp(expo) / (1.0 + eta * (x + y))

    # outside [u_lo, u_hi] one of the exponentials has underflowed
    u_lo = math.log(x * x / (lsr * 745.0))
    u_hi = math.log(745.0 * lrd)
    if u_lo >= u_hi:
        # the exponent is at least x/l_sr + x/l_rd + 2x/sqrt(l_sr l_rd) > 1490
        # everywhere, so the survivor underflows double precision
        return 1.0
    marks = [math.log(max(x * x / lsr, 1e-300)), math.log(lrd)]
    if eta > 0.0:
        marks.append(math.log(max(eta * x * x, 1e-300)))
    breaks = sorted({min(max(m, u_lo + 1e-9), u_hi - 1e-9) for m in marks})
    surv, err = _quad_checked(integrand, u_lo, u_hi, abs_tol,
                              "sinr_cdf_exact_numeric", points=breaks)
    return min(max(1.0 - surv, 0.0), 1.0)


def cdf_truncation_bound(x: float, stats: LinkStats) -> float:
    """Upper bound on (exact CDF - asymptotic CDF) at threshold x.

    The dropped interference correction is bounded by
    C * g * e^g * E1(g) with g = eta x^2 / (l_rd (1 + eta x)) and
    C = e^{-(1/l_sr + 1/l_rd) x}. Zero when eta = 0.
    """
    if x <= 0.0 or stats.eta == 0.0:
        return 0.0
    g = stats.eta * x * x / (stats.lambda_rd * (1.0 + stats.eta * x))
    c = math.exp(-(1.0 / stats.lambda_sr + 1.0 / stats.lambda_rd) * x)
    return c * g * math.exp(g) * exp_integral_e1(g)


def outage(threshold: float, stats: LinkStats, mode: str = "asymptotic") -> float:
    """Outage probability = CDF of the end-to-end SINR at `threshold`."""
    if mode == "asymptotic":
        return sinr_cdf_asymptotic(threshold, stats)
    if mode == "exact":
        return sinr_cdf_exact_numeric(threshold, stats)
    raise DomainError(f"outage: mode must be 'asymptotic' or 'exact', got {mode!r}")


# ---------------------------------------------------------------------------
# SER
# ---------------------------------------------------------------------------

def ser_series_terms(stats: LinkStats, cfg: SystemConfig,
                     n_terms: int = DEFAULT_N_TERMS) -> list[float]:
    """The individual series contributions I_i whose sum approximates 1/2 - SER.

    I_i = C_i * (2 alpha sqrt(2 beta) / (l_sr l_rd))
              * A_i eta^(2i) / X_i^(2i + 5/2)
              * 2F1(2i + 5/2, 3/2; 2i + 2; Y_i / X_i)

    with C_i = Gamma(2i + 5/2) Gamma(2i + 1/2) / (2i + 1)! and
    X_i, Y_i = beta/2 + eta B_i + (1/sqrt(l_sr) +- 1/sqrt(l_rd))^2.
    """
    coeffs = approx_coeffs(n_terms).pairs
    alpha = cfg.alpha_mod
    beta = cfg.beta_mod
    lsr = stats.lambda_sr
    lrd = stats.lambda_rd
    eta = stats.eta
    s_plus = (1.0 / math.sqrt(lsr) + 1.0 / math.sqrt(lrd)) ** 2
    # X_i - Y_i collapses to 4 / sqrt(l_sr l_rd) exactly; feeding the
    # complement w = (X_i - Y_i) / X_i to the hypergeometric keeps full
    # precision at high power, where Y_i/X_i approaches 1
    delta = 4.0 / math.sqrt(lsr * lrd)
    pref = 2.0 * alpha * math.sqrt(2.0 * beta) / (lsr * lrd)
    out = []
    for i, (a_i, b_i) in enumerate(coeffs):
        c_i = gamma_fn(2 * i + 2.5) * gamma_fn(2 * i + 0.5) / math.factorial(2 * i + 1)
        x_i = beta / 2.0 + eta * b_i + s_plus
        hyp = hyp2f1_complement(2 * i + 2.5, 1.5, 2.0 * i + 2.0, delta / x_i)
        out.append(c_i * pref * a_i * eta ** (2 * i) / x_i ** (2 * i + 2.5) * hyp)
    return out


def ser_series(stats: LinkStats, cfg: SystemConfig,
               n_terms: int = DEFAULT_N_TERMS) -> float:
    """Asymptotic average SER: 1/2 minus the truncated contribution series.

    Clamped to [0, 1/2]; the series can dip out of range at very low SNR
    where the high-power expansion is invalid.
    """
    raw = 0.5 - math.fsum(ser_series_terms(stats, cfg, n_terms))
    if raw < 0.0 or raw > 0.5:
        logger.debug("ser_series clamped: raw=%.3e stats=%s", raw, stats)
        return min(max(raw, 0.0), 0.5)
    return raw


def ser_from_cdf(cdf: Callable[[float], float], cfg: SystemConfig,
                 abs_tol: float = 1e-9) -> float:
    """Average SER alpha E[Q(sqrt(beta g))] for an SINR with the given CDF.

    Computed as (alpha sqrt(beta) / (2 sqrt(2 pi))) int_0^inf t^(-1/2) F(t)
    e^(-beta t / 2) dt; the substitution t = u^2 removes the endpoint
    singularity before adaptive quadrature.
    """
    beta = cfg.beta_mod

    def integrand(u: float) -> float:
        return cdf(u * u) * math.exp(-0.5 * beta * u * u)

    val, err = _quad_checked(integrand, 0.0, math.inf, abs_tol, "ser_from_cdf")
    return cfg.alpha_mod * math.sqrt(beta) / math.sqrt(_2PI) * val


def ser_quadrature(stats: LinkStats, cfg: SystemConfig) -> float:
    """Numerical SER from the asymptotic CDF; oracle for ser_series."""
    return ser_from_cdf(lambda t: sinr_cdf_asymptotic(t, stats), cfg)


def ser_high_power(stats: LinkStats, cfg: SystemConfig) -> float:
    """Leading-term SER: 1/2 - kappa (beta/2 + 1/l_sr + 1/l_rd + B0 eta)^(-1/2),
    B0 = 1."""
    f = cfg.beta_mod / 2.0 + 1.0 / stats.lambda_sr + 1.0 / stats.lambda_rd + stats.eta
    return 0.5 - kappa(cfg) * f**-0.5


def f_objective(alloc: Allocation, cfg: SystemConfig) -> float:
    """Convex surrogate minimized by the power/location optimizers.

    f = beta/2 + ((1 + eps P_R) / P_S) D_SR^v + D_RD^v / P_R, which equals
    beta/2 + 1/l_sr + 1/l_rd + eta.
    """
    p_s, p_r = alloc.powers(cfg)
    d_sr, d_rd = alloc.distances(cfg)
    v = cfg.pathloss_exp
    return (
        cfg.beta_mod / 2.0
        + (1.0 + cfg.rsi_level * p_r) / p_s * d_sr**v
        + d_rd**v / p_r
    )


def f_gradient(alloc: Allocation, cfg: SystemConfig) -> tuple[float, float]:
    """(df/d rho_lambda, df/d rho_d) of the surrogate objective."""
    p = cfg.total_power
    eps = cfg.rsi_level
    v = cfg.pathloss_exp
    rl = alloc.rho_lambda
    rd = alloc.rho_d
    d = cfg.sum_distance
    d_sr = rd * d
    d_rd = (1.0 - rd) * d
    df_drl = -(1.0 + eps * p) * d_sr**v / (p * rl * rl) + d_rd**v / (p * (1.0 - rl) ** 2)
    df_drd = d**v * v * (
        rd ** (v - 1.0) * (1.0 + eps * (1.0 - rl) * p) / (rl * p)
        - (1.0 - rd) ** (v - 1.0) / ((1.0 - rl) * p)
    )
    return df_drl, df_drd


def ser_floor(alloc: Allocation, cfg: SystemConfig) -> float:
    """Interference-limited SER floor as total power grows without bound.

    1/2 - kappa (beta/2 + eps (P_R / P_S) D_SR^v)^(-1/2); zero for BPSK when
    eps = 0.
    """
    p_s, p_r = alloc.powers(cfg)
    d_sr, _ = alloc.distances(cfg)
    arg = cfg.beta_mod / 2.0 + cfg.rsi_level * (p_r / p_s) * d_sr**cfg.pathloss_exp
    return 0.5 - kappa(cfg) * arg**-0.5


def ser_location_optimized(cfg: SystemConfig, rho_lambda: float) -> float:
    """High-power SER with the relay placed at its closed-form optimum for a
    fixed power split."""
    if not 0.0 < rho_lambda < 1.0:
        raise DomainError(f"rho_lambda must be in (0,1), got {rho_lambda}")
    p = cfg.total_power
    eps = cfg.rsi_level
    v = cfg.pathloss_exp
    rbar = 1.0 - rho_lambda
    dv = cfg.sum_distance**v
    num = (1.0 / (rho_lambda * p) + rbar / rho_lambda * eps) * dv
    den = (1.0 + ((rbar / rho_lambda) * (1.0 + eps * rbar * p)) ** (1.0 / (v - 1.0))) ** (v - 1.0)
    return 0.5 - kappa(cfg) * (cfg.beta_mod / 2.0 + num / den) ** -0.5


def ser_power_optimized(cfg: SystemConfig, rho_d: float) -> float:
    """High-power SER with the power split at its closed-form optimum for a
    fixed relay location."""
    if not 0.0 < rho_d < 1.0:
        raise DomainError(f"rho_d must be in (0,1), got {rho_d}")
    p = cfg.total_power
    eps = cfg.rsi_level
    v = cfg.pathloss_exp
    dv = cfg.sum_distance**v
    inner = (
        rho_d**v
        + (1.0 - rho_d) ** v
        + 2.0 * rho_d ** (v / 2.0) * (1.0 - rho_d) ** (v / 2.0) * math.sqrt(p * eps + 1.0)
    )
    return 0.5 - kappa(cfg) * (cfg.beta_mod / 2.0 + dv / p * inner) ** -0.5


# ---------------------------------------------------------------------------
# quadrature plumbing
# ---------------------------------------------------------------------------

def _quad_checked(fn, lo, hi, abs_tol: float, label: str,
                  points=None) -> tuple[float, float]:
    # a tolerance warning from the integrator is fine as long as the achieved
    # error estimate still meets the caller's bound
    val, err, _info, *_warn = quad(
        fn, lo, hi, epsabs=min(abs_tol * 1e-2, 1e-12), epsrel=1e-11,
        limit=300, full_output=1, points=points,
    )
    if math.isnan(err) or err > abs_tol:
        raise QuadratureError(
            f"{label}: quadrature error estimate {err:.3e} exceeds {abs_tol:.1e}",
            achieved_error=err,
        )
    return val, err
