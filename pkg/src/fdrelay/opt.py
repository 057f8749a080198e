"""Relay-location, power-split, and joint optimizers under the minimal-SER
criterion.

Closed forms are high-power approximations; the golden-section paths minimize
the full SER series directly. The joint problem is handled by enumerating all
first-order-condition roots (the SER surface is separately convex in each
ratio but not jointly convex) and selecting by evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .errors import DomainError
from .model import RATIO_FLOOR, Allocation, SystemConfig, link_stats

__all__ = [
    "OptResult",
    "optimal_location_closed",
    "optimal_power_closed",
    "closed_form_result",
    "golden_section",
    "minimize_1d",
    "joint_foc_roots",
    "joint_v3_closed",
    "select_joint_optimum",
    "sequential_v2",
]

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_FOC_GRID = 10_000


@dataclass(frozen=True)
class OptResult:
    """Solver output with residual diagnostics.

    foc_residual is the largest magnitude among the surrogate-objective
    partial derivatives at the solution; closed-form results at finite power
    carry a nonzero residual because they are high-power approximations.
    """

    allocation: Allocation
    ser: float
    method: str
    foc_residual: float
    iterations: int
    bracket_width: float = 0.0


def _residual(alloc: Allocation, cfg: SystemConfig) -> float:
    g = analytic.f_gradient(alloc, cfg)
    return max(abs(g[0]), abs(g[1]))


def optimal_location_closed(cfg: SystemConfig, rho_lambda: float) -> float:
    """High-power optimal relay position for a fixed power split:

    rho_d* = 1 / (1 + ((1 + eps P_R) P_R / P_S)^(1/(v-1)))
    """
    if not 0.0 < rho_lambda < 1.0:
        raise DomainError(f"rho_lambda must be in (0,1), got {rho_lambda}")
    p_s = rho_lambda * cfg.total_power
    p_r = cfg.total_power - p_s
    ratio = (1.0 + cfg.rsi_level * p_r) * p_r / p_s
    return 1.0 / (1.0 + ratio ** (1.0 / (cfg.pathloss_exp - 1.0)))


def optimal_power_closed(cfg: SystemConfig, rho_d: float) -> float:
    """High-power optimal power split for a fixed relay position:

    rho_lambda* = 1 / (1 + (D_RD^v / (D_SR^v + P eps D_SR^v))^(1/2))
    """
    if not 0.0 < rho_d < 1.0:
        raise DomainError(f"rho_d must be in (0,1), got {rho_d}")
    v = cfg.pathloss_exp
    d_sr = rho_d * cfg.sum_distance
    d_rd = cfg.sum_distance - d_sr
    ratio = d_rd**v / (d_sr**v * (1.0 + cfg.total_power * cfg.rsi_level))
    return 1.0 / (1.0 + math.sqrt(ratio))


def closed_form_result(objective: str, cfg: SystemConfig, fixed_ratio: float,
                       n_terms: int = analytic.DEFAULT_N_TERMS) -> OptResult:
    """Wrap a closed-form solution with its SER and residual diagnostics.

    The closed forms are high-power approximations, so foc_residual is
    generally nonzero at finite power.
    """
    if objective == "location":
        alloc = Allocation(fixed_ratio, optimal_location_closed(cfg, fixed_ratio))
    elif objective == "power":
        alloc = Allocation(optimal_power_closed(cfg, fixed_ratio), fixed_ratio)
    else:
        raise DomainError(f"objective must be 'location' or 'power', got {objective!r}")
    return OptResult(
        allocation=alloc,
        ser=analytic.ser_series(link_stats(cfg, alloc), cfg, n_terms),
        method="closed_form",
        foc_residual=_residual(alloc, cfg),
        iterations=0,
    )


def golden_section(fn, lo: float, hi: float, tol: float):
    """Minimize a unimodal scalar function; returns (x, iterations, width)."""
    c = hi - _INV_GOLDEN * (hi - lo)
    d = lo + _INV_GOLDEN * (hi - lo)
    fc = fn(c)
    fd = fn(d)
    iterations = 0
    while hi - lo > tol:
        iterations += 1
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_GOLDEN * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_GOLDEN * (hi - lo)
            fd = fn(d)
    return 0.5 * (lo + hi), iterations, hi - lo


def minimize_1d(objective: str, cfg: SystemConfig, fixed_ratio: float,
                tol: float = 1e-8, n_terms: int = analytic.DEFAULT_N_TERMS) -> OptResult:
    """Golden-section search of the SER series over one free ratio.

    objective='location' varies rho_d at fixed rho_lambda; 'power' varies
    rho_lambda at fixed rho_d. Separate convexity of the surrogate makes the
    interior minimum unique, so bracketing is safe.
    """
    if not 1e-10 <= tol <= 1e-2:
        raise DomainError(f"tol must be in [1e-10, 1e-2], got {tol}")
    if objective == "location":
        def make(x):
            return Allocation(rho_lambda=fixed_ratio, rho_d=x)
    elif objective == "power":
        def make(x):
            return Allocation(rho_lambda=x, rho_d=fixed_ratio)
    else:
        raise DomainError(f"objective must be 'location' or 'power', got {objective!r}")

    def ser_at(x: float) -> float:
        val = analytic.ser_series(link_stats(cfg, make(x)), cfg, n_terms)
        if not math.isfinite(val):
            raise DomainError(f"SER objective non-finite at ratio {x}")
        return val

    x, iterations, width = golden_section(ser_at, RATIO_FLOOR, 1.0 - RATIO_FLOOR, tol)
    alloc = make(x)
    return OptResult(
        allocation=alloc,
        ser=ser_at(x),
        method="golden_section",
        foc_residual=_residual(alloc, cfg),
        iterations=iterations,
        bracket_width=width,
    )


def _foc_log(rbar: np.ndarray | float, eps_p: float, v: float):
    # log-form of the stationarity equation in rbar = 1 - rho_lambda:
    # v ln(1 + eps P rbar) + (v-2) ln(1/rbar - 1) - (v-1) ln(1 + eps P) = 0
    return (
        v * np.log1p(eps_p * rbar)
        + (v - 2.0) * np.log(1.0 / rbar - 1.0)
        - (v - 1.0) * np.log1p(eps_p)
    )


def _pair_location(rbar: float, eps_p: float, v: float) -> float:
    # second stationarity line: the location induced by a power-split root
    return 1.0 / (1.0 + ((1.0 + eps_p * rbar) * rbar / (1.0 - rbar)) ** (1.0 / (v - 1.0)))


def joint_foc_roots(cfg: SystemConfig) -> list[Allocation]:
    """All joint stationary points as allocations.

    Dense sign-scan of the log-form stationarity equation over
    rbar = 1 - rho_lambda (uniform grid plus geometric refinement near both
    edges, about 1e4 points), followed by bisection to 1e-12 and
    deduplication. Each root is paired with its induced relay location.
    """
    eps_p = cfg.rsi_level * cfg.total_power
    v = cfg.pathloss_exp
    lo = RATIO_FLOOR
    hi = 1.0 - RATIO_FLOOR
    grid = np.unique(np.concatenate([
        np.linspace(lo, hi, _FOC_GRID - 2 * (_FOC_GRID // 5)),
        np.geomspace(lo, 0.2, _FOC_GRID // 5),
        1.0 - np.geomspace(lo, 0.2, _FOC_GRID // 5),
    ]))
    vals = _foc_log(grid, eps_p, v)
    roots: list[float] = []
    exact = np.nonzero(vals == 0.0)[0]
    sign_change = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    # all-zero residual means the equation is degenerate (eps=0, v=2):
    # every point is stationary and the symmetric particular solution stands in
    if len(exact) != len(grid):
        roots.extend(float(grid[i]) for i in exact)
        for i in sign_change:
            a, b = float(grid[i]), float(grid[i + 1])
            fa = _foc_log(a, eps_p, v)
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = _foc_log(mid, eps_p, v)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a = mid
                    fa = fm
                if b - a < 1e-12:
                    break
            roots.append(0.5 * (a + b))
    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 1e-9:
            deduped.append(r)
    return [
        Allocation(rho_lambda=1.0 - rbar, rho_d=_pair_location(rbar, eps_p, v))
        for rbar in deduped
    ]


def joint_v3_closed(cfg: SystemConfig) -> list[float]:
    """Closed-form power-split candidates of the joint problem at v = 3.

    rho_1 = sqrt(1 + eps P) / (sqrt(1 + eps P) + 1) always; the conjugate
    pair (1 + eps P +- sqrt(eps^2 P^2 - 2 eps P - 3)) / (2 eps P) joins once
    eps P >= 3 and the value lies inside (0, 1).
    """
    if cfg.pathloss_exp != 3.0:
        raise DomainError(
            f"joint_v3_closed requires pathloss_exp == 3, got {cfg.pathloss_exp}"
        )
    eps_p = cfg.rsi_level * cfg.total_power
    s = math.sqrt(1.0 + eps_p)
    out = [s / (s + 1.0)]
    disc = eps_p * eps_p - 2.0 * eps_p - 3.0
    if eps_p > 0.0 and disc >= 0.0:
        root = math.sqrt(disc)
        for cand in ((1.0 + eps_p + root) / (2.0 * eps_p),
                     (1.0 + eps_p - root) / (2.0 * eps_p)):
            if 0.0 < cand < 1.0:
                out.append(cand)
    return out


def _particular_solution(cfg: SystemConfig) -> Allocation:
    s = math.sqrt(1.0 + cfg.rsi_level * cfg.total_power)
    return Allocation(rho_lambda=s / (s + 1.0), rho_d=0.5)


def select_joint_optimum(cfg: SystemConfig,
                         n_terms: int = analytic.DEFAULT_N_TERMS) -> OptResult:
    """Evaluate the SER series at every stationary candidate plus the
    symmetric particular solution and return the minimizer.

    Ties break toward the particular solution.
    """
    particular = _particular_solution(cfg)
    candidates = joint_foc_roots(cfg)

    def ser_at(alloc: Allocation) -> float:
        return analytic.ser_series(link_stats(cfg, alloc), cfg, n_terms)

    best = particular
    best_ser = ser_at(particular)
    method = "joint_particular"
    for alloc in candidates:
        ser = ser_at(alloc)
        if ser < best_ser - 1e-15:
            best = alloc
            best_ser = ser
            method = "joint_roots"
    return OptResult(
        allocation=best,
        ser=best_ser,
        method=method,
        foc_residual=_residual(best, cfg),
        iterations=len(candidates) + 1,
    )


def sequential_v2(cfg: SystemConfig) -> Allocation:
    """Sequential optimum at v = 2, where it coincides with the joint one:
    rho_lambda = sqrt(1 + eps P) / (sqrt(1 + eps P) + 1), rho_d = 1/2."""
    if cfg.pathloss_exp != 2.0:
        raise DomainError(
            f"sequential_v2 requires pathloss_exp == 2, got {cfg.pathloss_exp}"
        )
    return _particular_solution(cfg)
