"""Relaxation spectrum of the blockaded pair: does the stationary state win?

Transient components decay like exp(Im(E - E') t) for eigenvalue differences
between neighboring excitation sectors. Writing

    D(n) = Re sqrt((gamma_e - gamma_r)^2 - 4 omega_c^2 (n + 1))

the two slowest families have exponents (D(n) + D(n+1))/2 - gamma_e and
(D(n) - D(n+1))/2 - gamma_e. Both are maximal at n = 2, the only mode that
matters, and both are bounded above by -gamma_r, so any gamma_r > 0
guarantees relaxation.
"""

from dataclasses import dataclass

import numpy as np

from .params import ModelParams

RELEVANT_MODE = 2


def decay_scale(n, gamma_e: float, gamma_r: float, omega_c: float):
    """D(n): real part of the sector-n discriminant root."""
    arg = (gamma_e - gamma_r) ** 2 - 4.0 * omega_c**2 * (np.asarray(n) + 1.0)
    return np.sqrt(np.maximum(arg, 0.0))


@dataclass(frozen=True)
class RelaxationReport:
    exponent_pp: float  # slowest cross-branch transient, mode 2
    exponent_mm: float  # slowest same-branch transient, mode 2
    regular: bool       # both negative: every transient decays


def relaxation_exponents(gamma_e, gamma_r, omega_c, n=RELEVANT_MODE):
    d_n = decay_scale(n, gamma_e, gamma_r, omega_c)
    d_n1 = decay_scale(n + 1, gamma_e, gamma_r, omega_c)
    return 0.5 * (d_n + d_n1) - gamma_e, 0.5 * (d_n - d_n1) - gamma_e


def relaxation_report(params: ModelParams) -> RelaxationReport:
    pp, mm = relaxation_exponents(params.gamma_e, params.gamma_r, params.omega_c)
    return RelaxationReport(
        exponent_pp=float(pp),
        exponent_mm=float(mm),
        regular=bool(pp < 0.0 and mm < 0.0),
    )


MAP_AXES = ("gamma_e", "gamma_r", "omega_c")


@dataclass(frozen=True)
class RelaxationMap:
    axis1: str
    axis2: str
    grid1: np.ndarray
    grid2: np.ndarray
    exponent_pp: np.ndarray  # shape (len(grid1), len(grid2))
    exponent_mm: np.ndarray
    regular: np.ndarray
    boundary: np.ndarray  # per grid1 row: axis2 value where max exponent = 0, NaN if none


def relaxation_map(params: ModelParams, axis1: str = "gamma_e",
                   axis2: str = "omega_c", grid1=None, grid2=None) -> RelaxationMap:
    """Evaluate the relaxation exponents over a 2d parameter grid.

    The boundary column holds, for each axis1 row, the axis2 value where the
    max exponent crosses zero (linear interpolation between neighbors); NaN
    when the row has a single sign.
    """
    for ax in (axis1, axis2):
        if ax not in MAP_AXES:
            raise ValueError(f"map axis must be one of {MAP_AXES}, got {ax!r}")
    if axis1 == axis2:
        raise ValueError("map axes must differ")
    grid1 = np.linspace(0.0, 5.0, 101) if grid1 is None else np.asarray(grid1, dtype=float)
    grid2 = np.linspace(0.05, 5.0, 100) if grid2 is None else np.asarray(grid2, dtype=float)

    base = {
        "gamma_e": params.gamma_e,
        "gamma_r": params.gamma_r,
        "omega_c": params.omega_c,
    }
    g1 = grid1[:, None]
    g2 = grid2[None, :]
    vals = {k: np.full((grid1.size, grid2.size), v) for k, v in base.items()}
    vals[axis1] = np.broadcast_to(g1, (grid1.size, grid2.size))
    vals[axis2] = np.broadcast_to(g2, (grid1.size, grid2.size))
    pp, mm = relaxation_exponents(vals["gamma_e"], vals["gamma_r"], vals["omega_c"])
    regular = (pp < 0.0) & (mm < 0.0)

    worst = np.maximum(pp, mm)
    boundary = np.full(grid1.size, np.nan)
    for i in range(grid1.size):
        row = worst[i]
        sign = np.sign(row)
        flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        if flips.size:
            j = flips[0]
            x0, x1 = grid2[j], grid2[j + 1]
            y0, y1 = row[j], row[j + 1]
            boundary[i] = x0 - y0 * (x1 - x0) / (y1 - y0)
        elif np.any(row == 0.0):
            boundary[i] = grid2[int(np.nonzero(row == 0.0)[0][0])]
    return RelaxationMap(
        axis1=axis1,
        axis2=axis2,
        grid1=grid1,
        grid2=grid2,
        exponent_pp=pp,
        exponent_mm=mm,
        regular=regular,
        boundary=boundary,
    )
