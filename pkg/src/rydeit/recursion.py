"""Transfer recursions for the blockade path.

Two routes compute the same per-step excitation coefficients:

* ``transfer_coefficients`` works directly in the dressed eigenbasis
  (coefficients v_k, w_k of the two branches). Its step matrix divides by
  sin(theta) and by per-branch energy mismatches, which makes it exact but
  numerically fragile; it exists for cross-validation and is depth-capped.

* ``stable_transfer`` propagates the sum/difference combination
  p_k = v_k + w_k, q_k = sin(theta_{k-1}) (v_k - w_k). Its step matrix only
  ever needs cos(theta) and sin^2(theta), so removable mode degeneracies
  (sin(theta_n) = 0) never trip it, and it is renormalized every step. This
  is the production path, running through the compiled kernel.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import RecursionSingularityError
from .modes import mode_pair
from .params import MAX_BLOCKADE_M, ModelParams

from .errors import DimensionError

VW_DEPTH_CAP = 100
DENOMINATOR_TOL = 1e-10


@dataclass(frozen=True)
class TransferResult:
    """Renormalized recursion output for k = 1..m.

    p and q hold unit-scale mantissas; scale_log[k-1] is the accumulated
    natural log of the renormalization factors, so the physical value is
    p[k-1] * exp(scale_log[k-1]).
    """

    m: int
    p: np.ndarray
    q: np.ndarray
    scale_log: np.ndarray

    def materialized(self):
        """Plain (p_k, q_k) arrays; only safe for shallow recursions."""
        factor = np.exp(self.scale_log)
        return self.p * factor, self.q * factor


def stable_transfer(params: ModelParams, m=None) -> TransferResult:
    m = params.m if m is None else int(m)
    if m < 1:
        raise DimensionError(f"recursion needs m >= 1, got {m}")
    if m > MAX_BLOCKADE_M:
        raise DimensionError(f"m={m} exceeds the blockade-path cap {MAX_BLOCKADE_M}")
    p = np.empty(m, dtype=np.complex128)
    q = np.empty(m, dtype=np.complex128)
    scale = np.empty(m, dtype=np.float64)
    status = _kernels.pq_scan(
        m,
        float(params.omega_p),
        float(params.omega_c),
        float(params.gamma_e),
        float(params.gamma_r),
        float(params.delta),
        p,
        q,
        scale,
    )
    if status == 1:
        raise RecursionSingularityError(1, "seed denominator", 0.0)
    if status != 0:
        raise RecursionSingularityError(int(status), "F pivot", 0.0)
    return TransferResult(m=m, p=p, q=q, scale_log=scale)


def transfer_coefficients(params: ModelParams, m: int):
    """Reference dressed-basis recursion, k = 1..m. Returns (v, w) arrays.

    Depth-capped: coefficients scale like products of per-step gains, which
    over/underflows doubles long before the stabilized path does.
    """
    if m < 1:
        raise DimensionError(f"recursion needs m >= 1, got {m}")
    if m > VW_DEPTH_CAP:
        raise DimensionError(
            f"reference recursion capped at {VW_DEPTH_CAP} steps, got {m}"
        )
    pairs = [mode_pair(n, params) for n in range(m)]
    delta = params.delta

    p0 = pairs[0]
    if abs(p0.sin_theta) < 1e-14:
        raise RecursionSingularityError(1, "sin theta_0", abs(p0.sin_theta))
    v = np.empty(m, dtype=complex)
    w = np.empty(m, dtype=complex)
    den_p = p0.energy_plus - delta
    den_m = p0.energy_minus - delta
    for name, den in (("E0+ - delta", den_p), ("E0- - delta", den_m)):
        if abs(den) < DENOMINATOR_TOL:
            raise RecursionSingularityError(1, name, abs(den))
    v[0] = -1.0 / (2.0 * den_p * p0.sin_theta)
    w[0] = 1.0 / (2.0 * den_m * p0.sin_theta)

    for k in range(2, m + 1):
        cur = pairs[k - 1]
        prev = pairs[k - 2]
        if abs(cur.sin_theta) < 1e-14:
            raise RecursionSingularityError(k, f"sin theta_{k-1}", abs(cur.sin_theta))
        rk = np.sqrt(k)
        rkm1 = np.sqrt(k - 1.0)
        dens = np.array(
            [
                [cur.energy_plus - prev.energy_plus - delta,
                 cur.energy_plus - prev.energy_minus - delta],
                [cur.energy_minus - prev.energy_plus - delta,
                 cur.energy_minus - prev.energy_minus - delta],
            ]
        )
        if np.min(np.abs(dens)) < DENOMINATOR_TOL:
            raise RecursionSingularityError(k, "energy mismatch", float(np.min(np.abs(dens))))
        nums = np.array(
            [
                [-rkm1 * cur.exp_minus + rk * prev.exp_plus,
                 -rkm1 * cur.exp_minus + rk * prev.exp_minus],
                [rkm1 * cur.exp_plus - rk * prev.exp_plus,
                 rkm1 * cur.exp_plus - rk * prev.exp_minus],
            ]
        )
        step = nums / dens / (2j * rk * cur.sin_theta)
        v[k - 1], w[k - 1] = step @ (v[k - 2], w[k - 2])
    return v, w
