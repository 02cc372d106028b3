"""Stationary blockaded state and its susceptibilities.

The least-decaying stationary state in the blockade regime is, up to an
overall constant,

    |m,0,0> + sum_k sqrt(binom(m,k)) omega_p^k
              ( p_k |m-k,1,k-1> + i (p_k cos(theta_{k-1}) + i q_k) |m-k,0,k> )

with (p_k, q_k) from the stabilized transfer recursion. Kets are ordered
(ground, Rydberg, excited). Amplitudes are assembled in log space: binomial
weights up to m = 10^6 and omega_p^k both leave double range long before the
physics becomes uninteresting, so every amplitude is a mantissa times a
shared exponent until the final normalization.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ParameterError
from .modes import mode_cos_theta
from .params import ModelParams
from .recursion import stable_transfer


@dataclass(frozen=True)
class BlockadeState:
    """l2-normalized amplitudes of the stationary state.

    amps_r[k-1] multiplies |m-k, 1, k-1>, amps_e[k-1] multiplies |m-k, 0, k>,
    k = 1..m; amp0 multiplies |m, 0, 0>.
    """

    m: int
    amp0: complex
    amps_r: np.ndarray
    amps_e: np.ndarray
    normalized: bool = True


def stationary_state(params: ModelParams, m=None) -> BlockadeState:
    m = params.m if m is None else int(m)
    if params.omega_p >= params.omega_c:
        warnings.warn(
            f"blockade path assumes omega_p < omega_c (got {params.omega_p} >= {params.omega_c}); "
            "results are a formal perturbative continuation",
            stacklevel=2,
        )
    if params.omega_p == 0.0:
        return BlockadeState(
            m=m,
            amp0=1.0 + 0.0j,
            amps_r=np.zeros(m, dtype=complex),
            amps_e=np.zeros(m, dtype=complex),
        )
    res = stable_transfer(params, m)
    modes = np.arange(m, dtype=np.float64)  # mode index k-1
    cos = mode_cos_theta(modes, params)
    mant_r = res.p
    mant_e = 1j * (res.p * cos + 1j * res.q)

    k = np.arange(1, m + 1, dtype=np.float64)
    log_weight = (
        0.5 * (gammaln(m + 1.0) - gammaln(k + 1.0) - gammaln(m - k + 1.0))
        + k * np.log(params.omega_p)
        + res.scale_log
    )
    mag = np.maximum(np.abs(mant_r), np.abs(mant_e))
    with np.errstate(divide="ignore"):
        peak = log_weight + np.log(mag, out=np.full(m, -np.inf), where=mag > 0)
    shift = max(0.0, float(np.max(peak)))  # 0.0 is the bare |m,0,0> term

    factor = np.exp(log_weight - shift)
    amp0 = complex(np.exp(-shift))
    amps_r = mant_r * factor
    amps_e = mant_e * factor
    norm = np.sqrt(
        abs(amp0) ** 2 + np.sum(np.abs(amps_r) ** 2) + np.sum(np.abs(amps_e) ** 2)
    )
    return BlockadeState(
        m=m, amp0=amp0 / norm, amps_r=amps_r / norm, amps_e=amps_e / norm
    )


def _apply_probe_hop(state: BlockadeState, amp0, amps_r, amps_e):
    """One application of a_g^dag a_e in the blockade amplitude layout."""
    m = state.m
    new_r = np.zeros_like(amps_r)
    new_e = np.zeros_like(amps_e)
    if m >= 1:
        new_amp0 = np.sqrt(float(m)) * amps_e[0]
    else:
        new_amp0 = 0.0j
    if m >= 2:
        i = np.arange(1, m, dtype=np.float64)  # source index k-1
        new_r[:-1] = np.sqrt((m - i) * i) * amps_r[1:]
        new_e[:-1] = np.sqrt((m - i) * (i + 1.0)) * amps_e[1:]
    return new_amp0, new_r, new_e


def state_susceptibility(state: BlockadeState, order: int = 1) -> complex:
    """Normalized moment <(a_g^dag a_e)^order> / m^order on the state."""
    if order not in (1, 2):
        raise ParameterError(f"order must be 1 or 2, got {order}")
    a0, ar, ae = state.amp0, state.amps_r, state.amps_e
    for _ in range(order):
        a0, ar, ae = _apply_probe_hop(state, a0, ar, ae)
    val = (
        np.conj(state.amp0) * a0
        + np.vdot(state.amps_r, ar)
        + np.vdot(state.amps_e, ae)
    )
    if not state.normalized:
        norm2 = (
            abs(state.amp0) ** 2
            + np.sum(np.abs(state.amps_r) ** 2)
            + np.sum(np.abs(state.amps_e) ** 2)
        )
        val /= norm2
    return complex(val) / float(state.m) ** order


def blockade_susceptibility(params: ModelParams, order: int = 1) -> complex:
    return state_susceptibility(stationary_state(params), order)


def chi_single_particle(params: ModelParams) -> complex:
    """Closed-form first-order susceptibility of a single particle."""
    a = params.delta + 1j * params.gamma_r
    den = a * params.eta - params.omega_c**2
    if abs(den) == 0.0:
        raise ParameterError("single-particle denominator vanishes at these parameters")
    return -params.omega_p * a / den


def chi_large_m(params: ModelParams, order: int = 1) -> complex:
    """Many-particle limit: chi(1) = -omega_p / (i gamma_e + delta), squared
    for the second order."""
    if params.gamma_e == 0.0 and params.delta == 0.0:
        raise ParameterError("large-m limit needs (gamma_e, delta) != (0, 0)")
    base = -params.omega_p / params.eta
    if order == 1:
        return base
    if order == 2:
        return base * base
    raise ParameterError(f"order must be 1 or 2, got {order}")
