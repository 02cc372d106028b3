"""Dressed eigenmodes of the blockaded control-coupled pair of bands.

With the ground band factored out, each excitation sector n couples exactly
two states: |1, n> (one Rydberg excitation, n excited) and |0, n+1>. The
2x2 blocks are complex symmetric; their eigenvectors come in bilinear
(unconjugated) orthonormal pairs. Everything here is parametrized by

    cos(theta_n) = (gamma_e - gamma_r) / (2 omega_c sqrt(n + 1))

with the principal branch sin(theta_n) = sqrt(1 - cos^2): non-negative real
part, and non-negative imaginary part when purely imaginary.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import RecursionSingularityError, SingularModeError
from .params import ModelParams

SINGULAR_SIN_TOL = 1e-8


@dataclass(frozen=True)
class ModePair:
    """The +/- dressed pair of excitation sector n."""

    n: int
    cos_theta: float
    sin_theta: complex
    exp_plus: complex   # e^{+i theta_n}
    exp_minus: complex  # e^{-i theta_n}
    energy_plus: complex
    energy_minus: complex
    z_plus: complex     # sqrt(1 - e^{+2i theta_n})
    z_minus: complex
    near_singular: bool


def mode_cos_theta(n, params: ModelParams):
    return (params.gamma_e - params.gamma_r) / (2.0 * params.omega_c * np.sqrt(n + 1.0))


def mode_pair(n: int, params: ModelParams) -> ModePair:
    if n < 0:
        raise ValueError(f"mode index must be >= 0, got {n}")
    c = float(mode_cos_theta(n, params))
    s = complex(np.sqrt(complex(1.0 - c * c)))
    ep = c + 1j * s
    em = c - 1j * s
    root = params.omega_c * math.sqrt(n + 1.0)
    e_plus = -1j * (params.gamma_e * n + params.gamma_r + root * ep)
    e_minus = -1j * (params.gamma_e * n + params.gamma_r + root * em)
    z_plus = complex(np.sqrt(1.0 - ep * ep))
    z_minus = complex(np.sqrt(1.0 - em * em))
    return ModePair(
        n=n,
        cos_theta=c,
        sin_theta=s,
        exp_plus=ep,
        exp_minus=em,
        energy_plus=e_plus,
        energy_minus=e_minus,
        z_plus=z_plus,
        z_minus=z_minus,
        near_singular=abs(s) < SINGULAR_SIN_TOL,
    )


def mode_eigensystem(n: int, params: ModelParams):
    """Right eigenvector coefficients of the 2x2 sector over (|1,n>, |0,n+1>).

    Returns (pair, vec_plus, vec_minus). The bilinear left functionals carry
    the same coefficients (no conjugation), so vec.T @ vec = 1 and the cross
    pairing vanishes. Raises SingularModeError when the pair is numerically
    degenerate; there is no eigenbasis to return there.
    """
    pair = mode_pair(n, params)
    if pair.near_singular:
        raise SingularModeError(n, pair.sin_theta)
    vec_plus = np.array([1.0, 1j * pair.exp_plus], dtype=complex) / pair.z_plus
    vec_minus = np.array([1.0, 1j * pair.exp_minus], dtype=complex) / pair.z_minus
    return pair, vec_plus, vec_minus


def sector_block(n: int, params: ModelParams) -> np.ndarray:
    """Dense 2x2 Hamiltonian block of sector n over (|1,n>, |0,n+1>)."""
    root = params.omega_c * math.sqrt(n + 1.0)
    return np.array(
        [
            [-1j * (params.gamma_r + params.gamma_e * n), -root],
            [-root, -1j * params.gamma_e * (n + 1.0)],
        ],
        dtype=complex,
    )


def vacuum_raising(params: ModelParams):
    """Projections of a_e^dag |0,0> onto the sector-0 dressed pair."""
    _, vp, vm = mode_eigensystem(0, params)
    # a_e^dag |0,0> = |0,1>, the second basis vector of sector 0
    target = np.array([0.0, 1.0], dtype=complex)
    return vp @ target, vm @ target


def raising_coefficients(n: int, params: ModelParams) -> np.ndarray:
    """2x2 matrix C of a_e^dag from sector n to sector n+1 in the dressed basis.

    C[i, j] is the coefficient of the target branch i (0: +, 1: -) when the
    raising operator acts on source branch j of sector n. Computed
    operationally: raise in coefficient space, project with the bilinear left
    eigenvectors of sector n+1.
    """
    _, src_p, src_m = mode_eigensystem(n, params)
    _, tgt_p, tgt_m = mode_eigensystem(n + 1, params)
    lift = np.array([math.sqrt(n + 1.0), math.sqrt(n + 2.0)])
    out = np.empty((2, 2), dtype=complex)
    for j, src in enumerate((src_p, src_m)):
        raised = lift * src  # coefficients over (|1,n+1>, |0,n+2>)
        out[0, j] = tgt_p @ raised
        out[1, j] = tgt_m @ raised
    return out


# ---------------------------------------------------------------------------
# Brute-force transfer operator on the truncated two-mode space.
#
# Basis layout: index 0 is |0,0>; sector n occupies indices (1+2n, 2+2n) as
# (|1,n>, |0,n+1>), n = 0 .. n_modes-1.
# ---------------------------------------------------------------------------


def two_mode_dim(n_modes: int) -> int:
    return 1 + 2 * n_modes


def two_mode_hamiltonian(params: ModelParams, n_modes: int) -> np.ndarray:
    h = np.zeros((two_mode_dim(n_modes), two_mode_dim(n_modes)), dtype=complex)
    for n in range(n_modes):
        i = 1 + 2 * n
        h[i : i + 2, i : i + 2] = sector_block(n, params)
    return h


def transfer_operator(params: ModelParams, n_modes: int) -> np.ndarray:
    """Dense matrix of the static ladder operator whose k-th power on the
    vacuum generates the k-excitation component of the stationary state.

    Strictly sector-raising: the only nonzero blocks map |0,0> into sector 0
    and sector n into sector n+1. Dyads are right-eigenvector columns times
    bilinear left-eigenvector rows, weighted by the raising coefficient over
    the energy mismatch (E_target - E_source - delta).
    """
    dim = two_mode_dim(n_modes)
    op = np.zeros((dim, dim), dtype=complex)
    delta = params.delta

    pair0, vp0, vm0 = mode_eigensystem(0, params)
    c0p, c0m = vacuum_raising(params)
    for coef, energy, vec in (
        (c0p, pair0.energy_plus, vp0),
        (c0m, pair0.energy_minus, vm0),
    ):
        den = energy - delta
        if abs(den) < 1e-10:
            raise RecursionSingularityError(0, "E0 - delta", abs(den))
        op[1:3, 0] += (coef / den) * vec

    for n in range(n_modes - 1):
        pair_s, sp_, sm_ = mode_eigensystem(n, params)
        pair_t, tp_, tm_ = mode_eigensystem(n + 1, params)
        cmat = raising_coefficients(n, params)
        src_vecs = (sp_, sm_)
        src_energies = (pair_s.energy_plus, pair_s.energy_minus)
        tgt_vecs = (tp_, tm_)
        tgt_energies = (pair_t.energy_plus, pair_t.energy_minus)
        rows = slice(1 + 2 * (n + 1), 3 + 2 * (n + 1))
        cols = slice(1 + 2 * n, 3 + 2 * n)
        for i in range(2):
            for j in range(2):
                den = tgt_energies[i] - src_energies[j] - delta
                if abs(den) < 1e-10:
                    raise RecursionSingularityError(n + 1, "energy mismatch", abs(den))
                # no conjugation on the left row: bilinear pairing
                op[rows, cols] += (cmat[i, j] / den) * np.outer(tgt_vecs[i], src_vecs[j])
    return op


def transfer_projections(params: ModelParams, k_max: int):
    """Bilinear projections of T^k |0,0> onto the dressed pair of sector k-1.

    Returns two length-k_max arrays (plus-branch, minus-branch), k = 1..k_max.
    These carry the raw operator-power normalization; the production
    recursion tracks an extra 1/sqrt(k!) of combinatorial bookkeeping, so
    comparisons must rescale by sqrt(k!).
    """
    op = transfer_operator(params, k_max)
    vec = np.zeros(two_mode_dim(k_max), dtype=complex)
    vec[0] = 1.0
    proj_plus = np.empty(k_max, dtype=complex)
    proj_minus = np.empty(k_max, dtype=complex)
    for k in range(1, k_max + 1):
        vec = op @ vec
        _, lp, lm = mode_eigensystem(k - 1, params)
        block = vec[1 + 2 * (k - 1) : 3 + 2 * (k - 1)]
        proj_plus[k - 1] = lp @ block
        proj_minus[k - 1] = lm @ block
    return proj_plus, proj_minus
