"""Symmetric Fock basis for three bosonic bands at fixed particle number.

States are occupation triples (n_g, n_r, n_e) with n_g + n_r + n_e = m.
The canonical ordering is ascending lexicographic in (n_r, n_e); n_g is
implied. This ordering is part of the output contract: rerunning any build
yields identical index assignments.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError
from .params import ModelParams, basis_dimension

BANDS = ("g", "r", "e")


class FockState(NamedTuple):
    n_g: int
    n_r: int
    n_e: int


@dataclass(frozen=True)
class FockBasis:
    """Fixed-m basis with occupation arrays and a state -> index map."""

    m: int
    states: tuple
    n_g: np.ndarray = field(repr=False)
    n_r: np.ndarray = field(repr=False)
    n_e: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, state) -> int:
        n_g, n_r, n_e = state
        if n_g + n_r + n_e != self.m or min(n_g, n_r, n_e) < 0:
            raise ParameterError(f"state {state} not in the m={self.m} sector")
        # offset of the n_r block plus n_e within it
        return n_r * (self.m + 1) - n_r * (n_r - 1) // 2 + n_e


def enumerate_basis(m: int) -> FockBasis:
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    states = []
    for n_r in range(m + 1):
        for n_e in range(m - n_r + 1):
            states.append(FockState(m - n_r - n_e, n_r, n_e))
    assert len(states) == basis_dimension(m)
    arr = np.array(states, dtype=np.int64).reshape(len(states), 3)
    return FockBasis(
        m=m,
        states=tuple(states),
        n_g=arr[:, 0].copy(),
        n_r=arr[:, 1].copy(),
        n_e=arr[:, 2].copy(),
    )


def hopping_amplitude(state, from_band: str, to_band: str):
    """Matrix element of a_to^dag a_from between Fock states.

    Returns (destination_state, amplitude) or None when the source band is
    empty. Amplitude is sqrt(n_from * (n_to + 1)), always non-negative.
    """
    if from_band not in BANDS or to_band not in BANDS or from_band == to_band:
        raise ParameterError(f"bad band pair {from_band!r} -> {to_band!r}")
    occ = list(state)
    i_from = BANDS.index(from_band)
    i_to = BANDS.index(to_band)
    if occ[i_from] == 0:
        return None
    amp = math.sqrt(occ[i_from] * (occ[i_to] + 1))
    occ[i_from] -= 1
    occ[i_to] += 1
    return FockState(*occ), amp


def diagonal_energy(state, params: ModelParams) -> complex:
    """Diagonal element of the non-Hermitian Hamiltonian for one Fock state.

    delta * n_g + (u/2) n_r (n_r - 1) - i (gamma_r n_r + gamma_e n_e).
    The imaginary part is never positive for non-negative loss rates.
    """
    n_g, n_r, n_e = state
    return (
        params.delta * n_g
        + 0.5 * params.u * n_r * (n_r - 1)
        - 1j * (params.gamma_r * n_r + params.gamma_e * n_e)
    )


def probe_hop_matrix(basis: FockBasis) -> sp.csr_matrix:
    """Sparse matrix of a_g^dag a_e on the fixed-m basis.

    This is the transition operator whose normalized moments give the
    susceptibilities.
    """
    src = np.nonzero(basis.n_e >= 1)[0]
    n_g = basis.n_g[src]
    n_r = basis.n_r[src]
    n_e = basis.n_e[src]
    amp = np.sqrt(n_e * (n_g + 1.0))
    dst_nr = n_r
    dst_ne = n_e - 1
    dst = dst_nr * (basis.m + 1) - dst_nr * (dst_nr - 1) // 2 + dst_ne
    return sp.coo_matrix(
        (amp.astype(np.complex128), (dst, src)), shape=(basis.dim, basis.dim)
    ).tocsr()
