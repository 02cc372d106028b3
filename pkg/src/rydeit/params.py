"""Model parameters for the driven three-band system.

Bands: ground (g), Rydberg/interaction (r), excited intermediate (e).
All rates and couplings are in the same (arbitrary) frequency unit; delta is
the two-photon detuning seen by the ground band.
"""

import dataclasses
from dataclasses import dataclass

from .errors import ParameterError

# Hard caps on particle number per solver path. The exact path is limited by
# dense/iterative linear algebra on dimension (m+2)(m+1)/2; the perturbative
# blockade path only needs O(m) work but the binomial bookkeeping is done in
# log space, which we trust up to a million particles.
MAX_EXACT_M = 150
MAX_BLOCKADE_M = 1_000_000

# Dense full-spectrum diagonalization up to this dimension; shift-invert
# iteration above it.
DENSE_DIM_CUTOFF = 4000


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter set.

    omega_p: probe coupling (ground <-> excited)
    omega_c: control coupling (excited <-> Rydberg), must be > 0
    gamma_e: excited-band loss rate, >= 0
    gamma_r: Rydberg-band loss rate, >= 0
    delta:   two-photon detuning on the ground band
    u:       Rydberg pair interaction strength
    m:       total particle number
    """

    omega_p: float = 0.1
    omega_c: float = 1.0
    gamma_e: float = 1.0
    gamma_r: float = 0.0
    delta: float = 0.0
    u: float = 0.0
    m: int = 1

    def __post_init__(self):
        if self.omega_c <= 0:
            raise ParameterError(f"omega_c must be positive, got {self.omega_c}")
        if self.gamma_e < 0 or self.gamma_r < 0:
            raise ParameterError(
                f"loss rates must be non-negative, got gamma_e={self.gamma_e}, gamma_r={self.gamma_r}"
            )
        if self.omega_p < 0:
            raise ParameterError(f"omega_p must be non-negative, got {self.omega_p}")
        if not isinstance(self.m, (int,)) or isinstance(self.m, bool):
            raise ParameterError(f"m must be an integer, got {self.m!r}")
        if self.m < 0:
            raise ParameterError(f"m must be >= 0, got {self.m}")

    def replace(self, **kwargs) -> "ModelParams":
        return dataclasses.replace(self, **kwargs)

    @property
    def eta(self) -> complex:
        """Shorthand i*gamma_e + delta used throughout the recursion."""
        return 1j * self.gamma_e + self.delta

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ParameterError(f"unknown parameter keys: {sorted(unknown)}")
        return cls(**d)


def basis_dimension(m: int) -> int:
    """Number of symmetric three-band Fock states with m particles."""
    return (m + 2) * (m + 1) // 2
