"""Self-checks wiring the independent computation paths against each other.

Each check recomputes a quantity two unrelated ways and reports the worst
relative deviation against a pinned tolerance. `fast` runs in seconds;
`full` adds the large dense sweeps and the long-range particle-number grid.
"""

import json
import time
import zlib
from dataclasses import dataclass, field
from math import lgamma

import numpy as np

from . import _kernels
from .exact import build_hamiltonian, exact_point, least_decaying_eigenpair
from .modes import mode_eigensystem, sector_block, transfer_projections
from .params import ModelParams
from .recursion import stable_transfer, transfer_coefficients
from .relaxation import relaxation_exponents
from .state import (
    chi_large_m,
    chi_single_particle,
    state_susceptibility,
    stationary_state,
)

LEVELS = ("fast", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    tolerance: float
    deviation: float
    elapsed: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "tolerance": float(self.tolerance),
            "deviation": float(self.deviation),
            "elapsed_s": round(float(self.elapsed), 3),
            "detail": self.detail,
        }


@dataclass
class ValidationReport:
    level: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(
                f"{mark}  {c.name:<28s} dev {c.deviation:9.2e}"
                f"  tol {c.tolerance:7.1e}  {c.elapsed:6.2f}s  {c.detail}"
            )
        lines.append(
            f"{'PASS' if self.passed else 'FAIL'}  validation level={self.level}"
        )
        return "\n".join(lines)


def _rel(a, b, floor=1e-12) -> float:
    return abs(a - b) / max(abs(a), abs(b), floor)


# ---------------------------------------------------------------------------
# individual checks; each returns (tolerance, deviation, detail)
# ---------------------------------------------------------------------------


def _check_single_particle_limit(rng):
    """Exact solver at m=1 against the closed single-particle expression.

    The closed form is the weak-probe limit, so the probe must be small;
    at omega_p/omega_c = 1e-2 the residual is O(1e-4).
    """
    worst = 0.0
    for delta in np.linspace(-6.0, 6.0, 61):
        p = ModelParams(omega_p=0.01, omega_c=1.0, gamma_e=2.0, delta=float(delta), m=1)
        worst = max(worst, _rel(exact_point(p).chi1, chi_single_particle(p)))
    return 1e-3, worst, "61 detuning points, m=1, exact solver"


def _check_zero_detuning_identities(rng):
    """Re chi(1) and Im chi(2) vanish on resonance."""
    worst = 0.0
    for _ in range(8):
        gamma_r = float(rng.uniform(0.0, 2.0))
        gamma_e = gamma_r + float(rng.uniform(0.5, 4.0))
        p = ModelParams(
            omega_p=float(rng.uniform(0.01, 0.3)),
            omega_c=float(rng.uniform(0.5, 3.0)),
            gamma_e=gamma_e, gamma_r=gamma_r, delta=0.0,
            m=int(rng.integers(2, 60)),
        )
        st = stationary_state(p)
        chi1 = state_susceptibility(st, 1)
        chi2 = state_susceptibility(st, 2)
        worst = max(worst, abs(chi1.real) / max(abs(chi1), 1e-12))
        worst = max(worst, abs(chi2.imag) / max(abs(chi2), 1e-12))
    return 1e-10, worst, "8 random draws, blockade path"


def _check_recursion_equivalence(rng):
    """Stabilized amplitude scan vs the dressed-basis reference recursion."""
    worst = 0.0
    for _ in range(10):
        p = ModelParams(
            omega_p=0.1,
            omega_c=float(rng.uniform(0.5, 2.0)),
            gamma_e=float(rng.uniform(0.5, 4.0)),
            gamma_r=float(rng.uniform(0.0, 0.4)),
            delta=float(rng.uniform(-3.0, 3.0)),
            m=40,
        )
        tr = stable_transfer(p)
        v, w = transfer_coefficients(p, p.m)
        scale = np.exp(tr.scale_log)
        for k in range(1, p.m + 1):
            s = mode_eigensystem(k - 1, p)[0].sin_theta
            worst = max(worst, _rel(tr.p[k - 1] * scale[k - 1], v[k - 1] + w[k - 1]))
            worst = max(
                worst, _rel(tr.q[k - 1] * scale[k - 1], s * (v[k - 1] - w[k - 1]))
            )
    return 1e-9, worst, "10 draws, depth 40"


def _check_transfer_oracle(rng):
    """Recursion coefficients against dense transfer-operator powers."""
    worst = 0.0
    k_max = 6
    for i in range(4):
        if i == 0:
            p = ModelParams(omega_p=0.5, omega_c=1.0, gamma_e=10.0, gamma_r=0.5, m=k_max)
        else:
            p = ModelParams(
                omega_p=0.1,
                omega_c=float(rng.uniform(0.5, 2.0)),
                gamma_e=float(rng.uniform(1.0, 6.0)),
                gamma_r=float(rng.uniform(0.0, 0.8)),
                delta=float(rng.uniform(-2.0, 2.0)),
                m=k_max,
            )
        proj_p, proj_m = transfer_projections(p, k_max)
        v, w = transfer_coefficients(p, k_max)
        for k in range(1, k_max + 1):
            fac = np.exp(0.5 * lgamma(k + 1))
            pair = mode_eigensystem(k - 1, p)[0]
            worst = max(worst, _rel(proj_p[k - 1], fac * v[k - 1] * pair.z_plus))
            worst = max(worst, _rel(proj_m[k - 1], fac * w[k - 1] * pair.z_minus))
    return 1e-8, worst, "4 parameter sets, depth 6"


def _check_mode_residuals(rng):
    """Sector eigenpairs solve their 2x2 blocks; bilinear pairing stays unit."""
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(0, 100))
        p = ModelParams(
            omega_c=float(rng.uniform(0.3, 3.0)),
            gamma_e=float(rng.uniform(0.0, 6.0)),
            gamma_r=float(rng.uniform(0.0, 2.0)),
            delta=float(rng.uniform(-3.0, 3.0)),
            m=n + 2,
        )
        try:
            pair, vp, vm = mode_eigensystem(n, p)
        except Exception:
            continue
        block = sector_block(n, p)
        scale = max(np.linalg.norm(block), 1.0)
        worst = max(
            worst,
            np.linalg.norm(block @ vp - pair.energy_plus * vp) / scale,
            np.linalg.norm(block @ vm - pair.energy_minus * vm) / scale,
            abs(vp @ vp - 1.0),
            abs(vm @ vm - 1.0),
            abs(vp @ vm),
        )
    return 1e-12, worst, "30 random sectors up to n=99"


def _check_exact_residual(rng, m=12):
    """Dense eigenpair residual against the matrix scale."""
    p = ModelParams(omega_p=0.5, omega_c=1.0, gamma_e=10.0, gamma_r=0.5, u=1.0, m=m)
    nhh = build_hamiltonian(p)
    pair = least_decaying_eigenpair(nhh)
    dev = pair.residual / nhh.frobenius
    return 1e-10, dev, f"m={m}, dim={nhh.dim}, method={pair.method}"


def _check_kernel_backends(rng):
    """Pure-python and compiled scans produce identical trajectories."""
    p = ModelParams(omega_p=0.2, omega_c=1.3, gamma_e=3.0, gamma_r=0.2, delta=0.7, m=1000)
    if not _kernels.HAVE_NUMBA:
        return 1e-12, 0.0, "numba unavailable; python backend only"
    out = {}
    for label, scan in (("py", _kernels.pq_scan_python), ("nb", _kernels.pq_scan_numba)):
        pbuf = np.empty(p.m, dtype=np.complex128)
        qbuf = np.empty(p.m, dtype=np.complex128)
        sbuf = np.empty(p.m, dtype=np.float64)
        status = scan(p.m, p.omega_p, p.omega_c, p.gamma_e, p.gamma_r, p.delta, pbuf, qbuf, sbuf)
        assert status == 0
        out[label] = (pbuf, qbuf, sbuf)
    worst = 0.0
    for a, b in zip(out["py"], out["nb"]):
        worst = max(worst, float(np.max(np.abs(a - b))))
    return 1e-12, worst, "m=1000 scan, both backends"


def _check_cross_path(rng, m_max=3, n_delta=9):
    """Blockade recursion vs exact diagonalization at strong interaction.

    First order only: the ladder construction resolves each excitation step
    with transition-frequency denominators, which reproduces the exact
    eigenvector at first order in the probe but deviates from it in the
    two-and-more-excitation amplitudes, so second-order responses are not
    expected to agree pointwise. gamma_r stays positive: at gamma_r = 0 the
    resonant first-order response vanishes exactly and the relative
    comparison turns 0/0. Frozen envelope from the first oracle run:
    9.17e-4 (u=100, gamma_r=0.1, m<=4, 25 detuning points).
    """
    worst = 0.0
    for m in range(1, m_max + 1):
        for d in np.linspace(-3.0, 3.0, n_delta):
            p = ModelParams(
                omega_p=0.01, omega_c=1.0, gamma_e=2.0, gamma_r=0.1,
                delta=float(d), u=100.0, m=m,
            )
            pt = exact_point(p)
            st = stationary_state(p)
            worst = max(worst, abs(pt.chi1 - state_susceptibility(st, 1)) / abs(pt.chi1))
    return 5e-2, worst, f"u/omega_c=100, m<={m_max}, {n_delta} detunings"


def _check_ratio_bounds(rng, m_top=100):
    """Absorption ratio to the large-m limit stays in (0, 1] and grows."""
    p = ModelParams(omega_p=0.1, omega_c=1.0, gamma_e=2.0, gamma_r=0.0, m=1)
    lim = chi_large_m(p).imag
    grid = [m for m in (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000) if m <= m_top]
    ratios = []
    for m in grid:
        st = stationary_state(p.replace(m=m))
        ratios.append(state_susceptibility(st, 1).imag / lim)
    ratios = np.array(ratios)
    dev = 0.0
    if np.any(ratios[1:] < 0.0) or np.any(ratios > 1.0 + 1e-12):
        dev = 1.0
    if np.any(np.diff(ratios) < -1e-12):
        dev = 1.0
    return 0.5, dev, f"grid up to m={grid[-1]}, last ratio {ratios[-1]:.4f}"


def _check_relaxation_bound(rng, n_grid=1000):
    """Slowest relaxation exponent never beats the bare loss floor.

    The bound only holds for gamma_e > gamma_r >= 0; draws respect that.
    """
    worst = -np.inf
    for _ in range(n_grid):
        gr = float(rng.uniform(0.0, 3.0))
        ge = gr + float(rng.uniform(1e-6, 6.0))
        oc = float(rng.uniform(0.05, 5.0))
        epp, emm = relaxation_exponents(ge, gr, oc)
        worst = max(worst, epp + gr, emm + gr)
    return 1e-12, max(worst, 0.0), f"{n_grid} draws with gamma_e > gamma_r"


def _check_dip_saturation(rng):
    """Interaction sweep of the resonant dip: monotone rise, then saturation."""
    base = ModelParams(omega_p=0.5, omega_c=1.0, gamma_e=10.0, gamma_r=0.5, m=50)
    u_grid = [0.0, 0.25, 1.0, 4.0, 16.0, 64.0, 256.0]
    dips = [exact_point(base.replace(u=u)).chi1.imag for u in u_grid]
    dips = np.array(dips)
    dev = 0.0
    if np.any(np.diff(dips) < -1e-3 * abs(dips[-1])):
        dev = 1.0
    tail = abs(dips[-1] - dips[-2]) / abs(dips[-1])
    dev = max(dev, tail)
    return 2e-2, dev, f"dip {dips[0]:.4f} -> {dips[-1]:.4f} over u sweep"


_FAST_CHECKS = [
    ("single_particle_limit", _check_single_particle_limit),
    ("zero_detuning_identities", _check_zero_detuning_identities),
    ("recursion_equivalence", _check_recursion_equivalence),
    ("transfer_oracle", _check_transfer_oracle),
    ("mode_residuals", _check_mode_residuals),
    ("exact_residual", _check_exact_residual),
    ("kernel_backends", _check_kernel_backends),
    ("cross_path", _check_cross_path),
    ("ratio_bounds", _check_ratio_bounds),
    ("relaxation_bound", _check_relaxation_bound),
]

_FULL_EXTRA = [
    ("exact_residual_m50", lambda rng: _check_exact_residual(rng, m=50)),
    ("cross_path_m4", lambda rng: _check_cross_path(rng, m_max=4)),
    ("ratio_bounds_m1000", lambda rng: _check_ratio_bounds(rng, m_top=1000)),
    ("relaxation_bound_10k", lambda rng: _check_relaxation_bound(rng, n_grid=10_000)),
    ("dip_saturation", _check_dip_saturation),
]


def run_validation(level: str = "fast") -> ValidationReport:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    checks = list(_FAST_CHECKS)
    if level == "full":
        checks += _FULL_EXTRA
    report = ValidationReport(level=level)
    for name, func in checks:
        # crc32 keeps the per-check seed stable across interpreter runs
        rng = np.random.default_rng(zlib.crc32(name.encode()))
        t0 = time.perf_counter()
        try:
            tol, dev, detail = func(rng)
            passed = dev <= tol
        except Exception as exc:  # a crashed check is a failed check
            tol, dev, detail, passed = 0.0, float("inf"), f"{type(exc).__name__}: {exc}", False
        report.checks.append(
            CheckResult(
                name=name, passed=passed, tolerance=tol, deviation=dev,
                elapsed=time.perf_counter() - t0, detail=detail,
            )
        )
    return report
