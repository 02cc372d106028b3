"""Sweep harness: one structured spec in, deterministic tables out.

A sweep walks one parameter axis (or an axis pair for relaxation maps),
solves every grid point independently, and records failures per point
instead of aborting. Primary data columns are byte-identical across reruns
and across serial/parallel execution; wall-clock provenance lives only in
the JSON sidecar.
"""

import concurrent.futures
import datetime
import json
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__ as _pkg_version
from . import _kernels
from .errors import (
    ConvergenceError,
    DimensionError,
    ParameterError,
    RecursionSingularityError,
    RydeitError,
    SweepSpecError,
)
from .exact import exact_point
from .params import ModelParams
from .relaxation import MAP_AXES, relaxation_map, relaxation_report
from .state import (
    chi_large_m,
    chi_single_particle,
    state_susceptibility,
    stationary_state,
)

SCHEMA_VERSION = 1
SOLVERS = ("exact", "blockade", "closed_form")
SWEEP_AXES = ("delta", "u", "m", "omega_p", "omega_c", "gamma_e", "gamma_r")
KNOWN_OUTPUTS = ("chi1", "chi2", "eigenvalue", "chi1_ratio", "relaxation")
PERTURB_REL = 1e-7
CSV_FMT = ".17g"

JOBS_ENV = "RYDEIT_JOBS"


def resolve_jobs(jobs: Optional[int] = None) -> int:
    if jobs is not None:
        return max(1, int(jobs))
    env = os.environ.get(JOBS_ENV, "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise SweepSpecError(f"{JOBS_ENV} must be an integer, got {env!r}") from exc
    return 1


@dataclass(frozen=True)
class SweepSpec:
    solver: str
    params: ModelParams
    axis: str
    grid: np.ndarray
    axis2: Optional[str] = None
    grid2: Optional[np.ndarray] = None
    outputs: tuple = ("chi1", "chi2")
    perturb_singular: bool = False
    name: str = "sweep"

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise SweepSpecError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        relax = "relaxation" in self.outputs
        axes = MAP_AXES if relax else SWEEP_AXES
        if self.axis not in axes:
            raise SweepSpecError(f"axis must be one of {axes}, got {self.axis!r}")
        if relax and (self.axis2 is None or self.axis2 not in MAP_AXES):
            raise SweepSpecError("relaxation sweeps need axis2 in " + str(MAP_AXES))
        if relax and self.axis2 == self.axis:
            raise SweepSpecError("relaxation axes must differ")
        if not relax and self.axis2 is not None:
            raise SweepSpecError("axis2 is only supported for relaxation sweeps")
        for out in self.outputs:
            if out not in KNOWN_OUTPUTS:
                raise SweepSpecError(f"unknown output {out!r}")
        if len(self.grid) == 0:
            raise SweepSpecError("empty grid")
        if relax and (self.grid2 is None or len(self.grid2) == 0):
            raise SweepSpecError("empty grid2")
        if self.axis == "m":
            vals = np.asarray(self.grid)
            if not np.all(vals == np.round(vals)) or np.any(vals < 1):
                raise SweepSpecError("m grid must contain positive integers")

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "solver": self.solver,
            "params": self.params.to_dict(),
            "axis": self.axis,
            "grid": [float(v) for v in self.grid],
            "outputs": list(self.outputs),
            "perturb_singular": self.perturb_singular,
        }
        if self.axis2 is not None:
            d["axis2"] = self.axis2
            d["grid2"] = [float(v) for v in self.grid2]
        return d

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepSpec":
        known = {
            "schema_version", "name", "solver", "params", "axis", "grid",
            "axis2", "grid2", "outputs", "perturb_singular",
        }
        unknown = set(raw) - known
        if unknown:
            raise SweepSpecError(f"unknown spec keys: {sorted(unknown)}")
        version = raw.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise SweepSpecError(f"unsupported schema_version {version}")
        for key in ("solver", "params", "axis", "grid"):
            if key not in raw:
                raise SweepSpecError(f"spec is missing {key!r}")
        try:
            params = ModelParams.from_dict(raw["params"])
        except (TypeError, ParameterError) as exc:
            raise SweepSpecError(f"bad params block: {exc}") from exc
        return cls(
            solver=raw["solver"],
            params=params,
            axis=raw["axis"],
            grid=_resolve_grid(raw["grid"]),
            axis2=raw.get("axis2"),
            grid2=_resolve_grid(raw["grid2"]) if raw.get("grid2") is not None else None,
            outputs=tuple(raw.get("outputs", ("chi1", "chi2"))),
            perturb_singular=bool(raw.get("perturb_singular", False)),
            name=str(raw.get("name", "sweep")),
        )

    @classmethod
    def from_json(cls, path) -> "SweepSpec":
        with open(path) as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SweepSpecError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(raw)


def _resolve_grid(raw) -> np.ndarray:
    if isinstance(raw, dict):
        extra = set(raw) - {"start", "stop", "count", "values"}
        if extra:
            raise SweepSpecError(f"unknown grid keys: {sorted(extra)}")
        if "values" in raw:
            return np.asarray(raw["values"], dtype=float)
        try:
            start, stop, count = raw["start"], raw["stop"], int(raw["count"])
        except KeyError as exc:
            raise SweepSpecError("grid dict needs values or start/stop/count") from exc
        if count < 1:
            raise SweepSpecError("grid count must be >= 1")
        return np.linspace(float(start), float(stop), count)
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1:
        raise SweepSpecError("grid must be one-dimensional")
    return arr


# ---------------------------------------------------------------------------
# point solvers
# ---------------------------------------------------------------------------


def _point_params(spec: SweepSpec, value) -> ModelParams:
    if spec.axis == "m":
        return spec.params.replace(m=int(round(value)))
    return spec.params.replace(**{spec.axis: float(value)})


def _blockade_columns(params: ModelParams, outputs) -> dict:
    st = stationary_state(params)
    out = {}
    chi1 = state_susceptibility(st, 1)
    out["re_chi1"], out["im_chi1"] = chi1.real, chi1.imag
    chi2 = state_susceptibility(st, 2)
    out["re_chi2"], out["im_chi2"] = chi2.real, chi2.imag
    if "chi1_ratio" in outputs:
        out["chi1_ratio"] = chi1.imag / chi_large_m(params).imag
    return out


def _exact_columns(params: ModelParams, outputs) -> dict:
    pt = exact_point(params)
    out = {
        "re_chi1": pt.chi1.real,
        "im_chi1": pt.chi1.imag,
        "re_chi2": pt.chi2.real,
        "im_chi2": pt.chi2.imag,
    }
    if "eigenvalue" in outputs:
        out["re_eigenvalue"] = pt.eigenvalue.real
        out["im_eigenvalue"] = pt.eigenvalue.imag
        out["degenerate"] = int(pt.degenerate)
    return out


def _closed_form_columns(params: ModelParams, outputs) -> dict:
    chi1 = chi_large_m(params, 1)
    chi2 = chi_large_m(params, 2)
    single = chi_single_particle(params)
    return {
        "re_chi1": chi1.real,
        "im_chi1": chi1.imag,
        "re_chi2": chi2.real,
        "im_chi2": chi2.imag,
        "re_chi1_single": single.real,
        "im_chi1_single": single.imag,
    }


_SOLVER_FUNCS = {
    "exact": _exact_columns,
    "blockade": _blockade_columns,
    "closed_form": _closed_form_columns,
}


def _value_columns(spec: SweepSpec) -> list:
    cols = ["re_chi1", "im_chi1", "re_chi2", "im_chi2"]
    if spec.solver == "exact" and "eigenvalue" in spec.outputs:
        cols += ["re_eigenvalue", "im_eigenvalue", "degenerate"]
    if spec.solver == "blockade" and "chi1_ratio" in spec.outputs:
        cols += ["chi1_ratio"]
    if spec.solver == "closed_form":
        cols += ["re_chi1_single", "im_chi1_single"]
    return cols


def _solve_point(spec: SweepSpec, value):
    """One grid point: (columns dict, status string, note-or-None)."""
    params = _point_params(spec, value)
    func = _SOLVER_FUNCS[spec.solver]
    try:
        try:
            return func(params, spec.outputs), "ok", None
        except RecursionSingularityError as exc:
            if not spec.perturb_singular:
                raise
            nudged = params.replace(omega_c=params.omega_c * (1.0 + PERTURB_REL))
            cols = func(nudged, spec.outputs)
            note = (
                f"{spec.axis}={value:g}: omega_c perturbed by rel {PERTURB_REL:g} "
                f"after {exc}"
            )
            return cols, f"perturbed(omega_c rel {PERTURB_REL:g})", note
    except (RydeitError, ValueError, ArithmeticError) as exc:
        cols = {c: float("nan") for c in _value_columns(spec)}
        return cols, f"failed({type(exc).__name__}: {exc})", None


@dataclass
class SweepResult:
    spec: SweepSpec
    columns: list
    rows: list  # list of dicts keyed by columns
    notes: list = field(default_factory=list)

    @property
    def any_failed(self) -> bool:
        return any(str(r.get("status", "")).startswith("failed") for r in self.rows)

    def column(self, name) -> np.ndarray:
        return np.array([r[name] for r in self.rows])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_csv_cell(row[c]) for c in self.columns) + "\n")

    def provenance(self) -> dict:
        return {
            "package": "rydeit",
            "version": _pkg_version,
            "kernel_backend": _kernels.BACKEND,
            "schema_version": SCHEMA_VERSION,
            "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "solver_notes": list(self.notes),
            "failed_points": sum(
                1 for r in self.rows if str(r.get("status", "")).startswith("failed")
            ),
        }

    def to_json(self, path) -> None:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "spec": self.spec.to_dict(),
            "provenance": self.provenance(),
            "columns": self.columns,
            "rows": [[row[c] for c in self.columns] for row in self.rows],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, allow_nan=True)
            fh.write("\n")


def _csv_cell(value) -> str:
    if isinstance(value, str):
        return '"' + value.replace('"', '""') + '"' if "," in value or '"' in value else value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), CSV_FMT)


def run_sweep(spec: SweepSpec, jobs: Optional[int] = None) -> SweepResult:
    if "relaxation" in spec.outputs:
        return _run_relaxation_sweep(spec)
    jobs = resolve_jobs(jobs)
    columns = [spec.axis] + _value_columns(spec) + ["status"]
    values = list(spec.grid)
    results = [None] * len(values)

    def work(i):
        cols, status, note = _solve_point(spec, values[i])
        return i, cols, status, note

    if jobs == 1 or len(values) == 1:
        done = map(work, range(len(values)))
    else:
        pool = concurrent.futures.ThreadPoolExecutor(max_workers=jobs)
        try:
            done = list(pool.map(work, range(len(values))))
        finally:
            pool.shutdown()
    notes = []
    for i, cols, status, note in done:
        axis_val = int(round(values[i])) if spec.axis == "m" else float(values[i])
        row = {spec.axis: axis_val}
        row.update({c: cols.get(c, float("nan")) for c in _value_columns(spec)})
        row["status"] = status
        results[i] = row
        if note:
            notes.append(note)
    return SweepResult(spec=spec, columns=columns, rows=results, notes=notes)


def _run_relaxation_sweep(spec: SweepSpec) -> SweepResult:
    rmap = relaxation_map(
        spec.params, axis1=spec.axis, axis2=spec.axis2,
        grid1=spec.grid, grid2=spec.grid2,
    )
    columns = [spec.axis, spec.axis2, "exponent_pp", "exponent_mm", "regular", "status"]
    rows = []
    for i, v1 in enumerate(rmap.grid1):
        for j, v2 in enumerate(rmap.grid2):
            rows.append(
                {
                    spec.axis: float(v1),
                    spec.axis2: float(v2),
                    "exponent_pp": float(rmap.exponent_pp[i, j]),
                    "exponent_mm": float(rmap.exponent_mm[i, j]),
                    "regular": int(rmap.regular[i, j]),
                    "status": "ok",
                }
            )
    result = SweepResult(spec=spec, columns=columns, rows=rows)
    result.boundary = rmap.boundary  # stashed for the preset writer
    return result


# ---------------------------------------------------------------------------
# null refraction scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullRefractionResult:
    m: int
    re_chi2: float
    sign_change: bool
    scan_m: np.ndarray
    scan_re_chi2: np.ndarray


def find_null_refraction(params: ModelParams, m_range=None) -> NullRefractionResult:
    """Particle number where Re chi(2) at zero detuning crosses zero.

    Scans the blockade path over m_range (default 2..1000), returns the m
    minimizing |Re chi(2)| and whether a sign change brackets it.
    """
    if params.delta != 0.0:
        raise ParameterError("null-refraction scan is defined at delta = 0")
    m_values = np.arange(2, 1001) if m_range is None else np.asarray(list(m_range), dtype=int)
    if m_values.size == 0:
        raise ParameterError("empty m range")
    re_chi2 = np.empty(m_values.size)
    for i, m in enumerate(m_values):
        st = stationary_state(params.replace(m=int(m)))
        re_chi2[i] = state_susceptibility(st, 2).real
    sign = np.sign(re_chi2)
    change = bool(np.any(sign[:-1] * sign[1:] <= 0))
    best = int(np.argmin(np.abs(re_chi2)))
    return NullRefractionResult(
        m=int(m_values[best]),
        re_chi2=float(re_chi2[best]),
        sign_change=change,
        scan_m=m_values,
        scan_re_chi2=re_chi2,
    )


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

_FIG2_PARAMS = ModelParams(
    omega_p=0.5, omega_c=1.0, gamma_e=10.0, gamma_r=0.5, delta=0.0, u=0.0, m=50
)
_FIG3_PARAMS = ModelParams(
    omega_p=0.1, omega_c=1.0, gamma_e=2.0, gamma_r=0.0, delta=0.0, u=0.0, m=1000
)
_FIG4_PARAMS = ModelParams(
    omega_p=0.1, omega_c=1.0, gamma_e=2.0, gamma_r=0.0, delta=0.0, u=0.0, m=65
)

FIG3_GAMMA_E = (1.0, 2.0, 5.0, 10.0)
FIG_M_GRID = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000)
# U grid for the saturation inset: 0 plus half-decade spacing in base 2
FIG2_U_GRID = (0.0,) + tuple(float(2.0**k) for k in range(-4, 9))
# all-dense m grid for the growth inset (dimension stays under the cutoff)
FIG2_M_GRID = (1, 2, 5, 10, 20, 35, 50, 65, 80, 87)

PRESET_NAMES = ("fig2", "fig3", "fig4", "relaxmap")


def preset_specs(name: str) -> list:
    """The sweeps behind each shipped preset, as a list of SweepSpec."""
    if name == "fig2":
        return [
            SweepSpec(
                solver="exact", params=_FIG2_PARAMS, axis="delta",
                grid=np.linspace(-6.0, 6.0, 121),
                outputs=("chi1", "chi2", "eigenvalue"), name="fig2_delta",
            ),
            SweepSpec(
                solver="exact", params=_FIG2_PARAMS, axis="u",
                grid=np.asarray(FIG2_U_GRID),
                outputs=("chi1", "chi2"), name="fig2_u",
            ),
            SweepSpec(
                solver="exact", params=_FIG2_PARAMS.replace(u=1.0), axis="m",
                grid=np.asarray(FIG2_M_GRID, dtype=float),
                outputs=("chi1", "chi2"), name="fig2_m",
            ),
        ]
    if name == "fig3":
        return [
            SweepSpec(
                solver="blockade",
                params=_FIG3_PARAMS.replace(gamma_e=ge),
                axis="m",
                grid=np.asarray(FIG_M_GRID, dtype=float),
                outputs=("chi1", "chi2", "chi1_ratio"),
                name=f"fig3_ge{ge:g}",
            )
            for ge in FIG3_GAMMA_E
        ]
    if name == "fig4":
        specs = [
            SweepSpec(
                solver="blockade", params=_FIG4_PARAMS.replace(m=m), axis="delta",
                grid=np.linspace(-6.0, 6.0, 241),
                outputs=("chi1", "chi2"), name=f"fig4_m{m}",
            )
            for m in (1, 2, 65, 1000)
        ]
        specs.append(
            SweepSpec(
                solver="closed_form", params=_FIG4_PARAMS, axis="delta",
                grid=np.linspace(-6.0, 6.0, 241),
                outputs=("chi1", "chi2"), name="fig4_closed",
            )
        )
        return specs
    if name == "relaxmap":
        return [
            SweepSpec(
                solver="blockade",
                params=ModelParams(
                    omega_p=0.1, omega_c=1.0, gamma_e=2.0, gamma_r=1.0,
                    delta=0.0, u=0.0, m=2,
                ),
                axis="gamma_e", axis2="omega_c",
                grid=np.linspace(0.0, 5.0, 101),
                grid2=np.linspace(0.05, 5.0, 100),
                outputs=("relaxation",),
                name="relaxmap",
            )
        ]
    raise SweepSpecError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def run_preset(name: str, out_dir=".", jobs: Optional[int] = None) -> list:
    """Run every sweep of a preset, writing CSV + JSON pairs into out_dir.

    Returns the list of SweepResult. Relaxation maps additionally write a
    `<name>_boundary.csv` with the zero crossing of the max exponent.
    """
    os.makedirs(out_dir, exist_ok=True)
    results = []
    for spec in preset_specs(name):
        result = run_sweep(spec, jobs=jobs)
        base = os.path.join(out_dir, spec.name)
        result.to_csv(base + ".csv")
        result.to_json(base + ".json")
        boundary = getattr(result, "boundary", None)
        if boundary is not None:
            with open(base + "_boundary.csv", "w") as fh:
                fh.write(f"{spec.axis},{spec.axis2}_at_zero\n")
                for v1, v2 in zip(spec.grid, boundary):
                    fh.write(f"{_csv_cell(float(v1))},{_csv_cell(float(v2))}\n")
        results.append(result)
    return results
