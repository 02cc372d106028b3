"""Exact non-Hermitian Hamiltonian path: build, diagonalize, measure.

The fixed-m Hamiltonian is complex symmetric: real symmetric hopping terms
(-omega_p, -omega_c ladders) plus a complex diagonal. The least-decaying
eigenpair is the one with the largest imaginary part; ties are broken toward
the larger real part and flagged.

Dimension (m+2)(m+1)/2 caps the path: full-spectrum dense solves up to
DENSE_DIM_CUTOFF, ARPACK shift-invert above it (an extension; the dense path
carries the acceptance work). The dense route computes eigenvalues only and
then extracts the single needed eigenvector by shifted inverse iteration;
asking LAPACK for every eigenvector at dimension ~4000 would cost far more
than the one vector we use.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConvergenceError, DimensionError, ParameterError
from .fock import FockBasis, enumerate_basis, probe_hop_matrix
from .params import DENSE_DIM_CUTOFF, MAX_EXACT_M, ModelParams

DEGENERACY_RTOL = 1e-9
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class NhhMatrix:
    params: ModelParams
    basis: FockBasis
    matrix: sp.csr_matrix

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self.matrix.data))


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: np.ndarray
    residual: float
    degenerate: bool
    method: str


def build_hamiltonian(params: ModelParams) -> NhhMatrix:
    if params.m > MAX_EXACT_M:
        raise DimensionError(
            f"exact path capped at m={MAX_EXACT_M} "
            f"(dimension {(MAX_EXACT_M + 2) * (MAX_EXACT_M + 1) // 2}), got m={params.m}"
        )
    basis = enumerate_basis(params.m)
    m = params.m
    n_g, n_r, n_e = basis.n_g, basis.n_r, basis.n_e

    diag = (
        params.delta * n_g
        + 0.5 * params.u * n_r * (n_r - 1)
        - 1j * (params.gamma_r * n_r + params.gamma_e * n_e)
    ).astype(np.complex128)

    rows = [np.arange(basis.dim)]
    cols = [np.arange(basis.dim)]
    vals = [diag]

    def add_hop(dst_nr, dst_ne, amp, coupling, src):
        dst = dst_nr * (m + 1) - dst_nr * (dst_nr - 1) // 2 + dst_ne
        v = (-coupling * amp).astype(np.complex128)
        rows.append(dst)
        cols.append(src)
        vals.append(v)
        rows.append(src)
        cols.append(dst)
        vals.append(v)

    # control coupling: excited -> Rydberg
    src = np.nonzero(n_e >= 1)[0]
    if src.size:
        amp = np.sqrt(n_e[src] * (n_r[src] + 1.0))
        add_hop(n_r[src] + 1, n_e[src] - 1, amp, params.omega_c, src)
    # probe coupling: excited -> ground
    if src.size:
        amp = np.sqrt(n_e[src] * (n_g[src] + 1.0))
        add_hop(n_r[src], n_e[src] - 1, amp, params.omega_p, src)

    mat = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(basis.dim, basis.dim),
    ).tocsr()
    return NhhMatrix(params=params, basis=basis, matrix=mat)


def _start_vector(dim: int) -> np.ndarray:
    # fixed pseudo-random start keeps reruns bit-identical
    rng = np.random.default_rng(1234567)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _select_least_decaying(values: np.ndarray):
    order = np.lexsort((-values.real, -values.imag))
    top = values[order[0]]
    degenerate = False
    if order.size > 1:
        runner = values[order[1]]
        degenerate = abs(top - runner) < DEGENERACY_RTOL * max(1.0, abs(top))
    return top, degenerate


def _inverse_iteration(mat: sp.csr_matrix, target: complex, tol: float,
                       v0=None, max_iter: int = 8):
    dim = mat.shape[0]
    ident = sp.identity(dim, dtype=complex, format="csr")
    jitter = 0.0
    lu = None
    for _ in range(3):
        try:
            lu = spla.splu((mat - (target + jitter) * ident).tocsc())
            break
        except RuntimeError:
            # exactly singular shift: nudge it off the eigenvalue
            jitter += 1e-12 * max(1.0, abs(target)) * (1.0 + 1.0j)
    if lu is None:
        raise ConvergenceError(f"could not factor shifted matrix at {target}")
    v = _start_vector(dim) if v0 is None else v0 / np.linalg.norm(v0)
    best = None
    for _ in range(max_iter):
        w = lu.solve(v)
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            break
        v = w / nw
        value = np.vdot(v, mat @ v)  # Rayleigh quotient minimizes the residual
        residual = float(np.linalg.norm(mat @ v - value * v))
        if best is None or residual < best[2]:
            best = (value, v.copy(), residual)
        if residual <= tol:
            break
    if best is None:
        raise ConvergenceError(f"inverse iteration stagnated at shift {target}")
    return best


def least_decaying_eigenpair(nhh: NhhMatrix, *, method: str = "auto",
                             dense_cutoff: int = DENSE_DIM_CUTOFF,
                             arpack_k: int = 12, shift=None) -> EigenPair:
    """Eigenpair with maximal Im(E).

    method "auto" picks "dense" (full spectrum + targeted inverse iteration)
    up to dense_cutoff and "shift-invert" (ARPACK around shift, default
    delta*m) beyond; "full" forces the all-eigenvectors LAPACK solve and is
    kept as a cross-check. Residual contract: ||H v - E v|| <= 1e-10 ||H||_F.
    """
    mat = nhh.matrix
    dim = nhh.dim
    tol = RESIDUAL_RTOL * nhh.frobenius
    if method == "auto":
        method = "dense" if dim <= dense_cutoff else "shift-invert"

    if method == "full":
        values, vectors = scipy.linalg.eig(mat.toarray(), check_finite=False)
        value, degenerate = _select_least_decaying(values)
        idx = int(np.argmin(np.abs(values - value)))
        vec = vectors[:, idx]
        vec = vec / np.linalg.norm(vec)
        residual = float(np.linalg.norm(mat @ vec - value * vec))
        if residual > tol:
            value, vec, residual = _inverse_iteration(mat, value, tol, v0=vec)
        return EigenPair(complex(value), vec, residual, bool(degenerate), "full")

    if method == "dense":
        values = scipy.linalg.eigvals(mat.toarray(), check_finite=False)
        target, degenerate = _select_least_decaying(values)
        value, vec, residual = _inverse_iteration(mat, target, tol)
        if residual > tol:
            raise ConvergenceError(
                f"residual {residual:.3e} above contract {tol:.3e} at dim {dim}"
            )
        return EigenPair(complex(value), vec, residual, bool(degenerate), "dense")

    if method == "shift-invert":
        sigma = (nhh.params.delta * nhh.params.m + 0.0j) if shift is None else shift
        k = min(arpack_k, dim - 2)
        try:
            values, vectors = spla.eigs(
                mat, k=k, sigma=sigma, which="LM", v0=_start_vector(dim)
            )
        except spla.ArpackNoConvergence as exc:
            found = 0 if exc.eigenvalues is None else len(exc.eigenvalues)
            raise ConvergenceError(
                f"ARPACK shift-invert around sigma={sigma} converged only "
                f"{found}/{k} pairs at dim {dim}; retry with a larger k or "
                "a different shift"
            ) from exc
        # search window: the k converged eigenvalues nearest sigma
        value, degenerate = _select_least_decaying(values)
        idx = int(np.argmin(np.abs(values - value)))
        vec = vectors[:, idx]
        vec = vec / np.linalg.norm(vec)
        residual = float(np.linalg.norm(mat @ vec - value * vec))
        if residual > tol:
            value, vec, residual = _inverse_iteration(mat, value, tol, v0=vec)
        if residual > tol:
            raise ConvergenceError(
                f"residual {residual:.3e} above contract {tol:.3e} at dim {dim}"
            )
        return EigenPair(complex(value), vec, residual, bool(degenerate), "shift-invert")

    raise ParameterError(f"unknown eigensolver method {method!r}")


def susceptibility(vector: np.ndarray, basis: FockBasis, order: int = 1,
                   *, expectation: str = "conjugated") -> complex:
    """Normalized moment <(a_g^dag a_e)^order> / m^order of an eigenvector.

    Default expectation conjugates the left vector (right-right convention).
    The bilinear variant (transpose pairing, natural for complex-symmetric
    matrices) is available as a diagnostic; it is not the production choice.
    """
    if order not in (1, 2):
        raise ParameterError(f"order must be 1 or 2, got {order}")
    if basis.m < 1:
        raise ParameterError("susceptibility needs m >= 1")
    hop = probe_hop_matrix(basis)
    w = vector
    for _ in range(order):
        w = hop @ w
    if expectation == "conjugated":
        num = np.vdot(vector, w)
        den = np.vdot(vector, vector)
    elif expectation == "bilinear":
        num = vector @ w
        den = vector @ vector
    else:
        raise ParameterError(f"unknown expectation {expectation!r}")
    return complex(num / den) / float(basis.m) ** order


@dataclass(frozen=True)
class ExactPoint:
    chi1: complex
    chi2: complex
    eigenvalue: complex
    degenerate: bool
    residual: float
    method: str


def exact_point(params: ModelParams, *, expectation: str = "conjugated",
                method: str = "auto", dense_cutoff: int = DENSE_DIM_CUTOFF) -> ExactPoint:
    nhh = build_hamiltonian(params)
    pair = least_decaying_eigenpair(nhh, method=method, dense_cutoff=dense_cutoff)
    chi1 = susceptibility(pair.vector, nhh.basis, 1, expectation=expectation)
    chi2 = susceptibility(pair.vector, nhh.basis, 2, expectation=expectation)
    return ExactPoint(
        chi1=chi1,
        chi2=chi2,
        eigenvalue=pair.value,
        degenerate=pair.degenerate,
        residual=pair.residual,
        method=pair.method,
    )


def exact_profile(params: ModelParams, axis: str, values, **solver_kwargs):
    """Serial sweep of the exact solver along one parameter axis.

    Failed points are recorded with their error text instead of aborting the
    profile. Returns a list of dicts, one per grid value.
    """
    rows = []
    for value in values:
        point_params = params.replace(**{axis: value})
        try:
            pt = exact_point(point_params, **solver_kwargs)
            rows.append(
                {
                    axis: value,
                    "chi1": pt.chi1,
                    "chi2": pt.chi2,
                    "eigenvalue": pt.eigenvalue,
                    "degenerate": pt.degenerate,
                    "status": "ok",
                }
            )
        except (ParameterError, DimensionError, ConvergenceError) as exc:
            rows.append(
                {
                    axis: value,
                    "chi1": complex(np.nan, np.nan),
                    "chi2": complex(np.nan, np.nan),
                    "eigenvalue": complex(np.nan, np.nan),
                    "degenerate": False,
                    "status": f"failed({type(exc).__name__}: {exc})",
                }
            )
    return rows
