"""Hot loops of the blockade path.

The stabilized transfer recursion is a strict k -> k+1 scalar recurrence, so
it cannot be vectorized; it runs either through numba's njit or as the same
function body in plain Python. Selection: environment variable RYDEIT_NUMBA
("0"/"false"/"off" forces the Python path, "1"/"true"/"on" requires numba),
default is numba whenever it imports.

Each step renormalizes (p, q) by max(|p|, |q|) and accumulates the log of the
factor, so million-step scans stay inside double range. Status return: 0 on
success, otherwise the step k whose pivot F_k fell under the relative
threshold (a removable-singularity hit that the caller turns into an error).
"""

import math
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

F_PIVOT_RTOL = 1e-12


def _pq_scan(m, omega_p, omega_c, gamma_e, gamma_r, delta,
             p_out, q_out, scale_out):
    """Fill p_out/q_out (renormalized) and scale_out (log factors) for k=1..m.

    p_out[k-1] * exp(scale_out[k-1]) is the k-step transfer coefficient sum,
    q_out the sin-weighted difference. Returns 0 or the failing step index.
    """
    eta = delta + 1j * gamma_e
    omega = eta * eta - omega_c * omega_c
    dgap = gamma_e - gamma_r

    den1 = (delta + 1j * gamma_r) * eta - omega_c * omega_c
    if abs(den1) == 0.0:
        return 1
    p = omega_c / den1
    q = (delta + 0.5j * (gamma_e + gamma_r)) / den1
    mag = max(abs(p), abs(q))
    logs = 0.0
    if mag > 0.0:
        p /= mag
        q /= mag
        logs = math.log(mag)
    p_out[0] = p
    q_out[0] = q
    scale_out[0] = logs

    for k in range(2, m + 1):
        sqk = math.sqrt(k)
        sqkm1 = math.sqrt(k - 1.0)
        c1 = dgap / (2.0 * omega_c * sqk)      # cos(theta_{k-1})
        c2 = dgap / (2.0 * omega_c * sqkm1)    # cos(theta_{k-2})
        s1sq = 1.0 - c1 * c1
        s2sq = 1.0 - c2 * c2
        t_k = -2.0 * eta * omega_c * sqkm1
        f_k = omega * omega - t_k * t_k * s2sq
        lim = abs(omega) ** 2
        tsq = abs(t_k) ** 2
        if tsq > lim:
            lim = tsq
        if abs(f_k) <= F_PIVOT_RTOL * lim:
            return k
        r_cap = 1j * omega_c * (sqk / sqkm1) * c1 - eta * sqkm1
        s_cap = -omega_c * (2.0 * k - 1.0)
        r_low = 1j * eta * c1 / sqkm1 - omega_c * sqk * sqkm1 * (s1sq + s2sq)
        s_low = 1j * omega_c * c1 - eta * sqk
        inv = 1.0 / (sqk * f_k)
        a11 = (r_cap * omega + s_cap * t_k * s2sq) * inv
        a12 = (r_cap * t_k + s_cap * omega) * inv
        a21 = (r_low * omega + s_low * t_k * s2sq) * inv
        a22 = (r_low * t_k + s_low * omega) * inv
        pn = a11 * p + a12 * q
        qn = a21 * p + a22 * q
        mag = max(abs(pn), abs(qn))
        if mag > 0.0:
            pn /= mag
            qn /= mag
            logs += math.log(mag)
        p = pn
        q = qn
        p_out[k - 1] = p
        q_out[k - 1] = q
        scale_out[k - 1] = logs
    return 0


pq_scan_python = _pq_scan
if HAVE_NUMBA:
    pq_scan_numba = numba.njit(cache=True)(_pq_scan)


def _select_backend():
    flag = os.environ.get("RYDEIT_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return "python"
    if flag in ("1", "true", "on", "yes"):
        if not HAVE_NUMBA:
            raise ImportError("RYDEIT_NUMBA requested numba but it is not importable")
        return "numba"
    return "numba" if HAVE_NUMBA else "python"


BACKEND = _select_backend()
pq_scan = pq_scan_numba if BACKEND == "numba" else pq_scan_python
