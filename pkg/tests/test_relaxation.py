import numpy as np
import pytest

from rydeit import ModelParams, relaxation_exponents, relaxation_map, relaxation_report
from rydeit.relaxation import decay_scale


def test_decay_scale_formula():
    # real part of the square root, clipped at zero once the argument flips
    assert decay_scale(0, 10.0, 0.5, 1.0) == pytest.approx(np.sqrt(9.5**2 - 4.0))
    assert decay_scale(2, 2.0, 0.0, 1.0) == 0.0  # 4 - 12 < 0
    assert decay_scale(0, 2.0, 0.0, 1.0) == 0.0  # exactly at the transition


def test_reference_point():
    epp, emm = relaxation_exponents(2.0, 0.0, 1.0)
    assert epp == pytest.approx(-2.0)
    assert emm == pytest.approx(-2.0)
    rep = relaxation_report(ModelParams(gamma_e=2.0, gamma_r=0.0, omega_c=1.0))
    assert (rep.exponent_pp, rep.exponent_mm) == (-2.0, -2.0)
    assert rep.regular


def test_equal_decay_rates_collapse():
    # gamma_e = gamma_r makes every decay scale vanish
    epp, emm = relaxation_exponents(3.0, 3.0, 0.7)
    assert epp == pytest.approx(-3.0)
    assert emm == pytest.approx(-3.0)


def test_bound_under_stated_precondition():
    rng = np.random.default_rng(123)
    for _ in range(2000):
        gr = float(rng.uniform(0.0, 3.0))
        ge = gr + float(rng.uniform(1e-9, 6.0))
        oc = float(rng.uniform(0.01, 5.0))
        epp, emm = relaxation_exponents(ge, gr, oc)
        assert max(epp, emm) <= -gr + 1e-12


def test_positive_exponent_region_exists():
    # weak control drive with the Rydberg band decaying faster than the
    # excited band escapes the regular zone
    epp, _ = relaxation_exponents(0.1, 3.0, 0.05)
    assert epp > 0.0
    rep = relaxation_report(ModelParams(gamma_e=0.1, gamma_r=3.0, omega_c=0.05))
    assert not rep.regular


def test_map_grids_and_boundary():
    base = ModelParams(gamma_e=2.0, gamma_r=1.0, omega_c=1.0)
    rmap = relaxation_map(base, grid1=np.linspace(0.0, 4.0, 21),
                          grid2=np.linspace(0.1, 3.0, 17))
    assert rmap.exponent_pp.shape == (21, 17)
    assert rmap.regular.dtype == bool
    assert rmap.boundary.shape == (21,)
    # exponents on the map respect the report function pointwise
    i, j = 13, 5
    epp, emm = relaxation_exponents(rmap.grid1[i], base.gamma_r, rmap.grid2[j])
    assert rmap.exponent_pp[i, j] == pytest.approx(epp)
    assert rmap.exponent_mm[i, j] == pytest.approx(emm)


def test_map_rejects_unknown_axes():
    base = ModelParams(gamma_e=2.0, gamma_r=1.0, omega_c=1.0)
    with pytest.raises(ValueError):
        relaxation_map(base, axis1="delta")
    with pytest.raises(ValueError):
        relaxation_map(base, axis1="gamma_e", axis2="gamma_e")
