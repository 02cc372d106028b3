import pytest

from rydeit import ModelParams, ParameterError, basis_dimension


def test_defaults_validate():
    p = ModelParams()
    assert p.omega_c == 1.0
    assert p.m == 1


def test_rejects_nonpositive_control():
    with pytest.raises(ParameterError):
        ModelParams(omega_c=0.0)
    with pytest.raises(ParameterError):
        ModelParams(omega_c=-1.0)


def test_rejects_negative_rates():
    with pytest.raises(ParameterError):
        ModelParams(gamma_e=-0.1)
    with pytest.raises(ParameterError):
        ModelParams(gamma_r=-0.1)
    with pytest.raises(ParameterError):
        ModelParams(omega_p=-0.5)


def test_rejects_bad_particle_number():
    with pytest.raises(ParameterError):
        ModelParams(m=-1)
    with pytest.raises(ParameterError):
        ModelParams(m=1.5)


def test_replace_keeps_other_fields():
    p = ModelParams(omega_p=0.2, gamma_e=3.0, m=7)
    q = p.replace(delta=1.5)
    assert q.delta == 1.5
    assert q.omega_p == 0.2
    assert q.m == 7
    assert p.delta == 0.0  # original untouched


def test_eta_combines_decay_and_detuning():
    p = ModelParams(gamma_e=2.0, delta=0.7)
    assert p.eta == 0.7 + 2.0j


def test_dict_round_trip():
    p = ModelParams(omega_p=0.3, omega_c=1.2, gamma_e=4.0, gamma_r=0.2,
                    delta=-1.0, u=5.0, m=12)
    assert ModelParams.from_dict(p.to_dict()) == p


def test_from_dict_rejects_unknown_keys():
    with pytest.raises((ParameterError, TypeError)):
        ModelParams.from_dict({"omega_p": 0.1, "bogus": 1.0})


def test_basis_dimension_closed_form():
    # dimension of a three-band occupancy simplex with m particles
    for m, want in [(0, 1), (1, 3), (2, 6), (3, 10), (50, 1326)]:
        assert basis_dimension(m) == want
