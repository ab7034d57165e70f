import math
from fractions import Fraction

import pytest

from fockmix.params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam


def test_photon_config_redundant_index():
    bs = PhotonConfig(3, 2, 4, Device.BS)
    assert bs.m == 1 and bs.reachable
    assert not PhotonConfig(1, 1, 3, Device.BS).reachable
    tms = PhotonConfig(3, 1, 2, Device.TMS)
    assert tms.m == 0 and tms.reachable
    assert not PhotonConfig(3, 1, 1, Device.TMS).reachable


def test_photon_config_rejects_negative_counts():
    with pytest.raises(ValueError):
        PhotonConfig(-1, 0, 0)


def test_beamsplitter_param_validation():
    p = BeamSplitterParam.from_value("1/3")
    assert p.eta_exact == Fraction(1, 3)
    assert abs(p.eta - 1 / 3) <= math.ulp(1 / 3)
    assert math.isclose(math.cos(p.theta) ** 2, p.eta, rel_tol=1e-14)
    with pytest.raises(ValueError):
        BeamSplitterParam(1.2)
    with pytest.raises(ValueError):
        BeamSplitterParam(0.5, Fraction(1, 3))  # carriers disagree


def test_squeezer_param_validation():
    p = SqueezerParam.from_value("2/5")
    assert p.lam_exact == Fraction(2, 5)
    assert abs(math.tanh(p.r) ** 2 - p.lam) <= 1e-12
    assert p.gain >= 1.0
    assert math.isclose(p.gain, 1.0 / (1.0 - 0.4), rel_tol=1e-14)
    with pytest.raises(ValueError):
        SqueezerParam(1.0)
    with pytest.raises(ValueError):
        SqueezerParam(-0.1)


def test_ptr_beamsplitter_mirrors_exact_carrier():
    sp = SqueezerParam.from_value("2/5")
    bp = sp.ptr_beamsplitter()
    assert bp.eta_exact == Fraction(3, 5)
    assert bp.eta == float(Fraction(3, 5))
    assert SqueezerParam(0.25).ptr_beamsplitter().eta == 0.75


def test_from_value_accepts_decimal_and_fraction():
    assert BeamSplitterParam.from_value(0.3).eta_exact is None
    assert BeamSplitterParam.from_value(Fraction(1, 2)).eta_exact == Fraction(1, 2)
    assert SqueezerParam.from_value("0").lam == 0.0
