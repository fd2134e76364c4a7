import math

import pytest
from scipy.special import zeta

from nonlocal_casimir.constants import K_B_J
from nonlocal_casimir.lifshitz import (
    MatsubaraContext,
    Plate,
    PlatePair,
    free_energy,
    matsubara_energy,
    matsubara_sum,
    pressure,
)
from nonlocal_casimir.numerics import ConvergenceError
from nonlocal_casimir.reflection import Model

ZETA3 = zeta(3)


def test_first_matsubara_energy_room_temperature():
    assert matsubara_energy(300.0, 1) == pytest.approx(0.16243, rel=1e-4)
    assert matsubara_energy(300.0, 0) == 0.0
    with pytest.raises(ValueError):
        matsubara_energy(0.0, 1)


def test_context_validation():
    with pytest.raises(ValueError):
        MatsubaraContext(T=0.0, a=1e-6)
    with pytest.raises(ValueError):
        MatsubaraContext(T=300.0, a=-1e-6)


def test_drude_zero_term_is_two_zeta3(au):
    # TM reflects perfectly and TE not at all: int y^2 e^-y / (1 - e^-y) = 2 zeta(3)
    res = matsubara_sum(PlatePair.identical(au, Model.DRUDE), MatsubaraContext(300.0, 1e-6), "pressure")
    assert res.terms[0] == pytest.approx(2 * ZETA3, rel=1e-9)
    fe = matsubara_sum(PlatePair.identical(au, Model.DRUDE), MatsubaraContext(300.0, 1e-6), "free_energy")
    assert fe.terms[0] == pytest.approx(-ZETA3, rel=1e-9)


def test_drude_classical_limit(au):
    a, T = 20e-6, 300.0
    expected = -K_B_J * T * ZETA3 / (8 * math.pi * a**3)
    assert pressure(PlatePair.identical(au, Model.DRUDE), MatsubaraContext(T, a)) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("model", [Model.PLASMA, Model.NONLOCAL])
def test_pressure_is_minus_free_energy_derivative(au, model):
    a, h = 1e-6, 4e-9
    pair = PlatePair.identical(au, model)

    def central(step):
        fp = free_energy(pair, MatsubaraContext(300.0, a + step))
        fm = free_energy(pair, MatsubaraContext(300.0, a - step))
        return (fp - fm) / (2 * step)

    # Richardson extrapolation removes the O(h^2) error of the central difference
    deriv = (4 * central(h / 2) - central(h)) / 3
    assert pressure(pair, MatsubaraContext(300.0, a)) == pytest.approx(-deriv, rel=1e-6)


def test_thread_count_does_not_change_bits(au):
    pair = PlatePair.identical(au, Model.NONLOCAL)
    serial = pressure(pair, MatsubaraContext(300.0, 800e-9, threads=1))
    parallel = pressure(pair, MatsubaraContext(300.0, 800e-9, threads=4))
    assert serial == parallel


def test_plate_order_symmetry(au, ni):
    ctx = MatsubaraContext(300.0, 400e-9)
    ab = pressure(PlatePair(Plate(au, Model.NONLOCAL), Plate(ni, Model.NONLOCAL)), ctx)
    ba = pressure(PlatePair(Plate(ni, Model.NONLOCAL), Plate(au, Model.NONLOCAL)), ctx)
    assert ab == pytest.approx(ba, rel=1e-12)


def test_attraction_between_identical_metals(au):
    for model in Model:
        pair = PlatePair.identical(au, model)
        ctx = MatsubaraContext(300.0, 300e-9)
        assert pressure(pair, ctx) < 0
        assert free_energy(pair, ctx) < 0


def test_term_cap_raises_with_diagnostics(au):
    with pytest.raises(ConvergenceError) as info:
        pressure(PlatePair.identical(au, Model.PLASMA), MatsubaraContext(300.0, 200e-9, l_cap=3))
    assert "last_terms" in info.value.diagnostics


def test_zero_term_fraction_grows_with_separation(au):
    pair = PlatePair.identical(au, Model.DRUDE)
    near = matsubara_sum(pair, MatsubaraContext(300.0, 300e-9), "pressure").zero_term_fraction()
    far = matsubara_sum(pair, MatsubaraContext(300.0, 5e-6), "pressure").zero_term_fraction()
    assert 0 < near < far < 1


def test_model_names_accepted_as_strings(au):
    assert Plate(au, "plasma").model is Model.PLASMA
