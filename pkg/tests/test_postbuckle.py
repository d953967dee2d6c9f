import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hm_oracle import compressible_cavity
from oracles import cavity_radius, mr_cavity_pressure
from microcurve import (CavityState, ConstantGas, HorganMurphy, LinearElastic, MooneyRivlin,
                        NeoHookean, PolytropicGas, cavity_pressure_relation,
                        deformed_radius_incompressible, gas_pressure,
                        ode_oracle_far_field_pressure, postbuckle_volume_change,
                        slightly_compressible_correction, solve_cavity_radius)
from microcurve.errors import DomainError, SolverError, WouldExpandError
from microcurve.postbuckle import cavity_radii, first_order_constant, first_order_radius

MU = 1.2e6


def test_neo_hookean_closed_form_value():
    # abar = 1/2: lambda = 2, (1/2) 16 + 4 - 5/2
    assert cavity_pressure_relation(0.5, 1.0, NeoHookean()) == 9.5
    assert ode_oracle_far_field_pressure(0.5, NeoHookean(), 0.0, 1.0) == pytest.approx(9.5, rel=1e-7)


def test_small_strain_limit_is_linear_cavity():
    # linear cavity in an incompressible solid: (p - p_in)/mu = 4 (1 - abar) to first order
    d = 1e-6
    for model in (NeoHookean(), MooneyRivlin(-0.3), MooneyRivlin(0.2)):
        assert cavity_pressure_relation(1 - d, 1.0, model) == pytest.approx(4 * d, rel=1e-5)


def test_gamma_half_is_neo_hookean():
    a = np.linspace(0.05, 1.0, 50)
    np.testing.assert_allclose(cavity_pressure_relation(a, 1.0, MooneyRivlin(0.5)),
                               cavity_pressure_relation(a, 1.0, NeoHookean()), rtol=1e-14)


@pytest.mark.parametrize("gamma", [-0.5, 1 / 18, 0.3])
@pytest.mark.parametrize("abar", [0.2, 0.6, 0.95])
def test_closed_form_against_ode(gamma, abar):
    p = ode_oracle_far_field_pressure(abar, MooneyRivlin(gamma), 3e4, MU)
    assert (p - 3e4) / MU == pytest.approx(cavity_pressure_relation(abar, 1.0, MooneyRivlin(gamma)), rel=1e-7)


def test_unsupported_relations():
    with pytest.raises(TypeError):
        cavity_pressure_relation(0.5, 1.0, LinearElastic())
    with pytest.raises(TypeError):
        ode_oracle_far_field_pressure(0.5, LinearElastic(), 0.0, MU)
    with pytest.raises(DomainError):
        ode_oracle_far_field_pressure(1.5, NeoHookean(), 0.0, MU)
    # the HM relation falls back to its incompressible leading order
    assert solve_cavity_radius(2 * MU, 0.0, HorganMurphy(), ConstantGas(), MU).model == HorganMurphy()


def test_gas_pressure():
    assert gas_pressure(0.5, 1.0, ConstantGas()) == 0.0
    law = PolytropicGas(1.4, 101325.0)
    assert gas_pressure(0.5, 1.0, law) == pytest.approx(101325.0 * (2**4.2 - 1), rel=1e-14)
    assert gas_pressure(1.0, 1.0, law) == 0.0
    with pytest.raises(DomainError):
        gas_pressure(0.0, 1.0, law)


@pytest.mark.parametrize("p_ratio, p_in_ratio, gamma", [(0.8, 0.5, 1 / 18), (5.0, 0.0, 0.5), (25.0, 1.2, -0.2)])
def test_cavity_radius_matches_root_finder(p_ratio, p_in_ratio, gamma):
    model = NeoHookean() if gamma == 0.5 else MooneyRivlin(gamma)
    st_ = solve_cavity_radius(p_ratio * MU, p_in_ratio * MU, model, ConstantGas(), MU)
    assert st_.deformed_radius == pytest.approx(cavity_radius(p_ratio - p_in_ratio, gamma), rel=1e-12)
    assert st_.offset == pytest.approx(st_.deformed_radius**3 - 1.0, rel=1e-14)


def test_cavity_radius_with_gas():
    law = PolytropicGas()
    st_ = solve_cavity_radius(10 * MU, 0.0, MooneyRivlin(), law, MU)
    gas = lambda a: float(gas_pressure(a, 1.0, law)) / MU
    assert st_.deformed_radius == pytest.approx(cavity_radius(10.0, 1 / 18, gas), rel=1e-12)
    assert st_.inner_pressure == pytest.approx(st_.gas_pressure)
    # the gas stiffens the cavity
    assert st_.deformed_radius > solve_cavity_radius(10 * MU, 0.0, MooneyRivlin(), ConstantGas(), MU).deformed_radius


def test_cavity_radius_errors_and_broadcasting():
    with pytest.raises(WouldExpandError):
        solve_cavity_radius(0.5 * MU, MU, MooneyRivlin(), ConstantGas(), MU)
    with pytest.raises(SolverError):
        solve_cavity_radius(1e45, 0.0, MooneyRivlin(), ConstantGas(), MU)
    a = cavity_radii(MU, np.array([0.0, 0.5 * MU, 2 * MU]), MooneyRivlin(), ConstantGas(), MU)
    assert a.shape == (3,) and a[2] == 1.0 and a[0] < a[1] < 1.0


def test_incompressible_volume_change():
    st_ = solve_cavity_radius(3 * MU, 0.0, NeoHookean(), ConstantGas(), MU)
    S = 20 ** (1 / 3)
    assert postbuckle_volume_change(st_, S) == pytest.approx((1 - st_.deformed_radius**3) / 20, rel=1e-14)
    r = deformed_radius_incompressible(np.array([1.0, 2.0]), st_)
    assert r[0] == pytest.approx(st_.deformed_radius, rel=1e-14)
    with pytest.raises(ValueError):
        postbuckle_volume_change(st_, 0.5)


def test_first_order_correction_shape():
    st_ = solve_cavity_radius(2 * MU, 0.0, MooneyRivlin(), ConstantGas(), MU)
    r0 = deformed_radius_incompressible(2.0, st_)
    r = slightly_compressible_correction(2.0, st_, 1e-3)
    assert r != r0
    assert slightly_compressible_correction(2.0, st_, 0.0) == r0
    with pytest.raises(ValueError):
        slightly_compressible_correction(2.0, st_, 1e-3, "inner")
    with pytest.raises(ZeroDivisionError):
        first_order_constant(0.0, 1.0, MU, 0.1, MU)


# (p/mu, p_in/mu, gamma) cases for the compressible shooting comparison
HM_CASES = [(2.0, 0.0, 1 / 18), (2.0, 0.0, 0.3), (3.0, 1.0, 1 / 18), (0.5, 0.0, -0.3)]


@pytest.mark.parametrize("p, p_in, gamma", HM_CASES)
def test_first_order_radius_against_compressible_shooting(p, p_in, gamma):
    eps = 1e-4
    a0, sol = compressible_cavity(p, p_in, 1.0, eps, gamma)
    for R in (1.0, 2.0, 2.7):
        r_num = sol.sol(R)[0]
        r0 = np.cbrt(R**3 + a0**3 - 1)
        r1 = float(first_order_radius(R, a0, 1.0, p, gamma, 1.0))
        # residual after the correction is O(eps^2) relative to the O(eps) shift
        assert abs((r_num - r0) / eps - r1) < 2e-2 * max(1.0, abs(r1))


def test_c1_uses_far_field_pressure_when_inner_pressure_present():
    p, p_in, gamma, eps = 3.0, 1.0, 1 / 18, 1e-4
    a0, sol = compressible_cavity(p, p_in, 1.0, eps, gamma)
    R = 2.0
    shift = (sol.sol(R)[0] - np.cbrt(R**3 + a0**3 - 1)) / eps
    far = float(first_order_radius(R, a0, 1.0, p, gamma, 1.0, p))
    net = float(first_order_radius(R, a0, 1.0, p, gamma, 1.0, p - p_in))
    assert abs(shift - far) < 0.1 * abs(shift - net)


@given(st.floats(0.01, 1.0), st.floats(-0.5, 0.5))
def test_relation_decreases_with_radius(abar, gamma):
    a2 = min(abar * 1.01, 1.0)
    if a2 > abar:
        assert mr_cavity_pressure(a2, gamma) < mr_cavity_pressure(abar, gamma)
    assert cavity_pressure_relation(abar, 1.0, MooneyRivlin(gamma)) == pytest.approx(
        mr_cavity_pressure(abar, gamma), rel=1e-13, abs=1e-15)


@given(st.floats(0.0, 50.0), st.floats(0.0, 1.0))
def test_volume_change_bounded_by_volume_fraction(p_ratio, frac):
    st_ = solve_cavity_radius(p_ratio * MU, frac * p_ratio * MU, MooneyRivlin(), ConstantGas(), MU)
    dv = postbuckle_volume_change(st_, 20 ** (1 / 3))
    assert 0.0 <= dv < 0.05
