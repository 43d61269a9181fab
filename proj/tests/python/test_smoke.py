"""Smoke tests for the python bindings: load the bundled data, run the small
closed forms, and push one miniature solve through the FEM."""

import math
import os

import pytest

import wgrnoise as wgr

DATA = os.environ.get("WGRNOISE_DATA_DIR", "data")


@pytest.fixture(scope="module")
def caf2():
    return wgr.load_material_table(os.path.join(DATA, "caf2.mat"))


def test_material_table(caf2):
    assert caf2.name == "CaF2"
    props = caf2.properties_at(300.0)
    assert props.gamma == pytest.approx(9.71)
    assert props.phi == pytest.approx(5e-8)
    with pytest.raises(wgr.WgrError):
        caf2.properties_at(1.0)
    assert caf2.properties_at(1.0, clamp=True).phi == pytest.approx(2e-8)


def test_moduli(caf2):
    m = wgr.isotropic_moduli_of(caf2, 300.0)
    assert m.kappa == pytest.approx(90e9)
    assert 39e9 < m.G < 43e9
    assert 0.25 < m.mu < 0.35


def test_mode_estimate():
    geom = wgr.ResonatorGeometry.sphere(1e-3)
    p = wgr.estimate_fundamental_mode(geom, 1.565e-6, 1.43)
    assert abs(p.m - 5706) <= 5
    assert p.nu == pytest.approx(1.9152e14, rel=1e-3)
    assert p.w_z == pytest.approx(13.5e-6, rel=0.05)
    s = wgr.minor_radius(p)
    assert s.r == pytest.approx(math.sqrt(p.w_rho * p.w_z))


def test_closed_forms():
    assert wgr.analytic_uniform_sphere_energy(1e6, 1e-3, 90e9) == pytest.approx(2.3271e-8, rel=1e-4)
    assert wgr.estimate_bb_sphere(1e-3, 5.5, 2e-8, 90e9) == pytest.approx(4.982e-17, rel=1e-3)
    assert wgr.estimate_eo(1e-3, 1.56e-6, 1.43, 5.5, 2e-8, 90e9, 45e9, 0.039, 0.223) == pytest.approx(
        7e-16, rel=0.05
    )
    sigma = wgr.allan_structural(wgr.FdtInput(4.4e-11, 0.15, 1e-3, 5.5, 2e-8))
    assert sigma == pytest.approx(7.2e-17, rel=0.05)
    assert wgr.allan_eo(0.0, 2.9e-15, 1.43, 0.039, 0.223) == pytest.approx(9.6e-16, rel=0.01)


def test_fem_solve(caf2):
    geom = wgr.ResonatorGeometry.sphere(1e-4)
    moduli = wgr.isotropic_moduli_of(caf2, 300.0, clamp=True)
    p = wgr.mode_from_parameters(geom, 1.9164e14, 559, 4.25e-6, 1.1e-6, 0.0986e-3,
                                 wgr.speed_of_light / 1.9164e14, 1.43)
    res = wgr.solve_strain(geom, p, moduli, wgr.bb_surface_load(p, 1e6))
    # Published solve products for this geometry: U = 3.2e-13 J, F = 0.0047 N.
    assert 0.5 < res.U / 3.2e-13 < 2.0
    assert res.F == pytest.approx(0.0047, rel=0.01)
    assert res.energy_error_est < 0.05 * res.U

    uni = wgr.solve_strain(geom, p, moduli, wgr.uniform_pressure_load(1e6))
    assert uni.U == pytest.approx(wgr.analytic_uniform_sphere_energy(1e6, 1e-4, moduli.kappa),
                                  rel=0.01)
