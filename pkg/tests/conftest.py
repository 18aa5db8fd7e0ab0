"""Shared fixtures: the reference mid-latitude scenario and an equatorial one.

The reference scenario (45 deg N, rho jump 4e-3, k = 6.28e-2 1/m, a = 10 m,
thermocline label 50 m) is solved once per session; tests freeze expected
values computed from it.
"""

import math

import pytest

import pollardwaves as pw

REF_K = 6.28e-2
REF_A = 10.0
REF_S0 = 50.0
REF_BETA0_OFFSET = 2000.0


@pytest.fixture(scope="session")
def constants():
    return pw.PhysicalConstants()


@pytest.fixture(scope="session")
def site45(constants):
    return pw.coriolis(constants, math.radians(45.0))


@pytest.fixture(scope="session")
def strat(constants):
    return pw.reduced_gravity(constants, 1000.0, 1004.0)


@pytest.fixture(scope="session")
def ref_roots(site45, strat):
    nd = pw.nondimensionalize(site45, strat, REF_K)
    return pw.solve_dispersion(nd, site45, strat, REF_K)


@pytest.fixture(scope="session")
def ref_params(site45, strat, ref_roots):
    return pw.derive_parameters(site45, strat, REF_K, REF_A,
                                ref_roots.c_plus, REF_S0,
                                REF_BETA0_OFFSET, beta0_is_offset=True)


@pytest.fixture(scope="session")
def equator_site(constants):
    return pw.coriolis(constants, 0.0)


@pytest.fixture(scope="session")
def equatorial(constants, equator_site, strat):
    """Equatorial wave at the critical amplitude a = 1/m (= 1/k there)."""
    c_plus, _ = pw.solve_equatorial(constants, strat, REF_K)
    return pw.derive_parameters(equator_site, strat, REF_K, 1.0 / REF_K,
                                c_plus, REF_S0, REF_BETA0_OFFSET,
                                beta0_is_offset=True)
