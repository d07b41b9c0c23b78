import math

import numpy as np
import pytest
from scipy.integrate import quad

from cavityforce.dispersion import VACUUM, AtomSpecies, Constant, Drude, Medium, Plasma, PolarizabilityModel
from cavityforce.errors import ConfigurationError, DomainError
from cavityforce.forces import (
    CavityConfig,
    ForceResult,
    Formulation,
    MediumAtom,
    SlabConfig,
    atom_force,
    cavity_response,
    check_dilute,
    medium_atom_force,
    medium_layer_force,
    slab_force,
    thin_slab_decomposition_check,
)
from cavityforce.quadrature import QuadratureSpec
from cavityforce.stratified import TE, TM, IdealConducting, Retarded, Stack, mirror_reflection

PI = math.pi
FAST = QuadratureSpec(rel_tol=1e-7)


def plasma(wp):
    return Stack(Medium(Plasma(wp)))


def _refl(tm, kap, eps_c, mu_c, km, em, mm):
    g = eps_c / em if tm else mu_c / mm
    return (kap - g * km) / (kap + g * km)


def _plasma_r(tm, xi, k, kap, eps_c, mu_c, wp):
    em = 1.0 + (wp / xi) ** 2
    return _refl(tm, kap, eps_c, mu_c, math.sqrt(em * xi * xi + k * k), em, 1.0)


def slab_oracle(eps_c, wp1, wp2, eps_s, ds, d1, d2):
    """Direct transcription of the slab force for a constant-eps cavity and slab."""

    def inner(xi):
        def f(k):
            kap = math.sqrt(eps_c * xi * xi + k * k)
            ks = math.sqrt(eps_s * xi * xi + k * k)
            tot = 0.0
            for tm in (True, False):
                rho = _refl(tm, kap, eps_c, 1.0, ks, eps_s, 1.0)
                e = math.exp(-2 * ks * ds)
                r = rho * (1 - e) / (1 - rho * rho * e)
                t = (1 - rho * rho) * math.exp(-ks * ds) / (1 - rho * rho * e)
                r1 = _plasma_r(tm, xi, k, kap, eps_c, 1.0, wp1)
                r2 = _plasma_r(tm, xi, k, kap, eps_c, 1.0, wp2)
                e1, e2 = math.exp(-2 * kap * d1), math.exp(-2 * kap * d2)
                n = 1 - r * (r1 * e1 + r2 * e2) + (r * r - t * t) * r1 * r2 * e1 * e2
                resp = (r2 * e2 - r1 * e1) / n
                screen = 1 / eps_c if tm else 1.0
                tot += k * kap * screen * r * resp / (2 * PI**2)
                delta = 1 if tm else -1
                tot += xi * xi * (eps_c - 1) * k / kap * ((1 + r) ** 2 - t * t) * delta * resp / (8 * PI**2)
            return tot

        return quad(f, 0, np.inf, epsabs=0, epsrel=1e-11, limit=500)[0]

    return quad(inner, 0, np.inf, epsabs=0, epsrel=1e-10, limit=500)[0]


def atom_oracle(eps, mu, wp1, wp2, ae, am, d1, d2):
    """Direct transcription of the embedded-atom force between plasma mirrors."""
    n2 = eps * mu

    def resp(tm, xi, kap, k):
        r1 = _plasma_r(tm, xi, k, kap, eps, mu, wp1)
        r2 = _plasma_r(tm, xi, k, kap, eps, mu, wp2)
        e1, e2 = math.exp(-2 * kap * d1), math.exp(-2 * kap * d2)
        return (r2 * e2 - r1 * e1) / (1 - r1 * r2 * e1 * e2)

    def inner(xi):
        a_e, a_m = ae(xi), am(xi)

        def f(k):
            kap = math.sqrt(n2 * xi * xi + k * k)
            rp, rs = resp(True, xi, kap, k), resp(False, xi, kap, k)
            mix = xi * xi * (a_e * mu + a_m * eps)
            tp = (2 * a_e * kap * kap / eps - mix) / eps * rp
            ts = mu * (2 * a_m * kap * kap / mu - mix) * rs
            ta = xi * xi * mu * (n2 - 1) * (a_e * rp - a_m * rs)
            return k * (tp + ts + ta) / PI

        return quad(f, 0, np.inf, epsabs=0, epsrel=1e-11, limit=500)[0]

    return quad(inner, 0, np.inf, epsabs=0, epsrel=1e-10, limit=500)[0]


# --- types -------------------------------------------------------------------

def test_cavity_config_validation():
    with pytest.raises(DomainError):
        CavityConfig(VACUUM, plasma(1.0), plasma(1.0), 0.0, 1.0)
    with pytest.raises(DomainError):
        CavityConfig(VACUUM, plasma(1.0), plasma(1.0), 1.0, -1.0)
    half = CavityConfig.half_space(VACUUM, plasma(1.0), 0.3)
    assert half.semi_infinite and half.d_min == 0.3
    with pytest.raises(DomainError):
        SlabConfig(VACUUM, 0.0)
    with pytest.raises(DomainError):
        MediumAtom(AtomSpecies.electric(1, 1), -1.0)


def test_force_result_parts():
    r = ForceResult(1.0, 2.0, 3.0, -4.5)
    assert r.screened == 3.0 and r.assisted == -1.5 and r.total == 1.5
    assert r.tm == 4.0 and r.te == -2.5
    assert r.scaled(2.0).total == 3.0


# --- cavity response ---------------------------------------------------------

def test_cavity_response_half_space():
    med = Medium(Constant(2.0))
    cav = CavityConfig.half_space(med, plasma(1.0), 0.4)
    xi, k = 0.7, 1.1
    kap = math.sqrt(2.0 * xi * xi + k * k)
    for q in (TM, TE):
        r = mirror_reflection(plasma(1.0), q, med, Retarded(xi, k))
        assert cavity_response(q, cav, xi, k) == pytest.approx(r * math.exp(-2 * kap * 0.4), rel=1e-14)


def test_cavity_response_trivial():
    transparent = Stack(VACUUM)
    assert cavity_response(TM, CavityConfig(VACUUM, transparent, transparent, 0.3, 0.4), 1.0, 1.0) == 0.0
    sym = CavityConfig(VACUUM, plasma(2.0), plasma(2.0), 0.5, 0.5)
    np.testing.assert_array_equal(cavity_response(TE, sym, 0.3, np.array([0.1, 1.0, 5.0])), 0.0)


# --- slab force --------------------------------------------------------------

@pytest.mark.parametrize("eps_c", [1.0, 1.5])
def test_slab_force_matches_direct_transcription(eps_c):
    ref = slab_oracle(eps_c, 1.0, 2.0, 3.0, 0.3, 0.7, 0.4)
    cav = CavityConfig(Medium(Constant(eps_c)), plasma(1.0), plasma(2.0), 0.7, 0.4)
    res = slab_force(cav, SlabConfig(Medium(Constant(3.0)), 0.3))
    assert res.converged
    assert res.total == pytest.approx(ref, rel=1e-6)


def test_slab_force_symmetric_and_vacuum():
    m = Stack(Medium(Drude(1.5, 0.1)))
    sym = slab_force(CavityConfig(VACUUM, m, m, 0.5, 0.5), SlabConfig(Medium(Constant(4.0)), 0.2), FAST)
    assert abs(sym.total) <= 1e-15
    res = slab_force(CavityConfig(VACUUM, m, plasma(1.0), 0.5, 0.8), SlabConfig(Medium(Constant(4.0)), 0.2), FAST)
    assert res.assisted_tm == 0.0 and res.assisted_te == 0.0
    assert res.total != 0.0


def test_slab_force_direction():
    # a dielectric slab is pulled towards the nearer conducting mirror
    m = plasma(3.0)
    res = slab_force(CavityConfig(VACUUM, m, m, 1.0, 0.3), SlabConfig(Medium(Constant(4.0)), 0.2), FAST)
    assert res.total > 0


def test_slab_force_single_mirror():
    res = slab_force(CavityConfig.half_space(VACUUM, plasma(1.0), 0.5), SlabConfig(Medium(Constant(4.0)), 0.2), FAST)
    assert res.converged and res.total > 0


# --- atom force --------------------------------------------------------------

def test_atom_force_matches_direct_transcription():
    atom = AtomSpecies(PolarizabilityModel.single(0.01, 2.0), PolarizabilityModel.single(0.004, 3.0))
    cav = CavityConfig(Medium(Constant(1.5), Constant(1.2)), plasma(1.0), plasma(2.0), 0.8, 0.5)
    ref = atom_oracle(1.5, 1.2, 1.0, 2.0, atom.alpha_e, atom.alpha_m, 0.8, 0.5)
    res = atom_force(cav, atom)
    assert res.converged
    assert res.total == pytest.approx(ref, rel=1e-8)


def test_minkowski_has_no_assisted_part():
    atom = AtomSpecies(PolarizabilityModel.single(0.5, 2.0), PolarizabilityModel.single(0.2, 3.0))
    cav = CavityConfig(Medium(Constant(1.5), Constant(1.2)), plasma(1.0), plasma(2.0), 0.8, 0.5)
    lo = atom_force(cav, atom, Formulation.LORENTZ, FAST)
    mi = atom_force(cav, atom, Formulation.MINKOWSKI, FAST)
    assert mi.assisted == 0.0 and lo.assisted != 0.0
    assert lo.total != pytest.approx(mi.total, rel=1e-3)


def test_vacuum_formulations_agree():
    atom = AtomSpecies(PolarizabilityModel.single(0.5, 2.0), PolarizabilityModel.single(0.2, 3.0))
    cav = CavityConfig(VACUUM, plasma(1.0), Stack(Medium(Drude(2.0, 0.3))), 0.8, 0.5)
    lo = atom_force(cav, atom, Formulation.LORENTZ)
    mi = atom_force(cav, atom, Formulation.MINKOWSKI)
    assert lo.assisted == 0.0
    assert lo.total == pytest.approx(mi.total, rel=1e-10)


def test_atom_force_midpoint_of_symmetric_cavity():
    atom = AtomSpecies.electric(1.0, 1.0)
    res = atom_force(CavityConfig(VACUUM, plasma(1.0), plasma(1.0), 0.6, 0.6), atom, spec=FAST)
    assert abs(res.total) < 1e-15


def test_atom_force_scaling_homogeneity():
    # lengths x lam, frequencies / lam, polarizability volumes x lam**3
    lam = 3.0
    atom = AtomSpecies.electric(0.2, 1.5)
    atom_s = AtomSpecies.electric(0.2 * lam**3, 1.5 / lam)
    f = atom_force(CavityConfig(Medium(Constant(1.4)), plasma(1.0), plasma(2.0), 0.7, 0.4), atom).total
    g = atom_force(CavityConfig(Medium(Constant(1.4)), plasma(1.0 / lam), plasma(2.0 / lam), 0.7 * lam, 0.4 * lam),
                   atom_s).total
    assert g == pytest.approx(f / lam**2, rel=1e-7)


# --- medium layer and medium atoms -------------------------------------------

def test_medium_layer_force_oracle():
    eps, wp, z = 1.8, 1.0, 0.5
    cav = CavityConfig.half_space(Medium(Constant(eps)), plasma(wp), z)

    def inner(xi):
        def f(k):
            kap = math.sqrt(eps * xi * xi + k * k)
            e = math.exp(-2 * kap * z)
            return k * (_plasma_r(True, xi, k, kap, eps, 1.0, wp) - _plasma_r(False, xi, k, kap, eps, 1.0, wp)) * e

        return xi * xi * (eps - 1) * quad(f, 0, np.inf, epsrel=1e-11, epsabs=0, limit=200)[0]

    ref = 0.01 / (4 * PI**2) * quad(inner, 0, np.inf, epsrel=1e-10, epsabs=0, limit=200)[0]
    assert medium_layer_force(cav, 0.01).total == pytest.approx(ref, rel=1e-8)


def test_medium_atom_force_vanishes_for_matched_mirrors():
    m = Stack(Medium(Drude(1.0, 0.2), Drude(1.0, 0.2)))
    # equal electric and magnetic response in the cavity as well: R^p = R^s exactly
    pol = PolarizabilityModel.single(1.0, 1.0)
    atom = AtomSpecies(pol, pol)
    n = 1e-8
    res = medium_atom_force(CavityConfig(Medium.dilute(atom, n), m, m, 0.3, 0.9), MediumAtom(atom, n), FAST)
    assert res.total == 0.0
    # an electric-only medium breaks the symmetry only at first order in N alpha
    e_atom = AtomSpecies.electric(1.0, 1.0)
    cav = Medium.dilute(e_atom, n)
    res = medium_atom_force(CavityConfig(cav, m, m, 0.3, 0.9), MediumAtom(e_atom, n), FAST)
    ref = medium_atom_force(CavityConfig(cav, plasma(1.0), plasma(1.0), 0.3, 0.9), MediumAtom(e_atom, n), FAST)
    assert abs(res.total) < 10 * 4 * PI * n * abs(ref.total)


def test_medium_atom_swap_is_bit_identical():
    atom = AtomSpecies(PolarizabilityModel.single(0.7, 1.0), PolarizabilityModel.single(0.2, 3.0))
    n = 1e-9
    cav = CavityConfig(Medium.dilute(atom, n), plasma(1.0), Stack(Medium(Drude(2.0, 0.1))), 0.5, 0.8)
    a = medium_atom_force(cav, MediumAtom(atom, n), FAST)
    b = medium_atom_force(cav, MediumAtom(atom.swapped(), n), FAST)
    assert a.total == b.total


def test_dilute_violation_raises():
    atom = AtomSpecies.electric(1.0, 1.0)
    cav = CavityConfig(Medium(Constant(2.0)), plasma(1.0), plasma(1.0), 0.5, 0.5)
    with pytest.raises(ConfigurationError):
        medium_atom_force(cav, MediumAtom(atom, 1e-3))
    with pytest.raises(ConfigurationError):
        check_dilute(CavityConfig(Medium.dilute(atom, 1e-3), plasma(1.0), plasma(1.0), 0.5, 0.5),
                     MediumAtom(atom, 2e-3))


# --- thin slab decomposition -------------------------------------------------

def test_thin_slab_without_dopant():
    cav = CavityConfig(Medium(Constant(1.5)), plasma(1.0), plasma(1.0), 1.4, 0.6)
    rep = thin_slab_decomposition_check(cav, SlabConfig(Medium(Constant(1.5)), 0.01), FAST)
    assert rep.reference == 0.0
    for f, fm in zip(rep.f_numeric, rep.f_medium):
        # an undoped slab of the cavity medium feels only the medium-layer force
        assert f == pytest.approx(fm, rel=0.05)
    assert rep.extrapolated_discrepancy == rep.extrapolated
    # the per-thickness difference is second order, so (f - f_M)/d_s shrinks linearly
    assert abs(rep.per_atom[2]) < 0.6 * abs(rep.per_atom[0])


def test_thin_slab_zero_density():
    cav = CavityConfig(VACUUM, plasma(1.0), plasma(1.0), 1.4, 0.6)
    rep = thin_slab_decomposition_check(cav, SlabConfig(VACUUM, 0.01, AtomSpecies.electric(1, 1), 0.0), FAST)
    assert rep.f_numeric == pytest.approx(rep.f_medium, abs=1e-15)
