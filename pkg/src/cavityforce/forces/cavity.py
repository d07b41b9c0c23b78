"""Full (all-distance) forces in a planar cavity.

Every force is an integral over imaginary frequency ``xi`` of a wave-vector
integral. The inner integral is done by the compiled kernel, which returns
four moments of the cavity response at one ``xi``; the outer integral runs
over ``xi`` with the same adaptive rule. Inner errors are carried along the
outer integral and added to the reported error estimate.

Positive forces point from mirror 1 towards mirror 2.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .. import _kernels
from .._kernels import ATOM, SLAB
from ..dispersion import AtomSpecies, characteristic_frequency
from ..errors import ConfigurationError, DomainError, SingularityError
from ..quadrature import QuadratureSpec, integrate_half_line
from ..stratified import (
    TM,
    Polarization,
    Retarded,
    _fresnel,
    mirror_reflection,
    sample_mirror,
    slab_terms,
)
from .types import CavityConfig, ForceResult, Formulation, MediumAtom, SlabConfig

__all__ = [
    "cavity_response",
    "slab_force",
    "medium_layer_force",
    "atom_force",
    "medium_atom_force",
    "slab_integrand_terms",
    "SlabIntegrandTerms",
    "DILUTE_TOLERANCE",
]

PI = math.pi
SINGULAR = 1e-12
DILUTE_TOLERANCE = 1e-6

PerXi = Callable[[float, float], tuple]


def _inner_tolerance(spec: QuadratureSpec) -> float:
    return spec.rel_tol * 0.1 if spec.rel_tol > 0 else 1e-10


def _xi_integral(per_xi: PerXi, spec: QuadratureSpec, scale: float, ncomp: int = 4) -> ForceResult:
    """Integrate the ``ncomp`` force parts returned by ``per_xi`` over ``xi``.

    ``per_xi(xi, abs_tol)`` returns ``(parts, inner_error, evaluations,
    converged)``. ``abs_tol`` is an absolute floor for the inner integral,
    a small fraction of the largest outer integrand met so far, so that
    frequencies contributing nothing are not resolved to full relative
    accuracy. The inner error rides along as an extra component with zero
    weight.
    """
    state = {"evals": 0, "ok": True, "peak": 0.0}
    floor = 0.1 * spec.rel_tol

    def f(xs):
        out = np.empty((ncomp + 1, len(xs)))
        for i, xi in enumerate(xs):
            parts, err, n, ok = per_xi(float(xi), floor * state["peak"])
            out[:ncomp, i] = parts
            out[ncomp, i] = err
            state["evals"] += n
            state["ok"] = state["ok"] and ok
            state["peak"] = max(state["peak"], float(np.sum(np.abs(parts))))
        return out

    res = integrate_half_line(
        f, 0.0, spec.with_(scale_hint=scale), error_weights=[1.0] * ncomp + [0.0]
    )
    v = res.value
    parts = [float(x) for x in v[:ncomp]] + [0.0] * (4 - ncomp)
    return ForceResult(
        screened_tm=parts[0],
        screened_te=parts[1],
        assisted_tm=parts[2],
        assisted_te=parts[3],
        error_estimate=res.error_estimate + abs(float(v[ncomp])),
        converged=bool(res.converged and state["ok"]),
        evaluations=res.evaluations + state["evals"],
    )


def _xi_scale(cavity: CavityConfig, *extra) -> float:
    omega = characteristic_frequency(cavity, *extra)
    return min(omega, 1.0 / (2.0 * cavity.d_min))


def _cavity_sample(cavity: CavityConfig, xi: float):
    m = cavity.medium
    eps = float(m.epsilon(xi))
    mu = float(m.mu(xi))
    n2xi2 = m.n2xi2(xi)
    m1 = sample_mirror(cavity.mirror1, xi)
    m2 = sample_mirror(cavity.mirror2, xi)
    d1 = 0.0 if cavity.mirror1 is None else cavity.d1
    return eps, mu, n2xi2, m1, m2, d1


def cavity_response(q: Polarization, cavity: CavityConfig, xi: float, k):
    """Cavity response ``R^q`` seen by an object at ``(d1, d2)``.

    ``R = (r2 e2 - r1 e1) / (1 - r1 r2 e1 e2)`` with ``e_i = exp(-2 kappa d_i)``.
    Works for scalar or array ``k``.
    """
    m = cavity.medium
    scalar = np.ndim(k) == 0
    karr = np.atleast_1d(np.asarray(k, dtype=float))
    r2 = np.array([mirror_reflection(cavity.mirror2, q, m, Retarded(xi, kk)) for kk in karr])
    kappa = np.sqrt(m.n2xi2(float(xi)) + karr * karr)
    e2 = np.exp(-2.0 * kappa * cavity.d2)
    if cavity.mirror1 is None:
        resp = r2 * e2
    else:
        r1 = np.array([mirror_reflection(cavity.mirror1, q, m, Retarded(xi, kk)) for kk in karr])
        e1 = np.exp(-2.0 * kappa * cavity.d1)
        den = 1.0 - r1 * r2 * e1 * e2
        if np.any(np.abs(den) < SINGULAR):
            raise SingularityError("multiple-reflection denominator vanished")
        resp = (r2 * e2 - r1 * e1) / den
    return float(resp[0]) if scalar else resp


def atom_force(
    cavity: CavityConfig,
    atom: AtomSpecies,
    formulation: Formulation = Formulation.LORENTZ,
    spec: QuadratureSpec | None = None,
) -> ForceResult:
    """Force on an atom embedded in the cavity medium.

    Parameters
    ----------
    cavity : CavityConfig
        Geometry; ``d1``/``d2`` are the atom-mirror distances.
    atom : AtomSpecies
        Electric and magnetic polarizability.
    formulation : Formulation
        ``LORENTZ`` splits the force into a medium-screened part (extra
        ``1/eps`` on TM and ``mu`` on TE) and a medium-assisted part
        proportional to ``mu (n**2 - 1)``. ``MINKOWSKI`` drops both.
    spec : QuadratureSpec, optional
        Tolerances. The decay scales are chosen from the geometry and models.

    Returns
    -------
    ForceResult
        Per-atom force in units of ``hbar omega_ref**2 / c``.
    """
    spec = spec or QuadratureSpec()
    if not isinstance(formulation, Formulation):
        formulation = Formulation(formulation)
    lorentz = formulation is Formulation.LORENTZ
    s = 1.0 / (2.0 * cavity.d_min)
    s2 = s * s
    inner_rel = _inner_tolerance(spec)

    def per_xi(xi, inner_abs):
        eps, mu, n2xi2, m1, m2, d1 = _cavity_sample(cavity, xi)
        x2 = xi * xi
        ae = float(atom.alpha_e(xi))
        am = float(atom.alpha_m(xi))
        mix = (ae * mu + am * eps) * x2
        if lorentz:
            c2p = 2.0 * ae / (PI * eps * eps)
            c0p = -mix / (PI * eps)
            c2s = 2.0 * am / PI
            c0s = -mu * mix / PI
            # mu (n^2 - 1) xi^2, exact at xi -> 0
            assist = mu * (n2xi2 - x2) / PI
            a0p = assist * ae
            a0s = -assist * am
        else:
            c2p = 2.0 * ae / (PI * eps)
            c0p = -mix / PI
            c2s = 2.0 * am / (PI * mu)
            c0s = -mix / PI
            a0p = a0s = 0.0
        w = np.array([abs(c0p) + abs(a0p), abs(c2p) * s2, abs(c0s) + abs(a0s), abs(c2s) * s2])
        if not np.any(w):
            return (0.0, 0.0, 0.0, 0.0), 0.0, 0, True
        mom, err, n, ok = _kernels.cavity_moments(
            ATOM, xi, (eps, mu, n2xi2), m1, m2, d1, cavity.d2, None, s,
            w, inner_rel, inner_abs, spec.max_evaluations,
        )
        parts = (
            c2p * s2 * mom[1] + c0p * mom[0],
            c2s * s2 * mom[3] + c0s * mom[2],
            a0p * mom[0],
            a0s * mom[2],
        )
        return parts, err, n, ok

    return _xi_integral(per_xi, spec, _xi_scale(cavity, atom))


def medium_layer_force(cavity: CavityConfig, d_s: float, spec: QuadratureSpec | None = None) -> ForceResult:
    """First-order force per unit area on a thin layer of the cavity medium itself.

    The layer of thickness ``d_s`` is centred at distances ``(d1, d2)``; the
    force is ``d_s / (4 pi**2) int dxi xi**2 mu (n**2 - 1) (A^p - A^s)`` with
    ``A^q = int kappa dkappa R^q``. It is entirely medium-assisted.
    """
    spec = spec or QuadratureSpec()
    d_s = float(d_s)
    if not d_s > 0:
        raise DomainError(f"layer thickness must be > 0, got {d_s!r}")
    return _assisted_force(cavity, spec, lambda xi, mu, n2xi2: d_s * mu * (n2xi2 - xi * xi) / (4.0 * PI * PI))


def _assisted_force(cavity: CavityConfig, spec: QuadratureSpec, coeff, *extra) -> ForceResult:
    # forces of the form int dxi c(xi) (A^p - A^s)
    s = 1.0 / (2.0 * cavity.d_min)
    inner_rel = _inner_tolerance(spec)

    def per_xi(xi, inner_abs):
        eps, mu, n2xi2, m1, m2, d1 = _cavity_sample(cavity, xi)
        c = coeff(xi, mu, n2xi2)
        if c == 0.0:
            return (0.0, 0.0, 0.0, 0.0), 0.0, 0, True
        w = np.array([abs(c), 0.0, abs(c), 0.0])
        mom, err, n, ok = _kernels.cavity_moments(
            ATOM, xi, (eps, mu, n2xi2), m1, m2, d1, cavity.d2, None, s,
            w, inner_rel, inner_abs, spec.max_evaluations,
        )
        return (0.0, 0.0, c * mom[0], -c * mom[2]), err, n, ok

    return _xi_integral(per_xi, spec, _xi_scale(cavity, *extra))


def check_dilute(cavity: CavityConfig, medium_atom: MediumAtom, tolerance: float = DILUTE_TOLERANCE):
    """Raise ``ConfigurationError`` unless ``n**2 ~ 1 + 4 pi N (alpha_e + alpha_m)``.

    Sampled on a log grid spanning six decades around the model frequencies.
    """
    omega = characteristic_frequency(cavity.medium, medium_atom.species)
    xs = omega * np.logspace(-3.0, 3.0, 61)
    sp = medium_atom.species
    n2 = cavity.medium.n2(xs)
    model = 1.0 + 4.0 * PI * medium_atom.density * (sp.alpha_e(xs) + sp.alpha_m(xs))
    dev = np.abs(n2 - model)
    worst = int(np.argmax(dev))
    if not dev[worst] < tolerance:
        raise ConfigurationError(
            f"cavity medium is not the dilute medium of the given atoms: "
            f"|n^2 - 1 - 4 pi N alpha| = {dev[worst]:.3g} at xi = {xs[worst]:.3g} "
            f"(tolerance {tolerance:g})"
        )


def medium_atom_force(
    cavity: CavityConfig, medium_atom: MediumAtom, spec: QuadratureSpec | None = None
) -> ForceResult:
    """Per-atom force on a constituent atom of a dilute cavity medium.

    To first order in the medium polarizability ``a = alpha_e + alpha_m`` the
    force is ``(1/pi) int dxi xi**2 a (A^p - A^s)``; it depends on the sum
    only, so exchanging the electric and magnetic models changes nothing.
    """
    spec = spec or QuadratureSpec()
    check_dilute(cavity, medium_atom)
    sp = medium_atom.species

    def coeff(xi, mu, n2xi2):
        a = float(sp.alpha_e(xi)) + float(sp.alpha_m(xi))
        return xi * xi * a / PI

    return _assisted_force(cavity, spec, coeff, sp)


def slab_force(cavity: CavityConfig, slab: SlabConfig, spec: QuadratureSpec | None = None) -> ForceResult:
    """Force per unit area on a slab inside the cavity.

    ``cavity.d1`` and ``cavity.d2`` are the distances from the slab faces to
    mirror 1 and mirror 2. The result is in ``hbar omega_ref**4 / c**3``.
    Mirror 1 may be absent (slab in front of a single mirror).
    """
    spec = spec or QuadratureSpec()
    smed = slab.effective_medium
    d_s = slab.d_s
    s = 1.0 / (2.0 * cavity.d_min)
    inner_rel = _inner_tolerance(spec)
    two_pi2 = 2.0 * PI * PI
    eight_pi2 = 8.0 * PI * PI

    def per_xi(xi, inner_abs):
        eps, mu, n2xi2, m1, m2, d1 = _cavity_sample(cavity, xi)
        sl = (float(smed.epsilon(xi)), float(smed.mu(xi)), smed.n2xi2(xi), d_s)
        cs_p = 1.0 / (two_pi2 * eps)
        cs_s = mu / two_pi2
        ca = mu * (n2xi2 - xi * xi) / eight_pi2
        w = np.array([cs_p, abs(ca), cs_s, abs(ca)])
        mom, err, n, ok = _kernels.cavity_moments(
            SLAB, xi, (eps, mu, n2xi2), m1, m2, d1, cavity.d2, sl, s,
            w, inner_rel, inner_abs, spec.max_evaluations,
        )
        return (cs_p * mom[0], cs_s * mom[2], ca * mom[1], -ca * mom[3]), err, n, ok

    return _xi_integral(per_xi, spec, _xi_scale(cavity, smed))


class SlabIntegrandTerms(NamedTuple):
    """Pointwise pieces of the slab-force integrand at one ``(xi, k)``.

    ``screened`` and the two ``assisted_mirror*`` entries are the integrand
    contributions per unit ``dkappa`` (prefactors included); their sum over
    ``kappa`` and ``xi`` gives the force.
    """

    r: float
    t: float
    gain: float
    denominator: float
    screened: float
    assisted_mirror1: float
    assisted_mirror2: float
    mirror1_reflection: float
    mirror2_reflection: float


def slab_integrand_terms(
    q: Polarization, cavity: CavityConfig, slab: SlabConfig, xi: float, k: float
) -> SlabIntegrandTerms:
    """Instrumented slab-force integrand, split by mechanism and by mirror.

    The assisted contribution of mirror ``i`` has the sign of
    ``Delta_q * r_i`` because the slab gain ``(1 + r)**2 - t**2`` and the
    denominator are positive for passive media.
    """
    m = cavity.medium
    smed = slab.effective_medium
    xi = float(xi)
    k = float(k)
    kappa = math.sqrt(m.n2xi2(xi) + k * k)
    kap_s = math.sqrt(smed.n2xi2(xi) + k * k)
    tm = q is TM
    w_a = float(m.epsilon(xi) if tm else m.mu(xi))
    w_b = float(smed.epsilon(xi) if tm else smed.mu(xi))
    rho = _fresnel(kappa, w_a, kap_s, w_b)
    r, t, rr_tt, gain = (float(x) for x in slab_terms(rho, kap_s, slab.d_s))
    r2 = mirror_reflection(cavity.mirror2, q, m, Retarded(xi, k))
    e2 = math.exp(-2.0 * kappa * cavity.d2)
    if cavity.mirror1 is None:
        r1, e1 = 0.0, 0.0
    else:
        r1 = mirror_reflection(cavity.mirror1, q, m, Retarded(xi, k))
        e1 = math.exp(-2.0 * kappa * cavity.d1)
    den = 1.0 - r * (r1 * e1 + r2 * e2) + rr_tt * r1 * r2 * e1 * e2
    if abs(den) < SINGULAR:
        raise SingularityError("multiple-reflection denominator vanished")
    eps, mu = float(m.epsilon(xi)), float(m.mu(xi))
    screen = 1.0 / eps if tm else mu
    ca = mu * (m.n2xi2(xi) - xi * xi) / (8.0 * PI * PI)
    delta = q.delta
    resp = (r2 * e2 - r1 * e1) / den
    return SlabIntegrandTerms(
        r=r,
        t=t,
        gain=gain,
        denominator=den,
        screened=screen * kappa * kappa * r * resp / (2.0 * PI * PI),
        assisted_mirror1=-delta * ca * gain * r1 * e1 / den,
        assisted_mirror2=delta * ca * gain * r2 * e2 / den,
        mirror1_reflection=r1,
        mirror2_reflection=r2,
    )
