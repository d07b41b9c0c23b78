"""Pure numpy implementation of the cavity moment kernel.

For one imaginary frequency the kernel integrates, over the cavity wave
vector ``kappa`` (``k dk = kappa dkappa``), four moments of the cavity
response. With ``x = kappa - n xi`` mapped by ``x = s t / (1 - t)``:

mode ATOM (embedded atoms, medium layers)::

    [kappa R^p, kappa (kappa/s)**2 R^p, kappa R^s, kappa (kappa/s)**2 R^s]

mode SLAB (finite slab between the mirrors)::

    [kappa**2 r^p R_N^p, G^p R_N^p, kappa**2 r^s R_N^s, G^s R_N^s]

where ``R = (r2 e2 - r1 e1) / (1 - r1 r2 e1 e2)``,
``R_N = (r2 e2 - r1 e1) / N``, ``e_i = exp(-2 kappa d_i)`` and
``G = (1 + r)**2 - t**2``.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import SingularityError
from ..quadrature import adaptive_unit
from ..stratified import MirrorSample, _fresnel, slab_terms, stack_reflection

ATOM = 0
SLAB = 1
SINGULAR = 1e-12


def moment_integrand(kappa, mode, cav, m1: MirrorSample, m2: MirrorSample, d1, d2, slab, scale):
    """Return the ``(4, n)`` moment integrands at cavity wave vectors ``kappa``."""
    cav_eps, cav_mu, cav_n2xi2 = cav
    out = np.empty((4, len(kappa)))
    e1 = np.exp(-2.0 * kappa * d1) if m1.kind else np.zeros_like(kappa)
    e2 = np.exp(-2.0 * kappa * d2)
    if mode == SLAB:
        s_eps, s_mu, s_n2xi2, d_s = slab
        kap_s = np.sqrt(kappa * kappa + (s_n2xi2 - cav_n2xi2))
    for j, tm in enumerate((True, False)):
        r1 = stack_reflection(m1, tm, kappa, cav_eps, cav_mu, cav_n2xi2)
        r2 = stack_reflection(m2, tm, kappa, cav_eps, cav_mu, cav_n2xi2)
        num = r2 * e2 - r1 * e1
        if mode == ATOM:
            den = 1.0 - r1 * r2 * e1 * e2
            _check(den)
            resp = num / den
            out[2 * j] = kappa * resp
            out[2 * j + 1] = kappa * (kappa / scale) ** 2 * resp
        else:
            rho = _fresnel(kappa, cav_eps if tm else cav_mu, kap_s, s_eps if tm else s_mu)
            r, _, rr_tt, gain = slab_terms(rho, kap_s, d_s)
            den = 1.0 - r * (r1 * e1 + r2 * e2) + rr_tt * r1 * r2 * e1 * e2
            _check(den)
            resp = num / den
            out[2 * j] = kappa * kappa * r * resp
            out[2 * j + 1] = gain * resp
    return out


def _check(den):
    if np.any(np.abs(den) < SINGULAR):
        raise SingularityError("multiple-reflection denominator vanished")


def cavity_moments(
    mode: int,
    xi: float,
    cav: tuple[float, float, float],
    m1: MirrorSample,
    m2: MirrorSample,
    d1: float,
    d2: float,
    slab,
    scale: float,
    weights,
    rel_tol: float,
    abs_tol: float,
    max_evaluations: int,
):
    """Integrate the four moments over ``kappa`` in ``[n xi, inf)``.

    Returns ``(values, weighted_error, evaluations, converged)``.
    """
    kmin = math.sqrt(cav[2])

    def g(t):
        one_minus = 1.0 - t
        kappa = kmin + scale * t / one_minus
        jac = scale / (one_minus * one_minus)
        return moment_integrand(kappa, mode, cav, m1, m2, d1, d2, slab, scale) * jac

    w = np.asarray(weights, dtype=float)
    value, err, evals, converged, _, _ = adaptive_unit(g, w, rel_tol, abs_tol, max_evaluations)
    return value, float(w @ err), evals, converged
