"""Short-distance forces between two atoms in a medium.

Positive values mean attraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..dispersion import VACUUM, AtomSpecies, Medium, characteristic_frequency
from ..errors import DomainError, UVDivergenceError
from ..quadrature import QuadratureSpec, integrate_half_line
from .types import ForceResult

__all__ = ["EmbeddedPair", "MediumEmbeddedPair", "atom_atom_forces"]

PI = math.pi


@dataclass(frozen=True)
class EmbeddedPair:
    """Two atoms ``a`` and ``b`` embedded in ``host``."""

    a: AtomSpecies
    b: AtomSpecies
    host: Medium = field(default=VACUUM)


@dataclass(frozen=True)
class MediumEmbeddedPair:
    """An atom ``m`` of a dilute medium and an atom ``b`` embedded in it."""

    m: AtomSpecies
    b: AtomSpecies


def atom_atom_forces(pair, r: float, spec: QuadratureSpec | None = None) -> ForceResult:
    """Force between two atoms at separation ``r`` (positive = attraction).

    Embedded pair (van der Waals-London)::

        (18 / (pi r**7)) int dxi [a_e b_e / eps**3 + a_m b_m / mu]

    reported as screened TM (electric) and TE (magnetic) parts.

    Medium-embedded pair::

        (2 / (pi r**5)) int dxi xi**2 (m_e + m_m) (b_e - b_m)

    reported as assisted TM (``b_e``) and TE (``-b_m``) parts. Its integral
    converges only for dispersive polarizabilities.
    """
    spec = spec or QuadratureSpec()
    r = float(r)
    if not r > 0 or math.isinf(r):
        raise DomainError(f"separation must be finite and > 0, got {r!r}")

    if isinstance(pair, EmbeddedPair):
        a, b, host = pair.a, pair.b, pair.host
        lim = a.alpha_e.high_frequency_limit * b.alpha_e.high_frequency_limit / (
            host.epsilon.high_frequency_limit**3
        ) + a.alpha_m.high_frequency_limit * b.alpha_m.high_frequency_limit / host.mu.high_frequency_limit
        if lim:
            raise UVDivergenceError(
                "atom-atom force: both atoms have non-dispersive polarizabilities of the same type"
            )
        pref = 18.0 / (PI * r**7)

        def f(xs):
            eps = host.epsilon(xs)
            mu = host.mu(xs)
            return np.vstack([
                a.alpha_e(xs) * b.alpha_e(xs) / eps**3,
                a.alpha_m(xs) * b.alpha_m(xs) / mu,
            ])

        omega = characteristic_frequency(a, b, host)
        res = integrate_half_line(f, 0.0, spec.with_(scale_hint=omega))
        v = res.value * pref
        return ForceResult(
            screened_tm=float(v[0]), screened_te=float(v[1]),
            error_estimate=res.error_estimate * pref,
            converged=res.converged, evaluations=res.evaluations,
        )

    if isinstance(pair, MediumEmbeddedPair):
        m_sum = pair.m.alpha_e + pair.m.alpha_m
        be, bm = pair.b.alpha_e, pair.b.alpha_m
        if m_sum.is_zero or be == bm:
            return ForceResult()
        if m_sum.high_frequency_limit or be.high_frequency_limit or bm.high_frequency_limit:
            raise UVDivergenceError(
                "medium-embedded atom force: the xi**2 weighted integral diverges for "
                "non-dispersive polarizabilities"
            )
        pref = 2.0 / (PI * r**5)

        def g(xs):
            w = xs * xs * m_sum(xs)
            return np.vstack([w * be(xs), -w * bm(xs)])

        omega = characteristic_frequency(pair.m, pair.b)
        res = integrate_half_line(g, 0.0, spec.with_(scale_hint=omega))
        v = res.value * pref
        return ForceResult(
            assisted_tm=float(v[0]), assisted_te=float(v[1]),
            error_estimate=res.error_estimate * pref,
            converged=res.converged, evaluations=res.evaluations,
        )

    raise TypeError(f"unsupported pair type {type(pair).__name__}")
