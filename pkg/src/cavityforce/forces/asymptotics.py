"""Leading short- and large-distance terms of the atom-mirror forces.

Short distance (van der Waals, ``z -> 0``) uses nonretarded reflection
coefficients; large distance (Casimir-Polder, ``z -> inf``) uses static
responses and the variable ``p = kappa / (n xi)``.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from ..dispersion import AtomSpecies, Medium, VACUUM, characteristic_frequency
from ..errors import DomainError, UVDivergenceError
from ..quadrature import QuadratureSpec, integrate_half_line
from ..stratified import (
    TE,
    TM,
    IdealConducting,
    IdealPermeable,
    Mirror,
    StaticP,
    Stack,
    mirror_reflection,
    nonretarded_reflection,
)
from .types import ForceResult, Formulation, MediumAtom

__all__ = [
    "MirrorKind",
    "Regime",
    "atom_force_short",
    "atom_force_large",
    "ideal_mirror_closed_form",
    "ideal_mirror_parts",
    "medium_atom_asymptotics",
]

PI = math.pi


class MirrorKind(enum.Enum):
    CONDUCTING = "conducting"
    PERMEABLE = "permeable"


class Regime(enum.Enum):
    SHORT = "short"
    LARGE = "large"


def _positive(name, z):
    z = float(z)
    if not z > 0 or math.isinf(z):
        raise DomainError(f"{name} must be finite and > 0, got {z!r}")
    return z


def _single_medium(mirror: Mirror) -> bool:
    return not isinstance(mirror, Stack) or not mirror.layers


def _limit_reflection(mirror: Mirror, tm: bool, cavity: Medium) -> float:
    # nonretarded reflection as xi -> inf (layers matter only through their limits)
    if isinstance(mirror, IdealConducting):
        return 1.0 if tm else -1.0
    if isinstance(mirror, IdealPermeable):
        return -1.0 if tm else 1.0
    pick = (lambda m: m.epsilon.high_frequency_limit) if tm else (lambda m: m.mu.high_frequency_limit)
    w0 = pick(cavity)
    if all(pick(m) == w0 for m in mirror.media):
        return 0.0
    return float("nan")  # nonzero (thickness dependent); only its vanishing matters


def _reject_uv(what: str):
    raise UVDivergenceError(
        f"{what}: the frequency integral diverges because a response does not fall off "
        "at high frequency; use dispersive (frequency dependent) models"
    )


def atom_force_short(
    mirror: Mirror,
    cavity_medium: Medium,
    atom: AtomSpecies,
    z: float,
    spec: QuadratureSpec | None = None,
    formulation: Formulation = Formulation.LORENTZ,
) -> ForceResult:
    """Leading ``1/z**4`` force on an embedded atom near a mirror.

    Single-medium and ideal mirrors use the closed wave-vector integral
    ``(3 / (4 pi z**4)) int dxi [alpha_e/eps**2 R^p + alpha_m R^s]`` with the
    nonretarded coefficients ``R^p = (eps_m - eps)/(eps_m + eps)``,
    ``R^s = (mu_m - mu)/(mu_m + mu)`` and ``R^q = +-Delta_q`` for ideal walls.
    Layered mirrors integrate ``u**3 exp(-u)`` over ``u = 2 k z``.
    The Minkowski variant uses ``alpha_e/eps`` and ``alpha_m/mu``.
    """
    spec = spec or QuadratureSpec()
    z = _positive("z", z)
    if not isinstance(formulation, Formulation):
        formulation = Formulation(formulation)
    lorentz = formulation is Formulation.LORENTZ
    med = cavity_medium

    # integrand -> const * alpha_inf * R_inf at large xi
    ae_inf = atom.alpha_e.high_frequency_limit
    am_inf = atom.alpha_m.high_frequency_limit
    for a_inf, tm in ((ae_inf, True), (am_inf, False)):
        if a_inf and _limit_reflection(mirror, tm, med) != 0.0:
            _reject_uv("short-distance atom force")

    def weights(xi):
        eps = med.epsilon(xi)
        mu = med.mu(xi)
        ae = atom.alpha_e(xi)
        am = atom.alpha_m(xi)
        if lorentz:
            return ae / (eps * eps), am
        return ae / eps, am / mu

    omega = characteristic_frequency(med, mirror, atom)
    ospec = spec.with_(scale_hint=omega)

    if _single_medium(mirror):
        pref = 3.0 / (4.0 * PI * z**4)

        def f(xs):
            we, wm = weights(xs)
            rp = np.array([_nr(mirror, TM, med, x) for x in xs])
            rs = np.array([_nr(mirror, TE, med, x) for x in xs])
            return np.vstack([we * rp, wm * rs])

        res = integrate_half_line(f, 0.0, ospec)
        return _result(pref * res.value[0], pref * res.value[1], res.error_estimate * pref, res)

    pref = 1.0 / (8.0 * PI * z**4)
    inner = spec.with_(rel_tol=max(spec.rel_tol * 0.1, 1e-15), scale_hint=1.0)
    state = {"evals": 0, "ok": True}

    def f_layered(xs):
        out = np.empty((3, len(xs)))
        for i, x in enumerate(xs):
            x = float(x)
            we, wm = weights(x)

            def g(u, x=x):
                k = u / (2.0 * z)
                rp = nonretarded_reflection(mirror, TM, med, x, k)
                rs = nonretarded_reflection(mirror, TE, med, x, k)
                base = u**3 * np.exp(-u)
                return np.vstack([base * rp, base * rs])

            w = [abs(we), abs(wm)]
            if not any(w):
                out[:, i] = 0.0
                continue
            r = integrate_half_line(g, 0.0, inner, error_weights=w)
            state["evals"] += r.evaluations
            state["ok"] = state["ok"] and r.converged
            out[0, i] = we * r.value[0]
            out[1, i] = wm * r.value[1]
            out[2, i] = r.error_estimate
        return out

    res = integrate_half_line(f_layered, 0.0, ospec, error_weights=[1.0, 1.0, 0.0])
    err = (res.error_estimate + abs(res.value[2])) * pref
    out = _result(pref * res.value[0], pref * res.value[1], err, res)
    return ForceResult(
        out.screened_tm, out.screened_te, 0.0, 0.0, out.error_estimate,
        out.converged and state["ok"], out.evaluations + state["evals"],
    )


def _nr(mirror, q, med, xi):
    return float(nonretarded_reflection(mirror, q, med, float(xi), 1.0))


def _result(tm, te, err, res, assisted=(0.0, 0.0)):
    return ForceResult(
        screened_tm=float(tm),
        screened_te=float(te),
        assisted_tm=float(assisted[0]),
        assisted_te=float(assisted[1]),
        error_estimate=float(err),
        converged=res.converged,
        evaluations=res.evaluations,
    )


def _static_cavity(med: Medium):
    e0, m0 = med.epsilon.static, med.mu.static
    if not (math.isfinite(e0) and math.isfinite(m0)):
        raise DomainError("large-distance forces need a cavity medium with finite static response")
    return e0, m0


def _static_reflections(mirror: Mirror, med: Medium, ps):
    rp = np.array([mirror_reflection(mirror, TM, med, StaticP(p)) for p in ps])
    rs = np.array([mirror_reflection(mirror, TE, med, StaticP(p)) for p in ps])
    return rp, rs


def atom_force_large(
    mirror: Mirror,
    cavity_medium: Medium,
    atom: AtomSpecies,
    z: float,
    formulation: Formulation = Formulation.LORENTZ,
    spec: QuadratureSpec | None = None,
) -> ForceResult:
    """Leading ``1/z**5`` force on an embedded atom, from static responses.

    ``(3 / (4 pi n0**3 z**5)) int_1^inf dp / p**4 {...}`` where the bracket
    holds the screened TM, screened TE and medium-assisted terms evaluated at
    ``xi = 0`` with reflection coefficients in the static ``p`` mode.
    """
    spec = spec or QuadratureSpec()
    z = _positive("z", z)
    if not isinstance(formulation, Formulation):
        formulation = Formulation(formulation)
    e0, m0 = _static_cavity(cavity_medium)
    n2 = e0 * m0
    ae, am = atom.alpha_e.static, atom.alpha_m.static
    pref = 3.0 / (4.0 * PI * n2 * math.sqrt(n2) * z**5)
    lorentz = formulation is Formulation.LORENTZ

    def f(ps):
        rp, rs = _static_reflections(mirror, cavity_medium, ps)
        p2 = ps * ps
        w = 1.0 / (p2 * p2)
        if lorentz:
            stm = (ae * m0 * (2.0 * p2 - 1.0) - am * e0) * rp * w / e0
            ste = m0 * (am * e0 * (2.0 * p2 - 1.0) - ae * m0) * rs * w
            atm = m0 * (n2 - 1.0) * ae * rp * w
            ate = -m0 * (n2 - 1.0) * am * rs * w
        else:
            stm = (ae * m0 * (2.0 * p2 - 1.0) - am * e0) * rp * w
            ste = (am * e0 * (2.0 * p2 - 1.0) - ae * m0) * rs * w
            atm = ate = np.zeros_like(ps)
        return np.vstack([stm, ste, atm, ate])

    res = integrate_half_line(f, 1.0, spec.with_(scale_hint=1.0))
    v = res.value * pref
    return _result(v[0], v[1], res.error_estimate * pref, res, assisted=(v[2], v[3]))


def ideal_mirror_closed_form(
    atom: AtomSpecies,
    cavity_medium: Medium,
    z: float,
    formulation: Formulation = Formulation.LORENTZ,
    mirror_kind: MirrorKind = MirrorKind.CONDUCTING,
) -> float:
    """Exact large-distance force near an ideal conducting or permeable wall.

    Lorentz::

        +-(1 / (4 pi z**5 n0 eps0)) [alpha_e0 (5/eps0 + mu0 + n0**2 - 1)
                                      - alpha_m0 (1/mu0 + 5 eps0 - n0**2 + 1)]

    Minkowski: ``+-(3 / (2 pi z**5 n0**3)) (alpha_e0 mu0 - alpha_m0 eps0)``.
    The upper sign is for the conducting wall.
    """
    z = _positive("z", z)
    if not isinstance(formulation, Formulation):
        formulation = Formulation(formulation)
    if not isinstance(mirror_kind, MirrorKind):
        mirror_kind = MirrorKind(mirror_kind)
    e0, m0 = _static_cavity(cavity_medium)
    n2 = e0 * m0
    n0 = math.sqrt(n2)
    ae, am = atom.alpha_e.static, atom.alpha_m.static
    sign = 1.0 if mirror_kind is MirrorKind.CONDUCTING else -1.0
    if formulation is Formulation.LORENTZ:
        bracket = ae * (5.0 / e0 + m0 + n2 - 1.0) - am * (1.0 / m0 + 5.0 * e0 - n2 + 1.0)
        return sign * bracket / (4.0 * PI * z**5 * n0 * e0)
    return sign * 3.0 * (ae * m0 - am * e0) / (2.0 * PI * z**5 * n0**3)


def ideal_mirror_parts(
    atom: AtomSpecies,
    cavity_medium: Medium,
    z: float,
    formulation: Formulation = Formulation.LORENTZ,
    mirror_kind: MirrorKind = MirrorKind.CONDUCTING,
) -> ForceResult:
    """Closed-form large-distance force with its screened/assisted breakdown.

    Uses ``int_1^inf (2 p**2 - 1) / p**4 dp = 5/3`` and
    ``int_1^inf dp / p**4 = 1/3``; the parts sum to
    :func:`ideal_mirror_closed_form`.
    """
    z = _positive("z", z)
    if not isinstance(formulation, Formulation):
        formulation = Formulation(formulation)
    if not isinstance(mirror_kind, MirrorKind):
        mirror_kind = MirrorKind(mirror_kind)
    e0, m0 = _static_cavity(cavity_medium)
    n2 = e0 * m0
    ae, am = atom.alpha_e.static, atom.alpha_m.static
    rp = 1.0 if mirror_kind is MirrorKind.CONDUCTING else -1.0
    rs = -rp
    pref = 3.0 / (4.0 * PI * n2 * math.sqrt(n2) * z**5)
    third = 1.0 / 3.0
    five_thirds = 5.0 / 3.0
    if formulation is Formulation.LORENTZ:
        stm = (ae * m0 * five_thirds - am * e0 * third) * rp / e0
        ste = m0 * (am * e0 * five_thirds - ae * m0 * third) * rs
        atm = m0 * (n2 - 1.0) * ae * third * rp
        ate = -m0 * (n2 - 1.0) * am * third * rs
    else:
        stm = (ae * m0 * five_thirds - am * e0 * third) * rp
        ste = (am * e0 * five_thirds - ae * m0 * third) * rs
        atm = ate = 0.0
    return ForceResult(pref * stm, pref * ste, pref * atm, pref * ate)


def medium_atom_asymptotics(
    mirror: Mirror,
    medium_atom: MediumAtom,
    z: float,
    regime: Regime = Regime.LARGE,
    spec: QuadratureSpec | None = None,
) -> ForceResult:
    """Leading short (``1/z**2``) or large (``1/z**5``) force on a medium atom.

    The cavity is the dilute medium itself, so reflection coefficients are
    taken against vacuum. Short::

        (1 / (4 pi z**2)) int dxi xi**2 a [R^p_nr - R^s_nr]

    Large::

        (3 / (4 pi z**5)) a0 int_1^inf dp / p**4 [R^p - R^s]

    with ``a = alpha_e + alpha_m``. The short form needs a dispersive mirror
    and dispersive polarizabilities; otherwise the integral diverges.
    """
    spec = spec or QuadratureSpec()
    z = _positive("z", z)
    if not isinstance(regime, Regime):
        regime = Regime(regime)
    sp = medium_atom.species
    a_model = sp.alpha_e + sp.alpha_m

    if regime is Regime.LARGE:
        a0 = a_model.static
        pref = 3.0 * a0 / (4.0 * PI * z**5)

        def f(ps):
            rp, rs = _static_reflections(mirror, VACUUM, ps)
            w = 1.0 / ps**4
            return np.vstack([rp * w, -rs * w])

        res = integrate_half_line(f, 1.0, spec.with_(scale_hint=1.0))
        v = res.value * pref
        return _result(0.0, 0.0, res.error_estimate * abs(pref), res, assisted=(v[0], v[1]))

    if isinstance(mirror, (IdealConducting, IdealPermeable)):
        _reject_uv("short-distance medium-atom force with an ideal mirror")
    if not all(m.uv_transparent for m in mirror.media):
        _reject_uv("short-distance medium-atom force with a non-dispersive mirror")
    if a_model.high_frequency_limit:
        _reject_uv("short-distance medium-atom force with a non-dispersive polarizability")

    omega = characteristic_frequency(mirror, sp)
    ospec = spec.with_(scale_hint=omega)
    if _single_medium(mirror):
        pref = 1.0 / (4.0 * PI * z**2)

        def f(xs):
            a = a_model(xs)
            rp = np.array([_nr(mirror, TM, VACUUM, x) for x in xs])
            rs = np.array([_nr(mirror, TE, VACUUM, x) for x in xs])
            return np.vstack([xs * xs * a * rp, -xs * xs * a * rs])

        res = integrate_half_line(f, 0.0, ospec)
        v = res.value * pref
        return _result(0.0, 0.0, res.error_estimate * pref, res, assisted=(v[0], v[1]))

    # layered mirror: int du u exp(-u) R_nr(xi, u / 2z) replaces the closed u-integral
    pref = 1.0 / (4.0 * PI * z**2)
    inner = spec.with_(rel_tol=max(spec.rel_tol * 0.1, 1e-15), scale_hint=1.0)
    state = {"evals": 0, "ok": True}

    def f_layered(xs):
        out = np.empty((3, len(xs)))
        for i, x in enumerate(xs):
            x = float(x)
            c = x * x * float(a_model(x))

            def g(u, x=x):
                k = u / (2.0 * z)
                base = u * np.exp(-u)
                return np.vstack([
                    base * nonretarded_reflection(mirror, TM, VACUUM, x, k),
                    -base * nonretarded_reflection(mirror, TE, VACUUM, x, k),
                ])

            if c == 0.0:
                out[:, i] = 0.0
                continue
            r = integrate_half_line(g, 0.0, inner)
            state["evals"] += r.evaluations
            state["ok"] = state["ok"] and r.converged
            out[0, i] = c * r.value[0]
            out[1, i] = c * r.value[1]
            out[2, i] = abs(c) * r.error_estimate
        return out

    res = integrate_half_line(f_layered, 0.0, ospec, error_weights=[1.0, 1.0, 0.0])
    v = res.value * pref
    return ForceResult(
        0.0, 0.0, float(v[0]), float(v[1]),
        float((res.error_estimate + abs(res.value[2])) * pref),
        res.converged and state["ok"], res.evaluations + state["evals"],
    )
