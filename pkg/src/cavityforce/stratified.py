"""Planar geometry: wave vectors, Fresnel coefficients and mirror reflection.

Reflection coefficients are evaluated at imaginary frequency ``i xi`` where
they are real. Three evaluation modes are supported for mirrors:

``Retarded(xi, k)``
    exact coefficient at in-plane wavenumber ``k``.
``NonRetarded(xi, k)``
    the ``k -> inf`` form where every perpendicular wave vector equals ``k``.
``StaticP(p)``
    large-distance form with ``kappa_l = n xi s_l``,
    ``s_l = sqrt(p**2 - 1 + n_l**2 / n**2)`` and all responses at xi = 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .dispersion import Medium
from .errors import DegenerateInputError, DomainError

__all__ = [
    "Polarization",
    "TM",
    "TE",
    "Layer",
    "Mirror",
    "IdealConducting",
    "IdealPermeable",
    "Stack",
    "Retarded",
    "NonRetarded",
    "StaticP",
    "perpendicular_wavevector",
    "interface_reflection",
    "slab_coefficients",
    "SlabCoefficients",
    "mirror_reflection",
    "MirrorSample",
    "sample_mirror",
    "stack_reflection",
]


class Polarization(enum.Enum):
    TM = "p"
    TE = "s"

    @property
    def delta(self) -> int:
        """+1 for TM, -1 for TE."""
        return 1 if self is Polarization.TM else -1


TM = Polarization.TM
TE = Polarization.TE


@dataclass(frozen=True)
class Layer:
    medium: Medium
    thickness: float

    def __post_init__(self):
        t = float(self.thickness)
        if not (t > 0.0) or math.isinf(t):
            raise DomainError(f"layer thickness must be finite and > 0, got {self.thickness!r}")
        object.__setattr__(self, "thickness", t)


class Mirror:
    """Base class of the three mirror variants."""

    def frequencies(self):
        return ()


@dataclass(frozen=True)
class IdealConducting(Mirror):
    """Perfect electric conductor, ``R^q = +Delta_q``."""


@dataclass(frozen=True)
class IdealPermeable(Mirror):
    """Infinitely permeable wall, ``R^q = -Delta_q``."""


@dataclass(frozen=True)
class Stack(Mirror):
    """Layers listed from the cavity side, on top of a half-space ``substrate``."""

    substrate: Medium
    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def media(self) -> tuple[Medium, ...]:
        return tuple(l.medium for l in self.layers) + (self.substrate,)

    def frequencies(self):
        out = ()
        for m in self.media:
            out += m.frequencies()
        return out


@dataclass(frozen=True)
class Retarded:
    xi: float
    k: float


@dataclass(frozen=True)
class NonRetarded:
    xi: float
    k: float


@dataclass(frozen=True)
class StaticP:
    p: float


Mode = Union[Retarded, NonRetarded, StaticP]


def _check_xik(xi, k):
    xi = float(xi)
    k = np.asarray(k, dtype=float)
    if xi < 0 or np.any(k < 0):
        raise DomainError(f"need xi >= 0 and k >= 0, got xi={xi!r}, k={k!r}")
    if xi == 0.0 and np.any(k == 0.0):
        raise DegenerateInputError("xi = k = 0 is degenerate")
    return xi, k


def perpendicular_wavevector(medium: Medium, xi: float, k):
    """``kappa = sqrt(n**2(i xi) xi**2 + k**2)`` (c = 1)."""
    xi, karr = _check_xik(xi, k)
    kappa = np.sqrt(medium.n2xi2(xi) + karr * karr)
    return float(kappa) if np.ndim(k) == 0 else kappa


def _fresnel(kap_a, w_a, kap_b, w_b):
    # (kap_a/w_a - kap_b/w_b) / (kap_a/w_a + kap_b/w_b); w = eps for TM, mu for TE
    xa = kap_a / w_a
    xb = kap_b / w_b
    return (xa - xb) / (xa + xb)


def interface_reflection(q: Polarization, cavity: Medium, other: Medium, xi: float, k):
    """Single-interface Fresnel coefficient seen from ``cavity`` towards ``other``."""
    xi, karr = _check_xik(xi, k)
    kap = np.sqrt(cavity.n2xi2(xi) + karr * karr)
    kap_s = np.sqrt(other.n2xi2(xi) + karr * karr)
    if q is TM:
        w_a, w_b = cavity.epsilon(xi), other.epsilon(xi)
    else:
        w_a, w_b = cavity.mu(xi), other.mu(xi)
    rho = _fresnel(kap, w_a, kap_s, w_b)
    return float(rho) if np.ndim(k) == 0 else rho


class SlabCoefficients(NamedTuple):
    r: float
    t: float
    r_sq_minus_t_sq: float
    one_plus_r_sq_minus_t_sq: float


def slab_terms(rho, kap_s, d_s):
    """Slab coefficients from the interface coefficient, cancellation free.

    Uses ``r**2 - t**2 = (rho**2 - E) / D`` and
    ``(1 + r)**2 - t**2 = (1 + rho)**2 (1 - E) / D`` with
    ``E = exp(-2 kappa_s d_s)`` and ``D = 1 - rho**2 E``.
    """
    one_minus_e = -np.expm1(-2.0 * kap_s * d_s)
    e = 1.0 - one_minus_e
    d = 1.0 - rho * rho * e
    r = rho * one_minus_e / d
    t = (1.0 - rho * rho) * np.exp(-kap_s * d_s) / d
    rr_tt = (rho * rho - e) / d
    gain = (1.0 + rho) ** 2 * one_minus_e / d
    return r, t, rr_tt, gain


def slab_coefficients(q: Polarization, cavity: Medium, slab: Medium, d_s: float, xi: float, k):
    """Reflection and transmission of a slab of ``slab`` medium embedded in ``cavity``."""
    d_s = float(d_s)
    if d_s < 0:
        raise DomainError(f"slab thickness must be >= 0, got {d_s!r}")
    rho = interface_reflection(q, cavity, slab, xi, k)
    kap_s = perpendicular_wavevector(slab, xi, k)
    r, t, rr_tt, gain = slab_terms(rho, kap_s, d_s)
    if np.ndim(k) == 0:
        return SlabCoefficients(float(r), float(t), float(rr_tt), float(gain))
    return SlabCoefficients(r, t, rr_tt, gain)


class MirrorSample(NamedTuple):
    """A mirror with all material responses evaluated at one frequency.

    ``kind``: 0 absent, 1 ideal conducting, 2 ideal permeable, 3 stack.
    The media arrays list the layers then the substrate.
    """

    kind: int
    eps: np.ndarray
    mu: np.ndarray
    n2xi2: np.ndarray
    thickness: np.ndarray


_EMPTY = np.zeros(0)
ABSENT = MirrorSample(0, _EMPTY, _EMPTY, _EMPTY, _EMPTY)


def sample_mirror(mirror: Mirror | None, xi: float) -> MirrorSample:
    if mirror is None:
        return ABSENT
    if isinstance(mirror, IdealConducting):
        return MirrorSample(1, _EMPTY, _EMPTY, _EMPTY, _EMPTY)
    if isinstance(mirror, IdealPermeable):
        return MirrorSample(2, _EMPTY, _EMPTY, _EMPTY, _EMPTY)
    if isinstance(mirror, Stack):
        media = mirror.media
        return MirrorSample(
            3,
            np.array([m.epsilon(xi) for m in media], dtype=float),
            np.array([m.mu(xi) for m in media], dtype=float),
            np.array([m.n2xi2(xi) for m in media], dtype=float),
            np.array([l.thickness for l in mirror.layers], dtype=float),
        )
    raise TypeError(f"not a mirror: {mirror!r}")


def stack_reflection(sample: MirrorSample, tm: bool, kappa, cav_eps, cav_mu, cav_n2xi2):
    """Retarded reflection of a sampled mirror at cavity wave vectors ``kappa``.

    Works on arrays. Layer wave vectors follow from
    ``kappa_l**2 = kappa**2 + (n_l**2 - n**2) xi**2``.
    """
    kind = sample.kind
    if kind == 0:
        return np.zeros_like(kappa)
    if kind == 1:
        return np.full_like(kappa, 1.0 if tm else -1.0)
    if kind == 2:
        return np.full_like(kappa, -1.0 if tm else 1.0)
    w = sample.eps if tm else sample.mu
    w_cav = cav_eps if tm else cav_mu
    k2 = kappa * kappa
    n = len(w)
    kap = [np.sqrt(k2 + (sample.n2xi2[j] - cav_n2xi2)) for j in range(n)]
    # innermost interface, then outward through the layers
    r = _fresnel(kap[n - 2], w[n - 2], kap[n - 1], w[n - 1]) if n > 1 else None
    for j in range(n - 2, -1, -1):
        above_k, above_w = (kappa, w_cav) if j == 0 else (kap[j - 1], w[j - 1])
        rho = _fresnel(above_k, above_w, kap[j], w[j])
        e = np.exp(-2.0 * kap[j] * sample.thickness[j])
        r = (rho + r * e) / (1.0 + rho * r * e)
    if n == 1:
        r = _fresnel(kappa, w_cav, kap[0], w[0])
    return r


def _stack_static(mirror: Stack, tm: bool, cavity: Medium, p: float) -> float:
    e0, m0 = cavity.epsilon.static, cavity.mu.static
    n2 = e0 * m0
    if not math.isfinite(n2):
        raise DomainError("static_p mode needs a cavity medium with finite static response")
    w_cav = e0 if tm else m0
    rs = []
    for med in mirror.media:
        es, ms = med.epsilon.static, med.mu.static
        if math.isinf(es) and math.isinf(ms):
            raise DomainError("medium with infinite static permittivity and permeability")
        if math.isinf(es) or math.isinf(ms):
            # acts as an ideal wall at its top face
            sign = 1.0 if math.isinf(es) else -1.0
            rs.append(("wall", sign if tm else -sign))
            break
        s = math.sqrt(p * p - 1.0 + es * ms / n2)
        rs.append((s, es if tm else ms))
    # thicknesses drop out: exp(-2 kappa_l t) -> 1 as xi -> 0
    last = rs[-1]
    if last[0] == "wall":
        r = last[1]
        above = rs[:-1]
    else:
        r = None
        above = rs
    chain = [(p, w_cav)] + [x for x in above]
    for j in range(len(chain) - 1, 0, -1):
        s_b, w_b = chain[j]
        s_a, w_a = chain[j - 1]
        rho = _fresnel(s_a, w_a, s_b, w_b)
        r = rho if r is None else (rho + r) / (1.0 + rho * r)
    if r is None:  # stack was a single wall at the surface
        r = last[1]
    return float(r)


def mirror_reflection(mirror: Mirror, q: Polarization, cavity: Medium, mode: Mode) -> float:
    """Reflection coefficient ``R^q`` of ``mirror`` bordering ``cavity``."""
    tm = q is TM
    if isinstance(mode, StaticP):
        p = float(mode.p)
        if not p >= 1.0:
            raise DomainError(f"static_p mode needs p >= 1, got {p!r}")
    else:
        xi, k = _check_xik(mode.xi, mode.k)
    if isinstance(mirror, IdealConducting):
        return float(q.delta)
    if isinstance(mirror, IdealPermeable):
        return float(-q.delta)
    if not isinstance(mirror, Stack):
        raise TypeError(f"not a mirror: {mirror!r}")
    if isinstance(mode, StaticP):
        return _stack_static(mirror, tm, cavity, p)
    if isinstance(mode, NonRetarded):
        return _stack_nonretarded(mirror, tm, cavity, xi, float(k))
    kappa = math.sqrt(cavity.n2xi2(xi) + float(k) ** 2)
    sample = sample_mirror(mirror, xi)
    r = stack_reflection(
        sample, tm, np.array([kappa]), cavity.epsilon(xi), cavity.mu(xi), cavity.n2xi2(xi)
    )
    return float(r[0])


def _stack_nonretarded(mirror: Stack, tm: bool, cavity: Medium, xi: float, k):
    # kappa = kappa_l = k: interfaces reduce to (w_b - w_a) / (w_b + w_a)
    k = np.asarray(k, dtype=float)
    pick = (lambda m: m.epsilon(xi)) if tm else (lambda m: m.mu(xi))
    ws = [pick(cavity)] + [pick(m) for m in mirror.media]
    r = _fresnel(1.0, ws[-2], 1.0, ws[-1])
    for j in range(len(ws) - 2, 0, -1):
        rho = _fresnel(1.0, ws[j - 1], 1.0, ws[j])
        e = np.exp(-2.0 * k * mirror.layers[j - 1].thickness)
        r = (rho + r * e) / (1.0 + rho * r * e)
    return float(r) if np.ndim(r) == 0 else r


def nonretarded_reflection(mirror: Mirror, q: Polarization, cavity: Medium, xi: float, k):
    """Vectorized nonretarded reflection (``k`` may be an array)."""
    if isinstance(mirror, IdealConducting):
        return np.full_like(np.asarray(k, dtype=float), q.delta)
    if isinstance(mirror, IdealPermeable):
        return np.full_like(np.asarray(k, dtype=float), -q.delta)
    return _stack_nonretarded(mirror, q is TM, cavity, xi, k)
