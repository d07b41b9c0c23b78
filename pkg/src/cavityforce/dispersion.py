"""Linear response of materials and atoms on the imaginary frequency axis.

All quantities use natural units with hbar = c = 1 and a user chosen
reference frequency ``omega_ref``: frequencies are in units of
``omega_ref``, lengths in ``c / omega_ref`` and polarizabilities in
``(c / omega_ref)**3`` (Gaussian volume convention).

Every model is an immutable dataclass that can be called with a scalar or
a numpy array of nonnegative imaginary frequencies ``xi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "ResponseModel",
    "Constant",
    "Plasma",
    "Drude",
    "Oscillator",
    "DrudeLorentz",
    "Doped",
    "PolarizabilityModel",
    "Medium",
    "AtomSpecies",
    "VACUUM",
    "eval_response",
    "eval_polarizability",
    "refractive_index_sq",
]


def _check_xi(xi):
    arr = np.asarray(xi, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"imaginary frequency must be >= 0, got {xi!r}")
    return arr


def _nonneg(name: str, value: float) -> float:
    value = float(value)
    if not value >= 0.0 or math.isinf(value):
        raise DomainError(f"{name} must be finite and >= 0, got {value!r}")
    return value


def _out(arr, like):
    # scalars in, python floats out
    if np.ndim(like) == 0:
        return float(arr)
    return arr


class ResponseModel:
    """Base class for permittivity / permeability models.

    Subclasses implement ``_value`` (array in, array out), ``static`` (the
    value at xi = 0, possibly ``inf``), ``high_frequency_limit`` and
    ``frequencies``.
    """

    def __call__(self, xi):
        if type(xi) is float:
            # scalar fast path: the force integrands call this once per frequency
            if not xi >= 0.0:
                raise DomainError(f"imaginary frequency must be >= 0, got {xi!r}")
            with np.errstate(divide="ignore"):
                return float(self._value(np.float64(xi)))
        arr = _check_xi(xi)
        with np.errstate(divide="ignore"):
            return _out(self._value(arr), xi)

    def _value(self, xi: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def static(self) -> float:
        return float(self(0.0))

    @property
    def high_frequency_limit(self) -> float:
        return 1.0

    def frequencies(self) -> tuple[float, ...]:
        return ()

    def xi_sq_limit(self) -> float:
        """Limit of ``xi**2 * model(i xi)`` as xi -> 0."""
        return 0.0

    @property
    def is_flagged(self) -> bool:
        """True for models that do not become transparent as xi -> inf."""
        return self.high_frequency_limit != 1.0


@dataclass(frozen=True)
class Constant(ResponseModel):
    """Frequency independent response (value >= 1)."""

    value: float = 1.0

    def __post_init__(self):
        v = float(self.value)
        if not (v >= 1.0) or math.isinf(v):
            raise DomainError(f"constant response must be finite and >= 1, got {self.value!r}")
        object.__setattr__(self, "value", v)

    def _value(self, xi):
        return np.full_like(xi, self.value)

    @property
    def static(self) -> float:
        return self.value

    @property
    def high_frequency_limit(self) -> float:
        return self.value


@dataclass(frozen=True)
class Plasma(ResponseModel):
    """Lossless plasma: ``1 + omega_p**2 / xi**2``."""

    omega_p: float

    def __post_init__(self):
        object.__setattr__(self, "omega_p", _nonneg("omega_p", self.omega_p))

    def _value(self, xi):
        return 1.0 + self.omega_p**2 / xi**2 if self.omega_p else np.ones_like(xi)

    @property
    def static(self) -> float:
        return math.inf if self.omega_p else 1.0

    def frequencies(self):
        return (self.omega_p,)

    def xi_sq_limit(self):
        return self.omega_p**2


@dataclass(frozen=True)
class Drude(ResponseModel):
    """Drude metal: ``1 + omega_p**2 / (xi**2 + gamma * xi)``."""

    omega_p: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "omega_p", _nonneg("omega_p", self.omega_p))
        object.__setattr__(self, "gamma", _nonneg("gamma", self.gamma))

    def _value(self, xi):
        if not self.omega_p:
            return np.ones_like(xi)
        return 1.0 + self.omega_p**2 / (xi * (xi + self.gamma))

    @property
    def static(self) -> float:
        return math.inf if self.omega_p else 1.0

    def frequencies(self):
        return (self.omega_p, self.gamma)

    def xi_sq_limit(self):
        return self.omega_p**2 if self.gamma == 0.0 else 0.0


@dataclass(frozen=True)
class Oscillator:
    """One Lorentz term: ``strength / (omega_0**2 + xi**2 + gamma * xi)``.

    ``strength`` is the squared oscillator plasma frequency.
    """

    strength: float
    omega_0: float
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("strength", "omega_0", "gamma"):
            object.__setattr__(self, name, _nonneg(name, getattr(self, name)))


@dataclass(frozen=True)
class DrudeLorentz(ResponseModel):
    """Sum of Lorentz oscillators on top of the vacuum value 1."""

    oscillators: tuple[Oscillator, ...] = ()

    def __post_init__(self):
        oscs = tuple(o if isinstance(o, Oscillator) else Oscillator(*o) for o in self.oscillators)
        object.__setattr__(self, "oscillators", oscs)

    def _value(self, xi):
        out = np.ones_like(xi)
        for o in self.oscillators:
            if o.strength:
                out = out + o.strength / (o.omega_0**2 + xi * (xi + o.gamma))
        return out

    @property
    def static(self) -> float:
        total = 1.0
        for o in self.oscillators:
            if o.strength:
                if o.omega_0 == 0.0:
                    return math.inf
                total += o.strength / o.omega_0**2
        return total

    def frequencies(self):
        out = []
        for o in self.oscillators:
            out.extend((math.sqrt(o.strength), o.omega_0, o.gamma))
        return tuple(out)

    def xi_sq_limit(self):
        return sum(o.strength for o in self.oscillators if o.omega_0 == 0.0 and o.gamma == 0.0)


@dataclass(frozen=True)
class Doped(ResponseModel):
    """Host response plus inclusions: ``base + 4 pi N alpha(i xi)``."""

    base: ResponseModel
    polarizability: "PolarizabilityModel"
    density: float

    def __post_init__(self):
        object.__setattr__(self, "density", _nonneg("density", self.density))

    def _value(self, xi):
        return self.base._value(xi) + 4.0 * math.pi * self.density * self.polarizability._value(xi)

    @property
    def static(self) -> float:
        return self.base.static + 4.0 * math.pi * self.density * self.polarizability.static

    @property
    def high_frequency_limit(self) -> float:
        return self.base.high_frequency_limit + (
            4.0 * math.pi * self.density * self.polarizability.high_frequency_limit
        )

    def frequencies(self):
        return self.base.frequencies() + self.polarizability.frequencies()

    def xi_sq_limit(self):
        return self.base.xi_sq_limit()


def eval_response(model: ResponseModel, xi):
    """Evaluate ``model`` at imaginary frequency ``xi`` (scalar or array)."""
    return model(xi)


@dataclass(frozen=True)
class PolarizabilityModel:
    """Atomic polarizability ``alpha(i xi) = sum_j a_j w_j**2 / (w_j**2 + xi**2)``.

    ``terms`` holds ``(a_j, w_j)`` pairs with static weights ``a_j >= 0``.
    A resonance of ``inf`` denotes a non-dispersive (constant) contribution,
    which is accepted but makes some frequency integrals diverge.
    """

    terms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        clean = []
        for a, w in self.terms:
            a = _nonneg("polarizability weight", a)
            w = float(w)
            if not w > 0.0:
                raise DomainError(f"polarizability resonance must be > 0, got {w!r}")
            clean.append((a, w))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def single(cls, alpha0: float, omega0: float) -> "PolarizabilityModel":
        return cls(((alpha0, omega0),))

    def __call__(self, xi):
        if type(xi) is float:
            if not xi >= 0.0:
                raise DomainError(f"imaginary frequency must be >= 0, got {xi!r}")
            return float(self._value(np.float64(xi)))
        arr = _check_xi(xi)
        return _out(self._value(arr), xi)

    def _value(self, xi: np.ndarray) -> np.ndarray:
        out = np.zeros_like(xi)
        for a, w in self.terms:
            # exact at xi = 0 and for w = inf
            r = xi / w
            out = out + a / (1.0 + r * r)
        return out

    @property
    def static(self) -> float:
        return math.fsum(a for a, _ in self.terms)

    @property
    def high_frequency_limit(self) -> float:
        return math.fsum(a for a, w in self.terms if math.isinf(w))

    @property
    def is_zero(self) -> bool:
        return all(a == 0.0 for a, _ in self.terms)

    def frequencies(self):
        return tuple(w for _, w in self.terms if math.isfinite(w))

    def scaled(self, factor: float) -> "PolarizabilityModel":
        return PolarizabilityModel(tuple((a * factor, w) for a, w in self.terms))

    def __add__(self, other: "PolarizabilityModel") -> "PolarizabilityModel":
        return PolarizabilityModel(self.terms + other.terms)


def eval_polarizability(model: PolarizabilityModel, xi):
    """Evaluate ``model`` at imaginary frequency ``xi``."""
    return model(xi)


@dataclass(frozen=True)
class Medium:
    """Isotropic magnetodielectric medium."""

    epsilon: ResponseModel = field(default_factory=Constant)
    mu: ResponseModel = field(default_factory=Constant)

    def n2(self, xi):
        """Squared refractive index ``eps(i xi) * mu(i xi)``."""
        return self.epsilon(xi) * self.mu(xi)

    def n2xi2(self, xi: float) -> float:
        """``n**2 * xi**2``, finite at xi = 0 even for plasma-like models."""
        xi = float(xi)
        if xi > 0.0:
            return xi * xi * self.epsilon(xi) * self.mu(xi)
        if xi < 0.0:
            raise DomainError(f"imaginary frequency must be >= 0, got {xi!r}")
        e0, m0 = self.epsilon.static, self.mu.static
        le, lm = self.epsilon.xi_sq_limit(), self.mu.xi_sq_limit()
        if math.isinf(e0) and math.isinf(m0):
            return math.inf if (le and lm) else 0.0
        if math.isinf(e0):
            return le * m0
        if math.isinf(m0):
            return lm * e0
        return 0.0

    @property
    def static_n2(self) -> float:
        return self.epsilon.static * self.mu.static

    @property
    def is_vacuum(self) -> bool:
        one = Constant(1.0)
        return self.epsilon == one and self.mu == one

    @property
    def uv_transparent(self) -> bool:
        return self.epsilon.high_frequency_limit == 1.0 and self.mu.high_frequency_limit == 1.0

    def frequencies(self):
        return self.epsilon.frequencies() + self.mu.frequencies()

    def doped(self, species: "AtomSpecies", density: float) -> "Medium":
        """This medium with ``density`` atoms of ``species`` per unit volume added."""
        if density == 0.0:
            return self
        return Medium(
            Doped(self.epsilon, species.alpha_e, density),
            Doped(self.mu, species.alpha_m, density),
        )

    @classmethod
    def dilute(cls, species: "AtomSpecies", density: float) -> "Medium":
        """Dilute gas of ``species``: ``eps = 1 + 4 pi N alpha_e`` and likewise for mu."""
        return VACUUM.doped(species, density)


VACUUM = Medium(Constant(1.0), Constant(1.0))


def refractive_index_sq(medium: Medium, xi):
    """Return ``n**2(i xi) = eps(i xi) * mu(i xi)``."""
    return medium.n2(xi)


@dataclass(frozen=True)
class AtomSpecies:
    """Electric and magnetic polarizability of one atom."""

    alpha_e: PolarizabilityModel = field(default_factory=PolarizabilityModel)
    alpha_m: PolarizabilityModel = field(default_factory=PolarizabilityModel)

    @classmethod
    def electric(cls, alpha0: float, omega0: float) -> "AtomSpecies":
        return cls(alpha_e=PolarizabilityModel.single(alpha0, omega0))

    @classmethod
    def magnetic(cls, alpha0: float, omega0: float) -> "AtomSpecies":
        return cls(alpha_m=PolarizabilityModel.single(alpha0, omega0))

    def swapped(self) -> "AtomSpecies":
        return AtomSpecies(self.alpha_m, self.alpha_e)

    @property
    def is_zero(self) -> bool:
        return self.alpha_e.is_zero and self.alpha_m.is_zero

    def frequencies(self):
        return self.alpha_e.frequencies() + self.alpha_m.frequencies()


def characteristic_frequency(*items: object) -> float:
    """Largest finite model frequency among ``items`` (media, atoms, models), or 1."""
    freqs: list[float] = []
    for it in _flatten(items):
        if hasattr(it, "frequencies"):
            freqs.extend(f for f in it.frequencies() if f > 0.0 and math.isfinite(f))
    return max(freqs) if freqs else 1.0


def _flatten(items: Iterable[object]) -> Sequence[object]:
    out = []
    for it in items:
        if isinstance(it, (list, tuple)):
            out.extend(_flatten(it))
        elif it is not None:
            out.append(it)
    return out
