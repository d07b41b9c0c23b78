"""Configuration and result types for the force calculations."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, replace

from ..dispersion import AtomSpecies, Medium
from ..errors import DomainError
from ..stratified import Mirror


class Formulation(enum.Enum):
    """Stress-tensor formulation used for the force on an embedded atom."""

    LORENTZ = "lorentz"
    MINKOWSKI = "minkowski"


@dataclass(frozen=True)
class CavityConfig:
    """Planar cavity filled with ``medium``.

    ``d1`` and ``d2`` are the distances from the object (atom or slab face)
    to mirror 1 and mirror 2. ``mirror1 = None`` gives the semi-infinite
    cavity, where ``d2`` is the atom-mirror distance and ``d1`` is unused.
    Positive forces point from mirror 1 towards mirror 2.
    """

    medium: Medium
    mirror1: Mirror | None
    mirror2: Mirror
    d1: float
    d2: float

    def __post_init__(self):
        d2 = float(self.d2)
        if not (d2 > 0) or math.isinf(d2):
            raise DomainError(f"d2 must be finite and > 0, got {self.d2!r}")
        object.__setattr__(self, "d2", d2)
        if self.mirror1 is None:
            object.__setattr__(self, "d1", math.inf)
        else:
            d1 = float(self.d1)
            if not (d1 > 0) or math.isinf(d1):
                raise DomainError(f"d1 must be finite and > 0, got {self.d1!r}")
            object.__setattr__(self, "d1", d1)

    @classmethod
    def half_space(cls, medium: Medium, mirror: Mirror, z: float) -> "CavityConfig":
        """Semi-infinite cavity with the object a distance ``z`` from ``mirror``."""
        return cls(medium, None, mirror, math.inf, z)

    @property
    def semi_infinite(self) -> bool:
        return self.mirror1 is None

    @property
    def d_min(self) -> float:
        return min(self.d1, self.d2)

    def shifted(self, delta: float) -> "CavityConfig":
        """Both distances reduced by ``delta`` (used to place a slab's faces)."""
        d1 = self.d1 if self.mirror1 is None else self.d1 - delta
        return replace(self, d1=d1, d2=self.d2 - delta)

    def frequencies(self):
        out = self.medium.frequencies() + self.mirror2.frequencies()
        if self.mirror1 is not None:
            out += self.mirror1.frequencies()
        return out


@dataclass(frozen=True)
class SlabConfig:
    """Slab of ``slab_medium`` with optional embedded atoms at ``density``."""

    slab_medium: Medium
    d_s: float
    dopant: AtomSpecies | None = None
    density: float = 0.0

    def __post_init__(self):
        if not (float(self.d_s) > 0) or math.isinf(float(self.d_s)):
            raise DomainError(f"slab thickness must be finite and > 0, got {self.d_s!r}")
        if not float(self.density) >= 0:
            raise DomainError(f"number density must be >= 0, got {self.density!r}")
        object.__setattr__(self, "d_s", float(self.d_s))
        object.__setattr__(self, "density", float(self.density))

    @property
    def effective_medium(self) -> Medium:
        if self.dopant is None or self.density == 0.0:
            return self.slab_medium
        return self.slab_medium.doped(self.dopant, self.density)

    def with_thickness(self, d_s: float) -> "SlabConfig":
        return replace(self, d_s=d_s)


@dataclass(frozen=True)
class MediumAtom:
    """Constituent atom of a dilute cavity medium with number density ``density``."""

    species: AtomSpecies
    density: float

    def __post_init__(self):
        if not float(self.density) >= 0:
            raise DomainError(f"number density must be >= 0, got {self.density!r}")
        object.__setattr__(self, "density", float(self.density))

    def swapped(self) -> "MediumAtom":
        return MediumAtom(self.species.swapped(), self.density)


@dataclass(frozen=True)
class ForceResult:
    """Force split into medium-screened and medium-assisted parts per polarization.

    Natural units: per-atom forces in ``hbar omega_ref**2 / c``, slab forces
    per unit area in ``hbar omega_ref**4 / c**3``.
    """

    screened_tm: float = 0.0
    screened_te: float = 0.0
    assisted_tm: float = 0.0
    assisted_te: float = 0.0
    error_estimate: float = 0.0
    converged: bool = True
    evaluations: int = 0

    @property
    def screened(self) -> float:
        return self.screened_tm + self.screened_te

    @property
    def assisted(self) -> float:
        return self.assisted_tm + self.assisted_te

    @property
    def total(self) -> float:
        return self.screened + self.assisted

    @property
    def tm(self) -> float:
        return self.screened_tm + self.assisted_tm

    @property
    def te(self) -> float:
        return self.screened_te + self.assisted_te

    def scaled(self, factor: float) -> "ForceResult":
        return replace(
            self,
            screened_tm=self.screened_tm * factor,
            screened_te=self.screened_te * factor,
            assisted_tm=self.assisted_tm * factor,
            assisted_te=self.assisted_te * factor,
            error_estimate=self.error_estimate * abs(factor),
        )

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(total=self.total, screened=self.screened, assisted=self.assisted)
        return d
