"""Consistency check between the slab force and the embedded-atom force.

To first order in its thickness a dilute doped slab feels the force on the
host layer plus ``N d_s`` times the force on one embedded atom. The check
computes the slab force for a halving ladder of thicknesses and
Richardson-extrapolates ``(f - f_M) / (N d_s)`` to zero thickness.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ..errors import ConvergenceDiagnostic, DomainError
from ..quadrature import QuadratureSpec
from .cavity import atom_force, medium_layer_force, slab_force
from .types import CavityConfig, Formulation, SlabConfig

__all__ = ["ThinSlabReport", "thin_slab_decomposition_check"]


@dataclass(frozen=True)
class ThinSlabReport:
    """Outcome of :func:`thin_slab_decomposition_check`.

    ``per_atom`` holds ``(f - f_M) / (N d_s)`` for each thickness, or
    ``(f - f_M) / d_s`` without dopant; ``reference`` is the embedded-atom
    force (zero without dopant).
    """

    thicknesses: tuple[float, ...]
    f_numeric: tuple[float, ...]
    f_medium: tuple[float, ...]
    f_M_plus_Nds_fa: tuple[float, ...]
    per_atom: tuple[float, ...]
    richardson: tuple[float, ...]
    extrapolated: float
    reference: float
    extrapolated_discrepancy: float
    monotone: bool
    converged: bool

    @property
    def relative_discrepancy(self) -> float:
        if self.reference == 0.0:
            return math.inf if self.extrapolated_discrepancy else 0.0
        return abs(self.extrapolated_discrepancy / self.reference)


def thin_slab_decomposition_check(
    cavity: CavityConfig,
    slab: SlabConfig,
    spec: QuadratureSpec | None = None,
    *,
    levels: int = 3,
    ratio: float = 2.0,
) -> ThinSlabReport:
    """Compare thin-slab forces with the layer-plus-atoms decomposition.

    Parameters
    ----------
    cavity : CavityConfig
        ``d1`` and ``d2`` locate the slab centre (the atom position).
    slab : SlabConfig
        ``d_s`` is the thickest member of the ladder; the others are
        ``d_s / ratio**j``. The slab medium should equal the cavity medium.
    levels, ratio
        Ladder length and thickness ratio.

    Returns
    -------
    ThinSlabReport
        A ``ConvergenceDiagnostic`` warning is issued when the ladder values
        do not approach the limit monotonically.
    """
    spec = spec or QuadratureSpec()
    if levels < 2:
        raise DomainError("need at least two thicknesses")
    if not ratio > 1:
        raise DomainError("ladder ratio must be > 1")
    h0 = slab.d_s
    if not h0 / 2 < cavity.d_min:
        raise DomainError("slab must lie strictly inside the cavity")
    n = slab.density if slab.dopant is not None else 0.0
    hs = tuple(h0 / ratio**j for j in range(levels))
    f_num, f_med, g = [], [], []
    ok = True
    for h in hs:
        f = slab_force(cavity.shifted(h / 2.0), slab.with_thickness(h), spec)
        fm = medium_layer_force(cavity, h, spec)
        ok = ok and f.converged and fm.converged
        f_num.append(f.total)
        f_med.append(fm.total)
        g.append((f.total - fm.total) / (n * h if n > 0 else h))

    if n > 0:
        ref = atom_force(cavity, slab.dopant, Formulation.LORENTZ, spec)
        ok = ok and ref.converged
        fa = ref.total
    else:
        fa = 0.0
    # first-order elimination: error in g is linear in h
    rich = tuple((ratio * g[j + 1] - g[j]) / (ratio - 1.0) for j in range(levels - 1))
    extrap = rich[-1]

    diffs = [g[j + 1] - g[j] for j in range(levels - 1)]
    scale = max(abs(x) for x in g) or 1.0
    noise = 100.0 * spec.rel_tol * scale
    big = [d for d in diffs if abs(d) > noise]
    monotone = all(d > 0 for d in big) or all(d < 0 for d in big)
    monotone = monotone and all(abs(big[j + 1]) <= abs(big[j]) for j in range(len(big) - 1))
    if not monotone:
        warnings.warn(
            f"thin-slab ladder is not monotone: {g!r}", ConvergenceDiagnostic, stacklevel=2
        )
    return ThinSlabReport(
        thicknesses=hs,
        f_numeric=tuple(f_num),
        f_medium=tuple(f_med),
        f_M_plus_Nds_fa=tuple(fm + n * h * fa for fm, h in zip(f_med, hs)),
        per_atom=tuple(g),
        richardson=rich,
        extrapolated=extrap,
        reference=fa,
        extrapolated_discrepancy=extrap - fa,
        monotone=monotone,
        converged=ok,
    )
