"""Casimir and van der Waals forces on slabs and atoms in a planar cavity.

Sign convention: a positive force points from mirror 1 towards mirror 2. For
a semi-infinite cavity (no mirror 1) a positive force is attraction to the
mirror. Atom-atom forces are positive for attraction.
"""
from .asymptotics import (
    MirrorKind,
    Regime,
    atom_force_large,
    atom_force_short,
    ideal_mirror_closed_form,
    ideal_mirror_parts,
    medium_atom_asymptotics,
)
from .cavity import (
    DILUTE_TOLERANCE,
    SlabIntegrandTerms,
    atom_force,
    cavity_response,
    check_dilute,
    medium_atom_force,
    medium_layer_force,
    slab_force,
    slab_integrand_terms,
)
from .pairs import EmbeddedPair, MediumEmbeddedPair, atom_atom_forces
from .thin_slab import ThinSlabReport, thin_slab_decomposition_check
from .types import CavityConfig, ForceResult, Formulation, MediumAtom, SlabConfig

__all__ = [
    "CavityConfig",
    "SlabConfig",
    "Formulation",
    "ForceResult",
    "MediumAtom",
    "MirrorKind",
    "Regime",
    "cavity_response",
    "slab_force",
    "medium_layer_force",
    "atom_force",
    "medium_atom_force",
    "check_dilute",
    "DILUTE_TOLERANCE",
    "slab_integrand_terms",
    "SlabIntegrandTerms",
    "atom_force_short",
    "atom_force_large",
    "ideal_mirror_closed_form",
    "ideal_mirror_parts",
    "medium_atom_asymptotics",
    "EmbeddedPair",
    "MediumEmbeddedPair",
    "atom_atom_forces",
    "ThinSlabReport",
    "thin_slab_decomposition_check",
]
