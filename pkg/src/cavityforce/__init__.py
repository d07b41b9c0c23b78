"""Dispersion forces on slabs and atoms in planar magnetodielectric cavities.

Natural units throughout: hbar = c = 1 and a reference frequency
``omega_ref``. Lengths are in ``c / omega_ref``, polarizabilities in
``(c / omega_ref)**3``; per-atom forces come out in ``hbar omega_ref**2 / c``
and forces per unit area in ``hbar omega_ref**4 / c**3``.
"""
from ._kernels import BACKEND
from .dispersion import (
    VACUUM,
    AtomSpecies,
    Constant,
    Doped,
    Drude,
    DrudeLorentz,
    Medium,
    Oscillator,
    Plasma,
    PolarizabilityModel,
    ResponseModel,
    eval_polarizability,
    eval_response,
    refractive_index_sq,
)
from .errors import (
    CavityForceError,
    ConfigurationError,
    ConvergenceDiagnostic,
    DegenerateInputError,
    DomainError,
    QuadratureError,
    SingularityError,
    UVDivergenceError,
)
from .forces import (
    CavityConfig,
    EmbeddedPair,
    ForceResult,
    Formulation,
    MediumAtom,
    MediumEmbeddedPair,
    MirrorKind,
    Regime,
    SlabConfig,
    atom_atom_forces,
    atom_force,
    atom_force_large,
    atom_force_short,
    cavity_response,
    ideal_mirror_closed_form,
    medium_atom_asymptotics,
    medium_atom_force,
    medium_layer_force,
    slab_force,
    thin_slab_decomposition_check,
)
from .quadrature import IntegralResult, QuadratureSpec, integrate_double, integrate_half_line
from .stratified import (
    TE,
    TM,
    IdealConducting,
    IdealPermeable,
    Layer,
    Mirror,
    NonRetarded,
    Polarization,
    Retarded,
    Stack,
    StaticP,
    interface_reflection,
    mirror_reflection,
    perpendicular_wavevector,
    slab_coefficients,
)

__version__ = "0.1.0"
