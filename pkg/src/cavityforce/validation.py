"""Built-in validation checks against closed forms and internal consistency.

Each check returns a :class:`CheckResult`; ``run_checks`` never raises for
a failing check. The registry ``CHECKS`` maps names to
``(description, function)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dispersion import (
    VACUUM,
    AtomSpecies,
    Constant,
    Drude,
    Medium,
    Plasma,
    PolarizabilityModel,
)
from .forces import (
    CavityConfig,
    EmbeddedPair,
    Formulation,
    MediumAtom,
    MirrorKind,
    Regime,
    SlabConfig,
    atom_atom_forces,
    atom_force,
    atom_force_large,
    atom_force_short,
    ideal_mirror_closed_form,
    medium_atom_asymptotics,
    medium_atom_force,
    slab_integrand_terms,
    thin_slab_decomposition_check,
)
from .quadrature import QuadratureSpec, integrate_double, integrate_half_line
from .stratified import TE, TM, IdealConducting, IdealPermeable, Layer, Stack, slab_coefficients

__all__ = ["CheckResult", "CHECKS", "run_checks", "format_report"]

PI = math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    target: str
    computed: float
    tolerance: float
    passed: bool
    detail: str = ""


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_closed_form() -> CheckResult:
    """Static large-distance quadrature against the ideal-wall closed forms."""
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(20):
        e0, m0 = rng.uniform(1.0, 6.0, 2)
        ae, am = rng.uniform(0.0, 2.0, 2)
        med = Medium(Constant(e0), Constant(m0))
        atom = AtomSpecies(PolarizabilityModel.single(ae, 1.0), PolarizabilityModel.single(am, 2.0))
        for kind, mirror in ((MirrorKind.CONDUCTING, IdealConducting()), (MirrorKind.PERMEABLE, IdealPermeable())):
            for form in Formulation:
                num = atom_force_large(mirror, med, atom, 1.7, form).total
                ref = ideal_mirror_closed_form(atom, med, 1.7, form, kind)
                worst = max(worst, _rel(num, ref))
    tol = 1e-8
    return CheckResult("closed-form", "large-distance quadrature = closed form (80 cases)", worst, tol, worst < tol,
                       "max relative error")


def check_casimir_polder() -> CheckResult:
    """Full force at z omega_0 / c >= 50 against 3 alpha / (2 pi z**5)."""
    worst = 0.0
    signs_ok = True
    for z in (50.0, 100.0):
        half = CavityConfig.half_space(VACUUM, IdealConducting(), z)
        ref = 3.0 / (2.0 * PI * z**5)
        fe = atom_force(half, AtomSpecies.electric(1.0, 1.0)).total
        fm = atom_force(half, AtomSpecies.magnetic(1.0, 1.0)).total
        worst = max(worst, _rel(fe, ref), _rel(fm, -ref))
        signs_ok = signs_ok and fe > 0 > fm
    tol = 0.01
    return CheckResult("casimir-polder", "+-3 alpha0/(2 pi z^5) at z w0 = 50, 100", worst, tol,
                       worst < tol and signs_ok, "max relative deviation; magnetic sign reversed" if signs_ok else "sign")


def check_van_der_waals() -> CheckResult:
    """Full force at z omega_0 / c <= 1e-2 against the nonretarded limit."""
    worst = 0.0
    atom = AtomSpecies.electric(1.0, 1.0)
    for z in (1e-3, 1e-2):
        full = atom_force(CavityConfig.half_space(VACUUM, IdealConducting(), z), atom).total
        short = atom_force_short(IdealConducting(), VACUUM, atom, z).total
        analytic = 3.0 / (8.0 * z**4)
        worst = max(worst, _rel(full, short), _rel(full, analytic))
    tol = 0.01
    return CheckResult("van-der-waals", "3 alpha0 w0/(8 z^4) at z w0 = 1e-3, 1e-2", worst, tol, worst < tol,
                       "max relative deviation")


def check_formulations() -> CheckResult:
    """Lorentz and Minkowski forces coincide in an empty cavity."""
    m1 = Stack(Medium(Drude(2.0, 0.05)))
    m2 = Stack(Medium(Plasma(1.0), Constant(1.5)))
    atom = AtomSpecies(PolarizabilityModel.single(0.8, 1.0), PolarizabilityModel.single(0.3, 0.5))
    worst = 0.0
    for z in np.geomspace(1e-2, 1e2, 20):
        cav = CavityConfig(VACUUM, m1, m2, 1.5 * z, float(z))
        lo = atom_force(cav, atom, Formulation.LORENTZ).total
        mi = atom_force(cav, atom, Formulation.MINKOWSKI).total
        worst = max(worst, _rel(lo, mi))
    tol = 1e-10
    return CheckResult("formulations", "Lorentz = Minkowski for n = 1 (20 distances)", worst, tol, worst < tol,
                       "max relative difference")


def check_thin_slab() -> CheckResult:
    """Extrapolated thin doped slab force per atom against the atom force."""
    mirror = Stack(Medium(Plasma(1.0)))
    cav = CavityConfig(VACUUM, mirror, mirror, 1.4, 0.6)
    atom = AtomSpecies.electric(1.0, 1.0)
    density = 1e-5 / (4.0 * PI)
    rep = thin_slab_decomposition_check(cav, SlabConfig(VACUUM, 0.01, atom, density))
    tol = 0.005
    return CheckResult("thin-slab", "(f - f_M)/(N d_s) -> atom force", rep.relative_discrepancy, tol,
                       rep.relative_discrepancy < tol and rep.converged,
                       f"extrapolated {rep.extrapolated!r}, atom force {rep.reference!r}")


def check_london() -> CheckResult:
    """Atom-atom force between identical oscillators against the London law."""
    a0, w0, r = 0.9, 1.3, 1.7
    atom = AtomSpecies.electric(a0, w0)
    f = atom_atom_forces(EmbeddedPair(atom, atom), r).total
    ref = 4.5 * w0 * a0**2 / r**7
    screened = atom_atom_forces(EmbeddedPair(atom, atom, Medium(Constant(2.0))), r).total
    err = max(_rel(f, ref), _rel(screened / f, 0.125))
    tol = 1e-8
    return CheckResult("london", "(9/2) w0 alpha0^2 / r^7; 1/8 for eps = 2", err, tol, err < tol,
                       "max relative error")


def check_medium_atom() -> CheckResult:
    """Sum rule, large-distance value and short-distance power law."""
    e_atom = AtomSpecies(PolarizabilityModel.single(0.7, 1.0), PolarizabilityModel.single(0.2, 3.0))
    n_m = 1e-9
    # the dilute-consistency condition involves only alpha_e + alpha_m, so
    # one cavity medium serves both orderings
    dilute = Medium.dilute(e_atom, n_m)
    mirror = Stack(Medium(Drude(1.0, 0.1), Constant(1.2)))
    f1 = medium_atom_force(CavityConfig(dilute, mirror, mirror, 1.3, 0.4), MediumAtom(e_atom, n_m)).total
    f2 = medium_atom_force(CavityConfig(dilute, mirror, mirror, 1.3, 0.4), MediumAtom(e_atom.swapped(), n_m)).total
    swap_ok = f1 == f2

    a0 = 1.0
    ma = MediumAtom(AtomSpecies.electric(a0, 1.0), 0.0)
    z = 3.0
    ref = 3.0 * a0 / (4.0 * PI * z**5) * (2.0 / 3.0)
    large = medium_atom_asymptotics(IdealConducting(), ma, z, Regime.LARGE).total
    zf = 1e4
    ref_far = 3.0 * a0 / (4.0 * PI * zf**5) * (2.0 / 3.0)
    far = medium_atom_force(CavityConfig.half_space(VACUUM, IdealConducting(), zf), ma).total
    large_err = max(_rel(large, ref), _rel(far, ref_far))

    zs = np.geomspace(1e-4, 1e-2, 5)
    plasma = Stack(Medium(Plasma(1.0)))
    fs = [medium_atom_force(CavityConfig.half_space(VACUUM, plasma, float(x)), ma).total for x in zs]
    slope = float(np.polyfit(np.log(zs), np.log(fs), 1)[0])
    slope_err = abs(slope + 2.0)
    passed = swap_ok and large_err < 1e-6 and slope_err < 0.02
    detail = (f"swap bit-identical: {swap_ok}; large-distance rel. error {large_err:.3g} (tol 1e-6); "
              f"short-distance exponent {slope:.5f} (tol 0.02)")
    return CheckResult("medium-atom", "swap invariance; 2/3 law; z^-2", slope_err, 0.02, passed, detail)


def check_positivity() -> CheckResult:
    """Slab gain positivity and the sign of each assisted contribution."""
    rng = np.random.default_rng(7)
    bad_gain = 0
    for _ in range(10_000):
        ec, mc, es, ms = rng.uniform(1.0, 20.0, 4)
        xi, k = rng.uniform(0.0, 5.0), rng.uniform(0.01, 5.0)
        d_s = 10.0 ** rng.uniform(-4.0, 1.0)
        cav, sl = Medium(Constant(ec), Constant(mc)), Medium(Constant(es), Constant(ms))
        for q in (TM, TE):
            if not slab_coefficients(q, cav, sl, d_s, xi, k).one_plus_r_sq_minus_t_sq > 0:
                bad_gain += 1
    bad_sign = 0
    tested = 0
    for _ in range(500):
        ec, mc, es, ms, e1, m1, e2, m2 = rng.uniform(1.0, 10.0, 8)
        cav = Medium(Constant(ec), Constant(mc))
        mir1 = Stack(Medium(Constant(e1), Constant(m1)))
        mir2 = Stack(Medium(Drude(rng.uniform(0.1, 3.0), 0.1), Constant(m2)), (Layer(Medium(Constant(e2)), 0.3),))
        conf = CavityConfig(cav, mir1, mir2, rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0))
        slab = SlabConfig(Medium(Constant(es), Constant(ms)), rng.uniform(0.01, 1.0))
        xi, k = rng.uniform(0.01, 3.0), rng.uniform(0.0, 3.0)
        for q in (TM, TE):
            t = slab_integrand_terms(q, conf, slab, xi, k)
            # mirror 1 pushes towards mirror 2 with the opposite orientation
            for term, r in ((t.assisted_mirror1, -t.mirror1_reflection), (t.assisted_mirror2, t.mirror2_reflection)):
                if term != 0.0 and r != 0.0:
                    tested += 1
                    if np.sign(term) != np.sign(q.delta * r):
                        bad_sign += 1
    failures = bad_gain + bad_sign
    return CheckResult("positivity", "(1+r)^2 - t^2 > 0 (2e4 samples); assisted sign rule", float(failures), 0.0,
                       failures == 0, f"{bad_gain} gain violations; {bad_sign} of {tested} sign violations")


def check_quadrature() -> CheckResult:
    """Golden integrals and separable two-dimensional integrals."""
    spec = QuadratureSpec(rel_tol=1e-13)
    e1 = _rel(integrate_half_line(lambda p: p**-4.0, 1.0, spec).value, 1.0 / 3.0)
    e2 = _rel(integrate_half_line(lambda p: (2.0 * p * p - 1.0) * p**-4.0, 1.0, spec).value, 5.0 / 3.0)
    golden = max(e1, e2)
    s2 = QuadratureSpec(rel_tol=1e-10)
    two_d = integrate_double(lambda x, y: np.exp(-x - 2.0 * y) * x / (1.0 + y), s2).value
    fx = integrate_half_line(lambda x: x * np.exp(-x), 0.0, s2).value
    fy = integrate_half_line(lambda y: np.exp(-2.0 * y) / (1.0 + y), 0.0, s2).value
    sep = _rel(two_d, fx * fy)
    passed = golden < 1e-12 and sep < 1e-9
    return CheckResult("quadrature", "int p^-4 = 1/3, int (2p^2-1)p^-4 = 5/3; separable 2-D", golden, 1e-12, passed,
                       f"separable 2-D relative difference {sep:.3g} (tol 1e-9)")


DETERMINISM_CONFIG = """
atoms:
  atom: {alpha_e: [{alpha0: 1.0, omega0: 1.0}], alpha_m: [{alpha0: 0.2, omega0: 2.0}]}
media:
  metal: {epsilon: {model: drude, omega_p: 2.0, gamma: 0.1}}
mirrors:
  wall: {kind: stack, substrate: metal}
scenario: {type: atom-force, mirror1: wall, mirror2: wall, atom: atom}
geometry:
  sweep: {start: 0.1, stop: 2.0, points: 4, spacing: log}
  width: 3.0
"""


def check_determinism() -> CheckResult:
    """Two runs of the same scenario give byte-identical CSV."""
    from .cli import emit_table, run_sweep
    from .config import parse_config

    a = emit_table(run_sweep(parse_config(DETERMINISM_CONFIG)), "csv")
    b = emit_table(run_sweep(parse_config(DETERMINISM_CONFIG)), "csv")
    return CheckResult("determinism", "identical runs -> identical CSV", 0.0 if a == b else 1.0, 0.0, a == b,
                       f"{len(a)} bytes compared")


CHECKS: dict[str, tuple[str, Callable[[], CheckResult]]] = {
    "closed-form": ("ideal-mirror closed forms", check_closed_form),
    "casimir-polder": ("retarded limit near an ideal conductor", check_casimir_polder),
    "van-der-waals": ("nonretarded limit near an ideal conductor", check_van_der_waals),
    "formulations": ("formulation equality in vacuum", check_formulations),
    "thin-slab": ("thin doped slab versus embedded atom", check_thin_slab),
    "london": ("London force and medium screening", check_london),
    "medium-atom": ("medium-atom force properties", check_medium_atom),
    "positivity": ("slab gain positivity and assisted signs", check_positivity),
    "quadrature": ("quadrature golden values", check_quadrature),
    "determinism": ("bit-identical repeated runs", check_determinism),
}


def run_checks(names) -> list[CheckResult]:
    out = []
    for name in names:
        try:
            out.append(CHECKS[name][1]())
        except Exception as exc:  # noqa: BLE001 - reported, not thrown
            out.append(CheckResult(name, CHECKS[name][0], math.nan, math.nan, False, f"error: {exc!r}"))
    return out


def format_report(results, fmt: str = "human") -> str:
    if fmt == "csv":
        lines = ["name,target,computed,tolerance,passed,detail"]
        for r in results:
            detail = r.detail.replace('"', "'")
            lines.append(f'{r.name},"{r.target}",{r.computed!r},{r.tolerance!r},{str(r.passed).lower()},"{detail}"')
        return "\n".join(lines) + "\n"
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name}: {r.target}; computed {r.computed:.3g}, tolerance {r.tolerance:.3g}"
                     + (f" ({r.detail})" if r.detail else ""))
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
