"""Scenario files: schema, validation and resolution into force calculations.

A scenario is a YAML (or JSON) document with named catalogs of responses,
media, atoms and mirrors, a scenario block naming the calculation, a
distance sweep and optional quadrature settings. All numbers are in natural
units (lengths in ``c / omega_ref``, frequencies in ``omega_ref``).
"""
from __future__ import annotations

import copy
import math
import re
from dataclasses import dataclass
from typing import Any

import jsonschema
import numpy as np
import yaml

from .dispersion import (
    VACUUM,
    AtomSpecies,
    Constant,
    Drude,
    DrudeLorentz,
    Medium,
    Oscillator,
    Plasma,
    PolarizabilityModel,
    ResponseModel,
)
from .errors import CavityForceError, ConfigurationError
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
    check_dilute,
    ideal_mirror_parts,
    medium_atom_asymptotics,
    medium_atom_force,
    slab_force,
)
from .quadrature import QuadratureSpec
from .stratified import IdealConducting, IdealPermeable, Layer, Mirror, Stack

__all__ = ["SCHEMA", "ConfigError", "ScenarioConfig", "parse_config", "load_config_text"]

SCENARIOS = ("slab-force", "atom-force", "medium-atom-force", "atom-atom", "asymptotics")
BUILTIN_MEDIA = {"vacuum": VACUUM}
BUILTIN_MIRRORS = {"ideal-conducting": IdealConducting(), "ideal-permeable": IdealPermeable()}

_pos = {"type": "number", "exclusiveMinimum": 0}
_name = {"type": "string", "minLength": 1}

_response = {
    "oneOf": [
        {"type": "number", "minimum": 1},
        _name,
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["model"],
            "properties": {
                "model": {"enum": ["constant", "plasma", "drude", "drude-lorentz"]},
                "value": {"type": "number", "minimum": 1},
                "omega_p": {"type": "number", "minimum": 0},
                "gamma": {"type": "number", "minimum": 0},
                "oscillators": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["strength", "omega_0"],
                        "properties": {
                            "strength": {"type": "number", "minimum": 0},
                            "omega_0": {"type": "number", "minimum": 0},
                            "gamma": {"type": "number", "minimum": 0},
                        },
                    },
                },
            },
        },
    ]
}

_polarizability = {
    "type": "array",
    "items": {
        "type": "object",
        "additionalProperties": False,
        "required": ["alpha0", "omega0"],
        "properties": {"alpha0": {"type": "number", "minimum": 0}, "omega0": _pos},
    },
}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "cavityforce scenario",
    "type": "object",
    "additionalProperties": False,
    "required": ["scenario", "geometry"],
    "properties": {
        "units": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "omega_ref": {**_pos, "description": "reference frequency in rad/s"},
                "output": {"enum": ["natural", "si"]},
            },
        },
        "responses": {"type": "object", "additionalProperties": _response},
        "media": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "epsilon": _response,
                    "mu": _response,
                    "dopants": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["atom", "density"],
                            "properties": {"atom": _name, "density": {"type": "number", "minimum": 0}},
                        },
                    },
                },
            },
        },
        "atoms": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "properties": {"alpha_e": _polarizability, "alpha_m": _polarizability},
            },
        },
        "mirrors": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "required": ["kind"],
                "properties": {
                    "kind": {"enum": ["ideal-conducting", "ideal-permeable", "stack"]},
                    "substrate": _name,
                    "layers": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["medium", "thickness"],
                            "properties": {"medium": _name, "thickness": _pos},
                        },
                    },
                },
            },
        },
        "scenario": {
            "type": "object",
            "additionalProperties": False,
            "required": ["type"],
            "properties": {
                "type": {"enum": list(SCENARIOS)},
                "medium": _name,
                "mirror1": {"oneOf": [_name, {"type": "null"}]},
                "mirror2": _name,
                "atom": _name,
                "formulation": {"enum": ["lorentz", "minkowski"]},
                "slab": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["medium", "thickness"],
                    "properties": {
                        "medium": _name,
                        "thickness": _pos,
                        "dopant": {"oneOf": [_name, {"type": "null"}]},
                        "density": {"type": "number", "minimum": 0},
                    },
                },
                "medium_atom": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["atom", "density"],
                    "properties": {"atom": _name, "density": {"type": "number", "minimum": 0}},
                },
                "pair": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "b"],
                    "properties": {
                        "kind": {"enum": ["embedded", "medium-embedded"]},
                        "a": _name,
                        "m": _name,
                        "b": _name,
                        "host": _name,
                    },
                },
                "target": {"enum": ["atom", "medium-atom"]},
                "regime": {"enum": ["short", "large", "closed-form"]},
            },
        },
        "geometry": {
            "type": "object",
            "additionalProperties": False,
            "required": ["sweep"],
            "properties": {
                "sweep": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["start"],
                    "properties": {
                        "start": _pos,
                        "stop": _pos,
                        "points": {"type": "integer", "minimum": 1},
                        "spacing": {"enum": ["log", "linear"]},
                    },
                },
                "d1": _pos,
                "width": _pos,
            },
        },
        "quadrature": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "rel_tol": {"type": "number", "minimum": 0},
                "abs_tol": {"type": "number", "minimum": 0},
                "max_evaluations": {"type": "integer", "minimum": 1},
            },
        },
    },
}

DEFAULTS = {
    "units": {"omega_ref": 1.0e15, "output": "natural"},
    "quadrature": {"rel_tol": 1e-8, "abs_tol": 0.0, "max_evaluations": 200000},
}


class ConfigError(ConfigurationError):
    """Invalid scenario document; ``path`` locates the offending entry."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


class _Loader(yaml.SafeLoader):
    """Safe loader that also reads ``1e15`` and ``1.0e15`` as floats (YAML 1.2 style)."""


_Loader.yaml_implicit_resolvers = {k: list(v) for k, v in yaml.SafeLoader.yaml_implicit_resolvers.items()}
for _ch in "0123456789-+.":
    _Loader.yaml_implicit_resolvers[_ch] = [
        r for r in _Loader.yaml_implicit_resolvers.get(_ch, []) if r[0] != "tag:yaml.org,2002:float"
    ]
_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(
        r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
        |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
        |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
        |[-+]?\.(?:inf|Inf|INF)
        |\.(?:nan|NaN|NAN))$""",
        re.X,
    ),
    list("-+0123456789."),
)


def load_config_text(text: str) -> dict:
    """Parse a YAML/JSON document, or the config echoed in a CSV result file."""
    # a CSV result carries the resolved config in its comment header; a YAML
    # file may also open with comments, so only the marker line decides
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        if line.startswith("# config: "):
            text = line[len("# config: "):]
            break
    try:
        doc = yaml.load(text, Loader=_Loader)  # noqa: S506 - safe loader subclass
    except yaml.YAMLError as exc:
        raise ConfigError("", f"not a valid YAML document: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("", "top level must be a mapping")
    return doc


# ---------------------------------------------------------------- resolution


class _Resolver:
    def __init__(self, doc: dict):
        self.doc = doc
        self.responses = doc.get("responses", {})
        self.media_doc = doc.get("media", {})
        self.atoms_doc = doc.get("atoms", {})
        self.mirrors_doc = doc.get("mirrors", {})
        for name in self.media_doc:
            if name in BUILTIN_MEDIA:
                raise ConfigError(f"media.{name}", "name is reserved for a built-in medium")
        for name in self.mirrors_doc:
            if name in BUILTIN_MIRRORS:
                raise ConfigError(f"mirrors.{name}", "name is reserved for a built-in mirror")
        self._media: dict[str, Medium] = {}
        self._busy: set[str] = set()

    def response(self, ref, path) -> ResponseModel:
        if isinstance(ref, str):
            if ref not in self.responses:
                raise ConfigError(path, f"undefined response {ref!r}")
            if isinstance(self.responses[ref], str):
                raise ConfigError(f"responses.{ref}", "a response must be a number or a model")
            return self.response(self.responses[ref], f"responses.{ref}")
        if isinstance(ref, (int, float)):
            return Constant(float(ref))
        model = ref["model"]
        need = {
            "constant": ("value",),
            "plasma": ("omega_p",),
            "drude": ("omega_p", "gamma"),
            "drude-lorentz": ("oscillators",),
        }[model]
        for key in need:
            if key not in ref:
                raise ConfigError(f"{path}.{key}", f"required for model {model!r}")
        extra = set(ref) - set(need) - {"model"}
        if extra:
            raise ConfigError(f"{path}.{sorted(extra)[0]}", f"not a parameter of model {model!r}")
        if model == "constant":
            return Constant(ref["value"])
        if model == "plasma":
            return Plasma(ref["omega_p"])
        if model == "drude":
            return Drude(ref["omega_p"], ref["gamma"])
        return DrudeLorentz(
            tuple(Oscillator(o["strength"], o["omega_0"], o.get("gamma", 0.0)) for o in ref["oscillators"])
        )

    def atom(self, name, path) -> AtomSpecies:
        if name not in self.atoms_doc:
            raise ConfigError(path, f"undefined atom {name!r}")
        a = self.atoms_doc[name]

        def pol(key):
            return PolarizabilityModel(tuple((t["alpha0"], t["omega0"]) for t in a.get(key, [])))

        return AtomSpecies(pol("alpha_e"), pol("alpha_m"))

    def medium(self, name, path) -> Medium:
        if name in BUILTIN_MEDIA:
            return BUILTIN_MEDIA[name]
        if name in self._media:
            return self._media[name]
        if name not in self.media_doc:
            raise ConfigError(path, f"undefined medium {name!r}")
        m = self.media_doc[name]
        base = f"media.{name}"
        med = Medium(
            self.response(m.get("epsilon", 1.0), f"{base}.epsilon"),
            self.response(m.get("mu", 1.0), f"{base}.mu"),
        )
        for i, d in enumerate(m.get("dopants", [])):
            med = med.doped(self.atom(d["atom"], f"{base}.dopants[{i}].atom"), d["density"])
        self._media[name] = med
        return med

    def mirror(self, name, path) -> Mirror:
        if name in BUILTIN_MIRRORS:
            return BUILTIN_MIRRORS[name]
        if name not in self.mirrors_doc:
            raise ConfigError(path, f"undefined mirror {name!r}")
        m = self.mirrors_doc[name]
        base = f"mirrors.{name}"
        if m["kind"] == "ideal-conducting":
            return IdealConducting()
        if m["kind"] == "ideal-permeable":
            return IdealPermeable()
        if "substrate" not in m:
            raise ConfigError(f"{base}.substrate", "required for a stack mirror")
        layers = tuple(
            Layer(self.medium(l["medium"], f"{base}.layers[{i}].medium"), l["thickness"])
            for i, l in enumerate(m.get("layers", []))
        )
        return Stack(self.medium(m["substrate"], f"{base}.substrate"), layers)


def _require(block: dict, key: str, path: str):
    if key not in block or block[key] is None:
        raise ConfigError(f"{path}.{key}", "required for this scenario")
    return block[key]


def _forbid(block: dict, keys, path: str, why: str):
    for k in keys:
        if k in block:
            raise ConfigError(f"{path}.{k}", why)


# -------------------------------------------------------------- sweep tasks


@dataclass(frozen=True)
class AtomForceTask:
    medium: Medium
    mirror1: Mirror | None
    mirror2: Mirror
    atom: AtomSpecies
    formulation: Formulation
    d1: float | None
    width: float | None
    spec: QuadratureSpec

    def cavity(self, x: float) -> CavityConfig:
        d1 = self.d1 if self.width is None else self.width - x
        return CavityConfig(self.medium, self.mirror1, self.mirror2, d1 if self.mirror1 else math.inf, x)

    def __call__(self, x: float) -> ForceResult:
        return atom_force(self.cavity(x), self.atom, self.formulation, self.spec)


@dataclass(frozen=True)
class MediumAtomTask(AtomForceTask):
    medium_atom: MediumAtom | None = None

    def __call__(self, x: float) -> ForceResult:
        return medium_atom_force(self.cavity(x), self.medium_atom, self.spec)


@dataclass(frozen=True)
class SlabForceTask:
    medium: Medium
    mirror1: Mirror | None
    mirror2: Mirror
    slab: SlabConfig
    d1: float | None
    width: float | None
    spec: QuadratureSpec

    def cavity(self, x: float) -> CavityConfig:
        d1 = self.d1 if self.width is None else self.width - x - self.slab.d_s
        return CavityConfig(self.medium, self.mirror1, self.mirror2, d1 if self.mirror1 else math.inf, x)

    def __call__(self, x: float) -> ForceResult:
        return slab_force(self.cavity(x), self.slab, self.spec)


@dataclass(frozen=True)
class PairTask:
    pair: Any
    spec: QuadratureSpec

    def __call__(self, x: float) -> ForceResult:
        return atom_atom_forces(self.pair, x, self.spec)


@dataclass(frozen=True)
class AsymptoticTask:
    target: str
    regime: str
    mirror: Mirror
    medium: Medium
    atom: AtomSpecies | None
    medium_atom: MediumAtom | None
    formulation: Formulation
    spec: QuadratureSpec

    def __call__(self, x: float) -> ForceResult:
        if self.target == "medium-atom":
            return medium_atom_asymptotics(self.mirror, self.medium_atom, x, Regime(self.regime), self.spec)
        if self.regime == "short":
            return atom_force_short(self.mirror, self.medium, self.atom, x, self.spec, self.formulation)
        if self.regime == "large":
            return atom_force_large(self.mirror, self.medium, self.atom, x, self.formulation, self.spec)
        kind = MirrorKind.CONDUCTING if isinstance(self.mirror, IdealConducting) else MirrorKind.PERMEABLE
        return ideal_mirror_parts(self.atom, self.medium, x, self.formulation, kind)


@dataclass(frozen=True)
class ScenarioConfig:
    """A validated, fully resolved scenario.

    ``resolved`` is the input document with every default filled in; it is
    echoed in result files and reproduces the run exactly.
    """

    resolved: dict
    kind: str
    variable: str
    force_unit: str  # "atom" (per atom) or "area" (per unit area)
    distances: tuple[float, ...]
    task: Any
    omega_ref: float
    output: str


def _sweep(geom: dict) -> tuple[float, ...]:
    sw = geom["sweep"]
    start, stop, points = sw["start"], sw["stop"], sw["points"]
    if stop < start:
        raise ConfigError("geometry.sweep.stop", f"stop ({stop!r}) is below start ({start!r})")
    if points == 1:
        if stop != start:
            raise ConfigError("geometry.sweep.points", "a sweep with stop > start needs >= 2 points")
        return (float(start),)
    if sw["spacing"] == "log":
        xs = np.geomspace(start, stop, points)
    else:
        xs = np.linspace(start, stop, points)
    return tuple(float(x) for x in xs)


def parse_config(text_or_doc) -> ScenarioConfig:
    """Validate a scenario document and resolve it into a runnable sweep.

    Raises
    ------
    ConfigError
        Schema violations, dangling names, inconsistent geometry; the message
        starts with the path of the offending entry.
    """
    doc = load_config_text(text_or_doc) if isinstance(text_or_doc, str) else copy.deepcopy(text_or_doc)
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        e = errors[0]
        raise ConfigError(_path(e.absolute_path) or "(top level)", e.message)

    # defaults
    for key, block in DEFAULTS.items():
        doc.setdefault(key, {})
        for k, v in block.items():
            doc[key].setdefault(k, v)
    for key in ("responses", "media", "atoms", "mirrors"):
        doc.setdefault(key, {})
    sc = doc["scenario"]
    kind = sc["type"]
    sw = doc["geometry"]["sweep"]
    sw.setdefault("stop", sw["start"])
    sw.setdefault("points", 1)
    sw.setdefault("spacing", "log")
    if kind != "atom-atom":
        sc.setdefault("medium", "vacuum")
    if kind in ("atom-force", "asymptotics"):
        sc.setdefault("formulation", "lorentz")

    try:
        return _build(doc)
    except ConfigError:
        raise
    except CavityForceError as exc:  # model parameter out of range
        raise ConfigError("", str(exc)) from None


def _build(doc: dict) -> ScenarioConfig:
    res = _Resolver(doc)
    # every catalog entry must resolve, used or not
    for name in doc["responses"]:
        res.response(name, f"responses.{name}")
    for name in doc["atoms"]:
        res.atom(name, f"atoms.{name}")
    for name in doc["media"]:
        res.medium(name, f"media.{name}")
    for name in doc["mirrors"]:
        res.mirror(name, f"mirrors.{name}")

    sc = doc["scenario"]
    geom = doc["geometry"]
    kind = sc["type"]
    q = doc["quadrature"]
    try:
        spec = QuadratureSpec(q["rel_tol"], q["abs_tol"], q["max_evaluations"])
    except CavityForceError as exc:
        raise ConfigError("quadrature", str(exc)) from None
    xs = _sweep(geom)
    P = "scenario"
    force_unit = "atom"
    variable = "z"

    def cavity_parts():
        medium = res.medium(sc["medium"], f"{P}.medium")
        m1 = sc.get("mirror1")
        mirror1 = None if m1 is None else res.mirror(m1, f"{P}.mirror1")
        mirror2 = res.mirror(_require(sc, "mirror2", P), f"{P}.mirror2")
        if mirror1 is None:
            _forbid(geom, ("d1", "width"), "geometry", "needs scenario.mirror1")
            return medium, None, mirror2, None, None
        if ("d1" in geom) == ("width" in geom):
            raise ConfigError("geometry", "give exactly one of d1 and width when mirror1 is set")
        return medium, mirror1, mirror2, geom.get("d1"), geom.get("width")

    form = Formulation(sc.get("formulation", "lorentz"))
    if kind == "atom-force":
        _forbid(sc, ("slab", "medium_atom", "pair", "target", "regime"), P, "not used by atom-force")
        medium, m1, m2, d1, width = cavity_parts()
        atom = res.atom(_require(sc, "atom", P), f"{P}.atom")
        task = AtomForceTask(medium, m1, m2, atom, form, d1, width, spec)
        variable = "d2" if m1 else "z"
    elif kind == "medium-atom-force":
        _forbid(sc, ("slab", "atom", "pair", "target", "regime", "formulation"), P, "not used by medium-atom-force")
        medium, m1, m2, d1, width = cavity_parts()
        ma_doc = _require(sc, "medium_atom", P)
        ma = MediumAtom(res.atom(ma_doc["atom"], f"{P}.medium_atom.atom"), ma_doc["density"])
        task = MediumAtomTask(medium, m1, m2, None, form, d1, width, spec, ma)
        probe = task.cavity(xs[0])
        try:
            check_dilute(probe, ma)
        except ConfigurationError as exc:
            raise ConfigError(f"{P}.medium_atom", str(exc)) from None
        variable = "d2" if m1 else "z"
    elif kind == "slab-force":
        _forbid(sc, ("atom", "medium_atom", "pair", "target", "regime", "formulation"), P, "not used by slab-force")
        medium, m1, m2, d1, width = cavity_parts()
        sd = _require(sc, "slab", P)
        dop = sd.get("dopant")
        slab = SlabConfig(
            res.medium(sd["medium"], f"{P}.slab.medium"),
            sd["thickness"],
            None if dop is None else res.atom(dop, f"{P}.slab.dopant"),
            sd.get("density", 0.0),
        )
        task = SlabForceTask(medium, m1, m2, slab, d1, width, spec)
        force_unit = "area"
        variable = "d2"
    elif kind == "atom-atom":
        _forbid(sc, ("slab", "medium_atom", "atom", "target", "regime", "formulation", "mirror1", "mirror2", "medium"),
                P, "not used by atom-atom")
        pd = _require(sc, "pair", P)
        b = res.atom(pd["b"], f"{P}.pair.b")
        if pd["kind"] == "embedded":
            _forbid(pd, ("m",), f"{P}.pair", "embedded pairs take a, b and host")
            a = res.atom(_require(pd, "a", f"{P}.pair"), f"{P}.pair.a")
            host = res.medium(pd.get("host", "vacuum"), f"{P}.pair.host")
            pd.setdefault("host", "vacuum")
            pair = EmbeddedPair(a, b, host)
        else:
            _forbid(pd, ("a", "host"), f"{P}.pair", "medium-embedded pairs take m and b")
            pair = MediumEmbeddedPair(res.atom(_require(pd, "m", f"{P}.pair"), f"{P}.pair.m"), b)
        _forbid(geom, ("d1", "width"), "geometry", "not used by atom-atom")
        task = PairTask(pair, spec)
        variable = "r"
    else:
        _forbid(sc, ("slab", "pair", "mirror1"), P, "asymptotic forms are for a single mirror")
        _forbid(geom, ("d1", "width"), "geometry", "asymptotic forms are for a single mirror")
        target = sc.setdefault("target", "atom")
        regime = _require(sc, "regime", P)
        mirror = res.mirror(_require(sc, "mirror2", P), f"{P}.mirror2")
        medium = res.medium(sc["medium"], f"{P}.medium")
        atom = ma = None
        if target == "atom":
            _forbid(sc, ("medium_atom",), P, "target atom takes scenario.atom")
            atom = res.atom(_require(sc, "atom", P), f"{P}.atom")
            if regime == "closed-form" and not isinstance(mirror, (IdealConducting, IdealPermeable)):
                raise ConfigError(f"{P}.mirror2", "the closed form needs an ideal mirror")
        else:
            _forbid(sc, ("atom", "formulation"), P, "target medium-atom takes scenario.medium_atom")
            if regime == "closed-form":
                raise ConfigError(f"{P}.regime", "medium-atom asymptotics are short or large")
            if sc["medium"] != "vacuum":
                raise ConfigError(f"{P}.medium", "medium-atom asymptotics assume a dilute (vacuum-like) cavity")
            md = _require(sc, "medium_atom", P)
            ma = MediumAtom(res.atom(md["atom"], f"{P}.medium_atom.atom"), md["density"])
        task = AsymptoticTask(target, regime, mirror, medium, atom, ma, form, spec)

    # geometry must be valid at every sweep point before anything runs
    if hasattr(task, "cavity"):
        for i, x in enumerate(xs):
            try:
                task.cavity(x)
            except CavityForceError as exc:
                raise ConfigError(f"geometry.sweep (point {i}, {variable} = {x!r})", str(exc)) from None

    units = doc["units"]
    return ScenarioConfig(
        resolved=doc,
        kind=kind,
        variable=variable,
        force_unit=force_unit,
        distances=xs,
        task=task,
        omega_ref=float(units["omega_ref"]),
        output=units["output"],
    )
