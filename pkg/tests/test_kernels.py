import os
import subprocess
import sys

import pytest

from cavityforce import _kernels
from cavityforce.dispersion import VACUUM, AtomSpecies, Constant, Drude, Medium, Plasma, PolarizabilityModel
from cavityforce.forces import CavityConfig, SlabConfig, atom_force, slab_force
from cavityforce.stratified import Layer, Stack

pytestmark = pytest.mark.skipif(not _kernels.COMPILED_AVAILABLE, reason="compiled kernel not built")


def _cases():
    layered = Stack(Medium(Drude(2.0, 0.1)), (Layer(Medium(Constant(3.0), Constant(1.5)), 0.2),))
    cav = CavityConfig(Medium(Constant(1.4), Constant(1.1)), Stack(Medium(Plasma(1.0))), layered, 0.6, 0.3)
    atom = AtomSpecies(PolarizabilityModel.single(0.4, 1.0), PolarizabilityModel.single(0.1, 2.0))
    return [
        lambda: atom_force(cav, atom),
        lambda: atom_force(CavityConfig.half_space(VACUUM, layered, 0.05), atom),
        lambda: slab_force(cav, SlabConfig(Medium(Constant(5.0)), 0.1)),
        lambda: slab_force(CavityConfig.half_space(cav.medium, layered, 0.4), SlabConfig(Medium(Constant(5.0)), 0.1)),
    ]


@pytest.mark.parametrize("i", range(4))
def test_backends_agree(monkeypatch, i):
    out = {}
    for name, fn in _kernels.implementations().items():
        monkeypatch.setattr(_kernels, "cavity_moments", fn)
        out[name] = _cases()[i]()
    a, b = out["python"], out["cython"]
    for field in ("screened_tm", "screened_te", "assisted_tm", "assisted_te"):
        x, y = getattr(a, field), getattr(b, field)
        assert x == pytest.approx(y, rel=1e-12, abs=1e-14 * abs(a.total))


def test_environment_selects_fallback():
    env = dict(os.environ, CAVITYFORCE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import cavityforce; print(cavityforce.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert _kernels.BACKEND == ("python" if os.environ.get("CAVITYFORCE_PURE_PYTHON") else "cython")
