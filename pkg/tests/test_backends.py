import json
import os
import subprocess
import sys

import numpy as np
import pytest

from heisenberg_iso import BACKEND

PROBE = r"""
import json
import numpy as np
from heisenberg_iso import BACKEND
from heisenberg_iso.families import random_family, slab_set
from heisenberg_iso.geodesics import ode_trajectory
from heisenberg_iso.isoperimetry import deficit
from heisenberg_iso.pansu import PansuSphere, ball_volume, sphere_area
from heisenberg_iso.radial import set_perimeter

p0 = np.zeros((2, 3)); p0[:, -1] = -np.pi / 4
v0 = np.array([[1.0, 0.0], [0.6, 0.8]])
_, zs, ts, _ = ode_trajectory(1.0, p0, v0, np.pi, 2000)
out = {
    "backend": BACKEND,
    "area": sphere_area(PansuSphere(2, 0.7), 1e-12),
    "volume": ball_volume(PansuSphere(1, 1.3), 1e-12),
    "perimeters": [set_perimeter(E, 1e-11) for E in random_family(2, 5, seed=1)],
    "slab_deficit": deficit(slab_set(1.0, 1.0, 1)).deficit,
    "rk4_end": np.concatenate([zs[-1].ravel(), ts[-1]]).tolist(),
}
print(json.dumps(out))
"""


def probe(pure):
    env = dict(os.environ, HEISENBERG_ISO_PURE_NUMPY="1" if pure else "0")
    res = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


@pytest.fixture(scope="module")
def both():
    return probe(False), probe(True)


def test_flag_selects_backend(both):
    fast, slow = both
    assert slow["backend"] == "numpy"
    assert fast["backend"] in ("numba", "numpy")
    assert BACKEND in ("numba", "numpy")


def test_backends_agree(both):
    fast, slow = both
    for key in ("area", "volume", "slab_deficit"):
        assert fast[key] == pytest.approx(slow[key], rel=1e-12)
    np.testing.assert_allclose(fast["perimeters"], slow["perimeters"], rtol=1e-12)
    np.testing.assert_allclose(fast["rk4_end"], slow["rk4_end"], rtol=0, atol=1e-13)
