import numpy as np
import pytest

from cyclic_split.representations import so3_generators, spin_generators


def all_reps(two_js=(1, 2, 3, 4)):
    return [so3_generators()] + [spin_generators(t) for t in two_js]


def real_angle_scalar(rep, theta):
    """Scalar ``p`` with ``kappa * p = theta`` (imaginary for spin matrices)."""
    return theta / rep.kappa


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=["so3", 1, 2, 3], ids=lambda x: f"rep-{x}")
def rep(request):
    if request.param == "so3":
        return so3_generators()
    return spin_generators(request.param)
