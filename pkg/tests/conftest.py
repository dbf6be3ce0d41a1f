import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from skewpbw.catalog import instantiate  # noqa: E402
from skewpbw.finring import builtin_ring  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def qplane():
    return instantiate("quantum_plane")


@pytest.fixture(scope="session")
def jordan():
    return instantiate("jordan_trunc")


@pytest.fixture(scope="session")
def swap():
    return instantiate("swap_ore")


@pytest.fixture(scope="session")
def const_z4():
    return instantiate("constant_poly")


@pytest.fixture(scope="session")
def e_i():
    return instantiate("threedim_e_i")


@pytest.fixture(scope="session")
def z4():
    return builtin_ring("z4")


@pytest.fixture(scope="session")
def ut2():
    return builtin_ring("ut2z2")
