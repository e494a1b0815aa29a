import os

import numpy as np
import pytest

from pwhlab.equilibrium import sg_equilibria, single_port_equilibria
from pwhlab.model import build_multiport, build_sg, build_single_port, load_model_file
from pwhlab.model.reference import CONSISTENT_SG_SET, REFERENCE_CIRCUIT
from pwhlab.model.schema import MultiportParams
from pwhlab.shifted import ShiftedContext

MODELS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "storage", "models")

# Two inductors in series with two loaded capacitors, fed from a 48 V source
MULTIPORT_2X2 = MultiportParams(
    L=[[1e-3, 0.0], [0.0, 1e-3]],
    C=[[1e-3, 0.0], [0.0, 1e-3]],
    Z=[[0.5, 0.0], [0.0, 0.5]],
    Y=[[0.5, 0.0], [0.0, 0.5]],
    Gamma=[[-1.0, 0.0], [1.0, -1.0]],
    P=[20.0, 20.0],
    u_c=[48.0, 0.0, 0.0, 0.0],
)

# Same network with coupled line resistances
MULTIPORT_COUPLED = MULTIPORT_2X2.model_copy(update={"Z_mat": [[0.5, 0.1], [0.1, 0.5]]})


def model_path(name: str) -> str:
    return os.path.join(MODELS_DIR, name)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def circuit():
    return REFERENCE_CIRCUIT


@pytest.fixture
def circuit_sys():
    return build_single_port(REFERENCE_CIRCUIT)


@pytest.fixture
def circuit_pair():
    return single_port_equilibria(REFERENCE_CIRCUIT)


@pytest.fixture
def circuit_ctx(circuit_sys, circuit_pair):
    return ShiftedContext(circuit_sys, circuit_pair.stable_candidate.x_bar)


@pytest.fixture
def sg_params():
    return CONSISTENT_SG_SET


@pytest.fixture
def sg_sys():
    return build_sg(CONSISTENT_SG_SET)


@pytest.fixture
def sg_pair():
    return sg_equilibria(CONSISTENT_SG_SET)


@pytest.fixture
def multiport_sys():
    return build_multiport(MULTIPORT_2X2)


@pytest.fixture
def coupled_sys():
    return build_multiport(MULTIPORT_COUPLED)


@pytest.fixture
def reference_file():
    return model_path("reference_circuit.json")


@pytest.fixture
def loaded_reference(reference_file):
    return load_model_file(reference_file)
