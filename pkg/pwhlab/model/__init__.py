from pwhlab.model.builders import build_multiport, build_sg, build_single_port
from pwhlab.model.loader import build_system, load_model, load_model_file, parse_document, system_to_document
from pwhlab.model.schema import MultiportParams, SgParams, SinglePortParams
from pwhlab.model.system import (
    PwhSystem,
    equilibrium_tolerance,
    grad_h,
    hamiltonian,
    in_domain,
    input_gains,
    input_matrix_g,
    jacobian,
    power_balance,
    raw_vector_field,
    residual_norm,
    vector_field,
)

__all__ = [
    "MultiportParams",
    "PwhSystem",
    "SgParams",
    "SinglePortParams",
    "build_multiport",
    "build_sg",
    "build_single_port",
    "build_system",
    "equilibrium_tolerance",
    "grad_h",
    "hamiltonian",
    "in_domain",
    "input_gains",
    "input_matrix_g",
    "jacobian",
    "load_model",
    "load_model_file",
    "parse_document",
    "power_balance",
    "raw_vector_field",
    "residual_norm",
    "system_to_document",
    "vector_field",
]
