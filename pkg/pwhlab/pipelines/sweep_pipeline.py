"""
Parameter Sweep
===============
Re-solve the single-port circuit or the generator at evenly spaced values of
one parameter, recording whether an equilibrium exists, the strict-passivity
margin λ_min(R + Z(x̄_s)) and the certificate.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from pwhlab.equilibrium import sg_equilibria, single_port_equilibria
from pwhlab.errors import CertificateUnavailableError, InputError
from pwhlab.model.builders import build_single_port
from pwhlab.model.loader import parse_document
from pwhlab.model.schema import SgDocument, SinglePortDocument
from pwhlab.roa import roa_diagonal, sg_roa
from pwhlab.shifted import ShiftedContext

logger = logging.getLogger(__name__)

FIXED_FIELDS = ("kind", "units")


@dataclass(frozen=True)
class SweepRow:
    value: float
    existence: bool
    lambda_min: Optional[float] = None
    certificate: Optional[float] = None   # k_d, or the half-line threshold for the generator


@dataclass(frozen=True)
class SweepResult:
    param: str
    certificate_column: str
    rows: List[SweepRow]


def _with_value(doc, param: str, value: float):
    data = doc.model_dump(by_alias=True)
    if param not in data or param in FIXED_FIELDS or not isinstance(data[param], (int, float)):
        names = sorted(k for k, v in data.items() if k not in FIXED_FIELDS and isinstance(v, (int, float)))
        raise InputError(f"Unknown sweep parameter {param!r}; choose from {names}")
    data[param] = float(value)
    return parse_document(data)


def _single_port_row(doc: SinglePortDocument, value: float) -> SweepRow:
    pair = single_port_equilibria(doc)
    eq = pair.stable_candidate
    if eq is None:
        return SweepRow(value=value, existence=False)
    try:
        k_d = roa_diagonal(ShiftedContext(build_single_port(doc), eq.x_bar)).level_k
    except CertificateUnavailableError:
        k_d = None
    return SweepRow(value=value, existence=True, lambda_min=eq.r_plus_z_min_eig, certificate=k_d)


def _sg_row(doc: SgDocument, value: float) -> SweepRow:
    pair = sg_equilibria(doc)
    eq = pair.stable_candidate
    if eq is None:
        return SweepRow(value=value, existence=False)
    return SweepRow(value=value, existence=True, lambda_min=eq.r_plus_z_min_eig,
                    certificate=sg_roa(doc, pair).threshold_omega)


def run_sweep(doc, param: str, start: float, stop: float, steps: int) -> SweepResult:
    """One row per value of np.linspace(start, stop, steps); missing equilibria stay empty."""
    if isinstance(doc, SinglePortDocument):
        row_of, column = _single_port_row, "k_d"
    elif isinstance(doc, SgDocument):
        row_of, column = _sg_row, "threshold_omega"
    else:
        raise InputError(f"Sweeps support single_port and sg models, not {doc.kind!r}")
    if steps < 1:
        raise InputError(f"steps must be at least 1, got {steps}")

    rows = []
    for value in np.linspace(start, stop, steps):
        rows.append(row_of(_with_value(doc, param, value), float(value)))
    n_exist = sum(row.existence for row in rows)
    logger.info(f"Sweep over {param}: {n_exist} of {len(rows)} points admit an equilibrium")
    return SweepResult(param=param, certificate_column=column, rows=rows)
