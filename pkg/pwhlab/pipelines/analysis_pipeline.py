"""
Analysis Pipeline
=================
1. Solve for the equilibria (closed form for the single-port circuit and the
   generator, Newton from the linear-network guess otherwise).
2. Classify them and, for the single-port circuit, compute the load limits.
3. Certify a region of attraction around the stable equilibrium.
4. Optionally validate the certificate by Monte-Carlo simulation.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

from pydantic import BaseModel

from pwhlab.equilibrium import (
    Equilibrium,
    EquilibriumPair,
    initial_guess,
    power_limits,
    sg_equilibria,
    single_port_equilibria,
    solve_newton,
)
from pwhlab.errors import (
    CertificateUnavailableError,
    DomainError,
    ModeUnavailableError,
    NoEquilibriumError,
    NumericError,
    PreconditionError,
)
from pwhlab.model.schema import SgDocument, SinglePortDocument
from pwhlab.model.system import PwhSystem
from pwhlab.roa import RoaEstimate, RoaMode, q_min_single_port, roa_diagonal, roa_general, sg_roa
from pwhlab.shifted import ShiftedContext
from pwhlab.sim import validate_roa

logger = logging.getLogger(__name__)


# --- REPORT MODELS ---

class ModelSummary(BaseModel):
    kind: str
    label: str
    n: int
    power_channels: List[int]
    diagonal: bool
    units: Optional[str] = None


class EquilibriumEntry(BaseModel):
    branch: str
    x_bar: List[float]
    residual: float
    classification: str
    r_plus_z_min_eig: float
    spectral_abscissa: float


class PowerLimitsEntry(BaseModel):
    p_e_max: float
    p_s_max_formula: float
    p_s_max_numeric: float
    numeric_saturated: bool
    p_s_max_stated: Optional[float] = None
    discrepancies: List[str] = []


class CertificateEntry(BaseModel):
    mode: str
    level_k: Optional[float] = None
    ellipsoid_semi_axes: Optional[List[float]] = None
    threshold_omega: Optional[float] = None
    gamma: Optional[List[float]] = None
    eta: Optional[List[float]] = None
    index_set: Optional[str] = None
    binding_index: Optional[int] = None


class ValidationEntry(BaseModel):
    certificate_mode: str
    n_samples: int
    n_converged: int
    n_diverged: int
    n_timeout: int
    n_counterexamples: int
    boundary_margin: float
    t_max: float
    seed: Optional[int] = None


class AnalysisReport(BaseModel):
    model: ModelSummary
    equilibria: List[EquilibriumEntry]
    discriminant: Optional[float] = None
    power_limits: Optional[PowerLimitsEntry] = None
    q_min: Optional[float] = None
    certificates: List[CertificateEntry] = []
    certificate_notes: List[str] = []
    validation: Optional[ValidationEntry] = None


# --- OPERATING POINT ---

@dataclass(frozen=True, eq=False)
class OperatingPoint:
    """Equilibria of a model and the one certificates are built around."""
    sys: PwhSystem
    equilibria: List[Tuple[str, Equilibrium]]
    stable: Equilibrium
    pair: Optional[EquilibriumPair] = None
    certificates: List[RoaEstimate] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def primary_certificate(self) -> Optional[RoaEstimate]:
        """Diagonal or half-line certificate first, then the general one."""
        for est in self.certificates:
            if est.mode is not RoaMode.GENERAL:
                return est
        return self.certificates[0] if self.certificates else None


def _from_pair(sys: PwhSystem, pair: EquilibriumPair, what: str) -> Tuple[List[Tuple[str, Equilibrium]], Equilibrium]:
    if not pair.exists or pair.stable_candidate is None:
        message = f"no real equilibrium for the {what} (discriminant {pair.discriminant:.6g})"
        if pair.p_e_max is not None:
            message += f"; P_e_max = {pair.p_e_max:.2f} W"
        raise NoEquilibriumError(message, pair.p_e_max)
    found = [("s", pair.stable_candidate)]
    if pair.unstable_candidate is not None:
        found.append(("u", pair.unstable_candidate))
    return found, pair.stable_candidate


def _newton(sys: PwhSystem) -> Equilibrium:
    try:
        return solve_newton(sys, initial_guess(sys))
    except (NumericError, DomainError) as e:
        raise NoEquilibriumError(f"Newton found no equilibrium: {e}") from e


def _certify(doc, sys: PwhSystem, eq: Equilibrium, pair: Optional[EquilibriumPair],
             refined: bool) -> Tuple[List[RoaEstimate], List[str]]:
    if isinstance(doc, SgDocument):
        return [sg_roa(doc, pair)], []

    ctx = ShiftedContext(sys, eq.x_bar)
    estimates, notes = [], []
    attempts = [("general", lambda: roa_general(ctx, refined=refined))]
    if sys.is_diagonal:
        attempts.append(("diagonal", lambda: roa_diagonal(ctx)))
    for name, attempt in attempts:
        try:
            estimates.append(attempt())
        except (CertificateUnavailableError, ModeUnavailableError, PreconditionError) as e:
            logger.info(f"No {name} certificate: {e}")
            notes.append(f"{name}: {e}")
    return estimates, notes


def resolve_operating_point(doc, sys: PwhSystem, refined: bool = False) -> OperatingPoint:
    """Equilibria plus every applicable certificate; NoEquilibriumError when none exists."""
    pair = None
    if isinstance(doc, SinglePortDocument):
        pair = single_port_equilibria(doc)
        found, stable = _from_pair(sys, pair, "single-port circuit")
    elif isinstance(doc, SgDocument):
        pair = sg_equilibria(doc)
        found, stable = _from_pair(sys, pair, "generator")
    else:
        stable = _newton(sys)
        found = [("newton", stable)]

    estimates, notes = _certify(doc, sys, stable, pair, refined)
    return OperatingPoint(sys=sys, equilibria=found, stable=stable, pair=pair,
                          certificates=estimates, notes=notes)


# --- REPORT ---

def _certificate_entry(est: RoaEstimate) -> CertificateEntry:
    data = est.to_dict()
    data.pop("x_bar")
    return CertificateEntry(**data)


def run_analysis(doc, sys: PwhSystem, validate: int = 0, seed: Optional[int] = None,
                 refined: bool = False) -> AnalysisReport:
    """
    Full analysis of one model document.

    Args:
        doc: Validated model document (selects the closed form, if any).
        sys: The system built from it.
        validate: Number of Monte-Carlo samples for the certificate check (0 skips it).
        seed: Sampling seed.
        refined: Restrict the general certificate to the power channels.

    Returns:
        AnalysisReport with every number the text report prints.
    """
    op = resolve_operating_point(doc, sys, refined)

    limits = None
    q_min = None
    if isinstance(doc, SinglePortDocument):
        pl = power_limits(doc)
        limits = PowerLimitsEntry(**asdict(pl))
        q_min = q_min_single_port(doc, float(op.stable.x_bar[1]))

    validation = None
    primary = op.primary_certificate
    if validate > 0 and primary is not None:
        result = validate_roa(sys, op.stable, primary, validate, seed)
        validation = ValidationEntry(
            certificate_mode=primary.mode.value,
            n_samples=result.n_samples,
            n_converged=result.n_converged,
            n_diverged=result.n_diverged,
            n_timeout=result.n_timeout,
            n_counterexamples=len(result.counterexamples),
            boundary_margin=result.boundary_margin,
            t_max=result.t_max,
            seed=seed,
        )

    report = AnalysisReport(
        model=ModelSummary(
            kind=doc.kind,
            label=sys.label,
            n=sys.n,
            power_channels=list(sys.power_channels),
            diagonal=sys.is_diagonal,
            units=sys.units,
        ),
        equilibria=[
            EquilibriumEntry(branch=branch, **eq.to_dict())
            for branch, eq in op.equilibria
        ],
        discriminant=None if op.pair is None else op.pair.discriminant,
        power_limits=limits,
        q_min=q_min,
        certificates=[_certificate_entry(est) for est in op.certificates],
        certificate_notes=op.notes,
        validation=validation,
    )
    logger.info(f"Analysis finished: {len(report.equilibria)} equilibria, {len(report.certificates)} certificates")
    return report


def render_text(report: AnalysisReport) -> str:
    """Human-readable report."""
    m = report.model
    lines = [f"Model: {m.kind} ({m.label}), n = {m.n}, power channels {m.power_channels}"]

    lines.append("Equilibria:")
    for eq in report.equilibria:
        state = ", ".join(f"{v:.10g}" for v in eq.x_bar)
        lines.append(
            f"  [{eq.branch}] x = ({state})  {eq.classification}  "
            f"residual {eq.residual:.3e}  λ_min(R+Z) {eq.r_plus_z_min_eig:.6g}  abscissa {eq.spectral_abscissa:.6g}"
        )

    if report.power_limits is not None:
        pl = report.power_limits
        lines.append("Power limits:")
        lines.append(f"  P_e_max = {pl.p_e_max:.2f} W")
        lines.append(f"  P_s_max (closed form) = {pl.p_s_max_formula:.2f} W")
        suffix = " (saturated at P_e_max)" if pl.numeric_saturated else ""
        lines.append(f"  P_s_max (numeric) = {pl.p_s_max_numeric:.2f} W{suffix}")
        if pl.p_s_max_stated is not None:
            lines.append(f"  P_s_max (stated) = {pl.p_s_max_stated:.2f} W")
        lines.extend(f"  {note}" for note in pl.discrepancies)
    if report.q_min is not None:
        lines.append(f"q_min = {report.q_min:.6g} C")

    lines.append("Certificates:")
    for cert in report.certificates:
        if cert.level_k is None:
            lines.append(f"  {cert.mode}: ω > {cert.threshold_omega:.6g}")
            continue
        text = f"  {cert.mode}: k = {cert.level_k:.6g} J"
        if cert.index_set:
            text += f" (index set {cert.index_set})"
        if cert.ellipsoid_semi_axes is not None:
            text += ", semi-axes (" + ", ".join(f"{a:.6g}" for a in cert.ellipsoid_semi_axes) + ")"
        lines.append(text)
    lines.extend(f"  unavailable, {note}" for note in report.certificate_notes)

    if report.validation is not None:
        v = report.validation
        lines.append(
            f"Validation ({v.certificate_mode}, {v.n_samples} samples, seed {v.seed}): "
            f"{v.n_converged} converged, {v.n_diverged} diverged, {v.n_timeout} timed out, "
            f"{v.n_counterexamples} counterexamples"
        )
    return "\n".join(lines)
