from pwhlab.pipelines.analysis_pipeline import (
    AnalysisReport,
    OperatingPoint,
    render_text,
    resolve_operating_point,
    run_analysis,
)
from pwhlab.pipelines.phase_pipeline import PhaseResult, run_phase
from pwhlab.pipelines.sweep_pipeline import SweepResult, SweepRow, run_sweep

__all__ = [
    "AnalysisReport",
    "OperatingPoint",
    "PhaseResult",
    "SweepResult",
    "SweepRow",
    "render_text",
    "resolve_operating_point",
    "run_analysis",
    "run_phase",
    "run_sweep",
]
