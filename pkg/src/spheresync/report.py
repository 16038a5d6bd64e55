"""Run reports and delimited artifacts.

The report is plain structured text with a stable field order so that runs
diff cleanly; the CSVs carry full double precision (17 significant digits)
and are byte-identical across repeated runs of the same config + seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__
from .dynamics import Trajectory
from .linalg import FloatArray
from .observables import CertificateTrace
from .wspace import SyncVerdict

# Finite-horizon proxy for the asymptotic synchronization definition.
SYNC_DIAMETER_THRESHOLD = 1e-3
SYNC_TAIL_FRACTION = 0.1


@dataclass(frozen=True)
class Hypotheses:
    """Results of the theorem-hypothesis checks run before analysis."""

    strongly_connected: bool
    skew_max_residual: float
    beta: Optional[FloatArray]


@dataclass(frozen=True)
class Outcome:
    """Simulation observables summarized at the end of a run."""

    final_diameter: float
    final_dist_w: float
    sync_detected: bool
    h_violations: int
    v_violations: int
    max_norm_drift: float
    inconsistent: bool
    dist_w_advisory: bool


@dataclass(frozen=True)
class RunReport:
    verdict: SyncVerdict
    hypotheses: Hypotheses
    provenance: dict[str, Any]
    outcome: Optional[Outcome] = None


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, np.ndarray):
        return "[" + ", ".join(f"{x:.17g}" for x in value.reshape(-1)) + "]"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def sync_detected(times: FloatArray, diameters: FloatArray, t_end: float) -> bool:
    """True when the diameter stays below threshold over the final 10% of the run."""
    if t_end <= 0:
        return False
    tail = times >= (1.0 - SYNC_TAIL_FRACTION) * t_end
    if not np.any(tail):
        return False
    return bool(np.all(diameters[tail] < SYNC_DIAMETER_THRESHOLD))


def render_report(report: RunReport) -> str:
    """Serialize a report with a stable field order."""
    lines: list[str] = []
    lines.append("format: spheresync-report-v1")
    lines.append(f"tool_version: {__version__}")
    lines.append("")
    lines.append("[hypotheses]")
    lines.append(
        f"strongly_connected: {_fmt(report.hypotheses.strongly_connected)}"
    )
    if not report.hypotheses.strongly_connected:
        lines.append("topology: UNSUPPORTED_TOPOLOGY")
    lines.append(
        f"skew_symmetry_max_residual: {_fmt(report.hypotheses.skew_max_residual)}"
    )
    if report.hypotheses.beta is not None:
        lines.append(f"beta: {_fmt(report.hypotheses.beta)}")
    lines.append("")
    lines.append("[verdict]")
    v = report.verdict
    lines.append(f"dim_w: {v.dim_w}")
    lines.append(f"synchronizable: {_fmt(v.synchronizable)}")
    lines.append(f"shortcut: {v.shortcut}")
    if v.p is not None:
        lines.append(f"certificate_p: {_fmt(v.p)}")
    if v.witness is not None:
        lines.append(f"witness: {v.witness}")
    for col in range(v.w.dim):
        lines.append(f"w_basis_{col + 1}: {_fmt(v.w.basis[:, col])}")
    if report.outcome is not None:
        o = report.outcome
        lines.append("")
        lines.append("[outcome]")
        lines.append(f"final_diameter: {_fmt(o.final_diameter)}")
        lines.append(f"final_dist_w: {_fmt(o.final_dist_w)}")
        if o.dist_w_advisory:
            lines.append("dist_w_note: dim(W) = 0, distance to the zero subspace is 1 for unit states")
        lines.append(f"sync_detected: {_fmt(o.sync_detected)}")
        lines.append(f"h_min_violations: {o.h_violations}")
        lines.append(f"v_violations: {o.v_violations}")
        lines.append(f"max_norm_drift: {_fmt(o.max_norm_drift)}")
        lines.append(f"inconsistent: {_fmt(o.inconsistent)}")
    lines.append("")
    lines.append("[provenance]")
    for key, value in report.provenance.items():
        lines.append(f"{key}: {_fmt(value)}")
    lines.append("")
    return "\n".join(lines)


def write_report(report: RunReport, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(render_report(report))
    return path


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> Path:
    """Write `t, r1_1..r1_n, ..., rm_1..rm_n`, one row per recorded instant."""
    path = Path(path)
    _, m, n = traj.states.shape
    header = ["t"] + [f"r{i + 1}_{c + 1}" for i in range(m) for c in range(n)]
    rows = [",".join(header)]
    for idx in range(traj.times.shape[0]):
        values = [f"{traj.times[idx]:.17g}"]
        values += [f"{x:.17g}" for x in traj.states[idx].reshape(-1)]
        rows.append(",".join(values))
    path.write_text("\n".join(rows) + "\n")
    return path


def write_certificates_csv(trace: CertificateTrace, path: str | Path) -> Path:
    """Write `t, h_min, V, Vdot, diameter, dist_w` per recorded instant."""
    path = Path(path)
    rows = ["t,h_min,V,Vdot,diameter,dist_w"]
    for idx in range(trace.times.shape[0]):
        rows.append(
            ",".join(
                f"{x:.17g}"
                for x in (
                    trace.times[idx],
                    trace.h_min[idx],
                    trace.v[idx],
                    trace.v_dot[idx],
                    trace.diameter[idx],
                    trace.dist_w[idx],
                )
            )
        )
    path.write_text("\n".join(rows) + "\n")
    return path
