"""Command-line interface: analyze, run, sweep, preset list.

Exit codes encode the verdict for scripting: 0 = synchronizable (SYNC),
1 = not synchronizable (NO-SYNC), 2 = error.  The output directory is the
--outdir flag when given, else the SPHERESYNC_OUTDIR environment variable,
else the current directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .config import RunConfig, config_echo, load_config
from .dynamics import (
    OscillatorSystem,
    Trajectory,
    integrate,
    sample_hemisphere,
    sample_sphere,
)
from .errors import NotStronglyConnected, SphereSyncError, ValidationError
from .graph import is_strongly_connected, laplacian, left_null_vector
from .observables import CertificateTrace, certificate_trace, count_decreases, count_increases
from .presets import PRESETS
from .report import (
    Hypotheses,
    Outcome,
    RunReport,
    render_report,
    sync_detected,
    write_certificates_csv,
    write_report,
    write_trajectory_csv,
)
from .wspace import SyncVerdict, compute_w, quick_reject
from . import __version__

EXIT_SYNC = 0
EXIT_NO_SYNC = 1
EXIT_ERROR = 2

OUTDIR_ENV = "SPHERESYNC_OUTDIR"

# Residual above which a certificate axis is rejected as not lying in W.
P_MEMBERSHIP_TOL = 1e-10


def _hypotheses(config: RunConfig, connected: bool, beta) -> Hypotheses:
    residual = max(float(np.abs(w + w.T).max()) for w in config.omegas)
    return Hypotheses(
        strongly_connected=connected, skew_max_residual=residual, beta=beta
    )


def analyze(config: RunConfig) -> tuple[SyncVerdict, Hypotheses]:
    """Hypothesis checks plus the subspace verdict; no simulation.

    Raises NotStronglyConnected for unsupported topologies: the sufficiency
    half of the verdict is only proved on strongly connected digraphs.
    """
    g = config.digraph()
    connected = is_strongly_connected(g)
    if not connected:
        raise NotStronglyConnected(
            "coupling digraph is not strongly connected (UNSUPPORTED_TOPOLOGY)"
        )
    beta = left_null_vector(laplacian(g), True)
    verdict = compute_w(config.ensemble())
    return verdict, _hypotheses(config, True, beta)


def run(
    config: RunConfig,
) -> tuple[RunReport, Trajectory, CertificateTrace]:
    """Full pipeline: analyze, pick initial data, integrate, monitor.

    A NO-SYNC verdict still simulates (from uniformly random unit states) so
    that practical synchronization remains observable; the monitors then
    assert nothing.
    """
    verdict, hypotheses = analyze(config)
    ens = config.ensemble()
    g = config.digraph()
    beta = hypotheses.beta

    if verdict.synchronizable:
        p = verdict.p if config.p is None else config.p
        if verdict.w.residual(p) > P_MEMBERSHIP_TOL:
            raise ValidationError(
                "p: not inside the synchronizability subspace "
                f"(residual {verdict.w.residual(p):g})"
            )
        state0 = sample_hemisphere(p, config.m, config.margin, config.seed)
        eta0 = p
    else:
        state0 = sample_sphere(config.n, config.m, config.seed)
        # No admissible axis exists; monitor along e1 without any claim.
        eta0 = np.zeros(config.n)
        eta0[0] = 1.0

    sys_ = OscillatorSystem(ens=ens, g=g, k=config.k, state=state0)
    traj = integrate(sys_, config.dt, config.t_end, config.stride, eta0=eta0)
    trace = certificate_trace(traj, verdict.w, beta, g, config.k)

    detected = sync_detected(trace.times, trace.diameter, config.t_end)
    outcome = Outcome(
        final_diameter=float(trace.diameter[-1]),
        final_dist_w=float(trace.dist_w[-1]),
        sync_detected=detected,
        h_violations=count_decreases(trace.h_min),
        v_violations=count_increases(trace.v),
        max_norm_drift=traj.max_norm_drift,
        inconsistent=detected and not verdict.synchronizable,
        dist_w_advisory=verdict.dim_w == 0,
    )
    report = RunReport(
        verdict=verdict,
        hypotheses=hypotheses,
        provenance=config_echo(config),
        outcome=outcome,
    )
    return report, traj, trace


def _resolve_outdir(flag: Optional[str]) -> Path:
    outdir = Path(flag or os.environ.get(OUTDIR_ENV) or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def _verdict_exit(verdict: SyncVerdict) -> int:
    return EXIT_SYNC if verdict.synchronizable else EXIT_NO_SYNC


def _error_report_text(message: str) -> str:
    lines = [
        "format: spheresync-report-v1",
        f"tool_version: {__version__}",
        "",
        "[error]",
        f"error: {message}",
        "",
    ]
    return "\n".join(lines)


def _cmd_analyze(args: argparse.Namespace) -> int:
    outdir = _resolve_outdir(args.outdir)
    config = load_config(args.config)
    try:
        verdict, hypotheses = analyze(config)
    except NotStronglyConnected as exc:
        text = _error_report_text(str(exc))
        (outdir / "report").write_text(text)
        print(text, end="")
        return EXIT_ERROR
    report = RunReport(
        verdict=verdict, hypotheses=hypotheses, provenance=config_echo(config)
    )
    write_report(report, outdir / "report")
    print(render_report(report), end="")
    return _verdict_exit(verdict)


def _write_artifacts(
    report: RunReport, traj, trace: CertificateTrace, outdir: Path, plots: bool
) -> list[Path]:
    paths = [
        write_trajectory_csv(traj, outdir / "trajectory.csv"),
        write_certificates_csv(trace, outdir / "certificates.csv"),
        write_report(report, outdir / "report"),
    ]
    if plots:
        from . import figures

        paths.append(figures.plot_states(traj, outdir / "states.png"))
        paths.append(figures.plot_certificates(trace, outdir / "certificates.png"))
        paths.append(figures.plot_convergence(trace, outdir / "convergence.png"))
    return paths


def _cmd_run(args: argparse.Namespace) -> int:
    outdir = _resolve_outdir(args.outdir)
    config = load_config(args.config)
    try:
        report, traj, trace = run(config)
    except NotStronglyConnected as exc:
        text = _error_report_text(str(exc))
        (outdir / "report").write_text(text)
        print(text, end="")
        return EXIT_ERROR
    paths = _write_artifacts(report, traj, trace, outdir, not args.no_plots)
    verdict = "SYNC" if report.verdict.synchronizable else "NO-SYNC"
    print(f"verdict: {verdict} (dim W = {report.verdict.dim_w})")
    print(f"final diameter: {report.outcome.final_diameter:.6g}")
    print(f"final distance to W: {report.outcome.final_dist_w:.6g}")
    print(f"sync detected: {report.outcome.sync_detected}")
    for path in paths:
        print(f"wrote {path}")
    return _verdict_exit(report.verdict)


def _sweep_worker(payload: tuple[RunConfig, str, bool]) -> dict:
    config, outdir_str, plots = payload
    outdir = Path(outdir_str)
    outdir.mkdir(parents=True, exist_ok=True)
    report, traj, trace = run(config)
    _write_artifacts(report, traj, trace, outdir, plots)
    return {
        "k": config.k,
        "seed": config.seed,
        "dim_w": report.verdict.dim_w,
        "synchronizable": report.verdict.synchronizable,
        "final_diameter": report.outcome.final_diameter,
        "final_dist_w": report.outcome.final_dist_w,
        "sync_detected": report.outcome.sync_detected,
        "outdir": outdir_str,
    }


def _parse_floats(tokens: Sequence[str]) -> list[float]:
    values: list[float] = []
    for token in tokens:
        values.extend(float(part) for part in token.split(",") if part)
    return values


def _parse_ints(tokens: Sequence[str]) -> list[int]:
    values: list[int] = []
    for token in tokens:
        values.extend(int(part) for part in token.split(",") if part)
    return values


def _cmd_sweep(args: argparse.Namespace) -> int:
    outdir = _resolve_outdir(args.outdir)
    base = load_config(args.config)
    ks = _parse_floats(args.k) if args.k else [base.k]
    seeds = _parse_ints(args.seeds) if args.seeds else [base.seed]
    jobs: list[tuple[RunConfig, str, bool]] = []
    for k in ks:
        for seed in seeds:
            sub = outdir / f"k{k:g}_seed{seed}"
            jobs.append((replace(base, k=k, seed=seed), str(sub), not args.no_plots))
    workers = args.jobs or min(len(jobs), os.cpu_count() or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_worker, jobs))
    else:
        rows = [_sweep_worker(job) for job in jobs]
    rows.sort(key=lambda r: (r["k"], r["seed"]))
    summary = outdir / "sweep_summary.csv"
    header = "k,seed,dim_w,synchronizable,final_diameter,final_dist_w,sync_detected,outdir"
    lines = [header]
    for row in rows:
        lines.append(
            f"{row['k']:.17g},{row['seed']},{row['dim_w']},"
            f"{str(row['synchronizable']).lower()},"
            f"{row['final_diameter']:.17g},{row['final_dist_w']:.17g},"
            f"{str(row['sync_detected']).lower()},{row['outdir']}"
        )
    summary.write_text("\n".join(lines) + "\n")
    print(f"wrote {summary}")
    for row in rows:
        print(
            f"k={row['k']:g} seed={row['seed']}: "
            f"final diameter {row['final_diameter']:.6g}, "
            f"sync detected {row['sync_detected']}"
        )
    return EXIT_SYNC


def _cmd_preset(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name, preset in sorted(PRESETS.items()):
            print(f"{name}: {preset.description}")
    return EXIT_SYNC


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheresync",
        description=(
            "Decide synchronizability of coupled rotating unit-vector "
            "oscillator networks, simulate the flow, and verify the descent "
            "certificates."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="verdict only, no simulation")
    pa.add_argument("config", help="path to a JSON run configuration")
    pa.add_argument("--outdir", help="output directory (default: env or cwd)")
    pa.set_defaults(func=_cmd_analyze)

    pr = sub.add_parser("run", help="analyze, simulate and monitor one run")
    pr.add_argument("config", help="path to a JSON run configuration")
    pr.add_argument("--outdir", help="output directory (default: env or cwd)")
    pr.add_argument(
        "--no-plots", action="store_true", help="skip figure rendering"
    )
    pr.set_defaults(func=_cmd_run)

    psw = sub.add_parser("sweep", help="fan out runs over gains and seeds")
    psw.add_argument("config", help="path to a JSON run configuration")
    psw.add_argument("--k", nargs="+", help="coupling gains (space or comma separated)")
    psw.add_argument("--seeds", nargs="+", help="seeds (space or comma separated)")
    psw.add_argument("--jobs", type=int, help="parallel workers (default: auto)")
    psw.add_argument("--outdir", help="output directory (default: env or cwd)")
    psw.add_argument("--no-plots", action="store_true", help="skip figure rendering")
    psw.set_defaults(func=_cmd_sweep)

    pp = sub.add_parser("preset", help="preset registry")
    pp.add_argument("action", choices=["list"])
    pp.set_defaults(func=_cmd_preset)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SphereSyncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())
