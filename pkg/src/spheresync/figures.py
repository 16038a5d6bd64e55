"""Matplotlib renderings of a run, written next to the CSV artifacts."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import Trajectory
from .observables import CertificateTrace


def plot_states(traj: Trajectory, path: str | Path) -> Path:
    """Time response of every state component, one panel per oscillator."""
    path = Path(path)
    _, m, n = traj.states.shape
    fig, axes = plt.subplots(m, 1, sharex=True, figsize=(8, 1.8 * m))
    if m == 1:
        axes = [axes]
    for i, ax in enumerate(axes):
        for c in range(n):
            ax.plot(traj.times, traj.states[:, i, c], lw=0.8, label=f"component {c + 1}")
        ax.set_ylabel(f"r{i + 1}")
        ax.set_ylim(-1.05, 1.05)
    axes[0].legend(loc="upper right", fontsize=7, ncol=min(n, 5))
    axes[-1].set_xlabel("t")
    fig.suptitle("oscillator states")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_certificates(trace: CertificateTrace, path: str | Path) -> Path:
    """Alignment minimum, Lyapunov value and its analytic rate."""
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 5))
    ax1.plot(trace.times, trace.h_min, label="min alignment", color="tab:blue")
    ax1.plot(trace.times, trace.v, label="V", color="tab:red")
    ax1.set_ylabel("value")
    ax1.legend(loc="center right", fontsize=8)
    ax2.plot(trace.times, trace.v_dot, color="tab:green", lw=0.8)
    ax2.set_ylabel("dV/dt")
    ax2.set_xlabel("t")
    fig.suptitle("descent certificates")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_convergence(trace: CertificateTrace, path: str | Path) -> Path:
    """Synchronization diameter and distance to W on a log scale."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(8, 4))
    floor = 1e-17
    ax.semilogy(trace.times, trace.diameter.clip(floor), label="diameter")
    ax.semilogy(trace.times, trace.dist_w.clip(floor), label="distance to W")
    ax.set_xlabel("t")
    ax.set_ylabel("error")
    ax.legend(fontsize=8)
    fig.suptitle("convergence")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
