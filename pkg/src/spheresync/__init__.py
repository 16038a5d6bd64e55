"""spheresync: synchronizability analysis and simulation for networks of
coupled rotating unit-vector oscillators on the sphere.

The library decides whether a network of nonidentical oscillators can reach
complete phase synchronization (via the subspace criterion dim(W) > 0),
integrates the sphere-constrained flow, and monitors the descent
certificates along the way.
"""

__version__ = "0.1.0"

from .errors import (
    CharacterizationMismatch,
    DimensionMismatch,
    NotStronglyConnected,
    NumericalFailure,
    ParseError,
    SphereSyncError,
    StepTooLarge,
    ValidationError,
)
from .graph import (
    Digraph,
    Laplacian,
    is_strongly_connected,
    laplacian,
    left_null_vector,
    strongly_connected_components,
)
from .linalg import (
    SkewMatrix,
    Subspace,
    exact_kernel_oracle,
    expm_skew,
    intersect,
    kernel,
    planar_frequency,
    principal_angles,
    span_distance,
    spans_equal,
)
from .wspace import (
    FrequencyEnsemble,
    RejectWitness,
    SyncVerdict,
    compute_w,
    compute_w_powers,
    compute_w_products,
    quick_reject,
)
from .dynamics import (
    OscillatorSystem,
    Trajectory,
    integrate,
    rhs,
    sample_hemisphere,
    sample_sphere,
)
from .observables import (
    CertificateTrace,
    certificate_trace,
    diameter,
    distance_to_w,
    h_values,
    lyapunov,
    lyapunov_rate,
)
from .config import RunConfig, load_config
from .presets import PRESETS, Preset, directed_cycle
from .report import RunReport, render_report, sync_detected

__all__ = [
    "CharacterizationMismatch",
    "DimensionMismatch",
    "NotStronglyConnected",
    "NumericalFailure",
    "ParseError",
    "SphereSyncError",
    "StepTooLarge",
    "ValidationError",
    "Digraph",
    "Laplacian",
    "is_strongly_connected",
    "laplacian",
    "left_null_vector",
    "strongly_connected_components",
    "SkewMatrix",
    "Subspace",
    "exact_kernel_oracle",
    "expm_skew",
    "intersect",
    "kernel",
    "planar_frequency",
    "principal_angles",
    "span_distance",
    "spans_equal",
    "FrequencyEnsemble",
    "RejectWitness",
    "SyncVerdict",
    "compute_w",
    "compute_w_powers",
    "compute_w_products",
    "quick_reject",
    "OscillatorSystem",
    "Trajectory",
    "integrate",
    "rhs",
    "sample_hemisphere",
    "sample_sphere",
    "CertificateTrace",
    "certificate_trace",
    "diameter",
    "distance_to_w",
    "h_values",
    "lyapunov",
    "lyapunov_rate",
    "RunConfig",
    "load_config",
    "PRESETS",
    "Preset",
    "directed_cycle",
    "RunReport",
    "render_report",
    "sync_detected",
]
