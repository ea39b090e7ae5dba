"""Simulation of path-state characterization via arm-local spin coupling.

A particle is prepared in a path superposition ``a|I> + b|II>`` with spin
|up_x>, its spin is rotated by ``alpha`` in one arm, the path is
post-selected, and the remaining spin is measured. The package computes
weak values (standard and under partial post-selection), simulates the run
and its tomography, and reconstructs the path state with a weak-regime and
a strong-coupling estimator.
"""

from .errors import (
    ArgumentError,
    ConstructionError,
    DegenerateAngle,
    DegeneratePostSelection,
    NonInvertibleCoupling,
    PostSelectionFailure,
    UndefinedRatio,
    WeakPathError,
)
from .experiment import CouplingConfig, ExperimentOutput, couple, post_select, prepare, run
from .hilbert import (
    SYMMETRIC,
    JointState,
    Operator,
    PathState,
    SpinState,
    apply_operator,
    inner,
    make_path_state,
    path_projector,
    postselect_projector,
    tensor,
)
from .reconstruction import (
    BiasRow,
    ReconstructionReport,
    bias_sweep,
    fidelity,
    reconstruct,
    state_from_weak_value,
    strong_estimate,
    weak_estimate,
)
from .tomography import (
    BlochEstimate,
    BlochVector,
    RotationAngles,
    ShotRecord,
    bloch_exact,
    estimate_bloch,
    rotation_angles,
    sample,
)
from .tsvf import (
    TwoStateVector,
    generalized_weak_value,
    modified_projection_weak_value,
    projection_weak_values,
    weak_ratio,
    weak_value,
)

__version__ = "0.1.0"
