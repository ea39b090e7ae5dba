"""Interferometer run: preparation, spin rotation in one arm, post-selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, PostSelectionFailure
from .hilbert import (
    ARMS,
    UP_X,
    JointState,
    PathState,
    SpinState,
    apply_operator,
    arm_index,
    arm_local,
    tensor,
)

SUCCESS_TOL = 1e-12


@dataclass(frozen=True)
class CouplingConfig:
    arm: str
    alpha: float

    def __post_init__(self) -> None:
        arm_index(self.arm)
        if not math.isfinite(self.alpha):
            raise ArgumentError("coupling strength alpha must be finite")


@dataclass(frozen=True)
class ExperimentOutput:
    conditional_spin: SpinState
    success_probability: float
    unnormalized_spin: tuple[complex, complex]


def spin_rotation(alpha: float) -> np.ndarray:
    """``exp(-i alpha sigma_z)`` in the x basis: up_x -> cos a up_x - i sin a down_x."""
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def prepare(pi: PathState) -> JointState:
    return tensor(pi, UP_X)


def couple(state: JointState, cfg: CouplingConfig) -> JointState:
    return apply_operator(arm_local(cfg.arm, spin_rotation(cfg.alpha)), state)


def post_select(state: JointState, pf: PathState) -> ExperimentOutput:
    """Project the path onto ``pf`` and return the spin state left behind."""
    spin = sum(pf.amplitude(arm).conjugate() * state.arm_block(arm) for arm in ARMS)
    up, down = complex(spin[0]), complex(spin[1])
    p = abs(up) ** 2 + abs(down) ** 2
    if p < SUCCESS_TOL:
        raise PostSelectionFailure(f"post-selection probability vanishes (p = {p:.3g})")
    n = math.sqrt(p)
    return ExperimentOutput(
        conditional_spin=SpinState(up / n, down / n),
        success_probability=min(p, 1.0),
        unnormalized_spin=(up, down),
    )


def run(pi: PathState, cfg: CouplingConfig, pf: PathState) -> ExperimentOutput:
    return post_select(couple(prepare(pi), cfg), pf)


def coupled_state(pi: PathState, alpha: float, arm: str = "II") -> JointState:
    """The joint state just before post-selection."""
    return couple(prepare(pi), CouplingConfig(arm, alpha))
