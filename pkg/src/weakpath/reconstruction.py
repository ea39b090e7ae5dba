"""Path-state characterization from spin tomography.

Two estimators:

* ``weak``: small rotation angles are read as the weak value of one path
  projector; the other follows from the sum rule. Biased at O(alpha^2).
* ``strong``: exact inversion of the post-selected spin amplitudes for any
  coupling with ``sin(alpha) != 0``. Unbiased, but what it returns is the
  pre-selected state, not the weak value at that coupling strength.

:func:`bias_sweep` quantifies how far the weak-value ratio at finite
coupling sits from the true amplitude ratio.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Literal, Sequence

import numpy as np

from .errors import ArgumentError, DegeneratePostSelection, NonInvertibleCoupling
from .experiment import CouplingConfig, run
from .hilbert import SYMMETRIC, PathState, arm_index, make_path_state
from .tomography import BlochVector, RotationAngles, bloch_exact, measure, rotation_angles
from .tsvf import (
    amplitude_ratio,
    modified_projection_weak_value,
    projection_weak_values,
    weak_ratio,
)

Method = Literal["weak", "strong"]


@dataclass(frozen=True)
class ReconstructionReport:
    estimated: PathState
    method: Method
    alpha: float
    fidelity_vs_truth: float | None = None
    inputs_digest: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class BiasRow:
    alpha: float
    measured_ratio: complex
    true_ratio: complex
    abs_deviation: float
    # |(P_I)_w at alpha - (P_I)_w at alpha = 0|
    weak_value_deviation: float = 0.0


def fidelity(p: PathState, q: PathState) -> float:
    overlap = p.a.conjugate() * q.a + p.b.conjugate() * q.b
    return min(1.0, abs(overlap) ** 2)


def weak_estimate(angles: RotationAngles, alpha: float) -> complex:
    """Weak value of the projector on the coupled arm, read off the rotation angles."""
    if abs(alpha) <= 1e-12:
        raise ArgumentError("weak estimate needs a nonzero coupling strength")
    return complex(angles.theta_xy / (2 * alpha), angles.theta_xz / (2 * alpha))


def state_from_weak_value(w: complex, pf: PathState = SYMMETRIC) -> PathState:
    """Invert ``(P_I)_w`` (post-selection on ``pf``) to the pre-selected path state.

    The sum rule supplies ``(P_II)_w = 1 - w``; the result is returned in the
    canonical phase (``a`` real and non-negative).
    """
    w = complex(w)
    if not cmath.isfinite(w):
        raise ArgumentError(f"weak value must be finite, got {w!r}")
    if abs(pf.a) <= 1e-12 or abs(pf.b) <= 1e-12:
        raise ArgumentError("post-selected state must overlap both paths")
    return make_path_state(w / pf.a.conjugate(), (1 - w) / pf.b.conjugate()).canonical()


def _spin_amplitudes(b: BlochVector, p: float) -> tuple[complex, complex]:
    """Unnormalized post-selected spin amplitudes, up to a global phase."""
    length = b.length()
    if length <= 1e-12:
        raise ArgumentError("Bloch vector of zero length carries no phase information")
    # noisy estimates are projected back onto the sphere
    sx, sy, sz = (v / length for v in b.as_tuple())
    uu = p * (1 + sx) / 2
    dd = p * (1 - sx) / 2
    cross = p * complex(sz, -sy) / 2  # conj(u) * d
    if uu >= 1e-12:
        u = math.sqrt(uu)
        return complex(u), cross / u
    d = math.sqrt(max(dd, 0.0))
    return (cross / d).conjugate(), complex(d)


def strong_estimate(
    b: BlochVector,
    p: float,
    alpha: float,
    arm: str = "II",
    pf: PathState = SYMMETRIC,
) -> PathState:
    """Recover the pre-selected path state from one strong-coupling run.

    ``b`` is the Bloch vector of the post-selected spin and ``p`` the
    post-selection probability. Uses ``u = f_I* a' + f_II* b'`` and
    ``d = -i f_k* amp_k sin(alpha)`` where ``k`` is the coupled arm.
    """
    s = math.sin(alpha)
    if abs(s) <= 1e-9:
        raise NonInvertibleCoupling(f"sin(alpha) = {s:.3g}: the coupling cannot be inverted")
    if p <= 1e-12:
        raise DegeneratePostSelection(f"post-selection probability {p:.3g} too small")
    u, d = _spin_amplitudes(b, p)
    k = arm_index(arm)
    f_coupled = pf.to_array()[k].conjugate()
    f_free = pf.to_array()[1 - k].conjugate()
    if abs(f_coupled) <= 1e-12 or abs(f_free) <= 1e-12:
        raise ArgumentError("post-selected state must overlap both paths")
    coupled = 1j * d / (f_coupled * s)
    free = (u - f_coupled * coupled * math.cos(alpha)) / f_free
    amps = (free, coupled) if k == 1 else (coupled, free)
    return make_path_state(*amps).canonical()


def bias_sweep(pi: PathState, alphas: Sequence[float]) -> list[BiasRow]:
    true_ratio = amplitude_ratio(pi)
    w0 = projection_weak_values(pi, SYMMETRIC)[0]
    rows = []
    for alpha in alphas:
        measured = weak_ratio(pi, alpha)
        rows.append(
            BiasRow(
                alpha=float(alpha),
                measured_ratio=measured,
                true_ratio=true_ratio,
                abs_deviation=abs(measured - true_ratio),
                weak_value_deviation=abs(modified_projection_weak_value(pi, alpha, "II") - w0),
            )
        )
    return rows


def reconstruct(
    pi: PathState,
    alpha: float,
    method: Method,
    arm: str = "II",
    pf: PathState = SYMMETRIC,
    shots: int | None = None,
    seed: int | None = None,
    truth: PathState | None = None,
) -> ReconstructionReport:
    """Simulate a run on ``pi`` and characterize it with ``method``.

    With ``shots`` the Bloch vector comes from sampled counts (seeds
    ``seed..seed+2``) and, for the strong method, the post-selection
    probability from a binomial draw with ``seed+3``.
    """
    out = run(pi, CouplingConfig(arm, alpha), pf)
    p = out.success_probability
    digest: dict[str, Any] = {"success_probability": p, "arm": arm}
    if shots is None:
        bloch = bloch_exact(out.conditional_spin)
    else:
        if seed is None:
            raise ArgumentError("finite-shot reconstruction needs a seed")
        records, est = measure(out.conditional_spin, shots, seed)
        bloch = est.value
        digest["counts"] = {r.basis: r.plus_count for r in records}
        digest["shots"] = shots
        digest["seed"] = seed
        digest["stderr"] = list(est.stderr)
        if method == "strong":
            rng = np.random.default_rng((seed + 3) & ((1 << 64) - 1))
            p = int(rng.binomial(shots, p)) / shots
            digest["estimated_success_probability"] = p
    digest["bloch"] = list(bloch.as_tuple())

    if method == "weak":
        w_arm = weak_estimate(rotation_angles(bloch), alpha)
        w_first = w_arm if arm_index(arm) == 0 else 1 - w_arm
        digest["weak_value_estimate"] = w_first
        estimated = state_from_weak_value(w_first, pf)
    elif method == "strong":
        estimated = strong_estimate(bloch, p, alpha, arm, pf)
    else:
        raise ArgumentError(f"unknown method {method!r}")

    ref = pi if truth is None else truth
    return ReconstructionReport(
        estimated=estimated,
        method=method,
        alpha=alpha,
        fidelity_vs_truth=fidelity(estimated, ref),
        inputs_digest=digest,
    )
