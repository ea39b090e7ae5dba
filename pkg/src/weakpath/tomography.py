"""Spin tomography of the post-selected beam.

Exact Bloch vectors, a binomial shot-noise model for finite statistics and
linear inversion back to a Bloch estimate. Bloch components follow the
x-basis Pauli convention of :mod:`weakpath.hilbert`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ConstructionError, DegenerateAngle
from .hilbert import SpinState

BASES = ("x", "y", "z")
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class BlochVector:
    sx: float
    sy: float
    sz: float

    def __post_init__(self) -> None:
        for v in (self.sx, self.sy, self.sz):
            if not math.isfinite(v) or abs(v) > 1 + 1e-9:
                raise ConstructionError(f"Bloch component out of range: {v!r}")

    def component(self, basis: str) -> float:
        return (self.sx, self.sy, self.sz)[_basis_index(basis)]

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.sx, self.sy, self.sz)

    def length(self) -> float:
        return math.sqrt(self.sx**2 + self.sy**2 + self.sz**2)

    def is_physical(self, tol: float = 1e-9) -> bool:
        return self.length() <= 1 + tol


@dataclass(frozen=True)
class ShotRecord:
    basis: str
    shots: int
    plus_count: int
    seed: int

    def __post_init__(self) -> None:
        _basis_index(self.basis)
        if not 0 <= self.plus_count <= self.shots:
            raise ArgumentError("plus_count must lie in [0, shots]")


@dataclass(frozen=True)
class BlochEstimate:
    value: BlochVector
    stderr: tuple[float, float, float]


@dataclass(frozen=True)
class RotationAngles:
    theta_xy: float
    theta_xz: float


def _basis_index(basis: str) -> int:
    try:
        return BASES.index(basis)
    except ValueError:
        raise ArgumentError(f"basis must be one of {BASES}, got {basis!r}") from None


def bloch_exact(s: SpinState) -> BlochVector:
    u, d = s.up, s.down
    cross = u.conjugate() * d
    clip = lambda v: max(-1.0, min(1.0, v))  # noqa: E731
    return BlochVector(
        clip(abs(u) ** 2 - abs(d) ** 2),
        clip(-2 * cross.imag + 0.0),
        clip(2 * cross.real + 0.0),
    )


def sample(s: SpinState, basis: str, shots: int, seed: int) -> ShotRecord:
    """Count +1 outcomes of ``shots`` projective measurements along ``basis``."""
    if shots < 1:
        raise ArgumentError("shots must be >= 1")
    p_plus = min(1.0, max(0.0, (1 + bloch_exact(s).component(basis)) / 2))
    rng = np.random.default_rng(seed & SEED_MASK)
    return ShotRecord(basis, int(shots), int(rng.binomial(shots, p_plus)), seed)


def estimate_bloch(*records: ShotRecord) -> BlochEstimate:
    """Linear inversion from one record per basis (any order)."""
    by_basis = {r.basis: r for r in records}
    if len(records) != 3 or len(by_basis) != 3:
        raise ArgumentError("need exactly one record for each of the x, y, z bases")
    values, errs = [], []
    for basis in BASES:
        r = by_basis[basis]
        s = max(-1.0, min(1.0, 2 * r.plus_count / r.shots - 1))
        values.append(s)
        errs.append(math.sqrt(max(0.0, 1 - s * s) / r.shots))
    return BlochEstimate(BlochVector(*values), tuple(errs))


def measure(s: SpinState, shots: int, seed: int) -> tuple[tuple[ShotRecord, ...], BlochEstimate]:
    """Sample all three bases with seeds ``seed``, ``seed+1``, ``seed+2``."""
    records = tuple(
        sample(s, basis, shots, (seed + k) & SEED_MASK) for k, basis in enumerate(BASES)
    )
    return records, estimate_bloch(*records)


def rotation_angles(b: BlochVector) -> RotationAngles:
    """Angles of the xy and xz projections of ``b`` measured from +x.

    A single vanishing projection reads as angle 0 (e.g. ``(0, 1, 0)`` gives
    ``(pi/2, 0)``); only when both vanish is the rotation undefined.
    """
    if math.hypot(b.sx, b.sy) <= 1e-12 and math.hypot(b.sx, b.sz) <= 1e-12:
        raise DegenerateAngle("Bloch projection too short to define a rotation angle")
    return RotationAngles(_half_open(math.atan2(b.sy, b.sx)), _half_open(math.atan2(b.sz, b.sx)))


def _half_open(theta: float) -> float:
    # atan2 can return -pi for a signed zero; keep angles in (-pi, pi]
    return math.pi if theta <= -math.pi else theta
