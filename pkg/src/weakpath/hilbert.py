"""Dense state and operator algebra for a two-path, spin-1/2 particle.

The joint space is path (x) spin, four dimensional, with the fixed ordered
basis ``(I up, I down, II up, II down)``. Spin is quantized along x, so
``up`` means |up_x> and ``down`` means |down_x>.

In that basis the Pauli matrices are::

    sigma_x = diag(1, -1)
    sigma_y = [[0, i], [-i, 0]]
    sigma_z = [[0, 1], [1, 0]]
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import ArgumentError, ConstructionError

Arm = Literal["I", "II"]
ARMS: tuple[Arm, Arm] = ("I", "II")

NORM_TOL = 1e-9
ALGEBRA_TOL = 1e-12

SIGMA_X = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[0, 1], [1, 0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def arm_index(arm: str) -> int:
    try:
        return ARMS.index(arm)  # type: ignore[arg-type]
    except ValueError:
        raise ArgumentError(f"arm must be 'I' or 'II', got {arm!r}") from None


def other_arm(arm: str) -> Arm:
    return ARMS[1 - arm_index(arm)]


def _check_finite(*values: complex) -> None:
    if not all(cmath.isfinite(complex(v)) for v in values):
        raise ConstructionError("amplitudes must be finite")


@dataclass(frozen=True)
class PathState:
    """Normalized path qubit ``a|I> + b|II>``.

    Construct through :func:`make_path_state` to normalize arbitrary input;
    the bare constructor only accepts pairs that are already normalized.
    """

    a: complex
    b: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        _check_finite(self.a, self.b)
        n2 = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(n2 - 1.0) > NORM_TOL:
            raise ConstructionError(f"path state not normalized (|a|^2+|b|^2 = {n2!r})")

    def amplitude(self, arm: str) -> complex:
        return (self.a, self.b)[arm_index(arm)]

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)

    def swapped(self) -> PathState:
        """The same state with the path labels exchanged."""
        return PathState(self.b, self.a)

    def canonical(self) -> PathState:
        """Representative of the ray with ``a`` real and non-negative.

        When ``|a|`` vanishes the phase is fixed on ``b`` instead.
        """
        pivot = self.a if abs(self.a) >= ALGEBRA_TOL else self.b
        if pivot == 0:
            return self
        phase = abs(pivot) / pivot
        a, b = self.a * phase, self.b * phase
        if abs(self.a) >= ALGEBRA_TOL:
            a = complex(a.real, 0.0)
        else:
            b = complex(b.real, 0.0)
        return PathState(a, b)


def make_path_state(a: complex, b: complex) -> PathState:
    a, b = complex(a), complex(b)
    _check_finite(a, b)
    n2 = abs(a) ** 2 + abs(b) ** 2
    if n2 <= 1e-12:
        raise ConstructionError("cannot normalize the zero path vector")
    n = math.sqrt(n2)
    return PathState(a / n, b / n)


SYMMETRIC = PathState(1 / math.sqrt(2), 1 / math.sqrt(2))


@dataclass(frozen=True)
class SpinState:
    """Spin amplitudes on |up_x>, |down_x>."""

    up: complex
    down: complex
    normalized: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "up", complex(self.up))
        object.__setattr__(self, "down", complex(self.down))
        _check_finite(self.up, self.down)
        if self.normalized:
            n2 = abs(self.up) ** 2 + abs(self.down) ** 2
            if abs(n2 - 1.0) > NORM_TOL:
                raise ConstructionError(f"spin state not normalized (norm^2 = {n2!r})")

    def to_array(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)

    def norm_squared(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2


UP_X = SpinState(1, 0)
DOWN_X = SpinState(0, 1)


def _frozen(arr, shape: tuple[int, ...]) -> np.ndarray:
    out = np.array(arr, dtype=complex).reshape(shape)
    if not np.all(np.isfinite(out)):
        raise ConstructionError("entries must be finite")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class JointState:
    """Four amplitudes over ``(I up, I down, II up, II down)``."""

    vec: np.ndarray = field(repr=True)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vec", _frozen(self.vec, (4,)))

    @classmethod
    def from_amplitudes(cls, *c: complex) -> JointState:
        return cls(np.array(c, dtype=complex))

    def c(self, arm: str, spin: str) -> complex:
        s = {"up": 0, "down": 1}[spin]
        return complex(self.vec[2 * arm_index(arm) + s])

    def arm_block(self, arm: str) -> np.ndarray:
        i = 2 * arm_index(arm)
        return self.vec[i : i + 2]

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def allclose(self, other: JointState, atol: float = ALGEBRA_TOL) -> bool:
        return bool(np.allclose(self.vec, other.vec, rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class Operator:
    """4x4 complex matrix in the joint basis."""

    m: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _frozen(self.m, (4, 4)))

    def __matmul__(self, other: Operator) -> Operator:
        return Operator(self.m @ other.m)

    def __add__(self, other: Operator) -> Operator:
        return Operator(self.m + other.m)

    def __sub__(self, other: Operator) -> Operator:
        return Operator(self.m - other.m)

    def __rmul__(self, scalar: complex) -> Operator:
        return Operator(complex(scalar) * self.m)

    @property
    def dagger(self) -> Operator:
        return Operator(self.m.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.m))

    def is_projector(self, atol: float = ALGEBRA_TOL) -> bool:
        m = self.m
        return bool(
            np.allclose(m, m.conj().T, rtol=0.0, atol=atol)
            and np.allclose(m @ m, m, rtol=0.0, atol=atol)
        )


def identity() -> Operator:
    return Operator(np.eye(4, dtype=complex))


def tensor(p: PathState, s: SpinState) -> JointState:
    return JointState(np.kron(p.to_array(), s.to_array()))


def inner(x: JointState, y: JointState) -> complex:
    """Dirac bracket <x|y>, antilinear in ``x``."""
    return complex(np.vdot(x.vec, y.vec))


def apply_operator(op: Operator, s: JointState) -> JointState:
    return JointState(op.m @ s.vec)


def expectation(s: JointState, op: Operator) -> complex:
    return inner(s, apply_operator(op, s))


def path_operator(m2) -> Operator:
    """Lift a 2x2 path-space matrix to ``m2 (x) 1_spin``."""
    return Operator(np.kron(np.asarray(m2, dtype=complex), IDENTITY_2))


def arm_local(arm: str, u2) -> Operator:
    """Apply ``u2`` to the spin in ``arm`` only; the other arm is untouched."""
    proj = np.zeros((2, 2), dtype=complex)
    proj[arm_index(arm), arm_index(arm)] = 1.0
    rest = np.eye(2, dtype=complex) - proj
    return Operator(np.kron(proj, np.asarray(u2, dtype=complex)) + np.kron(rest, IDENTITY_2))


def path_projector(arm: str) -> Operator:
    proj = np.zeros((2, 2), dtype=complex)
    proj[arm_index(arm), arm_index(arm)] = 1.0
    return path_operator(proj)


def postselect_projector(pf: PathState) -> Operator:
    f = pf.to_array()
    return path_operator(np.outer(f, f.conj()))
