"""Weak values from forward and backward evolving states.

Two routes are provided and kept independent on purpose: matrix-element
quotients over explicit joint states (:func:`weak_value`,
:func:`generalized_weak_value`) and closed forms in the path amplitudes
(:func:`projection_weak_values`, :func:`modified_projection_weak_value`,
:func:`weak_ratio`). The test-suite checks one against the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegeneratePostSelection, UndefinedRatio
from .hilbert import (
    ALGEBRA_TOL,
    JointState,
    Operator,
    PathState,
    apply_operator,
    arm_index,
    inner,
)

DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class TwoStateVector:
    pre: JointState
    post: JointState


def weak_value(tsv: TwoStateVector, op: Operator) -> complex:
    """``<post|A|pre> / <post|pre>``."""
    overlap = inner(tsv.post, tsv.pre)
    if abs(overlap) <= DEGENERACY_TOL:
        raise DegeneratePostSelection(
            f"pre- and post-selected states are orthogonal (|<post|pre>| = {abs(overlap):.3g})"
        )
    return inner(tsv.post, apply_operator(op, tsv.pre)) / overlap


def generalized_weak_value(psi: JointState, p_post: Operator, op: Operator) -> complex:
    """Weak value under partial post-selection with projector ``p_post``.

    Returns ``<psi|P_post A|psi> / <psi|P_post|psi>``. For a rank-one
    ``P_post = |phi><phi|`` both matrix elements pick up the same factor
    ``<psi|phi>`` and the result coincides with :func:`weak_value`.
    """
    weight = inner(psi, apply_operator(p_post, psi)).real
    if weight <= DEGENERACY_TOL:
        raise DegeneratePostSelection(
            f"post-selection weight vanishes (<psi|P_post|psi> = {weight:.3g})"
        )
    return inner(psi, apply_operator(p_post @ op, psi)) / weight


def projection_weak_values(pi: PathState, pf: PathState) -> tuple[complex, complex]:
    """Weak values of the two path projectors for pre-state ``pi``, post-state ``pf``."""
    wa = pf.a.conjugate() * pi.a
    wb = pf.b.conjugate() * pi.b
    overlap = wa + wb
    if abs(overlap) <= DEGENERACY_TOL:
        raise DegeneratePostSelection("pre- and post-selected path states are orthogonal")
    return wa / overlap, wb / overlap


def _closed_form_terms(a: complex, b: complex, c: float) -> tuple[complex, complex]:
    ac, bc = a.conjugate(), b.conjugate()
    num_i = a * (bc * c + ac)
    num_ii = b * (ac * c + bc)
    return num_i, num_ii + num_i


def modified_projection_weak_value(pi: PathState, alpha: float, arm: str = "II") -> complex:
    """Closed-form weak value of the arm-I projector after a spin rotation by ``alpha``.

    Post-selection is on the symmetric path state. ``arm`` is the arm in
    which the spin is rotated. For arm I the expression is obtained by
    exchanging the path labels and taking the complement.
    """
    c = math.cos(alpha)
    if arm_index(arm) == 1:
        num, den = _closed_form_terms(pi.a, pi.b, c)
        if abs(den) <= DEGENERACY_TOL:
            raise DegeneratePostSelection("post-selection weight vanishes for this coupling")
        return num / den
    num, den = _closed_form_terms(pi.b, pi.a, c)
    if abs(den) <= DEGENERACY_TOL:
        raise DegeneratePostSelection("post-selection weight vanishes for this coupling")
    return 1 - num / den


def weak_ratio(pi: PathState, alpha: float) -> complex:
    """Ratio (P_I)_w / (P_II)_w for coupling in arm II; tends to a/b as alpha -> 0."""
    if abs(pi.b) <= ALGEBRA_TOL:
        raise UndefinedRatio("amplitude on path II vanishes")
    a, b, c = pi.a, pi.b, math.cos(alpha)
    den = b * (a.conjugate() * c + b.conjugate())
    if abs(den) <= DEGENERACY_TOL:
        raise UndefinedRatio("weak value of the path-II projector vanishes")
    return a * (b.conjugate() * c + a.conjugate()) / den


def amplitude_ratio(pi: PathState) -> complex:
    if abs(pi.b) <= ALGEBRA_TOL:
        raise UndefinedRatio("amplitude on path II vanishes")
    return pi.a / pi.b

