"""Spherical triangles: sine, cosine and dual cosine laws, the Gram
determinant identity, and the triangle Wigner derivative with its inverse.

Conventions: radians throughout, side ``a`` opposite vertex/angle ``A``
and so on.  All inverse cosines use the principal branch ``[0, pi]``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DegenerateError, DomainError, Status, Validity

CLAMP_TOL = 1e-9
DEGENERACY_FLOOR = 1e-12


class TriangleSides(NamedTuple):
    a: float
    b: float
    c: float


class TriangleAngles(NamedTuple):
    A: float
    B: float
    C: float


def safe_arccos(q: float) -> float:
    """arccos that tolerates rounding just outside [-1, 1].

    Arguments within CLAMP_TOL of the boundary are clamped; anything further
    out raises DomainError rather than being silently folded back.
    """
    if not math.isfinite(q):
        raise DomainError(f"non-finite cosine {q!r}")
    if q > 1.0:
        if q > 1.0 + CLAMP_TOL:
            raise DomainError(f"cosine {q!r} exceeds 1")
        return 0.0
    if q < -1.0:
        if q < -1.0 - CLAMP_TOL:
            raise DomainError(f"cosine {q!r} below -1")
        return math.pi
    return math.acos(q)


def _sin_pair(x: float, y: float) -> float:
    sx, sy = math.sin(x), math.sin(y)
    if sx < DEGENERACY_FLOOR or sy < DEGENERACY_FLOOR:
        raise DomainError(f"sine factor below floor for ({x!r}, {y!r})")
    return sx * sy


def cosine_law_angle(opposite: float, adj1: float, adj2: float) -> float:
    """Interior angle facing side ``opposite`` of a triangle with the other
    two sides ``adj1`` and ``adj2``."""
    denom = _sin_pair(adj1, adj2)
    q = (math.cos(opposite) - math.cos(adj1) * math.cos(adj2)) / denom
    return safe_arccos(q)


def dual_cosine_law_side(opposite: float, adj1: float, adj2: float) -> float:
    """Side facing the angle ``opposite``, from the three interior angles."""
    denom = _sin_pair(adj1, adj2)
    q = (math.cos(opposite) + math.cos(adj1) * math.cos(adj2)) / denom
    return safe_arccos(q)


def triangle_angles_from_sides(sides) -> TriangleAngles:
    a, b, c = sides
    return TriangleAngles(
        cosine_law_angle(a, b, c),
        cosine_law_angle(b, c, a),
        cosine_law_angle(c, a, b),
    )


def triangle_sides_from_angles(angles) -> TriangleSides:
    A, B, C = angles
    return TriangleSides(
        dual_cosine_law_side(A, B, C),
        dual_cosine_law_side(B, C, A),
        dual_cosine_law_side(C, A, B),
    )


def triangle_gram(sides) -> np.ndarray:
    """3x3 length Gram matrix with vertices ordered v0, v1, v2.

    Side ``a`` joins v1 and v2, ``b`` joins v0 and v2, ``c`` joins v0 and v1.
    """
    a, b, c = sides
    ca, cb, cc = math.cos(a), math.cos(b), math.cos(c)
    return np.array([[1.0, cc, cb], [cc, 1.0, ca], [cb, ca, 1.0]])


def triangle_gram_det(sides) -> float:
    # closed-form expansion; agrees with np.linalg.det to rounding
    a, b, c = sides
    ca, cb, cc = math.cos(a), math.cos(b), math.cos(c)
    return 1.0 - ca * ca - cb * cb - cc * cc + 2.0 * ca * cb * cc


def triangle_wigner(sides) -> float:
    """dA/da with b, c held fixed, as sin(a) / sqrt(det G)."""
    det = triangle_gram_det(sides)
    if det < DEGENERACY_FLOOR:
        raise DegenerateError(f"triangle Gram determinant {det:.3e} below floor")
    return math.sin(sides[0]) / math.sqrt(det)


def triangle_inverse_wigner(angles) -> float:
    """da/dA with B, C held fixed, as sin(A) / (sin a sin B sin C)."""
    A, B, C = angles
    a = dual_cosine_law_side(A, B, C)
    sa = math.sin(a)
    if sa < DEGENERACY_FLOOR:
        raise DegenerateError(f"side {a!r} too close to 0 or pi")
    return math.sin(A) / (sa * math.sin(B) * math.sin(C))


def validate_triangle(sides) -> Validity:
    try:
        vals = [float(x) for x in sides]
    except (TypeError, ValueError):
        return Validity(Status.OUT_OF_RANGE, "non-numeric side")
    if len(vals) != 3 or not all(math.isfinite(x) for x in vals):
        return Validity(Status.OUT_OF_RANGE, "need three finite sides")
    if not all(0.0 < x < math.pi for x in vals):
        return Validity(Status.OUT_OF_RANGE, "side outside (0, pi)")
    det = triangle_gram_det(vals)
    if det < DEGENERACY_FLOOR:
        return Validity(Status.DEGENERATE, det)
    return Validity.valid()
