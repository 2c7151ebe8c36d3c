"""Spherical tetrahedra in S^3.

Edges are indexed by :class:`EdgeId` in the canonical order
01, 02, 03, 12, 13, 23.  The single-letter names used in the classical
treatment are a convention reconstructed from the Gram matrix layout and
the link dependencies, not read off a figure::

    e = l01   a = l02   b = l03   c = l12   d = l13   f = l23
    E = t01   A = t02   B = t03   C = t12   D = t13   F = t23

Lengths go to dihedral angles through the links of the vertices: the link
of v is the spherical triangle whose sides are the face angles at v, and
its interior angles are the dihedral angles along the edges through v.
The reverse direction runs the same two steps with the dual cosine law.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, NotRealizable, Status, Validity
from .sphtrig import (
    DEGENERACY_FLOOR,
    TriangleSides,
    cosine_law_angle,
    dual_cosine_law_side,
    safe_arccos,
    validate_triangle,
)

PD_FLOOR = 1e-12
ROUND_TRIP_TOL = 1e-8

__all__ = [
    "EdgeId",
    "TetLengths",
    "TetAngles",
    "LinkTriangle",
    "gram_from_lengths",
    "gram_det",
    "leading_minors",
    "vertices_from_lengths",
    "lengths_from_vertices",
    "face_normals",
    "dihedrals_from_vertices",
    "face_angle",
    "link_side_from_angles",
    "link_triangle",
    "dihedral_at",
    "dihedrals_from_lengths",
    "lengths_from_dihedrals",
    "validate_lengths",
    "validate_angles",
]


class EdgeId(enum.IntEnum):
    E01 = 0
    E02 = 1
    E03 = 2
    E12 = 3
    E13 = 4
    E23 = 5

    @property
    def pair(self) -> tuple[int, int]:
        return _PAIRS[self]

    @property
    def opposite(self) -> "EdgeId":
        return EdgeId(5 - self)

    @property
    def label(self) -> str:
        i, j = self.pair
        return f"{i}{j}"

    @classmethod
    def from_pair(cls, i: int, j: int) -> "EdgeId":
        key = (min(i, j), max(i, j))
        try:
            return cls(_PAIRS.index(key))
        except ValueError:
            raise ValueError(f"no edge between vertices {i} and {j}") from None

    @classmethod
    def parse(cls, text: str) -> "EdgeId":
        """Parse a two-digit label such as ``"01"`` or ``"32"``."""
        text = text.strip()
        if len(text) != 2 or not text.isdigit():
            raise ValueError(f"unknown edge {text!r}")
        return cls.from_pair(int(text[0]), int(text[1]))


_PAIRS = list(itertools.combinations(range(4), 2))

# edge index lookup for ordered or unordered vertex pairs
_EDGE = {}
for _k, (_i, _j) in enumerate(_PAIRS):
    _EDGE[_i, _j] = _EDGE[_j, _i] = _k


def _others(*verts: int) -> tuple[int, ...]:
    return tuple(v for v in range(4) if v not in verts)


class _EdgeValues:
    """Six radians indexed by EdgeId, a vertex pair, or a plain int."""

    __slots__ = ("_v",)

    def __init__(self, values):
        vals = tuple(float(x) for x in np.asarray(values, dtype=float).ravel())
        if len(vals) != 6:
            raise ValueError(f"expected six values, got {len(vals)}")
        self._v = vals

    def __getitem__(self, key) -> float:
        if isinstance(key, tuple):
            return self._v[_EDGE[key]]
        return self._v[int(key)]

    def __iter__(self):
        return iter(self._v)

    def __len__(self) -> int:
        return 6

    def __array__(self, dtype=None, copy=None):
        return np.array(self._v, dtype=dtype)

    def __eq__(self, other):
        return type(self) is type(other) and self._v == other._v

    def __hash__(self):
        return hash((type(self).__name__, self._v))

    def __repr__(self) -> str:
        body = ", ".join(f"{e.label}={x:.12g}" for e, x in zip(EdgeId, self._v))
        return f"{type(self).__name__}({body})"

    @property
    def values(self) -> tuple[float, ...]:
        return self._v

    def as_array(self) -> np.ndarray:
        return np.array(self._v)

    def replace(self, edge, value: float):
        vals = list(self._v)
        vals[int(edge)] = float(value)
        return type(self)(vals)

    @classmethod
    def uniform(cls, value: float):
        return cls([value] * 6)


class TetLengths(_EdgeValues):
    """Six edge lengths l_ij."""


class TetAngles(_EdgeValues):
    """Six interior dihedral angles, one per edge."""


@dataclass(frozen=True)
class LinkTriangle:
    """Link of ``vertex``: its sides are face angles at the vertex.

    ``others`` are the remaining vertices (j, k, l) in increasing order and
    the link vertices n_j, n_k, n_l point towards them.  ``sides`` is in the
    order (jk, jl, kl), so for v0 this is (alpha, beta, gamma).
    """

    vertex: int
    others: tuple[int, int, int]
    sides: TriangleSides

    def side(self, p: int, q: int) -> float:
        j, k, l = self.others
        pair = {p, q}
        if pair == {j, k}:
            return self.sides[0]
        if pair == {j, l}:
            return self.sides[1]
        if pair == {k, l}:
            return self.sides[2]
        raise KeyError((p, q))

    def angle_towards(self, p: int) -> float:
        """Interior angle of the link at n_p, i.e. the dihedral along edge vertex-p."""
        q, r = (x for x in self.others if x != p)
        return cosine_law_angle(self.side(q, r), self.side(p, q), self.side(p, r))


def gram_from_lengths(lengths: TetLengths) -> np.ndarray:
    G = np.eye(4)
    for e, (i, j) in enumerate(_PAIRS):
        G[i, j] = G[j, i] = math.cos(lengths[e])
    return G


def gram_det(lengths: TetLengths) -> float:
    return float(np.linalg.det(gram_from_lengths(lengths)))


def leading_minors(G: np.ndarray) -> np.ndarray:
    return np.array([np.linalg.det(G[:k, :k]) for k in range(1, G.shape[0] + 1)])


def vertices_from_lengths(lengths: TetLengths) -> np.ndarray:
    """Unit vectors in R^4 (one per row) realizing the given lengths.

    Rows are the Cholesky factor of the Gram matrix, so v0 is the first
    basis vector, v1 lies in the span of the first two, and so on.
    """
    G = gram_from_lengths(lengths)
    minors = leading_minors(G)
    if np.any(minors <= PD_FLOOR):
        raise NotRealizable(f"Gram matrix not positive definite, leading minors {minors}")
    try:
        return np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise NotRealizable(str(exc)) from exc


def lengths_from_vertices(verts) -> TetLengths:
    V = np.asarray(verts, dtype=float)
    out = []
    for i, j in _PAIRS:
        dot = float(V[i] @ V[j])
        if abs(dot) >= 1.0 - DEGENERACY_FLOOR:
            raise DegenerateError(f"vertices {i} and {j} coincide or are antipodal")
        out.append(math.acos(dot))
    return TetLengths(out)


def _hodge_normal(face: np.ndarray) -> np.ndarray:
    # vector orthogonal to the three rows of a 3x4 matrix (signed minors)
    return np.array(
        [(-1) ** m * np.linalg.det(np.delete(face, m, axis=1)) for m in range(4)]
    )


def face_normals(verts) -> np.ndarray:
    """Row k is the outward unit normal of the face opposite vertex k."""
    V = np.asarray(verts, dtype=float)
    W = np.empty((4, 4))
    for k in range(4):
        w = _hodge_normal(V[list(_others(k))])
        norm = np.linalg.norm(w)
        if norm < DEGENERACY_FLOOR:
            raise DegenerateError(f"face opposite vertex {k} is degenerate")
        w = w / norm
        side = float(w @ V[k])
        if abs(side) < DEGENERACY_FLOOR:
            raise DegenerateError(f"vertex {k} lies on the opposite face")
        W[k] = -w if side > 0 else w
    return W


def dihedrals_from_vertices(verts) -> TetAngles:
    W = face_normals(verts)
    out = []
    for e in EdgeId:
        k, l = e.opposite.pair
        out.append(safe_arccos(-float(W[k] @ W[l])))
    return TetAngles(out)


def face_angle(lengths: TetLengths, vertex: int, p: int, q: int) -> float:
    """Angle at ``vertex`` in the face (vertex, p, q)."""
    return cosine_law_angle(lengths[p, q], lengths[vertex, p], lengths[vertex, q])


def link_triangle(lengths: TetLengths, vertex: int) -> LinkTriangle:
    j, k, l = _others(vertex)
    sides = TriangleSides(
        face_angle(lengths, vertex, j, k),
        face_angle(lengths, vertex, j, l),
        face_angle(lengths, vertex, k, l),
    )
    return LinkTriangle(vertex, (j, k, l), sides)


def dihedral_at(lengths: TetLengths, edge: EdgeId, endpoint: int) -> float:
    """Dihedral along ``edge`` computed in the link of one of its endpoints."""
    i, j = edge.pair
    if endpoint not in (i, j):
        raise ValueError(f"vertex {endpoint} is not on edge {edge.label}")
    far = j if endpoint == i else i
    return link_triangle(lengths, endpoint).angle_towards(far)


def dihedrals_from_lengths(lengths: TetLengths) -> TetAngles:
    """All six dihedral angles, each computed in the link of the lower endpoint."""
    links = {}
    out = []
    for e in EdgeId:
        i, j = e.pair
        if i not in links:
            links[i] = link_triangle(lengths, i)
        out.append(links[i].angle_towards(j))
    return TetAngles(out)


def link_side_from_angles(angles: TetAngles, vertex: int, p: int, q: int) -> float:
    # face angle at vertex in face (vertex, p, q), via the dual law in Lk(vertex)
    (r,) = _others(vertex, p, q)
    return dual_cosine_law_side(angles[vertex, r], angles[vertex, p], angles[vertex, q])


def lengths_from_dihedrals(angles: TetAngles) -> TetLengths:
    """Closed-form inverse of :func:`dihedrals_from_lengths`.

    Edge kl is the side facing the apex i in the face (i, k, l), where i is
    the lower of the two vertices off the edge.  Its three face angles come
    from the dual law in the links of i, k and l, then the edge itself from
    the dual law in the face.
    """
    out = []
    try:
        for e in EdgeId:
            k, l = e.pair
            i = min(_others(k, l))
            at_i = link_side_from_angles(angles, i, k, l)
            at_k = link_side_from_angles(angles, k, i, l)
            at_l = link_side_from_angles(angles, l, i, k)
            out.append(dual_cosine_law_side(at_i, at_k, at_l))
    except DomainError as exc:
        raise NotRealizable(f"dihedral angles not realizable: {exc}") from exc
    return TetLengths(out)


def _in_open_range(vals) -> bool:
    return all(math.isfinite(x) and 0.0 < x < math.pi for x in vals)


def validate_lengths(lengths) -> Validity:
    try:
        L = lengths if isinstance(lengths, TetLengths) else TetLengths(lengths)
    except (TypeError, ValueError) as exc:
        return Validity(Status.OUT_OF_RANGE, str(exc))
    if not _in_open_range(L):
        return Validity(Status.OUT_OF_RANGE, "length outside (0, pi)")
    for v in range(4):
        p, q, r = _others(v)
        face = (L[q, r], L[p, r], L[p, q])
        check = validate_triangle(face)
        if not check:
            det = check.detail
            status = Status.NOT_REALIZABLE if det < -PD_FLOOR else Status.DEGENERATE
            return Validity(status, f"face opposite vertex {v}: det {det:.3e}")
    minors = leading_minors(gram_from_lengths(L))
    if np.any(minors < -PD_FLOOR):
        return Validity(Status.NOT_REALIZABLE, f"Gram leading minors {minors}")
    if np.any(minors <= PD_FLOOR):
        return Validity(Status.DEGENERATE, float(minors[-1]))
    return Validity.valid()


def validate_angles(angles) -> Validity:
    try:
        A = angles if isinstance(angles, TetAngles) else TetAngles(angles)
    except (TypeError, ValueError) as exc:
        return Validity(Status.OUT_OF_RANGE, str(exc))
    if not _in_open_range(A):
        return Validity(Status.OUT_OF_RANGE, "angle outside (0, pi)")
    try:
        L = lengths_from_dihedrals(A)
    except NotRealizable as exc:
        return Validity(Status.NOT_REALIZABLE, str(exc))
    except DegenerateError as exc:
        return Validity(Status.DEGENERATE, str(exc))
    check = validate_lengths(L)
    if not check:
        if check.status is Status.OUT_OF_RANGE:
            return Validity(Status.NOT_REALIZABLE, check.detail)
        return check
    try:
        back = dihedrals_from_lengths(L)
    except DomainError as exc:
        return Validity(Status.NOT_REALIZABLE, str(exc))
    residual = float(np.max(np.abs(back.as_array() - A.as_array())))
    if residual >= ROUND_TRIP_TOL:
        return Validity(Status.NOT_REALIZABLE, f"round-trip residual {residual:.3e}")
    return Validity.valid()
