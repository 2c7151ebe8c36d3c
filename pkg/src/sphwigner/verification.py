"""Batch residuals for the identities relating lengths, angles and derivatives.

Every check is reduced to a non-negative residual, relative where the
compared quantity has a natural scale.  Residual classes:

    wigner_fd          Wigner derivative vs central difference of theta(l)
    inverse_fd         inverse Wigner derivative vs central difference of l(theta)
    reciprocity_fd     the two finite differences against each other
    reciprocal_fd      secant inversion of theta(l') vs sqrt(det G)/(sin l sin l')
    triangle_gram      triangle Gram determinant identity, faces and links
    tetra_gram         tetrahedron Gram determinant identity, all 12 labelings
    gamma_e            link angle vs dihedral from face normals
    link_route         chain-rule forms vs the Gram forms of both derivatives
    endpoint           dihedral computed in the link of either endpoint
    sine_law           sine law in every face and every link
    round_trip         lengths -> angles -> lengths, max-norm
    vertex_round_trip  lengths -> vertices -> lengths, max-norm
    jacobian_product   J(theta of l) J(l of theta) - I, max-norm
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SphericalGeometryError, StepTooLarge
from .sphtrig import triangle_angles_from_sides, triangle_gram_det
from .tetra import (
    EdgeId,
    TetLengths,
    dihedral_at,
    dihedrals_from_lengths,
    dihedrals_from_vertices,
    face_angle,
    gram_det,
    lengths_from_dihedrals,
    lengths_from_vertices,
    link_triangle,
    vertices_from_lengths,
)
from .wigner import (
    DEFAULT_STEP,
    inverse_via_links,
    jacobian_l_of_theta,
    jacobian_theta_of_l,
    reciprocity_report,
    wigner_via_links,
)

RESIDUAL_CLASSES = (
    "wigner_fd",
    "inverse_fd",
    "reciprocity_fd",
    "reciprocal_fd",
    "triangle_gram",
    "tetra_gram",
    "gamma_e",
    "link_route",
    "endpoint",
    "sine_law",
    "round_trip",
    "vertex_round_trip",
    "jacobian_product",
)


def _rel(x: float, ref: float) -> float:
    return abs(x - ref) / max(abs(ref), 1e-300)


def triangle_gram_residual(sides) -> float:
    det = triangle_gram_det(sides)
    A = triangle_angles_from_sides(sides)[0]
    rhs = (math.sin(A) * math.sin(sides[1]) * math.sin(sides[2])) ** 2
    return abs(det - rhs) / max(1.0, det)


def sine_law_residual(sides) -> float:
    angles = triangle_angles_from_sides(sides)
    ratios = [math.sin(s) / math.sin(a) for s, a in zip(sides, angles)]
    return (max(ratios) - min(ratios)) / max(ratios)


def _faces(lengths: TetLengths):
    for v in range(4):
        p, q, r = (x for x in range(4) if x != v)
        yield (lengths[q, r], lengths[p, r], lengths[p, q])


def identity_residuals(lengths: TetLengths) -> dict[str, float]:
    """Closed-form identities only; no finite differences."""
    det = gram_det(lengths)
    sqrt_det = math.sqrt(det)
    links = [link_triangle(lengths, v) for v in range(4)]
    triangles = list(_faces(lengths)) + [lk.sides for lk in links]

    out = {
        "triangle_gram": max(triangle_gram_residual(t) for t in triangles),
        "sine_law": max(sine_law_residual(t) for t in triangles),
    }

    tetra_gram = 0.0
    for i, j in itertools.permutations(range(4), 2):
        k, l = (x for x in range(4) if x not in (i, j))
        rhs = (
            math.sin(lengths[i, j])
            * math.sin(lengths[i, k])
            * math.sin(lengths[i, l])
            * math.sin(face_angle(lengths, i, j, k))
            * math.sin(face_angle(lengths, i, j, l))
            * math.sin(dihedral_at(lengths, EdgeId.from_pair(i, j), i))
        )
        tetra_gram = max(tetra_gram, _rel(rhs, sqrt_det))
    out["tetra_gram"] = tetra_gram

    verts = vertices_from_lengths(lengths)
    by_normals = dihedrals_from_vertices(verts)
    gamma_e = endpoint = 0.0
    for e in EdgeId:
        i, j = e.pair
        at_i = dihedral_at(lengths, e, i)
        at_j = dihedral_at(lengths, e, j)
        gamma_e = max(gamma_e, _rel(at_i, by_normals[e]), _rel(at_j, by_normals[e]))
        endpoint = max(endpoint, _rel(at_i, at_j))
    out["gamma_e"] = gamma_e
    out["endpoint"] = endpoint

    angles = dihedrals_from_lengths(lengths)
    back = lengths_from_dihedrals(angles)
    out["round_trip"] = float(np.max(np.abs(back.as_array() - lengths.as_array())))
    again = lengths_from_vertices(verts)
    out["vertex_round_trip"] = float(np.max(np.abs(again.as_array() - lengths.as_array())))

    link_route = 0.0
    for e in EdgeId:
        w = math.sin(lengths[e]) * math.sin(lengths[e.opposite]) / sqrt_det
        link_route = max(
            link_route,
            _rel(wigner_via_links(lengths, e), w),
            _rel(inverse_via_links(angles, e), w),
        )
    out["link_route"] = link_route
    return out


def derivative_residuals(lengths: TetLengths, step: float = DEFAULT_STEP) -> dict[str, float]:
    """Finite-difference residuals over all six edges, relative."""
    out = dict.fromkeys(("wigner_fd", "inverse_fd", "reciprocity_fd", "reciprocal_fd"), 0.0)
    for e in EdgeId:
        r = reciprocity_report(lengths, e, step)
        out["wigner_fd"] = max(out["wigner_fd"], _rel(r.fd_wigner, r.analytic_wigner))
        out["inverse_fd"] = max(out["inverse_fd"], _rel(r.fd_inverse, r.analytic_inverse))
        out["reciprocity_fd"] = max(out["reciprocity_fd"], _rel(r.fd_inverse, r.fd_wigner))
        out["reciprocal_fd"] = max(out["reciprocal_fd"], _rel(r.fd_reciprocal, r.remark_reciprocal))
    return out


def jacobian_product_residual(lengths: TetLengths, step: float = DEFAULT_STEP) -> float:
    J1 = jacobian_theta_of_l(lengths, step).matrix
    J2 = jacobian_l_of_theta(dihedrals_from_lengths(lengths), step).matrix
    return float(np.max(np.abs(J1 @ J2 - np.eye(6))))


def _with_retry(fn, lengths, step):
    """Run ``fn(lengths, step)``, retrying once at step/10 on a domain exit."""
    try:
        return fn(lengths, step), step
    except StepTooLarge:
        return fn(lengths, step / 10.0), step / 10.0


@dataclass
class SampleResult:
    index: int
    residuals: dict[str, float] = field(default_factory=dict)
    step_used: float = DEFAULT_STEP
    skipped: str | None = None


@dataclass
class VerifySummary:
    results: list[SampleResult]
    tol: float

    @property
    def checked(self) -> list[SampleResult]:
        return [r for r in self.results if r.skipped is None]

    @property
    def skipped(self) -> list[SampleResult]:
        return [r for r in self.results if r.skipped is not None]

    def max_residuals(self) -> dict[str, float]:
        # reduced in sample order for reproducibility
        out = dict.fromkeys(RESIDUAL_CLASSES, 0.0)
        for r in self.checked:
            for k, v in r.residuals.items():
                out[k] = max(out[k], v)
        return out

    def failures(self) -> dict[str, int]:
        out = dict.fromkeys(RESIDUAL_CLASSES, 0)
        for r in self.checked:
            for k, v in r.residuals.items():
                if not v <= self.tol:
                    out[k] += 1
        return out

    @property
    def n_failed(self) -> int:
        return sum(
            1 for r in self.checked if any(not v <= self.tol for v in r.residuals.values())
        )

    @property
    def passed(self) -> bool:
        return not self.skipped and self.n_failed == 0

    def to_dict(self) -> dict:
        return {
            "count": len(self.results),
            "checked": len(self.checked),
            "passed": len(self.checked) - self.n_failed,
            "failed": self.n_failed,
            "skipped": len(self.skipped),
            "tol": self.tol,
            "ok": self.passed,
            "max_residuals": self.max_residuals(),
            "failures_by_class": self.failures(),
            "skips": [{"index": r.index, "reason": r.skipped} for r in self.skipped],
        }


def verify_sample(
    index: int, lengths: TetLengths, step: float = DEFAULT_STEP, jacobian: bool = True
) -> SampleResult:
    result = SampleResult(index, step_used=step)
    try:
        result.residuals.update(identity_residuals(lengths))
        fd, used = _with_retry(derivative_residuals, lengths, step)
        result.residuals.update(fd)
        result.step_used = used
        if jacobian:
            jp, _ = _with_retry(jacobian_product_residual, lengths, step)
            result.residuals["jacobian_product"] = jp
    except SphericalGeometryError as exc:
        result.residuals.clear()
        result.skipped = f"{type(exc).__name__}: {exc}"
    return result


def verify_population(samples, tol: float, step: float = DEFAULT_STEP) -> VerifySummary:
    results = [verify_sample(n, L, step) for n, L in enumerate(samples)]
    return VerifySummary(results, tol)
