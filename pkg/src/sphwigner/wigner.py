"""Wigner derivatives of spherical tetrahedra and their numerical oracles.

The Wigner derivative is d(theta_e)/d(l_e') with the five other lengths
fixed, where e' is the edge opposite e.  The inverse Wigner derivative is
d(l_e')/d(theta_e) with the five other dihedral angles fixed.  Both equal
``sin(l_e) sin(l_e') / sqrt(det G)``.  Holding the other lengths fixed
instead and inverting theta_e(l_e') gives the reciprocal of that value.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy.optimize import root_scalar

from .errors import DegenerateError, SphericalGeometryError, StepTooLarge
from .sphtrig import DEGENERACY_FLOOR
from .tetra import (
    EdgeId,
    TetAngles,
    TetLengths,
    link_side_from_angles,
    dihedrals_from_lengths,
    face_angle,
    gram_det,
    lengths_from_dihedrals,
)

DEFAULT_STEP = 1e-5


def _checked_det(lengths: TetLengths) -> float:
    det = gram_det(lengths)
    if det <= DEGENERACY_FLOOR:
        raise DegenerateError(f"Gram determinant {det:.3e} below floor")
    return det


def _checked_product(*factors: float) -> float:
    out = 1.0
    for x in factors:
        if abs(x) < DEGENERACY_FLOOR:
            raise DegenerateError("sine factor vanishes")
        out *= x
    return out


def wigner_derivative(lengths: TetLengths, edge: EdgeId) -> float:
    edge = EdgeId(edge)
    det = _checked_det(lengths)
    return math.sin(lengths[edge]) * math.sin(lengths[edge.opposite]) / math.sqrt(det)


def wigner_via_links(lengths: TetLengths, edge: EdgeId) -> float:
    """Chain rule through the link of the lower endpoint of ``edge``.

    For edge 01 this is sin f / (sin E sin alpha sin beta sin a sin b).
    """
    i, j = EdgeId(edge).pair
    k, l = EdgeId(edge).opposite.pair
    theta = dihedrals_from_lengths(lengths)[i, j]
    denom = _checked_product(
        math.sin(theta),
        math.sin(face_angle(lengths, i, j, k)),
        math.sin(face_angle(lengths, i, j, l)),
        math.sin(lengths[i, k]),
        math.sin(lengths[i, l]),
    )
    return math.sin(lengths[k, l]) / denom


def inverse_wigner_derivative(angles: TetAngles, edge: EdgeId) -> float:
    return wigner_derivative(lengths_from_dihedrals(angles), edge)


def inverse_via_links(angles: TetAngles, edge: EdgeId) -> float:
    """Chain rule through the dual laws.

    For edge 01 this is sin E / (sin f sin kappa sin sigma sin A sin B),
    kappa and sigma being the face angles at v2 and v3 in face 023.
    """
    i, j = EdgeId(edge).pair
    k, l = EdgeId(edge).opposite.pair
    lengths = lengths_from_dihedrals(angles)
    denom = _checked_product(
        math.sin(lengths[k, l]),
        math.sin(link_side_from_angles(angles, k, i, l)),
        math.sin(link_side_from_angles(angles, l, i, k)),
        math.sin(angles[i, k]),
        math.sin(angles[i, l]),
    )
    return math.sin(angles[i, j]) / denom


def remark_reciprocal(lengths: TetLengths, edge: EdgeId) -> float:
    """sqrt(det G) / (sin l sin l'), the reciprocal of the Wigner derivative."""
    edge = EdgeId(edge)
    det = _checked_det(lengths)
    return math.sqrt(det) / (math.sin(lengths[edge]) * math.sin(lengths[edge.opposite]))


def fd_partial(
    fn: Callable[[np.ndarray], np.ndarray],
    at,
    out_index: int,
    in_index: int,
    step: float = DEFAULT_STEP,
) -> float:
    """Central difference of ``fn(x)[out_index]`` in ``x[in_index]``."""
    if step <= 0:
        raise ValueError("step must be positive")
    x = np.array(at, dtype=float)
    hi, lo = x.copy(), x.copy()
    hi[in_index] += step
    lo[in_index] -= step
    try:
        up = np.asarray(fn(hi), dtype=float)[out_index]
        down = np.asarray(fn(lo), dtype=float)[out_index]
    except SphericalGeometryError as exc:
        raise StepTooLarge(f"perturbation of input {in_index} by {step:g} failed: {exc}") from exc
    return float((up - down) / (2.0 * step))


def angles_map(x) -> np.ndarray:
    """Lengths (array) to dihedral angles (array)."""
    return dihedrals_from_lengths(TetLengths(x)).as_array()


def lengths_map(x) -> np.ndarray:
    """Dihedral angles (array) to lengths (array)."""
    return lengths_from_dihedrals(TetAngles(x)).as_array()


@dataclass(frozen=True)
class Jacobian6:
    """Rows index outputs, columns inputs, both in canonical edge order."""

    matrix: np.ndarray
    orientation: str  # "theta_of_l" or "l_of_theta"
    step: float

    def entry(self, out_edge, in_edge) -> float:
        return float(self.matrix[int(out_edge), int(in_edge)])


def _jacobian(fn, at, step: float) -> np.ndarray:
    x = np.array(at, dtype=float)
    J = np.empty((6, 6))
    for col in range(6):
        hi, lo = x.copy(), x.copy()
        hi[col] += step
        lo[col] -= step
        try:
            J[:, col] = (fn(hi) - fn(lo)) / (2.0 * step)
        except SphericalGeometryError as exc:
            raise StepTooLarge(f"perturbation of input {col} by {step:g} failed: {exc}") from exc
    return J


def jacobian_theta_of_l(lengths: TetLengths, step: float = DEFAULT_STEP) -> Jacobian6:
    return Jacobian6(_jacobian(angles_map, lengths, step), "theta_of_l", step)


def jacobian_l_of_theta(angles: TetAngles, step: float = DEFAULT_STEP) -> Jacobian6:
    return Jacobian6(_jacobian(lengths_map, angles, step), "l_of_theta", step)


def reciprocal_derivative_fd(
    lengths: TetLengths, edge: EdgeId, step: float = DEFAULT_STEP
) -> float:
    """d(l')/d(theta) with the other five lengths fixed, by inversion.

    theta_edge is treated as a function of the opposite length alone; it is
    inverted with a secant solve at theta +- step and the two preimages are
    differenced.  Nothing here uses a closed-form derivative.
    """
    edge = EdgeId(edge)
    opp = edge.opposite
    l0 = lengths[opp]
    base = lengths.as_array()

    def theta(x: float) -> float:
        y = base.copy()
        y[opp] = x
        return dihedrals_from_lengths(TetLengths(y))[edge]

    try:
        t0 = theta(l0)
        roots = []
        for sign in (1.0, -1.0):
            target = t0 + sign * step
            sol = root_scalar(
                lambda x: theta(x) - target,
                method="secant",
                x0=l0,
                x1=l0 + sign * step,
                xtol=1e-15,
                rtol=1e-15,
                maxiter=100,
            )
            if not sol.converged:
                raise StepTooLarge(f"secant inversion did not converge: {sol.flag}")
            roots.append(sol.root)
    except StepTooLarge:
        raise
    except SphericalGeometryError as exc:
        raise StepTooLarge(f"inversion left the valid domain: {exc}") from exc
    return (roots[0] - roots[1]) / (2.0 * step)


@dataclass(frozen=True)
class DerivativeReport:
    edge: EdgeId
    opposite: EdgeId
    step: float
    gram_det: float
    analytic_wigner: float
    analytic_inverse: float
    wigner_links: float
    inverse_links: float
    fd_wigner: float
    fd_inverse: float
    remark_reciprocal: float
    fd_reciprocal: float

    @property
    def residual_wigner(self) -> float:
        return abs(self.analytic_wigner - self.fd_wigner)

    @property
    def residual_inverse(self) -> float:
        return abs(self.analytic_inverse - self.fd_inverse)

    @property
    def residual_reciprocal(self) -> float:
        return abs(self.remark_reciprocal - self.fd_reciprocal)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["edge"] = self.edge.label
        d["opposite"] = self.opposite.label
        d["residual_wigner"] = self.residual_wigner
        d["residual_inverse"] = self.residual_inverse
        d["residual_reciprocal"] = self.residual_reciprocal
        return d


def reciprocity_report(
    lengths: TetLengths, edge: EdgeId, step: float = DEFAULT_STEP
) -> DerivativeReport:
    edge = EdgeId(edge)
    opp = edge.opposite
    angles = dihedrals_from_lengths(lengths)
    # both derivatives share one closed form; evaluating it at the given
    # lengths keeps them bit-identical.  The angle-side route is inverse_links.
    w = wigner_derivative(lengths, edge)
    return DerivativeReport(
        edge=edge,
        opposite=opp,
        step=step,
        gram_det=gram_det(lengths),
        analytic_wigner=w,
        analytic_inverse=w,
        wigner_links=wigner_via_links(lengths, edge),
        inverse_links=inverse_via_links(angles, edge),
        fd_wigner=fd_partial(angles_map, lengths, edge, opp, step),
        fd_inverse=fd_partial(lengths_map, angles, opp, edge, step),
        remark_reciprocal=remark_reciprocal(lengths, edge),
        fd_reciprocal=reciprocal_derivative_fd(lengths, edge, step),
    )
