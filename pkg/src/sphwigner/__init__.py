"""Trigonometry of spherical triangles and tetrahedra, with Wigner derivatives."""

from .errors import (
    DegenerateError,
    DomainError,
    ExhaustedError,
    NotRealizable,
    SphericalGeometryError,
    Status,
    StepTooLarge,
    Validity,
)
from .sampling import SampleConfig, perturb, sample_tetrahedra
from .sphtrig import (
    TriangleAngles,
    TriangleSides,
    cosine_law_angle,
    dual_cosine_law_side,
    triangle_angles_from_sides,
    triangle_gram_det,
    triangle_inverse_wigner,
    triangle_sides_from_angles,
    triangle_wigner,
    validate_triangle,
)
from .tetra import (
    EdgeId,
    TetAngles,
    TetLengths,
    dihedrals_from_lengths,
    dihedrals_from_vertices,
    gram_det,
    gram_from_lengths,
    lengths_from_dihedrals,
    lengths_from_vertices,
    link_triangle,
    validate_angles,
    validate_lengths,
    vertices_from_lengths,
)
from .wigner import (
    DerivativeReport,
    Jacobian6,
    fd_partial,
    inverse_via_links,
    inverse_wigner_derivative,
    jacobian_l_of_theta,
    jacobian_theta_of_l,
    reciprocity_report,
    wigner_derivative,
    wigner_via_links,
)

__version__ = "0.1.0"
