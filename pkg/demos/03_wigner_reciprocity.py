# The Wigner derivative of a spherical tetrahedron
#
# Perturb edge e and watch the dihedral angle at the opposite edge e'.  The
# rate d(theta_e')/d(l_e) has a closed form, sin l_e sin l_e' / sqrt(det G),
# and the rate d(l_e')/d(theta_e) for the inverse map has the same value.

import math

from sphwigner.tetra import EdgeId, TetLengths, dihedrals_from_lengths
from sphwigner.wigner import (
    inverse_via_links,
    reciprocity_report,
    remark_reciprocal,
    wigner_derivative,
    wigner_via_links,
)

regular = TetLengths.uniform(math.pi / 3)
print("regular:", wigner_derivative(regular, EdgeId.E01), "= 0.75 / sqrt(5/16) =", 0.75 / math.sqrt(5 / 16))

L = TetLengths([1.0, 1.2, 0.8, 1.1, 0.9, 1.3])
A = dihedrals_from_lengths(L)
for e in EdgeId:
    print(f"{e.label}: Gram form {wigner_derivative(L, e):.12f}"
          f"  link chain {wigner_via_links(L, e):.12f}"
          f"  from angles {inverse_via_links(A, e):.12f}")

# A full report with central differences for both directions.
r = reciprocity_report(L, EdgeId.E02)
for k, v in r.to_dict().items():
    print(f"  {k:18} {v}")

# Holding different things fixed gives a different partial derivative.  With
# the other five dihedrals fixed instead of the other five lengths, the rate
# is the reciprocal.
print("reciprocal:", remark_reciprocal(L, EdgeId.E02), "fd:", r.fd_reciprocal)
