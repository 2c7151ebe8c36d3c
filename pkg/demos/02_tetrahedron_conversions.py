# Spherical tetrahedra: edge lengths, dihedral angles, and vertex figures
#
# Six edge lengths (arcs on S^3) pin down a tetrahedron up to rotation.  The
# six dihedral angles do the same.  Edges are ordered 01, 02, 03, 12, 13, 23,
# so edge k and edge 5-k are opposite.

import math

import numpy as np

from sphwigner.tetra import (
    EdgeId,
    TetLengths,
    dihedrals_from_lengths,
    dihedrals_from_vertices,
    gram_det,
    lengths_from_dihedrals,
    link_triangle,
    validate_lengths,
    vertices_from_lengths,
)

regular = TetLengths.uniform(math.pi / 3)
print("regular: det G =", gram_det(regular))
print("regular: dihedrals =", dihedrals_from_lengths(regular).values, "vs acos(1/4) =", math.acos(0.25))

L = TetLengths([1.0, 1.2, 0.8, 1.1, 0.9, 1.3])
print(validate_lengths(L))

# Route 1: through the triangle cut out around each vertex.
lk = link_triangle(L, 0)
print("link of vertex 0 has sides", np.round(lk.sides, 6))
A = dihedrals_from_lengths(L)

# Route 2: embed the four vertices in R^4 and take face normals.
V = vertices_from_lengths(L)
print("vertex norms:", np.linalg.norm(V, axis=1))
print("max route difference:", np.max(np.abs(A.as_array() - dihedrals_from_vertices(V).as_array())))

# And back.
back = lengths_from_dihedrals(A)
print("round trip error:", np.max(np.abs(back.as_array() - L.as_array())))

for e in EdgeId:
    print(e.label, "opposite", e.opposite.label, f"theta = {A[e]:.6f}")

# Stretch all edges to 2.0.  Each face is still a fine triangle, but the four
# faces no longer close up into a tetrahedron.
print(validate_lengths(TetLengths.uniform(2.0)))
