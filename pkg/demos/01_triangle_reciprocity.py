# Spherical triangles: sides, angles, and the reciprocal derivative
#
# A triangle on the unit sphere is fixed by its three sides, or equally by its
# three angles.  Moving one side while holding the other two fixed moves the
# opposite angle, and the rate turns out to be the same in both directions.

import math

import numpy as np

from sphwigner.sphtrig import (
    triangle_angles_from_sides,
    triangle_gram_det,
    triangle_sides_from_angles,
    triangle_wigner,
)

# The octant triangle: every side and every angle is a right angle.
octant = (math.pi / 2,) * 3
print("octant angles:", triangle_angles_from_sides(octant))
print("octant Gram det:", triangle_gram_det(octant))

# Something less symmetric.
sides = (0.9, 1.2, 0.7)
A, B, C = triangle_angles_from_sides(sides)
print("angles:", np.round([A, B, C], 6))
print("back to sides:", np.round(triangle_sides_from_angles((A, B, C)), 12))

# Sine law: sin a / sin A is the same for every side.
print("sine ratios:", [math.sin(s) / math.sin(t) for s, t in zip(sides, (A, B, C))])

# dA/da with b, c fixed, against da/dA with B, C fixed.
h = 1e-6
a, b, c = sides
dA_da = (triangle_angles_from_sides((a + h, b, c))[0]
         - triangle_angles_from_sides((a - h, b, c))[0]) / (2 * h)
da_dA = (triangle_sides_from_angles((A + h, B, C))[0]
         - triangle_sides_from_angles((A - h, B, C))[0]) / (2 * h)
print(f"closed form {triangle_wigner(sides):.10f}")
print(f"dA/da       {dA_da:.10f}")
print(f"da/dA       {da_dA:.10f}")
