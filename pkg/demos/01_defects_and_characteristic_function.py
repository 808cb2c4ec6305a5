"""Defect operators and the characteristic function of a contraction.

We validate two small contractions, inspect their defect data, and evaluate
the analytic defect-to-defect matrix function on the disc.
"""

import numpy as np

from cnumodel import char_function, char_identity_residual, is_cnu, validate

# The 2x2 nilpotent Jordan block is the smallest genuinely non-normal
# contraction: both defects have rank one.
jordan = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
c = validate(jordan)

print("operator:\n", c.t.real)
print("D_T  =\n", np.round(c.d_t.real, 12))
print("D_T* =\n", np.round(c.d_tstar.real, 12))
print("defect ranks:", c.defect_t.dim, c.defect_tstar.dim)
print("completely non-unitary:", is_cnu(c).is_cnu)

# In the rank-one defect bases the characteristic function is the scalar
# z^2: the operator shifts e2 to e1, so two applications of z are needed to
# travel from the first defect direction to the second.
for z in (0.0, 0.3, 0.5j, -0.8):
    theta = char_function(c, z)[0, 0]
    print(f"theta({z!s:>6}) = {theta:.6f}   (z^2 = {z**2:.6f})")

# The algebraic identity theta(z) D_T = D_T* (I - zT*)^{-1} (z - T) holds to
# machine precision everywhere on the disc.
grid = [r * np.exp(2j * np.pi * k / 8) for r in (0.2, 0.5, 0.9) for k in range(8)]
print("max identity residual on grid:",
      max(char_identity_residual(c, z) for z in grid))

# A scaled unitary keeps ||theta|| well below 1 inside the disc.
rng = np.random.default_rng(0)
g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
q, _ = np.linalg.qr(g)
c2 = validate(0.9 * q)
from cnumodel import char_function_full
from cnumodel.linalg import opnorm

print("scaled unitary, max ||theta|| on grid:",
      max(opnorm(char_function_full(c2, z)) for z in grid))
