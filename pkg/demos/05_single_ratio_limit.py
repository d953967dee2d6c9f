"""Where does the kink in the loading curve come from?

With one shell ratio only, every shell buckles at the same pressure and the
curve has a corner there. A spread of ratios rounds the corner off. The
second difference of the sampled curve makes this visible.
"""

import math

import numpy as np

from microcurve import (REFERENCE_MATRIX, REFERENCE_SHELL, CompositeSpec, GammaDistribution,
                        HorganMurphy, build_buckling_table, critical_pressure, pressure_grid,
                        sweep_curve)

mu = REFERENCE_MATRIX.shear_modulus
table = build_buckling_table(REFERENCE_SHELL, REFERENCE_MATRIX)
grid = pressure_grid(0.8, 81)
print(f"single-ratio buckling pressure p_c/mu_m = {critical_pressure(table, 0.01) / mu:.4f}")

for k in (8.0, 50.0, 5000.0, math.inf):
    spec = CompositeSpec(matrix_model=HorganMurphy(), distribution=GammaDistribution(k, 0.01))
    curve = sweep_curve(grid * mu, spec, table)
    d2 = np.abs(np.diff(curve.volume_change, 2))
    j = int(np.argmax(d2))
    print(f"k = {k:>6}: delta_V(0.8) = {curve.volume_change[-1]:.5f}, "
          f"largest second difference {d2[j]:.2e} at p/mu_m = {grid[j + 1]:.3f}")
