"""Which shells have buckled at a given pressure?

Treating the mode number n as a parameter, each n picks out one critical
thickness ratio through a cubic, and with it one critical pressure. Thin
shells buckle first; at pressure p every shell thinner than Xhat_c(p) has
buckled.
"""

import numpy as np

from microcurve import (REFERENCE_MATRIX, REFERENCE_SHELL, build_buckling_table,
                        critical_ratio_at_pressure)

mu = REFERENCE_MATRIX.shear_modulus
table = build_buckling_table(REFERENCE_SHELL, REFERENCE_MATRIX, n_min=13.0, n_max=1000.0, samples=256)

print("     n      Xhat_c    p_c/mu_m")
for i in np.linspace(0, len(table) - 1, 12).astype(int):
    print(f"{table.n[i]:7.1f}  {table.xhat_c[i]:9.5f}  {table.p_c[i] / mu:9.4f}")

print()
print("inverse lookup: shells thinner than Xhat_c have buckled")
for ratio in (0.1, 0.3, 0.6, 1.0, 2.0):
    print(f"  p/mu_m = {ratio:4.1f}  ->  Xhat_c = {critical_ratio_at_pressure(table, ratio * mu).xhat_c:.5f}")
