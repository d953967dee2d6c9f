"""Loading curves of the reference composite.

5% shells by volume, Gamma-distributed thickness ratios with mean 0.01 and
shape 8. The curve softens once shells start to buckle; the choice of
hyperelastic model hardly matters, while small-strain elasticity drifts away
at larger pressures. Takes under a minute on one core.
"""

import numpy as np

from microcurve import (REFERENCE_MATRIX, REFERENCE_SHELL, CompositeSpec, HorganMurphy,
                        LinearElastic, NeoHookean, PolytropicGas, build_buckling_table,
                        pressure_grid, sweep_curve)

mu = REFERENCE_MATRIX.shear_modulus
table = build_buckling_table(REFERENCE_SHELL, REFERENCE_MATRIX)
grid = pressure_grid(0.8, 41)

variants = {
    "Mooney-Rivlin": CompositeSpec(),
    "neo-Hookean": CompositeSpec(matrix_model=NeoHookean()),
    "Horgan-Murphy": CompositeSpec(matrix_model=HorganMurphy()),
    "linear": CompositeSpec(matrix_model=LinearElastic()),
    "polytropic gas": CompositeSpec(gas_law=PolytropicGas()),
    "fraction 0.1": CompositeSpec(volume_fraction=0.1),
}
curves = {name: sweep_curve(grid * mu, spec, table) for name, spec in variants.items()}

names = list(curves)
print(" p/mu_m  buckled " + "".join(f"{n[:14]:>15s}" for n in names))
for i in range(0, grid.size, 5):
    row = "".join(f"{curves[n].volume_change[i]:15.6f}" for n in names)
    print(f"{grid[i]:7.2f}  {curves['Mooney-Rivlin'].buckled_fraction[i]:6.3f} {row}")

ref = curves["Mooney-Rivlin"].volume_change
print()
for n in names[1:4]:
    print(f"max |{n} - Mooney-Rivlin| = {np.max(np.abs(curves[n].volume_change - ref)):.2e}")
