"""A single glassy shell in a soft host, before it buckles.

The shell carries almost all of the load: the matrix around it barely moves
until the buckling pressure is reached. Without the shell the same pressure
would produce displacements far outside the range of linear elasticity.
"""

import numpy as np

from microcurve import (REFERENCE_MATRIX, REFERENCE_SHELL, ShellGeometry, build_buckling_table,
                        critical_pressure, solve_cavity, solve_shell_in_matrix)
from microcurve.linear import residual_shell_pressure

mu = REFERENCE_MATRIX.shear_modulus
shell = ShellGeometry(thickness=0.01)
table = build_buckling_table(REFERENCE_SHELL, REFERENCE_MATRIX)
p_c = critical_pressure(table, shell.mid_ratio)

print(f"shell X = {shell.ratio}, Xhat = {shell.mid_ratio:.6f}")
print(f"critical pressure p_c/mu_m = {p_c / mu:.4f}")
print(f"pressure it still exerts on the matrix at p_c: "
      f"{residual_shell_pressure(shell, REFERENCE_SHELL, REFERENCE_MATRIX, p_c) / mu:.4f} mu_m")
print()
print(" p/mu_m    u(A)/A with shell    u(A)/A bare cavity")
for ratio in np.linspace(0.0, 1.0, 6):
    p = ratio * mu
    with_shell = solve_shell_in_matrix(shell, REFERENCE_SHELL, REFERENCE_MATRIX, p)
    bare = solve_cavity(REFERENCE_MATRIX, p, 0.0)
    print(f"{ratio:6.2f}   {float(with_shell.displacement(1.0)):18.3e}   "
          f"{float(bare.displacement(1.0)):18.3e}")
