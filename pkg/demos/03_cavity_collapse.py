"""After buckling: a pressurised cavity in a rubbery matrix.

A buckled shell is replaced by a cavity that still feels the pressure the
shell exerted at buckling. Its radius follows from a closed-form pressure
relation, checked here against direct integration of radial equilibrium.
Trapped gas obeying a polytropic law slows the collapse.
"""

from microcurve import (ConstantGas, MooneyRivlin, NeoHookean, PolytropicGas,
                        ode_oracle_far_field_pressure, postbuckle_volume_change,
                        solve_cavity_radius)

mu = 1.2e6
S = 20 ** (1 / 3)  # composite sphere radius for a 5% volume fraction

print(" p/mu_m   abar NH   abar MR   abar MR+gas   dv MR    ODE check (MR)")
for ratio in (0.5, 2.0, 5.0, 10.0, 25.0, 100.0):
    p = ratio * mu
    nh = solve_cavity_radius(p, 0.0, NeoHookean(), ConstantGas(), mu)
    mr = solve_cavity_radius(p, 0.0, MooneyRivlin(), ConstantGas(), mu)
    gas = solve_cavity_radius(p, 0.0, MooneyRivlin(), PolytropicGas(), mu)
    back = ode_oracle_far_field_pressure(mr.deformed_radius, MooneyRivlin(), 0.0, mu)
    print(f"{ratio:7.1f}  {nh.deformed_radius:8.5f}  {mr.deformed_radius:8.5f}  "
          f"{gas.deformed_radius:11.5f}  {postbuckle_volume_change(mr, S):7.5f}   {back / p - 1:+.1e}")
