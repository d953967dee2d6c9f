"""Loading curves of elastomers filled with gas-filled thin spherical shells.

Pre-buckling response from linear elasticity of a shell embedded in a
matrix, buckling from an embedded-shell energy criterion, and post-buckling
response from finite-strain cavity collapse, averaged over a Gamma law of
shell thickness ratios.
"""

from .buckling import (BucklingTable, build_buckling_table, critical_pressure,
                       critical_ratio_at_pressure, critical_ratio_for_mode, fa_pressure)
from .composite import (CompositeModel, composite_sphere_volume_change, gamma_pdf,
                        pressure_grid, sweep_curve, total_volume_change)
from .config import RunConfig, parse_config
from .errors import MicrocurveError
from .linear import (prebuckle_volume_change, residual_shell_pressure, solve_cavity,
                     solve_shell_in_matrix)
from .materials import (REFERENCE_MATRIX, REFERENCE_SHELL, SOFT_MATRIX, SOFT_SHELL,
                        CompositeSpec, ConstantGas, ElasticMaterial, GammaDistribution,
                        HorganMurphy, LinearElastic, LoadCurve, MooneyRivlin, NeoHookean,
                        PolytropicGas, ShellGeometry, derive_moduli, ratio_conversions)
from .postbuckle import (CavityState, cavity_pressure_relation, deformed_radius_incompressible,
                         gas_pressure, ode_oracle_far_field_pressure, postbuckle_volume_change,
                         slightly_compressible_correction, solve_cavity_radius)

__version__ = "0.1.0"
