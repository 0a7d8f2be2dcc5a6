from geometry.matrix import (
    SPDMatrix,
    SymmetricMatrix,
    is_numerically_spd,
    spd_inv_sqrt,
    spd_log,
    spd_power,
    spd_sqrt,
    sym_eigendecompose,
)
from geometry.riemann import geodesic, geometric_mean, spd_distance
