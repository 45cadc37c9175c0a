"""Computations in Lipschitz-free spaces over finite pointed metric spaces.

Free-space (Kantorovich-Rubinstein) norms with certifying flows and duals,
McShane extension, dyadic weighting operators and their exact norms, order
structure (positivity, minimum majorants, variation), and finite-net
divergence experiments.  Exact rational arithmetic by default; a float mode
with explicit tolerances for larger instances.
"""

from .errors import FreeLipError
from .functions import (
    LipschitzFunction,
    WeightFunction,
    lip0_function,
    lip_constant,
    lip_function,
    mcshane_extend,
    rho,
    weight_g,
    weight_h,
    weight_lambda,
    weight_pi,
)
from .order import (
    MajorantPair,
    check_majorant,
    is_positive,
    minimum_majorant,
    support_identities,
    variation,
)
from .scalars import EXACT, FLOAT, Scalar
from .solver import (
    TransportInstance,
    TransportPlan,
    dual_optimal_function,
    kr_norm,
    oracle_norm,
)
from .space import (
    PointedMetricSpace,
    RadialReport,
    attach_base_point,
    diameter,
    dist_to_set,
    is_radially_uniformly_discrete,
    is_uniformly_discrete,
    radial_alpha,
    radius,
    uniform_separation,
    validate,
)
from .vectors import (
    FreeVector,
    Molecule,
    canonicalize,
    delta,
    molecule_decompose,
    norm1,
    pair,
    support,
)
from .weighting import (
    SeparationClassReport,
    WeightOperator,
    adjoint_apply,
    apply_to_function,
    class_report,
    kalton_parts,
    operator_norm,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
