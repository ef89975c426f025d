"""Exact arithmetic of cusps on X0(N): eta-quotient units, their leading
Fourier coefficients, cuspidal divisor class groups, and the rational torsion
of the generalized Jacobian with the reduced cuspidal modulus."""

from .classgroup import (
    ClassGroupResult,
    OrderMatrices,
    class_group,
    class_group_for_level,
    class_group_pq,
    eta_unit_divisor_lattice,
    eta_unit_exponent_basis,
    ling_structure,
    order_matrices,
)
from .curve import Cusp, CuspDivisor, cusps, divisor_basis, lambda_embedding
from .errors import NotModularError, ScopeError
from .eta import (
    EtaQuotient,
    LigozatReport,
    check_modular_function,
    divisor,
    gcd_of_divisor_coefficients,
    order_at_cusp,
    pq_generators,
    prime_power_generators,
)
from .jacobian import (
    LambdaVector,
    SplitInjectionReport,
    TorsionResult,
    delta_cokernel,
    delta_kernel_on_cuspidal,
    delta_matrix,
    evaluate_delta_class,
    generalized_torsion,
    mu_contribution,
    pq_delta_kernel,
    split_injection_scope,
)
from .linalg import (
    AbelianGroup,
    IntMatrix,
    QmodZ,
    SmithDecomposition,
    bordered_lattice_index,
    quotient_structure,
    smith_normal_form,
)
from .transform import (
    CuspExpansion,
    LeadingCoeff,
    NumericLeadingCoeff,
    SigmaMatrix,
    UnitPhase,
    cusp_expansion,
    eta_multiplier,
    eta_numeric,
    jacobi_symbol,
    leading_coefficient,
    numeric_leading_coefficient,
    pq_leading_coefficients,
    pq_sigma_matrix,
    sigma_matrix,
    suggested_height,
)

__version__ = "0.1.0"
