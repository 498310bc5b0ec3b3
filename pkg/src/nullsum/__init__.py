"""Exact tools for restricted sumsets and polynomial-method coefficient identities."""

from .coeffcore import (
    CoefficientProblem,
    HypothesisError,
    PermutationTerm,
    check_cor22,
    coeff_cor21_det,
    coeff_cor21_per,
    coeff_oracle,
    coeff_theorem21,
    permutation_terms,
    theorem22_sides,
)
from .exactalg import (
    INFINITE,
    CyclicGroup,
    RingError,
    RingMatrix,
    RingSpec,
    RingValue,
    SizeLimitError,
    determinant,
    element_order,
    permanent,
    permanent_naive,
    permanent_ryser,
)
from .instance import InstanceError, SumsetInstance
from .multipoly import ExponentCap, SparsePoly, coefficient_of_product, extract_coefficient
from .nullbound import (
    BoundCertificate,
    SemigroupDq,
    certify,
    dq_member,
    factorial_in_dq,
    lemma31_bound,
    lemma31_coefficient,
    per_vandermonde_roots,
)
from .sumsetlab import (
    EnumerationResult,
    VerificationReport,
    build_example_11,
    build_example_12,
    corollary11_numbering,
    enumerate_sumset,
    snevily_transversal,
    verify_bound,
)

__version__ = "0.1.0"
