"""Monomial norms and shift commutators on Bergman spaces of domains cut out
by several complex ellipsoids with a shared z-block, plus box-cover
resolutions of monomial ideals."""

from .commutators import (
    CommutatorEigenvalue,
    DecayProfile,
    cross_commutator_matrix,
    decay_profile,
    decay_profiles,
    schatten_partial_sum,
    self_commutator_eigenvalue,
    truncated_self_commutator_diagonal,
)
from .domain import (
    ConfigError,
    DomainSpec,
    NormTable,
    log_norm,
    log_norm_array,
    log_norm_pure_ellipsoid,
    log_norm_ratio,
    monte_carlo_log_norm,
    normalize_domain,
    parse_domain,
)
from .ideals import (
    Box,
    MonomialIdeal,
    box_contains,
    box_cover,
    box_from_tuple,
    box_intersect,
    ideal_contains,
    parse_ideal,
    staircase_complement,
)
from .quotient import (
    box_module_shift,
    box_ratio_decay,
    quotient_self_commutator_diagnostic,
    quotient_self_commutator_entry,
    quotient_shift,
)
from .resolution import (
    BoxComplex,
    IndexCertificate,
    build_complex,
    fiber_dimensions,
    index_certificate,
    psi_matrix,
    verify_exactness,
)

__version__ = "0.1.0"
