"""Exact computation of combinatorial DT invariants of acyclic quivers and
verification of quantum dilogarithm factorization identities attached to
Dynkin subquiver partitions."""
from __future__ import annotations

from .algebra import (
    QuantumElement,
    VerificationReport,
    coefficient,
    dilog,
    factorization_product,
    identity,
    monomial,
    qt_multiply,
    trivial_dt,
    verify_factorization,
)
from .dynkin import (
    DynkinType,
    KostantPartition,
    NotDynkin,
    RootSet,
    classify_dynkin,
    kostant_partitions,
    positive_roots,
)
from .errors import (
    BoundExceededError,
    ConstraintCycleError,
    CyclicQuiverError,
    EnumerationCapError,
    InconsistencyError,
    InvalidInputError,
    InvalidOrderError,
    KeyMismatchError,
    NonUnitSeriesError,
    NotAdmissibleError,
    NotAPartitionError,
    NotConnectedError,
    NotDynkinError,
    NotTypeAError,
    QuiverDtError,
    QuiverParseError,
    TruncationMismatchError,
    UnknownArrowError,
    UnknownVertexError,
)
from .ordering import (
    OrderVerdict,
    RootEntry,
    RootOrder,
    admissible_total_order,
    brute_force_valid_orders,
    expected_root_multiset,
    reineke_inner_order,
    validate_order,
)
from .partitions import (
    AdmissibilityVerdict,
    KostantSeries,
    SubquiverPartition,
    check_admissible,
    enumerate_partitions,
    kostant_series,
    make_partition,
    order_blocks,
)
from .quiver import (
    Arrow,
    DimVector,
    Quiver,
    VertexOrder,
    check_vertex_partition,
    contraction,
    euler_form,
    induced_subquiver,
    parse_quiver,
    shortest_directed_cycle,
    skew_form,
    skew_form_restricted,
    topological_vertex_order,
)
from .series import VSeries, partition_count, poincare_series
from .strata import (
    AdditivityVerdict,
    BettiTerm,
    BettiVerdict,
    CodimReport,
    MonomialNormalForm,
    betti_identity_check,
    codim_additivity_check,
    codim_of_stratum,
    inner_lists,
    monomial_normal_form,
    series_from_inner_lists,
    stratum_orbit_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
