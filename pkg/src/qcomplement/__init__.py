"""Coherence, thermal discord and conditional entropy under multiple
projective measurements, with verifiers for their entropic lower bounds."""

from .bounds import BoundResult, bound_b, bound_b_best_order, bound_b_oracle, bound_b_ordered
from .ensembles import (
    EnsembleConfig,
    child_seed,
    min_discord_sampled,
    sample_haar_unitary,
    sample_measurement,
    sample_mixed_state,
    sample_state,
)
from .errors import *  # noqa: F401,F403
from .measurements import (
    MeasurementOutcome,
    ProjectiveMeasurement,
    basis_from_unitary,
    dephase,
    measure_subsystem,
    measurement,
    mub_family,
    overlap_matrix,
    pauli_bases,
    standard_basis,
)
from .quantities import (
    DiscordBreakdown,
    conditional_entropy,
    post_measurement_conditional_entropy,
    rel_entropy_coherence,
    signals_entanglement,
    thermal_discord,
    thermal_discord_identity,
)
from .relations import (
    RelationReport,
    check_coherence_relation,
    check_data_processing_step,
    check_discord_relation,
    check_memory_uncertainty,
    check_multipartite_conditional,
    check_tripartite_pair,
    check_uncertainty,
)
from .state import (
    DensityMatrix,
    PureState,
    bell_state,
    ghz_state,
    ket_density,
    maximally_mixed,
    partial_trace,
    product_ket,
    pure_state,
    purify,
    tensor_product,
    validate_density,
    von_neumann_entropy,
)

__version__ = "0.1.0"
