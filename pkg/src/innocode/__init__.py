"""Innovative, sparse encoding vectors for broadcast with feedback.

Library layout:

- ``gf``: prime-field arithmetic descriptors.
- ``linalg``: GF(q) matrices, RREF/nullspace, and the fraction-free
  cofactor engine with incremental extension.
- ``encoder``: systematic/RLNC/cofactor-method vector generation and
  per-receiver state.
- ``decoder``: counting Gauss-Jordan solver.
- ``reduction``: 3-SAT to binary innovative-vector instance, with
  brute-force deciders.
- ``sim``: two-phase broadcast protocol, delay and decoding-cost
  metrics over seeded realizations.
- ``verify``: oracle cross-check suites.
- ``cli``: ``innocode`` command-line entry point.
"""

from .gf import Field, FieldElement, NotPrimeError, field_new, is_prime
from .linalg import (
    CofactorPolynomial,
    CofactorWorkspace,
    DimensionMismatchError,
    MatrixGF,
    RankDropError,
    SingularTopError,
    bareiss_cofactors,
    bareiss_extend,
    bareiss_passes,
    det,
    minors_via_nullspace,
    nullspace_basis,
    rank,
    row_space_contains,
    rref,
)
from .encoder import (
    AllUsersDoneError,
    AssignmentPlan,
    EncodingVector,
    PlanEntry,
    UserState,
    assign_values,
    build_assignment_plan,
    cofactor_method,
    rlnc_vector,
    systematic_vector,
    user_receive,
)
from .decoder import OpCounter, SingularMatrixError, decode, decode_count_only
from .reduction import (
    BudgetExceededError,
    Cnf,
    IevInstance,
    LastCoordinateZeroError,
    NotThreeCnfError,
    ParseError,
    brute_force_iev,
    brute_force_sat,
    clause_matrix,
    eval_cnf,
    lift_assignment,
    parse_dimacs,
    project_vector,
    reduce_3sat_to_2iev,
)
from .sim import (
    Metrics,
    RealizationResult,
    RuntimeCapError,
    SCHEME_COFACTOR,
    SCHEME_RLNC,
    SimConfig,
    run_experiment,
    run_realization,
)
from .streams import channel_stream, encoder_stream, erasure_draw, stream

__version__ = "0.1.0"
