"""Exact computations with generic matrices, trace rings and central polynomials."""

from .algebra import TracePolynomial, algebra_ops, min_rotation, multilinearize, words_up_to
from .builtins import builtin, comm_sq, formanek, friedland_c, std
from .central import (
    CentralityVerdict,
    PIVerdict,
    central_for_points,
    construct_central,
    is_central,
    is_pi,
    spot_check_identity,
    verified_central,
)
from .errors import (
    DimensionError,
    InternalConsistencyError,
    ParseError,
    PitraceError,
    PreconditionError,
    ResourceError,
)
from .evaluation import (
    ConjugacyCertificate,
    EvaluationReport,
    IdealPresentation,
    ImageType,
    conjugate_test,
    evaluate,
    generates,
    ideal_dichotomy,
    span_chain,
)
from .invariants import (
    Fingerprint,
    FingerprintVerdict,
    enumerate_necklaces,
    fingerprint,
    friedland,
    separated_by_fingerprint,
)
from .linalg import (
    Matrix,
    MatrixTuple,
    char_poly_coeffs,
    mat_arith,
    solve_affine,
    solve_linear,
    trace,
)
from .nullstellensatz import (
    NotSeparable,
    PointIdealBasis,
    ideal_of_points,
    nullstellensatz_experiment,
    separate,
    zero_locus_member,
)
from .parser import parse

__version__ = "0.1.0"
