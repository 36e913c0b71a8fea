"""Exact analysis of constant-coefficient linear recurrences.

The library generates Catalan numbers by four independent methods,
guesses/verifies/descends linear recurrences over exact fields, computes
power-sum (Binet) forms with dominant asymptotics, manipulates truncated
formal power series, and produces machine-checkable certificates that no
constant-coefficient linear recurrence generates the Catalan numbers.

Indexing convention: sequences are 1-based with C_1 = C_2 = 1, so C_n is
the classical Catalan number of index n - 1.
"""

from .certify import (
    GfMismatchCertificate,
    HankelCertificate,
    ParityCertificate,
    PolynomialCertificate,
    RefutationBundle,
    parse_bundle,
    refute_all,
    refute_by_gf,
    refute_by_hankel,
    refute_by_parity,
    refute_by_polynomial,
    serialize_bundle,
    validate_certificate,
    validate_document,
    validate_serialized,
)
from .errors import (
    BFileError,
    CertificateError,
    CFiniteError,
    DimensionError,
    InsufficientDataError,
    MixedRadicandError,
    ResourceLimitError,
    RootFindingError,
    SingularSystemError,
)
from .gfseries import (
    catalan_gf,
    degree_parity_check,
    expand_rational,
    pade_reconstruct,
    rational_gf,
    RationalFunction,
    sqrt_one_minus_4x,
    TruncatedSeries,
)
from .powersum import (
    binet_form,
    catalan_asymptotic_constant,
    characteristic_polynomial,
    DominantPart,
    dominant_part,
    evaluate_powersum,
    falling_factorial,
    Polynomial,
    polynomial_roots,
    PowerSum,
    tail_lower_bound_check,
    vandermonde_modulus,
)
from .recurrence import (
    descend_field,
    guess_recurrence,
    hankel_nonsingular_witness,
    IntegerRecurrenceVector,
    iterate_recurrence,
    kernel_nontrivial,
    LinearRecurrence,
    normalize_coprime,
    verify,
    WindowMatrix,
)
from .seqcore import (
    catalan_ballot,
    catalan_closed,
    catalan_convolution,
    catalan_holonomic,
    catalan_is_odd,
    catalan_is_odd_by_reduction,
    fibonacci,
    QuadraticFieldElement,
    Sequence,
)

__version__ = "0.1.0"
