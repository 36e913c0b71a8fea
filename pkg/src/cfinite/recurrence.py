"""Constant-coefficient linear recurrences: verify, guess, descend.

A recurrence of order k with coefficients (a_0, ..., a_{k-1}) asserts
b_{n+k} = sum_{j<k} a_j b_{n+j} for every n >= 1.  Order 0 is the empty
recurrence, satisfied only by the all-zero sequence.  Coefficients live in
Q or in a single quadratic extension Q(sqrt(d)).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DimensionError, InsufficientDataError, MixedRadicandError
from .seqcore import QuadraticFieldElement, Sequence


def _as_coefficient(value):
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, QuadraticFieldElement)):
        return value
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


@dataclass(frozen=True)
class LinearRecurrence:
    """b_{n+k} = sum_{j<k} coefficients[j] * b_{n+j} for all n >= 1."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(_as_coefficient(c) for c in self.coefficients)
        radicands = {c.radicand for c in coeffs if isinstance(c, QuadraticFieldElement)}
        if len(radicands) > 1:
            raise MixedRadicandError(
                f"coefficients mix radicands {sorted(radicands)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def field(self) -> str:
        for c in self.coefficients:
            if isinstance(c, QuadraticFieldElement):
                return f"Q(sqrt({c.radicand}))"
        return "Q"

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coefficients)

    def __str__(self):
        if self.order == 0:
            return "b(n) = 0"
        rhs = " + ".join(
            f"({c})*b(n+{j})" if j else f"({c})*b(n)"
            for j, c in enumerate(self.coefficients)
        )
        return f"b(n+{self.order}) = {rhs}"


@dataclass(frozen=True)
class IntegerRecurrenceVector:
    """Coprime integers (a_0, ..., a_k) with sum_j a_j b_{n+j} = 0, a_k != 0."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ValueError("entries must be nonempty")
        if entries[-1] == 0:
            raise ValueError("last entry must be nonzero")
        if math.gcd(*entries) != 1:
            raise ValueError(f"entries {entries} are not coprime")
        object.__setattr__(self, "entries", entries)

    @property
    def order(self) -> int:
        return len(self.entries) - 1


@dataclass(frozen=True)
class WindowMatrix:
    """Contiguous width-w windows (b_n, ..., b_{n+w-1}) as matrix rows."""

    rows: tuple
    start: int

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows:
            raise ValueError("a window matrix needs at least one row")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged window rows")
        object.__setattr__(self, "rows", rows)

    @property
    def width(self) -> int:
        return len(self.rows[0])

    @classmethod
    def from_sequence(cls, seq: Sequence, width: int, count: int, start: int = 1):
        needed = start + count - 1 + width - 1
        if needed > len(seq):
            raise InsufficientDataError(
                f"need {needed} terms for {count} width-{width} windows, have {len(seq)}"
            )
        rows = tuple(seq.window(start + i, width) for i in range(count))
        return cls(rows, start)


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    failed_index: int | None = None
    residual: object = None

    def __bool__(self):
        return self.passed


def iterate_recurrence(rec: LinearRecurrence, initial_terms, count: int) -> list:
    """First `count` terms generated from k initial terms by the recurrence."""
    if len(tuple(initial_terms)) != rec.order:
        raise ValueError(f"need {rec.order} initial terms")
    terms = [Fraction(t) if isinstance(t, int) else t for t in initial_terms]
    while len(terms) < count:
        n = len(terms) - rec.order
        terms.append(sum(a * terms[n + j] for j, a in enumerate(rec.coefficients)))
    return terms[:count]


def verify(seq: Sequence, rec: LinearRecurrence, span=None) -> VerificationResult:
    """Check the recurrence on windows n in span (inclusive pair, 1-based).

    span=None means every window the data supports.  On failure the least
    failing n is reported with the exact residual
    sum_j a_j b_{n+j} - b_{n+k}.
    """
    k = rec.order
    if span is None:
        if len(seq) < k + 1:
            raise InsufficientDataError(
                f"no complete window: {len(seq)} terms for order {k}"
            )
        span = (1, len(seq) - k)
    lo, hi = span
    if lo < 1 or hi + k > len(seq):
        raise InsufficientDataError(
            f"windows [{lo}, {hi}] need terms up to {hi + k}, have {len(seq)}"
        )
    for n in range(lo, hi + 1):
        acc = 0
        for j, a in enumerate(rec.coefficients):
            acc = acc + a * seq.term(n + j)
        residual = acc - seq.term(n + k)
        if residual != 0:
            return VerificationResult(False, n, residual)
    return VerificationResult(True)


def kernel_nontrivial(rows, width: int | None = None):
    """A nonzero kernel vector of an m x n matrix with m < n.

    With no rows at all the answer is canonically the first unit vector.
    The returned vector has 1 in the first free column of the reduced form,
    which makes the choice deterministic.
    """
    rows = [tuple(r) for r in rows]
    if width is None:
        if not rows:
            raise DimensionError("width is required for an empty matrix")
        width = len(rows[0])
    if len(rows) >= width:
        raise DimensionError(f"{len(rows)} rows x {width} columns: need m < n")
    basis = linalg.kernel_basis(rows, width)
    assert basis, "m < n guarantees a nonzero kernel vector"
    return basis[0]


def guess_recurrence(
    seq: Sequence, max_order: int, window_count: int | None = None
) -> LinearRecurrence | None:
    """Least-order recurrence of order <= max_order fitting the data.

    For each k the width-(k+1) window matrix over rows n = 1..W is searched
    for a kernel vector with nonzero last coordinate; the first k that
    yields one whose recurrence verifies on all supplied terms wins.
    Returns None when no order <= max_order fits.  The result is only ever
    "verified on available data": finitely many terms cannot prove a
    recurrence for all n.
    """
    if window_count is None:
        window_count = min(2 * max_order + 4, len(seq) - max_order)
    if window_count < max_order + 1:
        raise InsufficientDataError(
            f"need window count >= {max_order + 1}, have {window_count}"
        )
    if len(seq) < max_order + window_count:
        raise InsufficientDataError(
            f"need {max_order + window_count} terms, have {len(seq)}"
        )
    for k in range(max_order + 1):
        wm = WindowMatrix.from_sequence(seq, k + 1, window_count)
        reduced, pivots = linalg.rref(wm.rows, k + 1)
        if k in pivots:
            continue  # last column pivotal: every kernel vector ends in 0
        coeffs = [Fraction(0)] * k
        for i, p in enumerate(pivots):
            coeffs[p] = reduced[i][k]
        candidate = LinearRecurrence(tuple(coeffs))
        if verify(seq, candidate).passed:
            return candidate
    return None


def hankel_nonsingular_witness(seq: Sequence, order: int, offset: int) -> Fraction:
    """Exact determinant of the square window matrix rows n = offset..offset+order.

    A nonzero value certifies that no recurrence of order <= order fits the
    windows covering those rows.
    """
    if order < 0 or offset < 1:
        raise ValueError(f"need order >= 0 and offset >= 1, got {order}, {offset}")
    wm = WindowMatrix.from_sequence(seq, order + 1, order + 1, offset)
    return linalg.determinant(wm.rows)


def normalize_coprime(rec: LinearRecurrence) -> IntegerRecurrenceVector:
    """Rewrite sum_{j<k} a_j b_{n+j} - b_{n+k} = 0 with coprime integers.

    Appends a_k = -1, clears denominators by their lcm, and divides out the
    gcd; the represented linear form is a positive rational multiple of the
    input form.
    """
    if not rec.is_rational():
        raise ValueError("coprime normalization needs rational coefficients")
    vec = [Fraction(c) for c in rec.coefficients] + [Fraction(-1)]
    scale = math.lcm(*(v.denominator for v in vec))
    ints = [int(v * scale) for v in vec]
    g = math.gcd(*ints)
    return IntegerRecurrenceVector(tuple(i // g for i in ints))


def descend_field(
    seq: Sequence, rec: LinearRecurrence, window_count: int
) -> LinearRecurrence:
    """Replace extension-field coefficients by rational ones, order k' <= k.

    The rational window vectors annihilated by the extension-field
    coefficient vector span a space of dimension < k+1; a nonzero rational
    vector orthogonal to a maximal independent row set then yields the
    rational recurrence, which is verified against all supplied terms.
    """
    k = rec.order
    if window_count < k + 2:
        raise ValueError(f"need window count >= {k + 2}, got {window_count}")
    if not seq.is_rational():
        raise ValueError("field descent needs a rational-valued sequence")
    check = verify(seq, rec, (1, window_count))
    if not check.passed:
        raise ValueError(
            f"input recurrence fails on window {check.failed_index}: residual {check.residual}"
        )
    wm = WindowMatrix.from_sequence(seq, k + 1, window_count)
    kept = linalg.independent_row_indices(wm.rows, k + 1)
    assert len(kept) < k + 1, "annihilated windows cannot have full rank"
    rows = [wm.rows[i] for i in kept]
    astar = kernel_nontrivial(rows, k + 1)
    k_prime = max(j for j in range(k + 1) if astar[j] != 0)
    lead = astar[k_prime]
    result = LinearRecurrence(tuple(-astar[j] / lead for j in range(k_prime)))
    final = verify(seq, result)
    if not final.passed:
        raise ValueError(
            f"descended recurrence fails at window {final.failed_index}; "
            "supply more windows so the rank profile stabilizes"
        )
    return result
