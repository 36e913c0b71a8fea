"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines; every tolerance and runtime bound is asserted in the test body.
"""

import cmath
import math
import random
import time
from fractions import Fraction

import pytest

from cfinite.certify import (
    polynomial_certificate_value,
    refute_all,
    refute_by_hankel,
    refute_by_polynomial,
    serialize_bundle,
    validate_certificate,
    validate_serialized,
)
from cfinite.errors import CertificateError
from cfinite.gfseries import catalan_gf, sqrt_one_minus_4x, TruncatedSeries
from cfinite.powersum import (
    binet_form,
    catalan_asymptotic_constant,
    dominant_part,
    DominantPart,
    evaluate_powersum,
    Polynomial,
    tail_lower_bound_check,
)
from cfinite.recurrence import (
    descend_field,
    guess_recurrence,
    hankel_nonsingular_witness,
    iterate_recurrence,
    LinearRecurrence,
    verify,
)
from cfinite.seqcore import (
    catalan_ballot,
    catalan_closed,
    catalan_convolution,
    catalan_holonomic,
    catalan_is_odd,
    fibonacci,
    QuadraticFieldElement,
    Sequence,
)

CATALAN_12 = (1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786)


def report(number, description, started):
    print(f"PASS  criterion {number:>2}: {description} ({time.perf_counter() - started:.2f}s)")


@pytest.fixture(scope="module")
def refutation_sweep():
    """100 random rational candidates of order 1..8 and their bundles."""
    rng = random.Random(20260811)
    sweep = []
    for _ in range(100):
        k = rng.randint(1, 8)
        coeffs = tuple(
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(k)
        )
        candidate = LinearRecurrence(coeffs)
        sweep.append((candidate, refute_all(candidate)))
    return sweep


def test_criterion_01_cross_method_agreement():
    started = time.perf_counter()
    closed = [catalan_closed(n) for n in range(1, 501)]
    assert tuple(closed[:12]) == CATALAN_12
    assert catalan_convolution(500).terms == tuple(closed)
    assert catalan_holonomic(500).terms == tuple(closed)
    for n in range(2, 14):
        assert catalan_ballot(n) == closed[n - 1]
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    report(1, "four generators agree (ballot to 13, exact trio to 500)", started)


def test_criterion_02_parity_characterization_at_scale():
    started = time.perf_counter()
    odd_indices = [n for n in range(1, 4097) if catalan_closed(n) % 2 == 1]
    assert odd_indices == [2**m for m in range(13)]
    assert all(catalan_is_odd(n) == (n in set(odd_indices)) for n in range(1, 4097))
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    report(2, "C_n odd exactly at the 13 powers of two below 4096", started)


def test_criterion_03_hankel_evidence():
    started = time.perf_counter()
    cert = refute_by_hankel(10)
    assert len(cert.witnesses) == 11
    assert all(det != 0 for _, _, det in cert.witnesses)

    def cofactor(matrix):
        if len(matrix) == 1:
            return matrix[0][0]
        return sum(
            (-1) ** j
            * matrix[0][j]
            * cofactor([row[:j] + row[j + 1 :] for row in matrix[1:]])
            for j in range(len(matrix))
        )

    seq = catalan_convolution(21)
    for k, offset, det in cert.witnesses[:4]:
        rows = [seq.window(offset + i, k + 1) for i in range(k + 1)]
        assert det == cofactor(rows)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(3, "nonzero exact determinants for orders 0..10, oracle-checked to 3", started)


def test_criterion_04_universal_refutation_sweep(refutation_sweep):
    started = time.perf_counter()
    for candidate, bundle in refutation_sweep:
        kinds = {type(c).__name__: c for c in bundle.certificates}
        assert {"ParityCertificate", "PolynomialCertificate", "GfMismatchCertificate"} <= set(
            kinds
        )
        for cert in bundle.certificates:
            validate_certificate(cert)
        poly = kinds["PolynomialCertificate"]
        assert poly.value_at_minus_order == polynomial_certificate_value(candidate.order)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    report(4, "100 random candidates, k <= 8: parity/polynomial/gf all validated", started)


def test_criterion_05_worked_polynomial_instance():
    started = time.perf_counter()
    # hand expansion for k = 1, a = (4):
    #   j=0 summand: 4 * (x+1) * x^2          = 4x^3 + 4x^2
    #   j=1 summand: -1 * x * (2x)(2x-1)      = -4x^3 + 2x^2
    #   p(x) = 6x^2, p(-1) = 6, and at n* = 1 the residual is
    #   4*C_1 - C_2 = 3 with p(1) = 6 = 3 * (multiplier 2).
    cert = refute_by_polynomial(LinearRecurrence((4,)))
    assert cert.polynomial == Polynomial((0, 0, 6))
    assert cert.value_at_minus_order == 6
    assert cert.witness_index == 1
    assert cert.residual == 3
    report(5, "k=1, a=(4) reproduces p(x)=6x^2, p(-1)=6, residual 3 at n=1", started)


def test_criterion_06_guesser_soundness_completeness():
    started = time.perf_counter()
    rec = guess_recurrence(fibonacci(12), 5)
    assert rec is not None and rec.coefficients == (1, 1)
    assert guess_recurrence(catalan_convolution(30), 8) is None
    rng = random.Random(606)
    for _ in range(50):
        k = rng.randint(1, 4)
        gen = LinearRecurrence(
            tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(k))
        )
        initial = tuple(rng.randint(-5, 5) for _ in range(k))
        seq = Sequence("sample", iterate_recurrence(gen, initial, 20))
        found = guess_recurrence(seq, 4, window_count=len(seq) - 4)
        assert found is not None
        assert verify(seq, found).passed
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(6, "recovers Fibonacci, rejects Catalan, fits 50 random sequences", started)


def test_criterion_07_generating_function_identities():
    started = time.perf_counter()
    n = 500
    s = sqrt_one_minus_4x(n)
    target = TruncatedSeries([Fraction(1), Fraction(-4)], n)
    assert (s * s).coefficients == target.coefficients
    c = catalan_gf(n)
    two_c_minus_one = c * 2 - 1
    assert (two_c_minus_one * two_c_minus_one).coefficients == target.coefficients
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(7, "sqrt(1-4x)^2 and (2C-1)^2 equal 1-4x exactly to order 500", started)


def test_criterion_08_binet_reconstruction():
    started = time.perf_counter()
    rng = random.Random(808)
    pool = [Fraction(v) for v in (-3, -2, -1, 1, 2, 3)] + [
        Fraction(1, 2),
        Fraction(-1, 2),
        Fraction(5, 2),
    ]
    for _ in range(20):
        k = rng.randint(1, 4)
        roots = rng.sample(pool, k)
        char = Polynomial((Fraction(1),))
        for r in roots:
            char = char * Polynomial((-r, Fraction(1)))
        rec = LinearRecurrence(tuple(-char.coefficient(j) for j in range(k)))
        initial = tuple(rng.randint(-5, 5) for _ in range(k))
        ps = binet_form(rec, initial)
        assert ps.is_exact
        expected = iterate_recurrence(rec, initial, 30)
        for n in range(1, 31):
            assert evaluate_powersum(ps, n) == expected[n - 1]
    fib_ps = binet_form(LinearRecurrence((1, 1)), (1, 1))
    fib_terms = fibonacci(30).terms
    for n in range(1, 31):
        assert abs(complex(evaluate_powersum(fib_ps, n)) - fib_terms[n - 1]) < 1e-6
    dp = dominant_part(fib_ps)
    assert dp.degree == 0
    assert abs(dp.alpha - (1 + math.sqrt(5)) / 2) < 1e-9
    report(8, "exact rational-rooted reconstruction; Fibonacci within 1e-6", started)


def test_criterion_09_tail_inequality():
    started = time.perf_counter()
    rng = random.Random(909)
    for _ in range(200):
        l = rng.randint(1, 4)
        while True:
            betas = [cmath.exp(2j * math.pi * rng.random()) for _ in range(l)]
            gaps = [
                abs(betas[u] - betas[v]) for u in range(l) for v in range(u + 1, l)
            ]
            if all(g > 1e-3 for g in gaps):
                break
        gammas = [
            rng.uniform(0.05, 20.0) * cmath.exp(2j * math.pi * rng.random())
            for _ in range(l)
        ]
        dp = DominantPart(0, 1.0, tuple(zip(gammas, betas)))
        for _ in range(100):
            n = rng.randint(1, 10**4)
            observed, bound = tail_lower_bound_check(dp, n)
            assert observed >= bound - 1e-9
    report(9, "window max of |v| beats the Cramer/Vandermonde bound, 20000 trials", started)


def test_criterion_10_asymptotic_constant():
    started = time.perf_counter()
    estimate = catalan_asymptotic_constant(2000)
    target = 1 / (4 * math.sqrt(math.pi))
    # numeric-limit oracle: the error is O(1/N), so Richardson extrapolation
    # from N and 2N should land on the same limit
    extrapolated = 2 * catalan_asymptotic_constant(4000) - catalan_asymptotic_constant(2000)
    assert abs(extrapolated - target) < 1e-4 * target
    assert abs(estimate - target) < 0.005 * target
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(10, "C_N N^1.5 / 4^N at N=2000 within 0.5% of 1/(4 sqrt(pi))", started)


def test_criterion_11_field_descent():
    started = time.perf_counter()
    geometric = Sequence("pow2", tuple(2**n for n in range(1, 13)))
    over_sqrt2 = LinearRecurrence(
        (
            QuadraticFieldElement(0, -2, 2),
            QuadraticFieldElement(2, 1, 2),
        )
    )
    assert verify(geometric, over_sqrt2).passed
    down = descend_field(geometric, over_sqrt2, 6)
    assert down.order <= 2 and down.field == "Q"
    assert down.coefficients == (2,)
    assert verify(geometric, down).passed

    fib = fibonacci(20)
    over_sqrt5 = LinearRecurrence(
        (
            QuadraticFieldElement(0, -1, 5),
            QuadraticFieldElement(1, -1, 5),
            QuadraticFieldElement(1, 1, 5),
        )
    )
    assert verify(fib, over_sqrt5).passed
    down = descend_field(fib, over_sqrt5, 8)
    assert down.order <= 3 and down.field == "Q"
    assert down.coefficients == (1, 1)
    assert verify(fib, down).passed
    report(11, "Q(sqrt(2)) and Q(sqrt(5)) recurrences descend to rational ones", started)


def test_criterion_12_certificate_round_trip(refutation_sweep):
    started = time.perf_counter()
    for _, bundle in refutation_sweep:
        text = serialize_bundle(bundle)
        parsed = validate_serialized(text)
        assert parsed == bundle
        for i, ch in enumerate(text):
            if not ch.isdigit():
                continue
            flipped = "1" if ch != "1" else "2"
            tampered = text[:i] + flipped + text[i + 1 :]
            with pytest.raises(CertificateError):
                validate_serialized(tampered)
    report(12, "serialize/parse/validate round trip; every digit flip detected", started)
