"""Power sums, roots, dominant parts, and the window lower bound."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from cfinite.powersum import (
    binet_form,
    catalan_asymptotic_constant,
    characteristic_polynomial,
    dominant_part,
    DominantPart,
    evaluate_powersum,
    falling_factorial,
    poly_gcd,
    Polynomial,
    polynomial_roots,
    PowerSum,
    tail_lower_bound_check,
    vandermonde_modulus,
)
from cfinite.recurrence import iterate_recurrence, LinearRecurrence

GOLDEN = (1 + math.sqrt(5)) / 2


class TestPolynomial:
    def test_degree_sentinel(self):
        assert Polynomial().degree == -1
        assert Polynomial((0, 0)).is_zero
        assert Polynomial((3,)).degree == 0

    def test_arithmetic(self):
        x = Polynomial.x()
        p = (x + 1) * (x - 1)
        assert p == Polynomial((-1, 0, 1))
        assert p(3) == 8
        assert (p - p).is_zero
        assert (x * 2 + 1) ** 2 == Polynomial((1, 4, 4))

    def test_divmod(self):
        p = Polynomial((Fraction(-1), Fraction(0), Fraction(1)))  # x^2 - 1
        q, r = divmod(p, Polynomial((Fraction(-1), Fraction(1))))  # x - 1
        assert q == Polynomial((1, 1)) and r.is_zero

    def test_gcd(self):
        x = Polynomial.x()
        a = (x - 1) * (x - 2)
        b = (x - 1) * (x + 3)
        g = poly_gcd(
            Polynomial(tuple(Fraction(c) for c in a.coeffs)),
            Polynomial(tuple(Fraction(c) for c in b.coeffs)),
        )
        assert g == Polynomial((-1, 1))

    def test_str(self):
        assert str(Polynomial((1, -1, -1))) == "1 - x - x^2"
        assert str(Polynomial((0, 0, 6))) == "6*x^2"
        assert str(Polynomial()) == "0"


class TestCharacteristicPolynomial:
    def test_fibonacci(self):
        assert characteristic_polynomial(LinearRecurrence((1, 1))) == Polynomial((-1, -1, 1))

    def test_empty(self):
        assert characteristic_polynomial(LinearRecurrence(())) == Polynomial((1,))

    def test_geometric(self):
        assert characteristic_polynomial(LinearRecurrence((2,))) == Polynomial((-2, 1))


class TestPolynomialRoots:
    def test_fibonacci_quadratic_formula_oracle(self):
        roots = polynomial_roots(Polynomial((-1, -1, 1)))
        values = sorted(complex(r).real for r, _ in roots)
        assert abs(values[0] - (1 - math.sqrt(5)) / 2) < 1e-9
        assert abs(values[1] - (1 + math.sqrt(5)) / 2) < 1e-9

    def test_exact_root(self):
        assert polynomial_roots(Polynomial((-2, 1))) == [(Fraction(2), 1)]

    def test_double_root(self):
        # (x-1)^2 expands to 1 - 2x + x^2
        assert polynomial_roots(Polynomial((1, -2, 1))) == [(Fraction(1), 2)]

    def test_zero_root_multiplicity(self):
        roots = polynomial_roots(Polynomial((0, 0, 1)))
        assert roots == [(Fraction(0), 2)]

    def test_complex_pair(self):
        roots = polynomial_roots(Polynomial((1, 0, 1)))
        assert sorted(complex(r).imag for r, _ in roots) == pytest.approx([-1.0, 1.0])

    def test_irrational_double_root_cluster(self):
        # (x^2 - 2)^2: companion-matrix roots split by ~1e-8 must merge
        p = Polynomial((4, 0, -4, 0, 1))
        roots = polynomial_roots(p)
        assert sorted(m for _, m in roots) == [2, 2]
        for r, _ in roots:
            assert abs(abs(complex(r).real) - math.sqrt(2)) < 1e-9

    def test_rational_roots_of_scaled_poly(self):
        # 6x^2 - 5x + 1 = (2x - 1)(3x - 1)
        roots = polynomial_roots(Polynomial((1, -5, 6)))
        assert roots == [(Fraction(1, 3), 1), (Fraction(1, 2), 1)]

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            polynomial_roots(Polynomial())


class TestBinetForm:
    def test_fibonacci_known_binet(self):
        ps = binet_form(LinearRecurrence((1, 1)), (1, 1))
        assert len(ps.terms) == 2
        # known closed form: F_n = (phi^n - psi^n)/sqrt(5)
        coeff = 1 / math.sqrt(5)
        got = sorted(complex(poly.coefficient(0)).real for poly, _ in ps.terms)
        assert got == pytest.approx([-coeff, coeff], abs=1e-9)
        for n in range(1, 31):
            value = complex(evaluate_powersum(ps, n))
            assert abs(value - iterate_recurrence(LinearRecurrence((1, 1)), (1, 1), n)[-1]) < 1e-6

    def test_empty(self):
        ps = binet_form(LinearRecurrence(()), ())
        assert ps.terms == ()
        assert evaluate_powersum(ps, 5) == 0

    def test_geometric(self):
        ps = binet_form(LinearRecurrence((2,)), (2,))
        assert len(ps.terms) == 1
        poly, root = ps.terms[0]
        assert root == 2 and poly == Polynomial((1,))
        assert evaluate_powersum(ps, 7) == 128

    def test_zero_root_shifts_validity(self):
        # b_{n+2} = 2 b_{n+1}: characteristic x(x - 2)
        ps = binet_form(LinearRecurrence((0, 2)), (1, 1))
        assert ps.valid_from == 2
        assert evaluate_powersum(ps, 2) == 1
        assert evaluate_powersum(ps, 5) == 8

    def test_exact_reconstruction_random_rational_roots(self):
        rng = random.Random(23)
        pool = [Fraction(v) for v in (-3, -2, -1, 1, 2, 3)] + [
            Fraction(1, 2),
            Fraction(-1, 2),
            Fraction(3, 2),
        ]
        for _ in range(20):
            k = rng.randint(1, 4)
            roots = rng.sample(pool, k)  # distinct, nonzero
            char = Polynomial((Fraction(1),))
            for r in roots:
                char = char * Polynomial((-r, Fraction(1)))
            # char = x^k - sum a_j x^j, so a_j = -coefficient(j)
            rec = LinearRecurrence(tuple(-char.coefficient(j) for j in range(k)))
            initial = tuple(rng.randint(-5, 5) for _ in range(k))
            ps = binet_form(rec, initial)
            assert ps.is_exact
            expected = iterate_recurrence(rec, initial, 30)
            for n in range(1, 31):
                assert evaluate_powersum(ps, n) == expected[n - 1]

    def test_repeated_rational_root(self):
        # characteristic (x - 2)^2 = x^2 - 4x + 4: rec a = (-4, 4)
        rec = LinearRecurrence((-4, 4))
        ps = binet_form(rec, (1, 1))
        assert len(ps.terms) == 1
        poly, root = ps.terms[0]
        assert root == 2 and poly.degree == 1
        expected = iterate_recurrence(rec, (1, 1), 12)
        for n in range(1, 13):
            assert evaluate_powersum(ps, n) == expected[n - 1]

    def test_initial_count_checked(self):
        with pytest.raises(ValueError):
            binet_form(LinearRecurrence((1, 1)), (1,))


class TestEvaluatePowersum:
    def test_domain(self):
        with pytest.raises(ValueError):
            evaluate_powersum(PowerSum(()), 0)

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            PowerSum(((Polynomial(), Fraction(2)),))
        with pytest.raises(ValueError):
            PowerSum(((Polynomial((1,)), Fraction(0)),))
        with pytest.raises(ValueError):
            PowerSum(
                (
                    (Polynomial((1,)), Fraction(3)),
                    (Polynomial((0, 1)), Fraction(3)),
                )
            )


class TestDominantPart:
    def test_fibonacci(self):
        dp = dominant_part(binet_form(LinearRecurrence((1, 1)), (1, 1)))
        assert dp.degree == 0
        assert abs(dp.alpha - GOLDEN) < 1e-9
        assert dp.l == 1
        gamma, beta = dp.unit_terms[0]
        assert beta == pytest.approx(1.0)
        assert abs(gamma) == pytest.approx(1 / math.sqrt(5), abs=1e-9)

    def test_symmetric_pair_keeps_both(self):
        ps = PowerSum(
            ((Polynomial((1,)), Fraction(2)), (Polynomial((1,)), Fraction(-2)))
        )
        dp = dominant_part(ps)
        assert dp.degree == 0 and dp.alpha == 2.0 and dp.l == 2
        assert sorted(b.real for _, b in dp.unit_terms) == [-1.0, 1.0]

    def test_degree_selects_at_equal_modulus(self):
        ps = PowerSum(
            ((Polynomial((0, 1)), Fraction(3)), (Polynomial((1,)), Fraction(-3)))
        )
        dp = dominant_part(ps)
        assert dp.degree == 1 and dp.alpha == 3.0 and dp.l == 1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            dominant_part(PowerSum(()))


class TestVandermondeModulus:
    def test_single(self):
        assert vandermonde_modulus([1.0]) == 1.0

    def test_pair(self):
        assert vandermonde_modulus([1.0, -1.0]) == 2.0

    def test_fourth_roots(self):
        betas = [1, 1j, -1, -1j]
        # oracle: the direct product over the six pairs
        direct = 1.0
        for u in range(4):
            for v in range(u + 1, 4):
                direct *= abs(complex(betas[v]) - complex(betas[u]))
        value = vandermonde_modulus(betas)
        assert value == pytest.approx(direct) == pytest.approx(16.0)

    def test_rotation_invariance(self):
        rng = random.Random(3)
        betas = [cmath.exp(1j * rng.uniform(0, 6.28)) for _ in range(4)]
        base = vandermonde_modulus(betas)
        for theta in (0.1, 1.0, 2.5):
            spun = [b * cmath.exp(1j * theta) for b in betas]
            assert vandermonde_modulus(spun) == pytest.approx(base, rel=1e-9)

    def test_coincident_rejected(self):
        with pytest.raises(ValueError):
            vandermonde_modulus([1.0, 1.0 + 1e-12])


class TestTailLowerBound:
    def test_constant(self):
        dp = DominantPart(0, 1.0, ((1 + 0j, 1 + 0j),))
        observed, bound = tail_lower_bound_check(dp, 17)
        assert observed == pytest.approx(1.0)
        assert bound == pytest.approx(1.0)
        assert observed >= bound - 1e-9

    def test_alternating(self):
        dp = DominantPart(0, 1.0, ((1 + 0j, 1 + 0j), (1 + 0j, -1 + 0j)))
        for n in (1, 2, 9, 100):
            observed, bound = tail_lower_bound_check(dp, n)
            assert observed == pytest.approx(2.0)  # window of length 2 hits an even index
            assert bound == pytest.approx(1.0)

    def test_random_property(self):
        rng = random.Random(5)
        for _ in range(60):
            l = rng.randint(1, 3)
            while True:
                betas = [cmath.exp(2j * math.pi * rng.random()) for _ in range(l)]
                gaps = [
                    abs(betas[u] - betas[v])
                    for u in range(l)
                    for v in range(u + 1, l)
                ]
                if all(g > 1e-6 for g in gaps):
                    break
            gammas = [
                rng.uniform(0.1, 10.0) * cmath.exp(2j * math.pi * rng.random())
                for _ in range(l)
            ]
            dp = DominantPart(0, 1.0, tuple(zip(gammas, betas)))
            for _ in range(25):
                n = rng.randint(1, 10**4)
                observed, bound = tail_lower_bound_check(dp, n)
                assert observed >= bound - 1e-9


class TestFallingFactorial:
    def test_base(self):
        assert falling_factorial(0) == Polynomial((1,))

    def test_k2(self):
        assert falling_factorial(2) == Polynomial((0, -1, 1))  # x^2 - x

    def test_value(self):
        assert falling_factorial(3)(5) == 60  # 5*4*3

    def test_monic_degree(self):
        for k in range(8):
            p = falling_factorial(k)
            assert p.degree == k and p.leading == 1

    def test_multiplicativity(self):
        for k in range(21):
            lhs = falling_factorial(k + 1)
            rhs = falling_factorial(k) * Polynomial((-k, 1))
            assert lhs == rhs


class TestAsymptoticConstant:
    def test_positive(self):
        assert catalan_asymptotic_constant(100) > 0

    def test_convergence_direction(self):
        limit = 1 / (4 * math.sqrt(math.pi))
        e200 = catalan_asymptotic_constant(200)
        e2000 = catalan_asymptotic_constant(2000)
        assert abs(e200 - e2000) < abs(e200 - limit)

    def test_domain(self):
        with pytest.raises(ValueError):
            catalan_asymptotic_constant(99)
