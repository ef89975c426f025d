import random
from fractions import Fraction
from math import gcd

import mpmath as mp
import pytest

from cuspidal.errors import ScopeError
from cuspidal.eta import EtaQuotient, order_at_cusp, pq_generators, prime_power_generators
from cuspidal.linalg import QmodZ
from cuspidal.transform import (
    LeadingCoeff,
    SigmaMatrix,
    cusp_expansion,
    eta_multiplier,
    eta_numeric,
    jacobi_symbol,
    leading_coefficient,
    numeric_leading_coefficient,
    pq_leading_coefficients,
    pq_sigma_matrix,
    sigma_matrix,
    suggested_height,
)


def test_jacobi_examples():
    assert jacobi_symbol(1, 1) == 1
    assert jacobi_symbol(3, 7) == -1
    assert jacobi_symbol(2, 15) == 1
    assert jacobi_symbol(0, 3) == 0
    assert jacobi_symbol(-1, 5) == 1
    with pytest.raises(ValueError):
        jacobi_symbol(3, 4)
    with pytest.raises(ValueError):
        jacobi_symbol(3, -5)


def test_jacobi_matches_euler_criterion_for_primes():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for a in range(1, p):
            euler = pow(a, (p - 1) // 2, p)
            expected = 1 if euler == 1 else -1
            assert jacobi_symbol(a, p) == expected


def test_eta_multiplier_examples():
    assert eta_multiplier(1, 1, 0, 1) == QmodZ.of(1, 24)
    assert eta_multiplier(0, -1, 1, 0) == QmodZ.of(0)
    with pytest.raises(ValueError):
        eta_multiplier(1, 1, 1, 1)


def test_eta_multiplier_is_24th_root():
    rng = random.Random(2718)
    for _ in range(1000):
        a, b, c, d = _random_sl2(rng)
        phase = eta_multiplier(a, b, c, d)
        assert 24 % phase.value.denominator == 0


def _random_sl2(rng, bound=40):
    while True:
        c = rng.randint(-bound, bound)
        d = rng.randint(-bound, bound)
        if gcd(c, d) == 1:
            break

    def egcd(x, y):
        if y == 0:
            return (1, 0, x)
        u, v, g = egcd(y, x % y)
        return (v, u - (x // y) * v, g)

    u, v, g = egcd(d, -c)
    a, b = u * g, v * g
    t = rng.randint(-4, 4)
    a, b = a + t * c, b + t * d
    assert a * d - b * c == 1
    return a, b, c, d


def test_eta_transformation_identity_numeric():
    # eta(gamma tau) = e(phase) sqrt((c tau + d)/i) eta(tau), principal branch,
    # on the sign-canonical representative
    rng = random.Random(314159)
    with mp.workdps(40):
        checked = 0
        while checked < 100:
            a, b, c, d = _random_sl2(rng)
            if c < 0 or (c == 0 and d < 0):
                a, b, c, d = -a, -b, -c, -d
            if c == 0:
                continue
            tau = mp.mpc(rng.uniform(-1.5, 1.5), rng.uniform(0.4, 2.5))
            lhs = eta_numeric((a * tau + b) / (c * tau + d))
            phase = eta_multiplier(a, b, c, d)
            eps = mp.e ** (2j * mp.pi * mp.mpf(phase.value.numerator) / phase.value.denominator)
            rhs = eps * mp.sqrt((c * tau + d) / 1j) * eta_numeric(tau)
            assert abs(lhs - rhs) / abs(lhs) < 1e-10
            checked += 1


def test_eta_numeric_value_at_i():
    with mp.workdps(30):
        value = eta_numeric(mp.mpc(0, 1))
        # Gamma(1/4) / (2 pi^(3/4))
        expected = mp.gamma(mp.mpf(1) / 4) / (2 * mp.pi ** mp.mpf(0.75))
        assert abs(value - expected) < 1e-20
        assert abs(value - 0.7682254) < 1e-6


def test_sigma_matrix_examples():
    assert sigma_matrix(5, 2, 1).rows == ((1, 0), (5, 1))
    assert sigma_matrix(5, 2, 0).rows == ((-25, -1), (25, 0))
    with pytest.raises(ScopeError):
        sigma_matrix(5, 2, 3)


def test_sigma_matrix_maps_infinity_to_cusp():
    for p in (5, 13):
        for n in range(1, 6):
            for m in range(n + 1):
                sig = sigma_matrix(p, n, m)
                target = Fraction(1, p**m) if 2 * m >= n else Fraction(-1, p**m)
                assert sig.cusp() == target
                assert sig.det in (1, p**n)


def test_pq_sigma_matrix():
    p, q = 13, 37
    for m in (1, p, q, p * q):
        sig = pq_sigma_matrix(p, q, m)
        assert sig.cusp() == Fraction(1, m)
        assert sig.det > 0
        # sigma normalizes Gamma0(pq): sigma T sigma^-1 must have determinant 1
        # and integer entries scaled by det; checked via the defining relation
        (a, b), (c, d) = sig.rows
        assert c % (p * q) == 0
    with pytest.raises(ScopeError):
        pq_sigma_matrix(13, 37, 7)


def expected_generator_lc(p, n, gen_index, m):
    """Closed-form leading coefficients of f (gen_index -1) and g_k
    (gen_index k >= 0) at the level-p^m cusp.

    Conventions: sqrt(p*) = e((p-1)/8) sqrt(p) and a*b = (p^2-1)/24. The
    f-entry at the cusps -1/p^m (1 <= m < n/2) is e(+a/p^m); see the
    numeric certification in this test module.
    """
    ab = (p * p - 1) // 24
    a = (p - 1) // gcd(p - 1, 12)
    if 2 * m >= n:
        if gen_index == -1:
            return LeadingCoeff.one()
        k = gen_index
        if k <= m - 2:
            return LeadingCoeff.one()
        if k == m - 1:
            phase = Fraction(p - 1, 4) - Fraction(ab, p) - Fraction(p - 1, 8)
            return LeadingCoeff.make(phase, {p: -1})
        return LeadingCoeff.make(Fraction(-ab, p ** (k + 2 - m)), {p: -2})
    if gen_index == -1:
        if m == 0:
            return LeadingCoeff.make(0, {p: -24 // gcd(p - 1, 12)})
        return LeadingCoeff.make(Fraction(a, p**m), {})
    k = gen_index
    if k >= m:
        return LeadingCoeff.make(0, {p: -2})
    if k == m - 1:
        phase = Fraction(ab, p) - Fraction(p - 1, 8)
        return LeadingCoeff.make(phase, {p: -1})
    return LeadingCoeff.make(Fraction(ab, p ** (m - k)), {})


def test_leading_coefficients_match_closed_form_tables():
    for p in (5, 13):
        for n in (1, 2, 3):
            gens = prime_power_generators(p, n)
            for idx, h in enumerate(gens):
                gen_index = -1 if idx == 0 else idx - 1
                for m in range(n + 1):
                    got = leading_coefficient(h, m)
                    expected = expected_generator_lc(p, n, gen_index, m)
                    assert got == expected, (p, n, gen_index, m)


def test_leading_coefficients_numeric_certification():
    for p in (5, 13):
        for n in (1, 2, 3):
            gens = prime_power_generators(p, n)
            for h in gens:
                for m in range(n + 1):
                    sigma = sigma_matrix(p, n, m)
                    exp = cusp_expansion(h, sigma)
                    numeric = numeric_leading_coefficient(h, sigma, exp.order, height=8, terms=200)
                    assert abs(exp.leading.as_complex() - numeric.value) < 1e-8, (p, n, h, m)
                    assert numeric.error_estimate < 1e-8


def test_cusp_expansion_order_matches_eta_module():
    for p, n in [(5, 2), (5, 3), (13, 2), (7, 4)]:
        gens = prime_power_generators(p, n)
        for h in gens:
            for m in range(n + 1):
                exp = cusp_expansion(h, sigma_matrix(p, n, m))
                assert exp.order == order_at_cusp(h, p**m)


def test_leading_coefficient_multiplicative():
    p, n = 5, 3
    f, g0, g1 = prime_power_generators(p, n)
    for m in range(n + 1):
        lhs = leading_coefficient(f * g0, m)
        rhs = leading_coefficient(f, m) * leading_coefficient(g0, m)
        assert lhs == rhs
        lhs = leading_coefficient(g0 * g1**2, m)
        rhs = leading_coefficient(g0, m) * leading_coefficient(g1, m) ** 2
        assert lhs == rhs


def test_leading_coeff_value_semantics():
    x = LeadingCoeff.make(Fraction(1, 8), {5: 1})
    y = LeadingCoeff.make(Fraction(7, 8), {5: -1})
    assert (x * y) == LeadingCoeff.one()
    assert x.inverse == y
    assert (x**2) == LeadingCoeff.make(Fraction(1, 4), {5: 2})
    assert str(x) == "e(1/8)*5^(1/2)"
    assert str(LeadingCoeff.make(0, {5: -6})) == "5^(-3)"
    assert str(LeadingCoeff.one()) == "1"
    value = complex(LeadingCoeff.make(Fraction(1, 2), {2: 2}).as_complex())
    assert abs(value - (-2)) < 1e-12


def test_pq_leading_coefficient_table():
    p, q = 13, 37
    table = pq_leading_coefficients(p, q)
    expected = {
        "f1": {1: {p: 2}, p: {}, q: {p: 2}, p * q: {}},
        "f2": {1: {q: 2}, p: {q: 2}, q: {}, p * q: {}},
        "f3": {1: {}, p: {}, q: {}, p * q: {}},
    }
    for name, row in expected.items():
        for level, mags in row.items():
            assert table[name][level].magnitude_half_exponents == mags, (name, level)


def test_pq_leading_coefficients_numeric():
    p, q = 13, 37
    gens = dict(zip(("f1", "f2", "f3"), pq_generators(p, q)))
    table = pq_leading_coefficients(p, q)
    for name, h in gens.items():
        for level in (1, p, q, p * q):
            sigma = pq_sigma_matrix(p, q, level)
            exp = cusp_expansion(h, sigma)
            height = suggested_height(h, sigma)
            numeric = numeric_leading_coefficient(h, sigma, exp.order, height=height)
            symbolic = table[name][level].as_complex()
            assert abs(abs(symbolic) - abs(numeric.value)) < 1e-8, (name, level)


def test_numeric_oracle_reports_error_estimate():
    h = EtaQuotient.make(25, {5: 6, 1: -6})
    sigma = sigma_matrix(5, 2, 1)
    from cuspidal.eta import order_at_cusp as oac

    result = numeric_leading_coefficient(h, sigma, oac(h, 5), height=8, terms=200)
    assert result.error_estimate < 1e-8
    coarse = numeric_leading_coefficient(h, sigma, oac(h, 5), height=4, terms=50)
    assert coarse.error_estimate > result.error_estimate


def test_cusp_expansion_requires_weight_zero():
    with pytest.raises(ValueError):
        cusp_expansion(EtaQuotient.make(5, {5: 1}), sigma_matrix(5, 1, 0))


def test_numeric_oracle_preconditions():
    h = EtaQuotient.make(5, {5: 6, 1: -6})
    sigma = sigma_matrix(5, 1, 1)
    with pytest.raises(ValueError):
        numeric_leading_coefficient(h, sigma, Fraction(1), height=2)
    with pytest.raises(ValueError):
        numeric_leading_coefficient(h, sigma, Fraction(1), terms=10)


def test_sigma_matrix_rejects_nonpositive_determinant():
    with pytest.raises(ValueError):
        SigmaMatrix(1, 0, 0, -1)
    with pytest.raises(ValueError):
        SigmaMatrix(0, 1, 1, 0)
