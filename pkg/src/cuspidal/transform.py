"""Exact leading Fourier coefficients of eta quotients at cusps.

The engine writes each eta factor evaluated along a cusp uniformizer as a
root of unity times a half-integer power of primes, using the classical
transformation law of the eta function under SL2(Z) (Weber's multiplier
formula with Jacobi symbols). Square-root factors sqrt((c*tau+d)/i) from the
weight-1/2 law share a common angle across all factors of a weight-zero
quotient, so they cancel exactly in pairs, leaving only rational square
roots; no branch-cut bookkeeping survives into the result.

A floating-point oracle evaluates the same quantity from the q-product
definition of eta (plus argument reduction to the fundamental domain) and is
used to certify the exact values.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp

from .errors import ScopeError
from .eta import EtaQuotient
from .linalg import QmodZ, factorize

UnitPhase = QmodZ  # exponent x of a root of unity e^(2*pi*i*x)


@dataclass(frozen=True)
class LeadingCoeff:
    """An exact algebraic number zeta * prod p^(v_p / 2): a root of unity
    recorded as a phase in Q/Z together with half-integer prime exponents."""

    phase: QmodZ
    half_exponents: tuple

    @classmethod
    def make(cls, phase, half_exponents=()) -> "LeadingCoeff":
        if not isinstance(phase, QmodZ):
            phase = QmodZ.of(phase)
        items = tuple(sorted((int(p), int(v)) for p, v in dict(half_exponents).items() if v))
        return cls(phase, items)

    @classmethod
    def one(cls) -> "LeadingCoeff":
        return cls.make(0)

    def half_exponent(self, p) -> int:
        for prime, v in self.half_exponents:
            if prime == p:
                return v
        return 0

    @property
    def magnitude_half_exponents(self) -> dict:
        return dict(self.half_exponents)

    def __mul__(self, other):
        merged = dict(self.half_exponents)
        for p, v in other.half_exponents:
            merged[p] = merged.get(p, 0) + v
        return LeadingCoeff.make(self.phase + other.phase, merged)

    def __pow__(self, k: int):
        return LeadingCoeff.make(k * self.phase, {p: v * k for p, v in self.half_exponents})

    @property
    def inverse(self) -> "LeadingCoeff":
        return self**-1

    def as_complex(self) -> complex:
        value = mp.e ** (2j * mp.pi * mp.mpf(self.phase.value.numerator) / self.phase.value.denominator)
        for p, v in self.half_exponents:
            value *= mp.mpf(p) ** (mp.mpf(v) / 2)
        return complex(value)

    def __str__(self):
        parts = []
        if self.phase:
            parts.append(f"e({self.phase.value})")
        for p, v in self.half_exponents:
            if v == 2:
                parts.append(str(p))
            elif v % 2 == 0:
                parts.append(f"{p}^({v // 2})")
            else:
                parts.append(f"{p}^({v}/2)")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class SigmaMatrix:
    """Integer 2x2 matrix of positive determinant mapping infinity to a
    chosen cusp representative; the local uniformizer it induces is
    q = e^(2*pi*i*tau) pulled back along the matrix."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det <= 0:
            raise ValueError("sigma matrix must have positive determinant")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def act(self, tau):
        """Moebius action on a point of the upper half-plane (mpmath)."""
        tau = mp.mpc(tau)
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def cusp(self):
        """The image of infinity as a Fraction (None denotes infinity itself)."""
        if self.c == 0:
            return None
        return Fraction(self.a, self.c)


def jacobi_symbol(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for odd positive b."""
    if b <= 0 or b % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive lower argument")
    a %= b
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def eta_multiplier(a: int, b: int, c: int, d: int) -> QmodZ:
    """Phase x with eta(gamma tau) = e(x) * sqrt((c tau + d)/i) * eta(tau)
    for gamma in SL2(Z) with c != 0, and eta(tau + b) = e(b/24) eta(tau) for
    c = 0, always using the principal square root.

    The identity with a single constant phase only holds on the sign-
    canonical representative (c > 0, or c = 0 and d > 0), so the input is
    canonicalized first; gamma and -gamma act identically.
    """
    if a * d - b * c != 1:
        raise ValueError("matrix is not unimodular")
    if c < 0 or (c == 0 and d < 0):
        a, b, c, d = -a, -b, -c, -d
    if c == 0:
        return QmodZ.of(b, 24)
    if c % 2 == 1:
        phase = Fraction(1 - c, 8) + Fraction(b * d * (1 - c * c) + c * (a + d), 24)
        if jacobi_symbol(d, c) == -1:
            phase += Fraction(1, 2)
        return QmodZ.of(phase)
    if d % 2 == 1:
        phase = Fraction(a * c * (1 - d * d) + d * (b - c + 3), 24)
        if jacobi_symbol(c, abs(d)) == -1:
            phase += Fraction(1, 2)
        return QmodZ.of(phase)
    raise AssertionError("c and d cannot both be even in SL2(Z)")


def sigma_matrix(p: int, n: int, m: int) -> SigmaMatrix:
    """Uniformizing matrix for the level-p^m cusp of X0(p^n): the cusp
    representative is 1/p^m for m >= n/2 and -1/p^m below."""
    if not 0 <= m <= n:
        raise ScopeError(f"cusp index m = {m} out of range 0..{n}")
    if 2 * m >= n:
        return SigmaMatrix(1, 0, p**m, 1)
    return SigmaMatrix(-(p ** (n - m)), -1, p**n, 0)


def pq_sigma_matrix(p: int, q: int, m: int) -> SigmaMatrix:
    """Uniformizing matrix for the level-m cusp of X0(pq), m in {1, p, q, pq},
    normalizing Gamma0(pq) and sending infinity to 1/m."""
    N = p * q
    if m not in (1, p, q, N):
        raise ScopeError(f"{m} is not a cusp level of X0({N})")
    comp = N // m
    d = next(dd for dd in range(1, m + 1) if (dd * comp) % m == 1 % m)
    b = (d * comp - 1) // m
    return SigmaMatrix(comp, -b, N, d * comp)


def _upper_triangularize(m11, m12, m21, m22):
    """Write an integer matrix of positive determinant as gamma * [[A,B],[0,C]]
    with gamma in SL2(Z), A, C > 0 and 0 <= B < C."""
    det = m11 * m22 - m12 * m21
    assert det > 0
    if m21 == 0:
        s = 1 if m11 > 0 else -1
        a, c = abs(m11), abs(m22)
        k, b = divmod(s * m12, c)
        return (s, s * k, 0, s), a, b, c

    def egcd(x, y):
        if y == 0:
            return (1, 0, x)
        u, v, g = egcd(y, x % y)
        return (v, u - (x // y) * v, g)

    a = gcd(abs(m11), abs(m21))
    g11, g21 = m11 // a, m21 // a
    u, v, g = egcd(g11, g21)
    assert g == 1
    g12, g22 = -v, u
    c = det // a
    k, b = divmod(g22 * m12 - g12 * m22, c)
    gamma = (g11, g12 + k * g11, g21, g22 + k * g21)
    assert (gamma[0] * a, gamma[0] * b + gamma[1] * c) == (m11, m12)
    assert (gamma[2] * a, gamma[2] * b + gamma[3] * c) == (m21, m22)
    return gamma, a, b, c


@dataclass(frozen=True)
class CuspExpansion:
    """Leading data of an eta quotient along a cusp uniformizer: the exact
    leading coefficient, the q-order, and the minimal exponent step of the
    expansion (which controls numeric convergence)."""

    leading: LeadingCoeff
    order: Fraction
    gap: Fraction


def cusp_expansion(h: EtaQuotient, sigma: SigmaMatrix) -> CuspExpansion:
    """Exact leading coefficient and order of h along the uniformizer of sigma.

    Requires weight zero (the exponents of h must sum to 0) so that the
    square-root factors of the transformation law cancel.
    """
    if sum(r for _, r in h.exponents) != 0:
        raise ValueError("leading coefficients need a weight-zero eta quotient")
    phase = QmodZ.of(0)
    half = {}
    order = Fraction(0)
    gap = None
    sqrt_balance = 0
    for delta, r in h.exponents:
        gamma, a, b, c = _upper_triangularize(
            delta * sigma.a, delta * sigma.b, sigma.c, sigma.d
        )
        if gamma[2] == 0:
            # pure shift: eta(z + k) = e(k/24) eta(z)
            shift = gamma[0] * gamma[1]
            phase += r * QmodZ.of(shift, 24)
        else:
            phase += r * eta_multiplier(*gamma)
            # sqrt((c_gamma z + d_gamma)/i) = sqrt(common angle) / sqrt(C);
            # the common-angle parts cancel once the weights balance
            for prime, e in factorize(c).items():
                half[prime] = half.get(prime, 0) - r * e
            sqrt_balance += r
        phase += r * QmodZ.of(b, 24 * c)
        order += r * Fraction(a, 24 * c)
        step = Fraction(a, c)
        gap = step if gap is None else min(gap, step)
    assert sqrt_balance == 0, "square-root factors failed to cancel"
    if gap is None:
        gap = Fraction(1)
    return CuspExpansion(leading=LeadingCoeff.make(phase, half), order=order, gap=gap)


def _prime_power_level(N):
    factors = factorize(N)
    if len(factors) != 1:
        raise ScopeError(f"level {N} is not a prime power")
    ((p, n),) = factors.items()
    return p, n


def leading_coefficient(h: EtaQuotient, m: int) -> LeadingCoeff:
    """Leading Fourier coefficient of a weight-zero eta quotient on X0(p^n)
    at the level-p^m cusp, with respect to the standard uniformizer."""
    p, n = _prime_power_level(h.N)
    sigma = sigma_matrix(p, n, m)
    return cusp_expansion(h, sigma).leading


def pq_leading_coefficients(p: int, q: int) -> dict:
    """Leading coefficients of the three generators f1, f2, f3 on X0(pq) at
    the four cusps, keyed by generator name and cusp level."""
    from .eta import pq_generators

    gens = pq_generators(p, q)
    table = {}
    for name, h in zip(("f1", "f2", "f3"), gens):
        table[name] = {
            level: cusp_expansion(h, pq_sigma_matrix(p, q, level)).leading
            for level in (1, p, q, p * q)
        }
    return table


def eta_numeric(z, terms: int = 200):
    """Dedekind eta at a point of the upper half-plane (mpmath complex).

    The argument is moved into the fundamental domain with integer shifts and
    inversions before the truncated q-product is evaluated, so any height
    works; `terms` only controls the final product truncation.
    """
    z = mp.mpc(z)
    if mp.im(z) <= 0:
        raise ValueError("eta is defined on the upper half-plane")
    factor = mp.mpc(1)
    while True:
        shift = mp.floor(mp.re(z) + mp.mpf("0.5"))
        z -= shift
        factor *= mp.e ** (mp.pi * 1j * shift / 12)
        if abs(z) >= 1:
            break
        z = -1 / z
        factor *= mp.sqrt(z / 1j)
    q = mp.e ** (2j * mp.pi * z)
    product = mp.mpc(1)
    power = mp.mpc(1)
    for _ in range(terms):
        power *= q
        product *= 1 - power
    return factor * mp.e ** (mp.pi * 1j * z / 12) * product


@dataclass(frozen=True)
class NumericLeadingCoeff:
    value: complex
    error_estimate: float


def numeric_leading_coefficient(
    h: EtaQuotient, sigma: SigmaMatrix, order: Fraction, height=8, terms: int = 200
) -> NumericLeadingCoeff:
    """Floating-point oracle: h(sigma . i*height) normalized by the order-th
    power of the uniformizer. Converges to the exact leading coefficient as
    the height grows; the error estimate comes from the next q-power of the
    expansion and the product truncation."""
    if height < 4:
        raise ValueError("height must be at least 4")
    if terms < 50:
        raise ValueError("terms must be at least 50")
    order = Fraction(order)
    with mp.workdps(50):
        tau = mp.mpc(0, height)
        w = sigma.act(tau)
        value = mp.mpc(1)
        # eta_numeric reduces into the fundamental domain, so |q| <= e^(-pi sqrt(3))
        qmax = mp.e ** (-mp.pi * mp.sqrt(3))
        truncation = mp.mpf(0)
        for delta, r in h.exponents:
            value *= eta_numeric(delta * w, terms) ** r
            truncation += abs(r) * qmax ** (terms + 1) / (1 - qmax)
        qtau = mp.e ** (2j * mp.pi * tau)
        value *= qtau ** (-mp.mpf(order.numerator) / order.denominator)
        gap = cusp_expansion(h, sigma).gap
        next_term = mp.e ** (-2 * mp.pi * height * mp.mpf(gap.numerator) / gap.denominator)
        estimate = float(abs(value) * (next_term + truncation) + mp.mpf(10) ** (-40))
        return NumericLeadingCoeff(value=complex(value), error_estimate=estimate)


def suggested_height(h: EtaQuotient, sigma: SigmaMatrix) -> int:
    """A height at which the numeric oracle has converged well past 1e-8."""
    gap = cusp_expansion(h, sigma).gap
    return max(8, int(10 / gap) + 1)
