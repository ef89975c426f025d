"""Eta quotients on X0(N): Ligozat's modularity test, cusp orders, divisors,
and the explicit generator families for prime-power and pq levels."""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .curve import CuspDivisor
from .errors import NotModularError, ScopeError
from .linalg import divisors_of, factorize, is_prime

_ETA_FACTOR = re.compile(r"eta\(\s*(\d+)\s*\)(?:\s*\^\s*(-?\d+))?", re.IGNORECASE)


@dataclass(frozen=True)
class EtaQuotient:
    """A finite product of eta factors eta(delta*tau)^r over divisors delta of N.

    Exponents are stored sparsely; product and integer powers act on the
    exponent vectors.
    """

    N: int
    exponents: tuple

    @classmethod
    def make(cls, N, exponents) -> "EtaQuotient":
        if N < 1:
            raise ValueError("level N must be positive")
        levels = set(divisors_of(N))
        items = []
        for delta, r in sorted(dict(exponents).items()):
            if delta not in levels:
                raise ValueError(f"{delta} is not a divisor of {N}")
            r = int(r)
            if r:
                items.append((delta, r))
        return cls(N, tuple(items))

    @classmethod
    def one(cls, N) -> "EtaQuotient":
        return cls.make(N, {})

    @classmethod
    def parse(cls, text, N) -> "EtaQuotient":
        """Parse the canonical text form `eta(d)^r * eta(d')^r' ...`."""
        exponents = {}
        rest = text.strip()
        if not rest:
            raise ValueError("empty eta-quotient expression")
        pieces = [piece.strip() for piece in rest.split("*")]
        for piece in pieces:
            match = _ETA_FACTOR.fullmatch(piece)
            if match is None:
                raise ValueError(f"cannot parse eta factor {piece!r}")
            delta = int(match.group(1))
            r = int(match.group(2)) if match.group(2) is not None else 1
            exponents[delta] = exponents.get(delta, 0) + r
        return cls.make(N, exponents)

    def exponent(self, delta) -> int:
        for d, r in self.exponents:
            if d == delta:
                return r
        return 0

    def __mul__(self, other):
        if not isinstance(other, EtaQuotient) or other.N != self.N:
            return NotImplemented
        merged = dict(self.exponents)
        for d, r in other.exponents:
            merged[d] = merged.get(d, 0) + r
        return EtaQuotient.make(self.N, merged)

    def __pow__(self, k: int):
        return EtaQuotient.make(self.N, {d: r * k for d, r in self.exponents})

    def __str__(self):
        if not self.exponents:
            return "1"
        return " * ".join(
            f"eta({d})" if r == 1 else f"eta({d})^{r}" for d, r in self.exponents
        )


@dataclass(frozen=True)
class LigozatReport:
    """Outcome of the four Ligozat conditions for modularity on X0(N)."""

    weight_zero: bool  # sum of exponents vanishes
    square_product: bool  # prod delta^r(delta) is a rational square
    sum_delta_mod_24: bool  # sum r(delta)*delta == 0 mod 24
    sum_complement_mod_24: bool  # sum r(delta)*(N/delta) == 0 mod 24

    @property
    def ok(self) -> bool:
        return (
            self.weight_zero
            and self.square_product
            and self.sum_delta_mod_24
            and self.sum_complement_mod_24
        )


def check_modular_function(h: EtaQuotient) -> LigozatReport:
    """Ligozat's criterion: h is a modular function on X0(N) iff all four hold.

    Quotients passing the test are defined over the rationals; the library
    relies on that fact but has no independent rationality check.
    """
    weight = sum(r for _, r in h.exponents)
    sum_delta = sum(r * d for d, r in h.exponents)
    sum_comp = sum(r * (h.N // d) for d, r in h.exponents)
    square = True
    for p in factorize(h.N) if h.N > 1 else {}:
        valuation = sum(r * factorize(d).get(p, 0) for d, r in h.exponents if d > 1)
        if valuation % 2:
            square = False
            break
    return LigozatReport(
        weight_zero=(weight == 0),
        square_product=square,
        sum_delta_mod_24=(sum_delta % 24 == 0),
        sum_complement_mod_24=(sum_comp % 24 == 0),
    )


def order_coefficient(N: int, d: int, delta: int) -> Fraction:
    """24 times the order of eta(delta*tau) at the level-d cusps of X0(N)."""
    return Fraction(N * gcd(d, delta) ** 2, gcd(d, N // d) * d * delta)


def order_at_cusp(h: EtaQuotient, d: int) -> Fraction:
    """Exact order of h at the cusps of level d."""
    if d < 1 or h.N % d != 0:
        raise ValueError(f"{d} is not a divisor of {h.N}")
    total = sum((r * order_coefficient(h.N, d, delta) for delta, r in h.exponents), Fraction(0))
    return total / 24


def divisor(h: EtaQuotient) -> CuspDivisor:
    """Divisor of a Ligozat-valid eta quotient, with integer coefficients."""
    report = check_modular_function(h)
    if not report.ok:
        raise NotModularError(f"{h} is not a modular function on X0({h.N})", report)
    coeffs = {}
    for d in divisors_of(h.N):
        order = order_at_cusp(h, d)
        if order.denominator != 1:
            raise AssertionError(f"non-integral order {order} of {h} at level {d}")
        coeffs[d] = order
    div = CuspDivisor.make(h.N, coeffs)
    if div.degree() != 0:
        raise AssertionError(f"divisor of {h} has nonzero degree {div.degree()}")
    return div


def prime_power_generators(p: int, n: int) -> list:
    """Generators of the group of eta-unit divisors on X0(p^n) for p >= 5:
    f = (eta(p)/eta(1))^(24/gcd(p-1,12)) and g_k = eta(p^(k+2))/eta(p^k)."""
    if not is_prime(p) or p < 5:
        raise ScopeError(f"p = {p} is not a prime >= 5")
    if n < 1:
        raise ValueError("n must be positive")
    N = p**n
    e = 24 // gcd(p - 1, 12)
    gens = [EtaQuotient.make(N, {p: e, 1: -e})]
    for k in range(n - 1):
        gens.append(EtaQuotient.make(N, {p ** (k + 2): 1, p**k: -1}))
    return gens


def pq_generators(p: int, q: int) -> list:
    """The three eta units on X0(pq) for distinct primes p, q == 1 mod 12."""
    if not (is_prime(p) and is_prime(q)) or p == q or p % 12 != 1 or q % 12 != 1:
        raise ScopeError(f"(p, q) = ({p}, {q}) must be distinct primes == 1 mod 12")
    N = p * q
    return [
        EtaQuotient.make(N, {1: 1, q: 1, p: -1, N: -1}),
        EtaQuotient.make(N, {1: 1, p: 1, q: -1, N: -1}),
        EtaQuotient.make(N, {1: 1, N: 1, p: -1, q: -1}),
    ]


def gcd_of_divisor_coefficients(h: EtaQuotient) -> int:
    """gcd of the (integer) cusp orders of a Ligozat-valid eta quotient."""
    div = divisor(h)
    out = 0
    for _, c in div.coefficients:
        out = gcd(out, int(c))
    return out
