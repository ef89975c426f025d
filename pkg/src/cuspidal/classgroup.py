"""Cuspidal divisor class groups C(N) = D(N)/P(N) computed from lattices of
eta-unit divisors, together with the order matrices M, U, V whose determinant
identities certify the prime-power case."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .curve import CuspDivisor, divisor_basis, lambda_embedding
from .errors import ScopeError
from .eta import EtaQuotient, divisor, order_coefficient, pq_generators, prime_power_generators
from .linalg import (
    AbelianGroup,
    IntMatrix,
    congruence_kernel,
    divisors_of,
    euler_phi,
    factorize,
    hermite_row_basis,
    is_prime,
    quotient_structure,
)


@dataclass(frozen=True)
class ClassGroupResult:
    """Structure of C(N), the generators used for the unit lattice, and
    whether that lattice provably equals the full group of principal cuspidal
    divisors (true for N = p^n with p >= 5 and N = pq with p == q == 1 mod 12;
    otherwise the reported group is only an upper-bound quotient)."""

    N: int
    group: AbelianGroup
    generator_divisors: tuple
    certified: bool

    @property
    def order(self) -> int:
        return self.group.order


@dataclass(frozen=True)
class OrderMatrices:
    """The three square matrices of dimension n+1 attached to X0(p^n).

    `m24` is 24 times the matrix of cusp orders (rows: eta(p^i tau), columns:
    cusp level p^j), keeping every entry integral. `u` is diagonal with the
    cusp degrees; the first n rows of `v` are the generator exponent vectors
    and its last row is all ones.
    """

    p: int
    n: int
    m24: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def vmu(self) -> IntMatrix:
        return self.v * self.m24 * self.u


def _require_odd_prime_scope(p):
    if p in (2, 3):
        raise ScopeError(f"p = {p} is outside the supported scope (p >= 5 required)")
    if not is_prime(p):
        raise ScopeError(f"p = {p} is not prime")


def class_group(p: int, n: int) -> ClassGroupResult:
    """C(p^n) for p >= 5 prime, as the quotient of the cuspidal divisor
    lattice by the lattice of eta-unit divisors."""
    _require_odd_prime_scope(p)
    if n < 1:
        raise ValueError("n must be positive")
    gens = prime_power_generators(p, n)
    gen_divisors = tuple(divisor(h) for h in gens)
    ambient = [lambda_embedding(d, p, n) for d in divisor_basis(p, n)]
    sub = [lambda_embedding(d, p, n) for d in gen_divisors]
    group = quotient_structure(ambient, sub)
    return ClassGroupResult(N=p**n, group=group, generator_divisors=gen_divisors, certified=True)


def ling_structure(p: int, n: int) -> AbelianGroup:
    """Closed-form structure of C(p^n): (Z/a)^n x (Z/b)^(n-1) times an
    explicit product of p-power cyclic factors depending on the parity of n."""
    _require_odd_prime_scope(p)
    if n < 1:
        raise ValueError("n must be positive")
    a = (p - 1) // gcd(p - 1, 12)
    b = (p + 1) // gcd(p + 1, 12)
    orders = [a] * n + [b] * (n - 1)
    if n % 2 == 0:
        orders += [p**i for i in range(n // 2, n - 1)]
        orders += [p**i for i in range(n // 2 + 1, n)]
    else:
        orders += [p**i for i in range((n + 1) // 2, n - 1)]
        orders += [p**i for i in range((n + 1) // 2, n)]
    return AbelianGroup.from_cyclic_orders(orders)


def pq_divisor_coordinates(E: CuspDivisor, p: int, q: int):
    """Coordinates of a degree-zero integral divisor on X0(pq) in the basis
    D1 = Q_1 - Q_pq, D2 = Q_p - Q_pq, D3 = Q_q - Q_pq."""
    if E.N != p * q:
        raise ValueError("divisor is not on X0(pq)")
    if not E.is_integral() or E.degree() != 0:
        raise ValueError("expected an integral degree-zero divisor")
    return [int(E.coefficient(d)) for d in (1, p, q)]


def class_group_pq(p: int, q: int) -> ClassGroupResult:
    """C(pq) for distinct primes p == q == 1 mod 12, from the three-unit lattice."""
    gens = pq_generators(p, q)
    gen_divisors = tuple(divisor(h) for h in gens)
    ambient = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    sub = [pq_divisor_coordinates(d, p, q) for d in gen_divisors]
    group = quotient_structure(ambient, sub)
    return ClassGroupResult(N=p * q, group=group, generator_divisors=gen_divisors, certified=True)


def order_matrices(p: int, n: int) -> OrderMatrices:
    """The matrices M (x24), U, V for X0(p^n)."""
    _require_odd_prime_scope(p)
    if n < 1:
        raise ValueError("n must be positive")
    N = p**n
    m24 = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            entry = order_coefficient(N, p**j, p**i)
            assert entry.denominator == 1
            row.append(int(entry))
        m24.append(row)
    u = [
        [euler_phi(gcd(p**i, p ** (n - i))) if i == j else 0 for j in range(n + 1)]
        for i in range(n + 1)
    ]
    c = 24 // gcd(p - 1, 12)
    v = []
    first = [0] * (n + 1)
    first[0], first[1] = -c, c
    v.append(first)
    for k in range(n - 1):
        row = [0] * (n + 1)
        row[k], row[k + 2] = -1, 1
        v.append(row)
    v.append([1] * (n + 1))
    return OrderMatrices(p=p, n=n, m24=IntMatrix(m24), u=IntMatrix(u), v=IntMatrix(v))


def eta_unit_exponent_basis(N: int) -> list:
    """Basis (as EtaQuotients) of the lattice of exponent vectors satisfying
    all four Ligozat conditions on X0(N).

    The weight-zero condition is solved exactly; the two mod-24 congruences
    and the even-valuation conditions (one per prime dividing N) are imposed
    by a congruence-kernel computation, and the result is put into Hermite
    form for determinism.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    deltas = divisors_of(N)
    k = len(deltas)
    # basis of the weight-zero sublattice: e_i - e_last
    free_basis = []
    for i in range(k - 1):
        vec = [0] * k
        vec[i], vec[k - 1] = 1, -1
        free_basis.append(vec)
    primes = sorted(factorize(N))
    rows = []
    moduli = []
    for weights, modulus in (
        ([d % 24 for d in deltas], 24),
        ([(N // d) % 24 for d in deltas], 24),
    ):
        rows.append([sum(w * v for w, v in zip(weights, vec)) for vec in free_basis])
        moduli.append(modulus)
    for prime in primes:
        weights = [factorize(d).get(prime, 0) if d > 1 else 0 for d in deltas]
        rows.append([sum(w * v for w, v in zip(weights, vec)) % 2 for vec in free_basis])
        moduli.append(2)
    kernel = congruence_kernel(rows, moduli)
    exponent_vectors = [
        [sum(x * free_basis[i][j] for i, x in enumerate(coeffs)) for j in range(k)]
        for coeffs in kernel
    ]
    exponent_vectors = hermite_row_basis(exponent_vectors)
    return [
        EtaQuotient.make(N, {d: r for d, r in zip(deltas, vec)}) for vec in exponent_vectors
    ]


def eta_unit_divisor_lattice(N: int) -> list:
    """Canonical basis of the lattice of divisors of Ligozat-valid eta
    quotients on X0(N). For N = p^n with p >= 5 this is the full lattice of
    principal cuspidal divisors."""
    basis = eta_unit_exponent_basis(N)
    deltas = divisors_of(N)
    vectors = [[int(x) for x in divisor(h).coefficient_vector()] for h in basis]
    vectors = hermite_row_basis(vectors)
    return [CuspDivisor.make(N, dict(zip(deltas, vec))) for vec in vectors]


def divisor_lattice_coordinates(E: CuspDivisor):
    """Coordinates of an integral degree-zero cuspidal divisor in the basis
    Q_d - deg(Q_d) * Q_N over proper divisors d of N."""
    if not E.is_integral() or E.degree() != 0:
        raise ValueError("expected an integral degree-zero divisor")
    return [int(E.coefficient(d)) for d in divisors_of(E.N)[:-1]]


def class_group_for_level(N: int) -> ClassGroupResult:
    """C(N) for arbitrary N, dispatching to a certified computation when the
    eta-unit lattice is known to fill out all principal cuspidal divisors and
    flagging the result as an upper bound otherwise."""
    if N < 1:
        raise ValueError("level N must be positive")
    if N == 1:
        return ClassGroupResult(
            N=1, group=AbelianGroup.trivial(), generator_divisors=(), certified=True
        )
    factors = factorize(N)
    if len(factors) == 1:
        ((p, n),) = factors.items()
        if p >= 5:
            return class_group(p, n)
    if len(factors) == 2 and all(e == 1 for e in factors.values()):
        p, q = sorted(factors)
        if p % 12 == 1 and q % 12 == 1:
            return class_group_pq(p, q)
    lattice = eta_unit_divisor_lattice(N)
    ndivs = len(divisors_of(N))
    ambient = [
        [1 if i == j else 0 for j in range(ndivs - 1)] for i in range(ndivs - 1)
    ]
    sub = [divisor_lattice_coordinates(E) for E in lattice]
    group = quotient_structure(ambient, sub)
    return ClassGroupResult(N=N, group=group, generator_divisors=tuple(lattice), certified=False)


def divisor_in_lattice(E: CuspDivisor, basis) -> bool:
    """Does E lie in the lattice spanned by the given cuspidal divisors?"""
    if not basis:
        return all(c == 0 for _, c in E.coefficients)
    vectors = [[Fraction(x) for x in b.coefficient_vector()] for b in basis]
    target = [Fraction(x) for x in E.coefficient_vector()]
    from .linalg import express_in_basis

    try:
        coords = express_in_basis(vectors, target)
    except ValueError:
        return False
    return all(c.denominator == 1 for c in coords)
