"""Exact integer linear algebra: dense matrices, Smith normal form, lattice
quotients, and invariant factors of finite abelian groups.

Everything here is exact; no floating point is used anywhere in this module.
"""

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class QmodZ:
    """A rational number reduced modulo 1 into [0, 1).

    Used throughout as the exponent of a root of unity e^(2*pi*i*value).
    """

    value: Fraction

    @classmethod
    def of(cls, numerator, denominator=1):
        return cls(Fraction(numerator, denominator) % 1)

    def __post_init__(self):
        if not (0 <= self.value < 1):
            raise ValueError(f"QmodZ value {self.value} not reduced into [0,1)")

    def __add__(self, other):
        return QmodZ((self.value + other.value) % 1)

    def __sub__(self, other):
        return QmodZ((self.value - other.value) % 1)

    def __neg__(self):
        return QmodZ(-self.value % 1)

    def __mul__(self, k: int):
        return QmodZ(self.value * k % 1)

    __rmul__ = __mul__

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


class IntMatrix:
    """Dense matrix of arbitrary-precision integers, immutable after construction."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if entries and any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("ragged rows")
        self.entries = entries

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def __neg__(self):
        return IntMatrix([[-x for x in row] for row in self.entries])

    def transpose(self):
        return IntMatrix(list(zip(*self.entries))) if self.entries else IntMatrix([])

    def diagonal(self):
        return [self.entries[i][i] for i in range(min(self.nrows, self.ncols))]

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def __str__(self):
        if not self.entries:
            return "[]"
        width = max(len(str(x)) for row in self.entries for x in row)
        return "\n".join(
            "[" + "  ".join(str(x).rjust(width) for x in row) + "]" for row in self.entries
        )


@dataclass(frozen=True)
class SmithDecomposition:
    """P * A * Q = D with P, Q unimodular and D diagonal with d1 | d2 | ..."""

    d: IntMatrix
    p: IntMatrix
    q: IntMatrix


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    The pivot is always the remaining entry of smallest absolute value
    (row-major tie break), so the reduction is deterministic.
    """
    nr, nc = a.nrows, a.ncols
    m = [list(row) for row in a]
    p = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    q = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, mult):
        m[dst] = [x + mult * y for x, y in zip(m[dst], m[src])]
        p[dst] = [x + mult * y for x, y in zip(p[dst], p[src])]

    def add_col(dst, src, mult):
        for row in m:
            row[dst] += mult * row[src]
        for row in q:
            row[dst] += mult * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        p[i] = [-x for x in p[i]]

    def smallest_pivot(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nr, nc):
        pos = smallest_pivot(t)
        if pos is None:
            break
        while True:
            pos = smallest_pivot(t)
            if pos != (t, t):
                if pos[0] != t:
                    swap_rows(t, pos[0])
                if pos[1] != t:
                    swap_cols(t, pos[1])
            if m[t][t] < 0:
                negate_row(t)
            for i in range(t + 1, nr):
                quot = m[i][t] // m[t][t]
                if quot:
                    add_row(i, t, -quot)
            for j in range(t + 1, nc):
                quot = m[t][j] // m[t][t]
                if quot:
                    add_col(j, t, -quot)
            if all(m[i][t] == 0 for i in range(t + 1, nr)) and all(
                m[t][j] == 0 for j in range(t + 1, nc)
            ):
                # pivot must divide the rest of the block for the chain condition
                bad = next(
                    (
                        (i, j)
                        for i in range(t + 1, nr)
                        for j in range(t + 1, nc)
                        if m[i][j] % m[t][t] != 0
                    ),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
        t += 1

    return SmithDecomposition(IntMatrix(m), IntMatrix(p), IntMatrix(q))


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group given by its invariant factors d1 | d2 | ... (each > 1).

    The trivial group is the empty factor list.
    """

    invariant_factors: tuple = field(default=())

    def __post_init__(self):
        factors = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for f in factors:
            if f <= 1:
                raise ValueError(f"invariant factor {f} must exceed 1")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors {factors} violate the divisibility chain")

    @classmethod
    def trivial(cls):
        return cls(())

    @classmethod
    def from_cyclic_orders(cls, orders) -> "AbelianGroup":
        """Invariant factors of a direct sum of cyclic groups of the given orders."""
        primary = {}
        for order in orders:
            order = int(order)
            if order < 1:
                raise ValueError(f"cyclic order {order} must be positive")
            for prime, exp in factorize(order).items():
                primary.setdefault(prime, []).append(exp)
        width = max((len(v) for v in primary.values()), default=0)
        factors = []
        for k in range(width):
            f = 1
            for prime, exps in primary.items():
                exps_sorted = sorted(exps, reverse=True)
                if k < len(exps_sorted):
                    f *= prime ** exps_sorted[k]
            factors.append(f)
        return cls(tuple(sorted(factors)))

    @property
    def order(self) -> int:
        result = 1
        for f in self.invariant_factors:
            result *= f
        return result

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


def factorize(n: int) -> dict:
    """Prime factorization {p: exponent} of a positive integer by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out -= out // p
    return out


def divisors_of(n: int) -> list:
    """Positive divisors in increasing order."""
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def solve_exact(rows, rhs):
    """Solve A.x = rhs exactly over the rationals; A given by rows.

    Requires the solution to be unique (full column rank). Raises ValueError
    when the system is inconsistent or underdetermined. Entries may be ints
    or Fractions.
    """
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(m[0]) - 1 if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            raise ValueError("inconsistent linear system")
    if len(pivots) < ncols:
        raise ValueError("underdetermined linear system")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def express_in_basis(basis, vector):
    """Coordinates of `vector` in the given basis of row vectors (exact rationals)."""
    cols = list(zip(*basis))
    return solve_exact(cols, vector)


def quotient_structure(ambient_basis, sub_basis) -> AbelianGroup:
    """Structure of (lattice spanned by ambient_basis)/(lattice spanned by sub_basis).

    Each sub-basis vector must be an integer combination of the ambient basis,
    and the two lattices must have the same rank (otherwise the quotient is
    infinite and a ValueError is raised).
    """
    ambient = [list(v) for v in ambient_basis]
    subs = [list(v) for v in sub_basis]
    if not ambient:
        if any(any(v) for v in subs):
            raise ValueError("sub lattice not contained in the trivial ambient lattice")
        return AbelianGroup.trivial()
    k = len(ambient)
    coords = []
    for v in subs:
        try:
            x = express_in_basis(ambient, v)
        except ValueError as exc:
            raise ValueError(f"sub-basis vector {v} is not in the ambient lattice") from exc
        if any(c.denominator != 1 for c in x):
            raise ValueError(f"sub-basis vector {v} is not an integer combination")
        coords.append([int(c) for c in x])
    snf = smith_normal_form(IntMatrix(coords)) if coords else None
    diag = snf.d.diagonal() if snf else []
    rank = sum(1 for d in diag if d != 0)
    if rank < k:
        raise ValueError("sub lattice has smaller rank; quotient is infinite")
    return AbelianGroup(tuple(d for d in diag if d > 1))


def bordered_lattice_index(vectors, extra) -> int:
    """Index of the span of n coordinate-sum-zero vectors inside the full
    sum-zero lattice of Z^(n+1), computed from one bordered determinant.

    `extra` is any integer vector whose coordinate sum is nonzero. Returns 0
    when the given vectors are linearly dependent.
    """
    vectors = [list(v) for v in vectors]
    extra = list(extra)
    n = len(vectors)
    if any(len(v) != n + 1 for v in vectors) or len(extra) != n + 1:
        raise ValueError("need n vectors of length n+1 plus one bordering vector")
    for v in vectors:
        if sum(v) != 0:
            raise ValueError(f"vector {v} has nonzero coordinate sum")
    total = sum(extra)
    if total == 0:
        raise ValueError("bordering vector must have nonzero coordinate sum")
    det = IntMatrix(vectors + [extra]).det()
    if det == 0:
        return 0
    if det % total != 0:
        raise ArithmeticError("bordered determinant not divisible by the coordinate sum")
    return abs(det // total)


def hermite_row_basis(vectors):
    """Canonical basis (row Hermite form) of the lattice generated by the rows.

    Pivots are positive, entries above each pivot are reduced into [0, pivot),
    and zero rows are dropped.
    """
    work = [list(v) for v in vectors]
    work = [row for row in work if any(row)]
    if not work:
        return []
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(work)) if work[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(work[i][c]), i))
            work[r], work[i0] = work[i0], work[r]
            if work[r][c] < 0:
                work[r] = [-x for x in work[r]]
            done = True
            for i in range(r + 1, len(work)):
                quot = work[i][c] // work[r][c]
                if quot:
                    work[i] = [x - quot * y for x, y in zip(work[i], work[r])]
                if work[i][c] != 0:
                    done = False
            if done:
                break
        if any(work[i][c] != 0 for i in range(r, len(work))):
            for i in range(r):
                quot = work[i][c] // work[r][c]
                if quot:
                    work[i] = [x - quot * y for x, y in zip(work[i], work[r])]
            r += 1
            if r == len(work):
                break
    assert all(not any(row) for row in work[r:]), "nonzero row left below the profile"
    return [row for row in work[:r]]


def congruence_kernel(rows, moduli):
    """Basis of {x in Z^t : rows . x == 0 (mod moduli), componentwise}.

    `rows` is an m-by-t integer matrix acting on column vectors; moduli has
    one positive entry per row. Realized by projecting the integer kernel of
    the bordered matrix [rows | diag(moduli)].
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    if m != len(moduli):
        raise ValueError("one modulus per row required")
    t = len(rows[0]) if rows else 0
    if m == 0:
        return [[1 if i == j else 0 for j in range(t)] for i in range(t)]
    bordered = [rows[i] + [moduli[i] if i == j else 0 for j in range(m)] for i in range(m)]
    snf = smith_normal_form(IntMatrix(bordered))
    diag = snf.d.diagonal()
    kernel_cols = [
        j for j in range(t + m) if j >= len(diag) or diag[j] == 0
    ]
    qt = snf.q.transpose()
    gens = [list(qt.row(j))[:t] for j in kernel_cols]
    return hermite_row_basis(gens)
