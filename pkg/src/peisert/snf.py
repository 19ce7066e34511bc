"""Exact Smith normal form over Z and p-local elementary divisors.

Two independent reduction routes are provided.  smith_normal_form does
classical integer elimination with minimal-absolute-value pivoting and
arbitrary-precision entries; it is the generic brute-force oracle and is
practical up to a few hundred rows.  local_divisors works one prime at a
time over Z/p^K by unit-pivot elimination, which never grows entries and
scales to much larger matrices; exponents at or above the precision K
land in a residual bucket that the caller resolves with external
knowledge (expected p-part order, or the free rank).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from peisert.field import prime_factors


class PrecisionError(ValueError):
    """Raised when a local reduction cannot be resolved at the given K."""


@dataclass(frozen=True)
class DivisorProfile:
    """p-elementary divisor exponents of an integer matrix at one prime.

    mult maps exponent j to the multiplicity of p^j; free_rank counts the
    zero invariant factors (None when exponents >= precision were found
    but could not be separated from free rank); residual is the count of
    unresolved slots with exponent >= precision.
    """

    prime: int
    mult: dict[int, int]
    free_rank: int | None
    residual: int
    precision: int
    dimension: int

    def __post_init__(self):
        total = sum(self.mult.values()) + self.residual + (self.free_rank or 0)
        if total != self.dimension:
            raise ValueError("multiplicities do not fill the dimension")

    def rank(self) -> int:
        """Rank mod p, the multiplicity of exponent 0."""
        return self.mult.get(0, 0)

    def torsion_valuation(self) -> int:
        """Sum of j * mult[j], the p-adic valuation of the torsion order."""
        if self.residual:
            raise PrecisionError("unresolved residual bucket")
        return sum(j * c for j, c in self.mult.items())

    def exponents(self) -> list[int]:
        out = []
        for j in sorted(self.mult):
            out.extend([j] * self.mult[j])
        return out


class AbelianGroup:
    """Finitely generated abelian group, canonicalized as an invariant
    factor chain d_1 | d_2 | ... (all > 1) plus a free rank."""

    __slots__ = ("invariant_factors", "free_rank")

    def __init__(self, invariant_factors=(), free_rank: int = 0):
        factors = [int(d) for d in invariant_factors if int(d) != 1]
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"not a divisibility chain: {a} does not divide {b}")
        if any(d < 1 for d in factors):
            raise ValueError("invariant factors must be positive")
        self.invariant_factors = tuple(factors)
        self.free_rank = free_rank

    @classmethod
    def from_diagonal(cls, diagonal) -> "AbelianGroup":
        nonzero = [int(d) for d in diagonal if d]
        free = sum(1 for d in diagonal if not d)
        return cls(nonzero, free)

    @classmethod
    def from_prime_exponents(cls, data: dict[int, dict[int, int]], free_rank: int = 0) -> "AbelianGroup":
        """Build from per-prime exponent multiplicities {p: {j: m(j)}}."""
        columns = []
        for p in sorted(data):
            exps = []
            for j in sorted(data[p], reverse=True):
                if j:
                    exps.extend([j] * data[p][j])
            columns.append((p, exps))
        depth = max((len(e) for _, e in columns), default=0)
        factors = []
        for pos in range(depth):
            d = 1
            for p, exps in columns:
                if pos < len(exps):
                    d *= p ** exps[pos]
            factors.append(d)
        factors.reverse()
        return cls(factors, free_rank)

    def elementary_divisors(self) -> dict[int, dict[int, int]]:
        """Per-prime exponent multiplicities, by factoring the chain."""
        out: dict[int, dict[int, int]] = {}
        for d in self.invariant_factors:
            for p in prime_factors(d):
                e = 0
                dd = d
                while dd % p == 0:
                    dd //= p
                    e += 1
                out.setdefault(p, {})
                out[p][e] = out[p].get(e, 0) + 1
        return out

    def order(self) -> int:
        """Product of the invariant factors (the torsion order)."""
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return (
            self.invariant_factors == other.invariant_factors
            and self.free_rank == other.free_rank
        )

    def __hash__(self):
        return hash((self.invariant_factors, self.free_rank))

    def __repr__(self):
        return f"AbelianGroup({list(self.invariant_factors)}, free_rank={self.free_rank})"


def group_order(g: AbelianGroup) -> int:
    return g.order()


@dataclass(frozen=True)
class SmithResult:
    diagonal: tuple[int, ...]
    group: AbelianGroup


def _as_int_rows(mat) -> list[list[int]]:
    return [[int(x) for x in row] for row in mat]


def smith_normal_form(mat) -> SmithResult:
    """Smith normal form by integer elimination.

    A fraction-free (Bareiss) pass finds the exact rank and a nonzero
    maximal minor D.  Every invariant factor divides D, and reducing an
    entry mod D amounts to a row operation on the matrix augmented with
    D times the identity, so the Euclidean elimination can keep every
    entry in (-D/2, D/2].  Slots that vanish mod D split into rank many
    copies of D and true zeros.
    """
    M = _as_int_rows(mat)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    lim = min(rows, cols)
    rank, minor = _bareiss_rank_minor(M)
    if rank == 0:
        return SmithResult((0,) * lim, AbelianGroup([], rows))
    D = abs(minor)
    W = [[_centered(x, D) for x in row] for row in M]
    extracted = []
    t = 0
    while t < lim:
        piv = _find_pivot(W, t, rows, cols)
        if piv is None:
            break
        _move_pivot(W, t, piv)
        while True:
            if _reduce_column(W, t, rows, D):
                continue
            if _reduce_row(W, t, cols, D):
                continue
            break
        extracted.append(gcd(abs(W[t][t]), D))
        t += 1
    if len(extracted) > rank:
        raise AssertionError("modular elimination extracted more pivots than the rank")
    values = extracted + [D] * (rank - len(extracted))
    diag = _fix_chain(values) + [0] * (lim - rank)
    free = rows - rank
    nonzero = [d for d in diag if d]
    return SmithResult(tuple(diag), AbelianGroup(nonzero, free))


def _centered(x, D):
    r = x % D
    return r - D if 2 * r > D else r


def _bareiss_rank_minor(mat):
    """Exact rank and the final pivot of fraction-free elimination, a
    nonzero rank x rank minor of the input (sign included)."""
    M = [list(row) for row in mat]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = 1
    rank = 0
    for t in range(min(m, n)):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        _move_pivot(M, t, piv)
        p = M[t][t]
        Mt = M[t]
        for i in range(t + 1, m):
            Mi = M[i]
            mit = Mi[t]
            for j in range(t + 1, n):
                Mi[j] = (Mi[j] * p - mit * Mt[j]) // prev
            Mi[t] = 0
        prev = p
        rank += 1
    return rank, prev if rank else 0


def _find_pivot(M, t, rows, cols):
    best = None
    piv = None
    for i in range(t, rows):
        Mi = M[i]
        for j in range(t, cols):
            v = Mi[j]
            if v:
                a = abs(v)
                if best is None or a < best:
                    best = a
                    piv = (i, j)
                    if a == 1:
                        return piv
    return piv


def _move_pivot(M, t, piv):
    i, j = piv
    if i != t:
        M[t], M[i] = M[i], M[t]
    if j != t:
        for row in M:
            row[t], row[j] = row[j], row[t]


def _reduce_column(W, t, rows, D):
    """One Euclidean column pass mod D; True if the pivot moved."""
    pivot = W[t][t]
    for i in range(t + 1, rows):
        v = W[i][t]
        if v:
            q = v // pivot
            if q:
                Wi, Wt = W[i], W[t]
                for j in range(t, len(Wt)):
                    Wi[j] = _centered(Wi[j] - q * Wt[j], D)
            if W[i][t]:
                W[t], W[i] = W[i], W[t]
                return True
    return False


def _reduce_row(W, t, cols, D):
    """One Euclidean row pass mod D; True if the pivot moved."""
    pivot = W[t][t]
    Wt = W[t]
    for j in range(t + 1, cols):
        v = Wt[j]
        if v:
            q = v // pivot
            if q:
                for row in W:
                    row[j] = _centered(row[j] - q * row[t], D)
            if Wt[j]:
                for row in W:
                    row[t], row[j] = row[j], row[t]
                return True
    return False


def _fix_chain(diag):
    d = [x for x in diag if x]
    zeros = len(diag) - len(d)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] // g * d[j]
    return d + [0] * zeros


# -- p-local route ------------------------------------------------------


def _modular_matrix(mat, modulus):
    A = np.array([[int(x) % modulus for x in row] for row in mat], dtype=object)
    if (modulus - 1) ** 2 < 2**62:
        A = A.astype(np.int64)
    return A


def _local_eliminate(mat, p, precision):
    """Unit-pivot elimination over Z/p^precision.

    Returns (mult, residual): multiplicities of exponents < precision and
    the count of slots whose exponent is at least the precision.
    """
    modulus = p**precision
    act = _modular_matrix(mat, modulus)
    slots = min(act.shape)
    mult: dict[int, int] = {}
    level = 0
    while slots > sum(mult.values()) and level < precision:
        if act.size == 0:
            break
        units = np.argwhere(act % p != 0)
        if len(units) == 0:
            act = act // p
            modulus //= p
            level += 1
            continue
        i, j = (int(units[0][0]), int(units[0][1]))
        if i != 0:
            act[[0, i]] = act[[i, 0]]
        if j != 0:
            act[:, [0, j]] = act[:, [j, 0]]
        inv = pow(int(act[0, 0]), -1, modulus)
        factors = (act[1:, 0] * inv) % modulus
        act = (act[1:, 1:] - np.outer(factors, act[0, 1:])) % modulus
        mult[level] = mult.get(level, 0) + 1
    residual = slots - sum(mult.values())
    return mult, residual


def local_divisors(
    mat,
    p: int,
    precision: int,
    expected_total: int | None = None,
    free_rank: int | None = None,
) -> DivisorProfile:
    """p-elementary divisor multiplicities of a square integer matrix.

    Exponents >= precision cannot be observed directly; they stay in the
    residual bucket unless expected_total (the p-adic valuation of the
    torsion order) or the free rank pins them down.  Raises
    PrecisionError when the hints do not resolve the bucket uniquely.
    The hints are trusted: free_rank alone resolves the bucket only when
    the precision already exceeds every torsion exponent, which the
    caller guarantees (a contradiction between hint and residual still
    raises).
    """
    rows = len(mat)
    if any(len(row) != rows for row in mat):
        raise ValueError("local_divisors expects a square matrix")
    if precision < 1:
        raise ValueError("precision must be at least 1")
    mult, residual = _local_eliminate(mat, p, precision)
    free: int | None = None
    seen_total = sum(j * c for j, c in mult.items())
    if expected_total is not None:
        missing = expected_total - seen_total
        if missing < 0:
            raise PrecisionError("observed torsion exceeds the expected total")
        if missing == 0:
            free = residual
        elif precision <= missing < 2 * precision and residual >= 1:
            mult = dict(mult)
            mult[missing] = mult.get(missing, 0) + 1
            free = residual - 1
            residual = 0
        else:
            raise PrecisionError(
                f"residual bucket of size {residual} with missing valuation "
                f"{missing} is ambiguous at precision {precision}"
            )
        if free_rank is not None and free != free_rank:
            raise PrecisionError(f"free rank {free} does not match expected {free_rank}")
        residual = 0
    elif free_rank is not None:
        if residual != free_rank:
            raise PrecisionError(
                f"residual {residual} does not match free rank {free_rank}; raise K"
            )
        free = free_rank
        residual = 0
    return DivisorProfile(
        prime=p,
        mult=dict(mult),
        free_rank=free,
        residual=residual,
        precision=precision,
        dimension=rows,
    )


def rank_mod_p(mat, p: int) -> int:
    """Rank of an integer matrix over GF(p), by elimination."""
    mult, _ = _local_eliminate(mat, p, 1)
    return mult.get(0, 0)


def group_from_profiles(profiles) -> AbelianGroup:
    """Assemble an AbelianGroup from complete per-prime profiles."""
    data = {}
    free_ranks = set()
    for prof in profiles:
        if prof.residual:
            raise PrecisionError(f"profile at prime {prof.prime} is unresolved")
        data[prof.prime] = dict(prof.mult)
        free_ranks.add(prof.free_rank)
    if len(free_ranks) > 1:
        raise ValueError(f"inconsistent free ranks across primes: {free_ranks}")
    free = free_ranks.pop() if free_ranks else 0
    return AbelianGroup.from_prime_exponents(data, free_rank=free or 0)
