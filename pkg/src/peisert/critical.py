"""Smith and critical groups of Peisert graphs: closed forms with a
matrix oracle.

The closed-form route determines the p-part block by block from carry
counts (two candidate exponent lists per block, the one holding the
overall minimum wins) and attaches the p-complementary part (Z/rZ)^2r.
The oracle route reduces the actual Laplacian or adjacency matrix one
prime at a time.  Disagreement between the two is a hard failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from peisert.digits import CarryContext
from peisert.field import FieldTable, prime_factors
from peisert.galois_ring import GaloisRing, gr_exponents
from peisert.graphs import adjacency_matrix, laplacian
from peisert.snf import AbelianGroup, DivisorProfile, PrecisionError, local_divisors


class VerificationError(RuntimeError):
    """A cross-check between independent computation paths failed."""


@dataclass(frozen=True)
class BlockReport:
    """Exponent selection for one 4-dimensional isotypic block."""

    rep: int
    cls: tuple[int, int, int, int]
    list1: tuple[int, int, int, int]
    list2: tuple[int, int, int, int]
    chosen: str
    method: str
    exponents: tuple[int, int, int, int]


def block_lists(ctx: CarryContext, i: int):
    """The two candidate exponent lists for the block of class rep i."""
    r = ctx.r
    cc = ctx.carry_count
    list1 = (cc(i, r), cc(i + r, 3 * r), cc(i + 2 * r, r), cc(i + 3 * r, 3 * r))
    list2 = (cc(i, 3 * r), cc(i + r, r), cc(i + 2 * r, 3 * r), cc(i + 3 * r, r))
    return list1, list2


def block_divisors_formula(ctx: CarryContext, i: int, ring_factory=None) -> BlockReport:
    """Block exponents by the selection rule: the list holding the overall
    minimum of both lists.  A tie between lists with different multisets
    is not decided by the rule; in that case the block falls back to the
    local matrix reduction (ring_factory must then supply a GaloisRing).
    """
    if not 1 <= i <= ctx.r - 1:
        raise ValueError(f"class representative must lie in 1..{ctx.r - 1}")
    list1, list2 = block_lists(ctx, i)
    low = min(min(list1), min(list2))
    in1, in2 = low in list1, low in list2
    cls = (i, i + ctx.r, i + 2 * ctx.r, i + 3 * ctx.r)
    if in1 and in2 and sorted(list1) != sorted(list2):
        if ring_factory is None:
            raise VerificationError(
                f"block {i}: selection rule tie with differing multisets and no ring"
            )
        local = block_divisors_local(ctx, i, ring_factory())
        chosen = "list1" if sorted(local.exponents) == sorted(list1) else (
            "list2" if sorted(local.exponents) == sorted(list2) else "neither"
        )
        return BlockReport(i, cls, list1, list2, chosen, "block_local", local.exponents)
    chosen = "list1" if in1 else "list2"
    exps = tuple(sorted(list1 if in1 else list2))
    return BlockReport(i, cls, list1, list2, chosen, "formula", exps)


def peisert_laplacian_block(ctx: CarryContext, i: int, ring: GaloisRing):
    """The 4x4 matrix of twice the Laplacian action on the block with
    basis (e_i, e_{i+r}, e_{i+2r}, e_{i+3r}), entries in the ring."""
    r, q = ctx.r, ctx.q
    alpha, abar = ring.quartic_weights()
    qq = ring.from_int(q)
    zero = ring.zero()
    cols = []
    for kk in range(4):
        a = i + kk * r
        col = [zero] * 4
        col[kk] = qq
        col[(kk + 1) % 4] = ring.neg(ring.mul(abar, ring.jacobi(a, r)))
        col[(kk + 3) % 4] = ring.neg(ring.mul(alpha, ring.jacobi(a, 3 * r)))
        cols.append(col)
    return [[cols[j][i2] for j in range(4)] for i2 in range(4)]


def block_divisors_local(ctx: CarryContext, i: int, ring: GaloisRing) -> BlockReport:
    """Block exponents by direct reduction of the block matrix over the
    ring, independent of the selection rule."""
    if ring.k <= 2 * ctx.t:
        raise ValueError("ring precision must exceed 2t")
    mat = peisert_laplacian_block(ctx, i, ring)
    exps, residual = gr_exponents(ring, mat)
    if residual:
        raise PrecisionError(f"block {i}: exponent at or above precision {ring.k}")
    list1, list2 = block_lists(ctx, i)
    cls = (i, i + ctx.r, i + 2 * ctx.r, i + 3 * ctx.r)
    chosen = "list1" if sorted(exps) == sorted(list1) else (
        "list2" if sorted(exps) == sorted(list2) else "neither"
    )
    return BlockReport(i, cls, list1, list2, chosen, "block_local", tuple(sorted(exps)))


def m0_divisors(ctx: CarryContext, ring: GaloisRing | None = None):
    """Divisors of the fixed 5-dimensional block: free rank 1 and
    exponents (0, 0, t, t).  With a ring, re-derived by matrix reduction."""
    exps = (0, 0, ctx.t, ctx.t)
    if ring is not None:
        mat = m0_matrix(ctx, ring)
        got, residual = gr_exponents(ring, mat)
        if residual != 1 or tuple(got) != exps:
            raise VerificationError(
                f"fixed block reduction gave exponents {got} with residual {residual}, "
                f"expected {exps} with residual 1"
            )
    return 1, exps


def m0_matrix(ctx: CarryContext, ring: GaloisRing):
    """Twice the Laplacian action on the fixed block, ordered basis
    (allone, [0], e_r, e_2r, e_3r)."""
    r, q = ctx.r, ctx.q
    alpha, abar = ring.quartic_weights()
    one = ring.one()
    zero = ring.zero()
    qq = ring.from_int(q)

    def neg_mul(w, a, b):
        return ring.neg(ring.mul(w, ring.jacobi(a, b)))

    cols = [
        [zero] * 5,
        [ring.neg(one), qq, ring.neg(abar), zero, ring.neg(alpha)],
        [alpha, ring.neg(ring.scalar(q, alpha)), qq, neg_mul(abar, r, r), zero],
        [zero, zero, neg_mul(alpha, 2 * r, 3 * r), qq, neg_mul(abar, 2 * r, r)],
        [abar, ring.neg(ring.scalar(q, abar)), zero, neg_mul(alpha, 3 * r, 3 * r), qq],
    ]
    return [[cols[j][i2] for j in range(5)] for i2 in range(5)]


def p_part_profile(ctx: CarryContext, ring_factory=None, collect_blocks=False):
    """Aggregate p-elementary divisor profile of the Peisert Laplacian
    from the closed forms, as a DivisorProfile (plus block reports)."""
    mult: dict[int, int] = {}
    free, m0_exps = m0_divisors(ctx)
    for e in m0_exps:
        mult[e] = mult.get(e, 0) + 1
    blocks = []
    for i in range(1, ctx.r):
        report = block_divisors_formula(ctx, i, ring_factory=ring_factory)
        if collect_blocks:
            blocks.append(report)
        for e in report.exponents:
            mult[e] = mult.get(e, 0) + 1
    profile = DivisorProfile(
        prime=ctx.p,
        mult=mult,
        free_rank=free,
        residual=0,
        precision=2 * ctx.t + 1,
        dimension=ctx.q,
    )
    return profile, blocks


def default_ring_factory(ctx: CarryContext):
    """Lazily build (and cache) a GaloisRing for tie fallbacks."""
    cache: list[GaloisRing] = []

    def factory() -> GaloisRing:
        if not cache:
            field = FieldTable(ctx.p, ctx.m)
            cache.append(GaloisRing(field, 2 * ctx.t + 2))
        return cache[0]

    return factory


def spanning_trees(q: int) -> int:
    """Number of spanning trees of either graph on q vertices, from the
    conference-graph spectrum and the matrix-tree theorem."""
    if q % 4 != 1:
        raise ValueError("q must be 1 mod 4")
    r = (q - 1) // 4
    return q ** ((q - 3) // 2) * r ** (2 * r)


def smith_group_formula(q: int) -> AbelianGroup:
    """Smith group of the adjacency matrix: Z/2rZ + (Z/rZ)^2r."""
    r = (q - 1) // 4
    return AbelianGroup([r] * (2 * r) + [2 * r], free_rank=0)


def p_rank_formula(p: int, t: int) -> int:
    """Closed-form rank of the Peisert Laplacian over GF(p)."""
    return 2 * (3**t - 1) * ((p + 1) // 4) ** (2 * t)


def critical_group_formula(ctx: CarryContext, ring_factory=None, collect_blocks=False):
    """Critical group assembled from the closed forms: p-part from the
    block exponents, p-complementary part (Z/rZ)^2r."""
    if ring_factory is None:
        ring_factory = default_ring_factory(ctx)
    profile, blocks = p_part_profile(ctx, ring_factory=ring_factory, collect_blocks=collect_blocks)
    total = profile.torsion_valuation()
    expected = ctx.t * (ctx.q - 3)
    if total != expected:
        raise VerificationError(
            f"p-part valuation {total} does not match t(q-3) = {expected}"
        )
    data: dict[int, dict[int, int]] = {}
    pm = {j: c for j, c in profile.mult.items() if j > 0}
    if pm:
        data[ctx.p] = pm
    r = ctx.r
    for ell in prime_factors(r):
        e = 0
        rr = r
        while rr % ell == 0:
            rr //= ell
            e += 1
        data[ell] = {e: 2 * r}
    group = AbelianGroup.from_prime_exponents(data, free_rank=0)
    return group, profile, blocks


def critical_group_snf(field: FieldTable, kind: str) -> tuple[AbelianGroup, dict[int, DivisorProfile]]:
    """Critical group by per-prime reduction of the actual Laplacian.

    The torsion order is the spanning-tree count, so its prime support
    and per-prime valuations are known exactly; the largest invariant
    factor divides the product of the two distinct nonzero Laplacian
    eigenvalues, q(q-1)/4, which bounds the precision needed per prime.
    """
    q = field.q
    L = laplacian(adjacency_matrix(field, kind))
    trees = spanning_trees(q)
    eigen_product = q * (q - 1) // 4
    profiles: dict[int, DivisorProfile] = {}
    support = sorted(set(prime_factors(q)) | set(prime_factors((q - 1) // 4)))
    for ell in support:
        v_total = _valuation_int(trees, ell)
        bound = _valuation_int(eigen_product, ell)
        precision = bound + 1
        if ell == field.p and field.n % 2 == 0:
            precision = max(precision, field.n + 2)
        while True:
            try:
                profiles[ell] = local_divisors(
                    L, ell, precision, expected_total=v_total, free_rank=1
                )
                break
            except PrecisionError:
                precision *= 2
                if precision > 4 * (bound + 2):
                    raise
    group = AbelianGroup.from_prime_exponents(
        {ell: {j: c for j, c in prof.mult.items() if j > 0} for ell, prof in profiles.items()},
        free_rank=0,
    )
    return group, profiles


def smith_group_snf(field: FieldTable, kind: str) -> tuple[AbelianGroup, dict[int, DivisorProfile]]:
    """Smith group by per-prime reduction of the actual adjacency matrix."""
    q = field.q
    A = adjacency_matrix(field, kind)
    r = (q - 1) // 4
    k = (q - 1) // 2
    det_abs = k * r ** (2 * r)
    profiles: dict[int, DivisorProfile] = {}
    for ell in sorted(set(prime_factors(k)) | set(prime_factors(r))):
        v_total = _valuation_int(det_abs, ell)
        precision = _valuation_int(k * r, ell) + 1
        profiles[ell] = local_divisors(A, ell, precision, expected_total=v_total, free_rank=0)
    group = AbelianGroup.from_prime_exponents(
        {ell: {j: c for j, c in prof.mult.items() if j > 0} for ell, prof in profiles.items()},
        free_rank=0,
    )
    return group, profiles


def _valuation_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("0 has no finite valuation")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factor_prime_power(q: int) -> tuple[int, int]:
    """(p, m) with q = p^m, or ValueError when q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = min(prime_factors(q))
    m = 0
    n = q
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def critical_group(q: int, kind: str = "peisert", method: str = "formula",
                   collect_blocks: bool = False):
    """Critical group with selectable computation path.

    Returns (group, details) where details carries per-prime profiles,
    the p-rank, the block reports (formula paths), and the method used.
    The "both" method runs formula and matrix paths and insists on exact
    agreement.
    """
    if method not in ("formula", "snf", "both"):
        raise ValueError(f"unknown method {method!r}")
    if kind not in ("peisert", "paley"):
        raise ValueError(f"unknown graph kind {kind!r}")
    if method in ("formula", "both") and kind != "peisert":
        raise ValueError("the closed-form path applies to Peisert graphs only")
    p, m = factor_prime_power(q)
    details: dict = {"method": method, "kind": kind}
    group = None
    if method in ("formula", "both"):
        if m % 2:
            raise ValueError("the closed-form path needs q = p^(2t)")
        t = m // 2
        ctx = CarryContext(p, t)
        group, profile, blocks = critical_group_formula(ctx, collect_blocks=collect_blocks)
        details["p_profile"] = profile
        details["blocks"] = blocks
        details["p_rank"] = profile.rank()
        if details["p_rank"] != p_rank_formula(p, t):
            raise VerificationError("assembled p-rank disagrees with the closed form")
    if method in ("snf", "both"):
        field = FieldTable(p, m)
        snf_group, profiles = critical_group_snf(field, kind)
        details["profiles"] = profiles
        details.setdefault("p_rank", profiles[p].rank())
        if group is not None and snf_group != group:
            raise VerificationError(
                "formula and matrix paths disagree: "
                f"formula={group!r} matrix={snf_group!r}"
            )
        if group is not None and profiles[p].rank() != details["p_rank"]:
            raise VerificationError("matrix p-rank disagrees with the closed form")
        group = snf_group if group is None else group
    return group, details
