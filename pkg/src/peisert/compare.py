"""Verification suites: character-basis action formulas, block matrix
displays, canonical forms at q = p^2, and Paley vs Peisert comparison of
generalized adjacency matrices.

Every check is exact.  Identities between cyclotomic integers are
evaluated in the Galois ring at a precision beyond every relevant
valuation; quartic-character Jacobi sums are additionally checked as
exact Gaussian integers.  All reports are lists of dicts with a "name",
an "ok" flag, and failure details, so the CLI can emit them as JSON.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from peisert.critical import VerificationError, block_lists
from peisert.digits import CarryContext
from peisert.field import FieldTable, prime_factors
from peisert.galois_ring import (
    GaloisRing,
    gauss_conj,
    gauss_mul,
    gr_exponents,
    jacobi_quartic_exact,
)
from peisert.graphs import adjacency_matrix, is_connected, srg_check
from peisert.snf import AbelianGroup, local_divisors

CANONICAL_EXPONENTS = {0: (1, 1, 1, 1), 1: (0, 1, 1, 2), 2: (0, 0, 2, 2)}
DEFAULT_GRID = tuple(
    (a, b, c) for a in (1, 2, 3) for b in range(-2, 3) for c in range(-2, 3)
)


# -- vectors over the group algebra ----------------------------------------


def vec_zero(ring: GaloisRing, q: int):
    return [ring.zero()] * q


def vec_allone(ring: GaloisRing, q: int):
    return [ring.one()] * q


def vec_point_zero(ring: GaloisRing, q: int):
    v = [ring.zero()] * q
    v[0] = ring.one()
    return v


def vec_add(ring, u, v):
    return [ring.add(a, b) for a, b in zip(u, v)]


def vec_sub(ring, u, v):
    return [ring.sub(a, b) for a, b in zip(u, v)]


def vec_scale(ring, c, v):
    return [ring.mul(c, a) for a in v]


def vec_scale_int(ring, c: int, v):
    return [ring.scalar(c, a) for a in v]


def graph_action(ring, field, conn, v):
    """Adjacency action on coordinates: (A v)[z] = sum over s of v[z - s]."""
    q = field.q
    out = []
    for z in range(q):
        acc = ring.zero()
        for s in conn:
            acc = ring.add(acc, v[field.sub(z, s)])
        out.append(acc)
    return out


def laplacian_action_doubled(ring, field, conn, v):
    """Coordinates of 2 L v for the k-regular graph with the given
    connection set."""
    av = graph_action(ring, field, conn, v)
    k = len(conn)
    return [ring.sub(ring.scalar(2 * k, x), ring.scalar(2, y)) for x, y in zip(v, av)]


def shifted_action(ring, field, conn, v):
    """Coordinates of (2A + I) v."""
    av = graph_action(ring, field, conn, v)
    return [ring.add(ring.scalar(2, y), x) for x, y in zip(v, av)]


# -- projections onto isotypic bases ----------------------------------------


def project_block(ring, field, vec, i, check: bool = True):
    """Coefficients (c_0, ..., c_3) with vec = sum c_j e_{i+jr}."""
    q = field.q
    qm1 = q - 1
    r = qm1 // 4
    inv4 = pow(4, -1, ring.pk)
    w = []
    for a in range(4):
        x = field.antilog[a]
        w.append(ring.mul(vec[x], ring.teich[(i * a) % qm1]))
    coeffs = []
    for j in range(4):
        acc = ring.zero()
        for a in range(4):
            acc = ring.add(acc, ring.mul(w[a], ring.teich[(j * a * r) % qm1]))
        coeffs.append(ring.scalar(inv4, acc))
    if check:
        recon = vec_zero(ring, q)
        for j, c in enumerate(coeffs):
            recon = vec_add(ring, recon, vec_scale(ring, c, ring.basis_vector(i + j * r)))
        if recon != list(vec):
            raise VerificationError(f"vector is not supported on the block of {i}")
    return coeffs


def project_m0(ring, field, vec, check: bool = True):
    """Coefficients on (allone, [0], e_r, e_2r, e_3r) for a vector fixed
    by the quartic-residue subgroup."""
    q = field.q
    qm1 = q - 1
    r = qm1 // 4
    inv4 = pow(4, -1, ring.pk)
    vals = [vec[field.antilog[a]] for a in range(4)]
    cs = []
    for j in range(4):
        acc = ring.zero()
        for a in range(4):
            acc = ring.add(acc, ring.mul(vals[a], ring.teich[(j * a * r) % qm1]))
        cs.append(ring.scalar(inv4, acc))
    c1, c3, c4, c5 = cs
    c2 = ring.sub(vec[0], c1)
    coeffs = [c1, c2, c3, c4, c5]
    if check:
        recon = vec_scale(ring, c1, vec_allone(ring, q))
        recon[0] = ring.add(recon[0], c2)
        for c, idx in ((c3, r), (c4, 2 * r), (c5, 3 * r)):
            recon = vec_add(ring, recon, vec_scale(ring, c, ring.basis_vector(idx)))
        if recon != list(vec):
            raise VerificationError("vector is not fixed by the quartic subgroup")
    return coeffs


# -- block matrix displays ---------------------------------------------------


def block_matrix(ctx: CarryContext, i: int, which: str, ring: GaloisRing):
    """The displayed block matrices, entries as ring elements.

    K_paley / K_peisert: action of 2A + I on the block of i, ordered
    basis (e_i, e_{i+2r}, e_{i+r}, e_{i+3r}).
    L_block: twice the Peisert Laplacian on the same block, ordered
    basis (e_i, e_{i+r}, e_{i+2r}, e_{i+3r}).
    M0_paley / M0_peisert: action of 2A + I on the fixed block, ordered
    bases (allone, [0], e_2r, e_r, e_3r) and (allone, [0], e_r, e_2r, e_3r).
    """
    r, q = ctx.r, ctx.q
    J = ring.jacobi
    alpha, abar = ring.quartic_weights()
    z = ring.zero()
    one = ring.one()
    qq = ring.from_int(q)

    def am(a, b):
        return ring.mul(alpha, J(a, b))

    def bm(a, b):
        return ring.mul(abar, J(a, b))

    if which == "K_paley":
        return [
            [z, J(i + 2 * r, 2 * r), z, z],
            [J(i, 2 * r), z, z, z],
            [z, z, z, J(i + 3 * r, 2 * r)],
            [z, z, J(i + r, 2 * r), z],
        ]
    if which == "K_peisert":
        return [
            [z, z, am(i + r, 3 * r), bm(i + 3 * r, r)],
            [z, z, bm(i + r, r), am(i + 3 * r, 3 * r)],
            [bm(i, r), am(i + 2 * r, 3 * r), z, z],
            [am(i, 3 * r), bm(i + 2 * r, r), z, z],
        ]
    if which == "L_block":
        from peisert.critical import peisert_laplacian_block

        return peisert_laplacian_block(ctx, i, ring)
    if which == "M0_paley":
        return [
            [qq, one, ring.neg(one), z, z],
            [z, z, qq, z, z],
            [z, one, z, z, z],
            [z, z, z, z, J(3 * r, 2 * r)],
            [z, z, z, J(r, 2 * r), z],
        ]
    if which == "M0_peisert":
        return [
            [qq, one, ring.neg(alpha), z, ring.neg(abar)],
            [z, z, ring.scalar(q, alpha), z, ring.scalar(q, abar)],
            [z, abar, z, am(2 * r, 3 * r), z],
            [z, z, bm(r, r), z, am(3 * r, 3 * r)],
            [z, alpha, z, bm(2 * r, r), z],
        ]
    raise ValueError(f"unknown block matrix kind {which!r}")


_BLOCK_BASIS_ORDER = (0, 2, 1, 3)  # e_i, e_{i+2r}, e_{i+r}, e_{i+3r}


def block_matrix_from_action(ctx, i, kind, field, ring):
    """Matrix of 2A + I on the block of i, ordered basis
    (e_i, e_{i+2r}, e_{i+r}, e_{i+3r}), computed from the actual graph."""
    conn = field.connection_set(kind)
    r = ctx.r
    cols = []
    for pos in _BLOCK_BASIS_ORDER:
        image = shifted_action(ring, field, conn, ring.basis_vector(i + pos * r))
        coeffs = project_block(ring, field, image, i)
        cols.append([coeffs[p] for p in _BLOCK_BASIS_ORDER])
    return [[cols[j][i2] for j in range(4)] for i2 in range(4)]


def m0_matrix_from_action(ctx, kind, field, ring):
    """Matrix of 2A + I on the fixed block, in the display's basis order."""
    q, r = ctx.q, ctx.r
    conn = field.connection_set(kind)
    order = (2, 1, 3) if kind == "paley" else (1, 2, 3)  # e-basis positions
    basis = [vec_allone(ring, q), vec_point_zero(ring, q)]
    basis.extend(ring.basis_vector(j * r) for j in order)
    cols = []
    for v in basis:
        image = shifted_action(ring, field, conn, v)
        c = project_m0(ring, field, image)
        e_part = [c[2], c[3], c[4]]
        reordered = [c[0], c[1]] + [e_part[j - 1] for j in order]
        cols.append(reordered)
    return [[cols[j][i2] for j in range(5)] for i2 in range(5)]


# -- verification suites -----------------------------------------------------


def _check(name, ok, detail=None):
    entry = {"name": name, "ok": bool(ok)}
    if detail is not None and not ok:
        entry["detail"] = detail
    return entry


def verify_action_formula(field: FieldTable, ring: GaloisRing) -> list[dict]:
    """Check the Peisert Laplacian action on every character basis vector
    against the Jacobi-sum formulas, coordinate by coordinate."""
    q = field.q
    qm1 = q - 1
    r = qm1 // 4
    conn = field.connection_set("peisert")
    alpha, abar = ring.quartic_weights()
    checks = []

    def lap2(v):
        return laplacian_action_doubled(ring, field, conn, v)

    for i in range(1, qm1):
        if i in (r, 3 * r):
            continue
        lhs = lap2(ring.basis_vector(i))
        rhs = vec_scale_int(ring, q, ring.basis_vector(i))
        rhs = vec_sub(ring, rhs, vec_scale(
            ring, ring.mul(abar, ring.jacobi(i, r)), ring.basis_vector(i + r)))
        rhs = vec_sub(ring, rhs, vec_scale(
            ring, ring.mul(alpha, ring.jacobi(i, 3 * r)), ring.basis_vector(i + 3 * r)))
        checks.append(_check(f"action e_{i}", lhs == rhs, _first_diff(lhs, rhs)))

    allone = vec_allone(ring, q)
    checks.append(_check("action allone", lap2(allone) == vec_zero(ring, q)))

    lhs = lap2(vec_point_zero(ring, q))
    rhs = vec_scale_int(ring, -1, allone)
    rhs[0] = ring.add(rhs[0], ring.from_int(q))
    rhs = vec_sub(ring, rhs, vec_scale(ring, abar, ring.basis_vector(r)))
    rhs = vec_sub(ring, rhs, vec_scale(ring, alpha, ring.basis_vector(3 * r)))
    checks.append(_check("action [0]", lhs == rhs, _first_diff(lhs, rhs)))

    for idx, w, wbar in ((r, alpha, abar), (3 * r, abar, alpha)):
        lhs = lap2(ring.basis_vector(idx))
        rhs = vec_scale(ring, w, allone)
        rhs[0] = ring.sub(rhs[0], ring.scalar(q, w))
        rhs = vec_add(ring, rhs, vec_scale_int(ring, q, ring.basis_vector(idx)))
        rhs = vec_sub(ring, rhs, vec_scale(
            ring, ring.mul(wbar, ring.jacobi(idx, idx)), ring.basis_vector(2 * r)))
        checks.append(_check(f"action e_{idx}", lhs == rhs, _first_diff(lhs, rhs)))
    return checks


def _first_diff(u, v):
    for idx, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return {"coordinate": idx, "lhs": list(a), "rhs": list(b)}
    return None


def verify_block_displays(ctx, field, ring) -> list[dict]:
    """Check every printed block matrix against the graph action."""
    checks = []
    for i in range(1, ctx.r):
        for kind, which in (("paley", "K_paley"), ("peisert", "K_peisert")):
            shown = block_matrix(ctx, i, which, ring)
            derived = block_matrix_from_action(ctx, i, kind, field, ring)
            checks.append(_check(f"display {which} i={i}", shown == derived))
    for kind, which in (("paley", "M0_paley"), ("peisert", "M0_peisert")):
        shown = block_matrix(ctx, 0, which, ring)
        derived = m0_matrix_from_action(ctx, kind, field, ring)
        checks.append(_check(f"display {which}", shown == derived))
    return checks


def verify_stickelberger(ctx, ring: GaloisRing) -> list[dict]:
    """Valuation of every Jacobi sum J(T^-i, T^-j), j in {r, 2r, 3r},
    against the carry count c(i, j)."""
    qm1 = ctx.q - 1
    checks = []
    for j in (ctx.r, 2 * ctx.r, 3 * ctx.r):
        for i in range(1, qm1):
            if (i + j) % qm1 == 0:
                continue
            val = ring.valuation(ring.jacobi(i, j))
            expect = ctx.carry_count(i, j)
            checks.append(_check(
                f"stickelberger i={i} j={j}", val == expect,
                {"valuation": val, "carries": expect}))
    return checks


def verify_carries(ctx) -> list[dict]:
    """Digit-sum identities across every class, plus the conjugation
    identity c(i, r) + c(-i, 3r) = 2t in its corrected form."""
    r, t = ctx.r, ctx.t
    cc = ctx.carry_count
    checks = []
    for i in range(1, r):
        list1, list2 = block_lists(ctx, i)
        checks.append(_check(f"carry sum list1 i={i}", sum(list1) == 4 * t))
        checks.append(_check(f"carry sum list2 i={i}", sum(list2) == 4 * t))
        lhs = cc(i, r) + cc(i + 2 * r, r)
        rhs = cc(i, 3 * r) + cc(i + 2 * r, 3 * r)
        checks.append(_check(f"carry diag=antidiag i={i}", lhs == rhs))
    qm1 = ctx.q - 1
    for i in range(1, qm1):
        if i in (r, 2 * r, 3 * r):
            continue
        ok = cc(i, r) + cc(qm1 - i, 3 * r) == 2 * t
        checks.append(_check(f"carry conjugation i={i}", ok))
    return checks


def verify_berndt(ctx, field, ring) -> list[dict]:
    """Jacobi-sum identities special to q = p^2: the four quartic sums
    equal to p (checked in exact Gaussian integers and in the ring), and
    the cross-product identity for every class."""
    _require_square_prime(ctx)
    r, p = ctx.r, ctx.p
    checks = []
    for a, b in ((r, r), (3 * r, 3 * r), (r, 2 * r), (3 * r, 2 * r)):
        exact = jacobi_quartic_exact(field, a, b)
        checks.append(_check(f"berndt exact J({a},{b})", exact == (p, 0), {"value": exact}))
        in_ring = ring.jacobi(a, b)
        checks.append(_check(f"berndt ring J({a},{b})", in_ring == ring.from_int(p)))
    qm1 = ctx.q - 1
    for i in range(1, qm1):
        if i in (r, 2 * r, 3 * r):
            continue
        lhs = ring.mul(ring.jacobi(i, r), ring.jacobi(i + r, r))
        rhs = ring.mul(ring.jacobi(i, 3 * r), ring.jacobi(i + 3 * r, 3 * r))
        checks.append(_check(f"berndt product i={i}", lhs == rhs))
    return checks


def abcd_pattern(ctx, ring, i) -> dict:
    """Valuation pattern of the Peisert block: lower-left entries
    (a, b, c, d), upper-right shifted by a constant D."""
    mat = block_matrix(ctx, i, "K_peisert", ring)
    vals = [[ring.valuation(e) for e in row] for row in mat]
    a, b = vals[2][0], vals[2][1]
    c, d = vals[3][0], vals[3][1]
    D = vals[0][2] - d
    consistent = (
        vals[0][2] == d + D
        and vals[0][3] == b + D
        and vals[1][2] == c + D
        and vals[1][3] == a + D
    )
    return {
        "rep": i, "a": a, "b": b, "c": c, "d": d, "D": D,
        "shift_consistent": consistent,
        "diag_balance": a + d == b + c,
        "total": a + d + D,
    }


def verify_canonical_blocks(ctx, field, ring) -> list[dict]:
    """q = p^2 block suite: equal ranks of the two graphs' blocks, the
    matching canonical form, eigenvalue squares, and the valuation
    pattern constraints."""
    _require_square_prime(ctx)
    p = ctx.p
    checks = []
    for i in range(1, ctx.r):
        kp = block_matrix(ctx, i, "K_paley", ring)
        ks = block_matrix(ctx, i, "K_peisert", ring)
        exp_p, res_p = gr_exponents(ring, kp)
        exp_s, res_s = gr_exponents(ring, ks)
        ok = res_p == res_s == 0
        rank_p = exp_p.count(0)
        rank_s = exp_s.count(0)
        checks.append(_check(f"block rank i={i}", ok and rank_p == rank_s,
                             {"paley": rank_p, "peisert": rank_s}))
        in_range = rank_p in CANONICAL_EXPONENTS
        form = CANONICAL_EXPONENTS.get(rank_p)
        checks.append(_check(
            f"block canonical form i={i}",
            in_range and tuple(exp_p) == form and tuple(exp_s) == form,
            {"paley": exp_p, "peisert": exp_s, "expected": form}))
        p2 = ring.from_int(p * p)
        sq_ok = all(
            _gr_square_is_scalar(ring, m, p2) for m in (kp, ks)
        )
        checks.append(_check(f"block eigenvalue square i={i}", sq_ok))
        pat = abcd_pattern(ctx, ring, i)
        checks.append(_check(
            f"block valuation pattern i={i}",
            pat["shift_consistent"] and pat["diag_balance"]
            and pat["total"] == 2 and pat["D"] in (-1, 0, 1),
            pat))
    return checks


def _gr_square_is_scalar(ring, mat, scalar) -> bool:
    n = len(mat)
    for i in range(n):
        for j in range(n):
            acc = ring.zero()
            for k in range(n):
                acc = ring.add(acc, ring.mul(mat[i][k], mat[k][j]))
            want = scalar if i == j else ring.zero()
            if acc != want:
                return False
    return True


def verify_m0_basis_change(ctx, field, ring) -> list[dict]:
    """Express the Peisert 2A + I action on the fixed block in the basis
    (allone, [0], abar e_r + alpha e_3r, e_2r, alpha e_r + abar e_3r) and
    match it against the Paley display, entry by entry."""
    _require_square_prime(ctx)
    q, r = ctx.q, ctx.r
    conn = field.connection_set("peisert")
    alpha, abar = ring.quartic_weights()
    eta = ring.eta()
    inv2 = pow(2, -1, ring.pk)
    checks = []

    half = ring.scalar(inv2, ring.one())
    checks.append(_check("alpha*abar = 1/2", ring.mul(alpha, abar) == half))
    checks.append(_check(
        "alpha^2 = -eta/2",
        ring.mul(alpha, alpha) == ring.neg(ring.scalar(inv2, eta))))
    checks.append(_check(
        "abar^2 = eta/2",
        ring.mul(abar, abar) == ring.scalar(inv2, eta)))

    e_r = ring.basis_vector(r)
    e_3r = ring.basis_vector(3 * r)
    basis = [
        vec_allone(ring, q),
        vec_point_zero(ring, q),
        vec_add(ring, vec_scale(ring, abar, e_r), vec_scale(ring, alpha, e_3r)),
        ring.basis_vector(2 * r),
        vec_add(ring, vec_scale(ring, alpha, e_r), vec_scale(ring, abar, e_3r)),
    ]
    eta_inv = ring.inv_unit(eta)
    cols = []
    for v in basis:
        image = shifted_action(ring, field, conn, v)
        c1, c2, cr, c2r, c3r = project_m0(ring, field, image)
        cv3 = ring.mul(eta_inv, ring.sub(ring.mul(abar, cr), ring.mul(alpha, c3r)))
        cv5 = ring.mul(eta_inv, ring.sub(ring.mul(abar, c3r), ring.mul(alpha, cr)))
        cols.append([c1, c2, cv3, c2r, cv5])
    got = [[cols[j][i2] for j in range(5)] for i2 in range(5)]
    want = block_matrix(ctx, 0, "M0_paley", ring)
    checks.append(_check("m0 basis change", got == want,
                         {"got": _gr_mat_repr(got), "want": _gr_mat_repr(want)}))
    return checks


def _gr_mat_repr(mat):
    return [[list(e) for e in row] for row in mat]


def _require_square_prime(ctx):
    if ctx.t != 1:
        raise ValueError("this suite applies to q = p^2 only")


# -- generalized adjacency comparison ---------------------------------------


def generalized_snf_group(M, q: int, a: int, b: int, c: int) -> AbelianGroup:
    """Smith normal form data of a*A + b*I + c*J for a conference-graph
    adjacency A on a square number of vertices, via per-prime reduction.

    The eigenvalues are known exactly, which gives the free rank, the
    prime support, and (through the product of distinct nonzero
    eigenvalues, a multiple of every invariant factor) the precision
    needed for each prime.
    """
    s = isqrt(q)
    half = (q - 1) // 2
    mu = [
        (a * half + b + c * q, 1),
        (a * (-1 + s) // 2 + b, half),
        (a * (-1 - s) // 2 + b, half),
    ]
    free = sum(m for v, m in mu if v == 0)
    distinct = sorted({v for v, _ in mu if v})
    bound = 1
    for v in distinct:
        bound *= abs(v)
    data = {}
    for ell in prime_factors(bound):
        prof = local_divisors(M, ell, _valuation_int(bound, ell) + 1, free_rank=free)
        torsion = {j: cnt for j, cnt in prof.mult.items() if j > 0}
        if torsion:
            data[ell] = torsion
    return AbelianGroup.from_prime_exponents(data, free_rank=free)


def _valuation_int(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def compare_generalized(field: FieldTable, samples=None) -> list[dict]:
    """Check SNF equality of a*A + b*I + c*J across the two graphs for
    every sample triple, plus shared strongly-regular structure."""
    if field.n != 2:
        raise ValueError("the comparison suite applies to q = p^2 only")
    q = field.q
    A_paley = adjacency_matrix(field, "paley")
    A_star = adjacency_matrix(field, "peisert")
    checks = []
    params = ((q - 1) // 2, (q - 5) // 4, (q - 1) // 4)
    got_p, got_s = srg_check(A_paley), srg_check(A_star)
    checks.append(_check("srg parameters", got_p == got_s == params,
                         {"paley": got_p, "peisert": got_s, "expected": params}))
    checks.append(_check("connected", is_connected(A_paley) and is_connected(A_star)))
    triples = list(samples) if samples is not None else list(DEFAULT_GRID)
    for (a, b, c) in triples:
        Mp = a * A_paley + b * np.eye(q, dtype=np.int64) + c * np.ones((q, q), dtype=np.int64)
        Ms = a * A_star + b * np.eye(q, dtype=np.int64) + c * np.ones((q, q), dtype=np.int64)
        gp = generalized_snf_group(Mp, q, a, b, c)
        gs = generalized_snf_group(Ms, q, a, b, c)
        checks.append(_check(f"snf equal a={a} b={b} c={c}", gp == gs,
                             {"paley": repr(gp), "peisert": repr(gs)}))
    return checks


def failed(checks) -> list[dict]:
    return [c for c in checks if not c["ok"]]
