import pytest

from peisert.field import FieldTable
from peisert.galois_ring import (
    GaloisRing,
    build_ring,
    gauss_conj,
    gauss_mul,
    gr_exponents,
    jacobi_quartic_exact,
)


def test_build_rejections(field9):
    with pytest.raises(ValueError):
        GaloisRing(field9, 0)
    with pytest.raises(ValueError):
        GaloisRing(FieldTable(2, 2), 3)


def test_hensel_lift_gf9():
    ring = build_ring(FieldTable(3, 2), 3)
    # x^2 + 1 divides x^9 - x over the integers already
    assert ring.modulus_lift == [1, 0, 1]


def test_hensel_lift_divides_frobenius(ring9, ring49, ring81):
    for ring in (ring9, ring49, ring81):
        gen = (0, 1) + (0,) * (ring.n - 2)
        assert ring.pow(gen, ring.q) == gen
        assert all((a - b) % ring.p == 0
                   for a, b in zip(ring.modulus_lift, ring.base.modulus))


def test_teichmuller_basics(ring9):
    assert ring9.teich[0] == (1, 0)
    # the lift of -1 is -1
    assert ring9.teich[4] == (ring9.pk - 1, 0)
    at_k3 = GaloisRing(ring9.base, 3)
    assert at_k3.teich[4] == (26, 0)  # -1 mod 27


def test_teichmuller_reduction_and_multiplicativity(ring9, ring81):
    for ring in (ring9, ring81):
        qm1 = ring.q - 1
        for j in range(qm1):
            assert ring.reduce_mod_p(ring.teich[j]) == ring.base.antilog[j]
        for a in range(0, qm1, 3):
            for b in range(0, qm1, 5):
                prod = ring.mul(ring.teich[a], ring.teich[b])
                assert prod == ring.teich[(a + b) % qm1]


def test_teichmuller_fixed_points(ring49):
    for j in range(0, ring49.q - 1, 7):
        z = ring49.teich[j]
        assert ring49.pow(z, ring49.q) == z


def test_unit_inverse(ring81):
    ring = ring81
    samples = [ring.teich[5], ring.from_int(7), (4, 1, 0, 2), ring.from_int(-5)]
    for u in samples:
        if not ring.is_unit(u):
            continue
        assert ring.mul(u, ring.inv_unit(u)) == ring.one()
    with pytest.raises(ZeroDivisionError):
        ring.inv_unit(ring.from_int(3))


def test_valuation(ring9):
    assert ring9.valuation(ring9.from_int(3)) == 1
    assert ring9.valuation(ring9.from_int(1)) == 0
    assert ring9.valuation(ring9.from_int(9)) == 2
    # zero is indistinguishable from valuation >= k
    assert ring9.valuation(ring9.zero()) == ring9.k


def test_jacobi_spec_values(ring9):
    ring = ring9
    assert ring.jacobi(2, 2) == ring.from_int(3)
    assert ring.jacobi(0, 0) == ring.from_int(9)
    assert ring.valuation(ring.jacobi(1, 2)) == 1
    assert ring.valuation(ring.jacobi(1, 6)) == 0


def test_jacobi_reduction_compatibility(field9):
    deep = GaloisRing(field9, 5)
    shallow = GaloisRing(field9, 2)
    p2 = shallow.pk
    for i in range(0, 8, 2):
        for j in range(8):
            a = deep.jacobi(i, j)
            b = shallow.jacobi(i, j)
            assert tuple(x % p2 for x in a) == b


def test_jacobi_conjugation(field9):
    """Replacing omega by its inverse inverts the character indices."""
    ring = GaloisRing(field9, 4)
    qm1 = field9.q - 1

    def jacobi_conjugated(i, j):
        total = [0] * ring.n
        if i % qm1 == 0:
            total[0] += 1
        if j % qm1 == 0:
            total[0] += 1
        for x in range(2, field9.q):
            y = field9.sub(1, x)
            term = ring.teich[(i * field9.log[x] + j * field9.log[y]) % qm1]
            for c in range(ring.n):
                total[c] += term[c]
        return tuple(c % ring.pk for c in total)

    for i in range(qm1):
        for j in range(qm1):
            assert jacobi_conjugated(i, j) == ring.jacobi(-i, -j)


def test_basis_vector(ring9):
    ring = ring9
    e0 = ring.basis_vector(0)
    assert e0[0] == ring.zero()
    assert all(c == ring.one() for c in e0[1:])
    beta = ring.base.beta
    e5 = ring.basis_vector(5)
    assert e5[beta] == ring.teich[(-5) % 8]
    # e_{2r} is even: equal coordinates at x and -x
    e4 = ring.basis_vector(4)
    for x in range(1, 9):
        assert e4[x] == e4[ring.base.neg(x)]


def test_quartic_weights(ring9, ring49):
    for ring in (ring9, ring49):
        alpha, abar = ring.quartic_weights()
        assert ring.add(alpha, abar) == ring.one()
        eta = ring.eta()
        assert ring.sub(abar, alpha) == eta
        assert ring.mul(eta, eta) == ring.from_int(-1)


def test_jacobi_quartic_exact_values(field9, field49):
    assert jacobi_quartic_exact(field9, 2, 2) == (3, 0)
    assert jacobi_quartic_exact(field49, 12, 12) == (7, 0)
    j24 = jacobi_quartic_exact(field9, 2, 4)
    assert gauss_mul(j24, gauss_conj(j24)) == (9, 0)


def test_jacobi_quartic_norm(field49):
    """|J|^2 = q whenever both characters and their product are
    nonprincipal."""
    r = 12
    for ai in range(1, 4):
        for aj in range(1, 4):
            if (ai + aj) % 4 == 0:
                continue
            val = jacobi_quartic_exact(field49, ai * r, aj * r)
            assert gauss_mul(val, gauss_conj(val)) == (49, 0)


def test_jacobi_quartic_matches_ring(field9, ring9):
    """The Gaussian-integer evaluation reduces to the ring evaluation
    under eta -> teich[r]."""
    eta = ring9.eta()
    for ai in range(4):
        for aj in range(4):
            if ai == 0 and aj == 0:
                continue
            re, im = jacobi_quartic_exact(field9, 2 * ai, 2 * aj)
            embedded = ring9.add(ring9.from_int(re), ring9.scalar(im, eta))
            assert embedded == ring9.jacobi(2 * ai, 2 * aj)


def test_jacobi_quartic_rejections(field9):
    with pytest.raises(ValueError):
        jacobi_quartic_exact(field9, 1, 2)
    with pytest.raises(ValueError):
        jacobi_quartic_exact(field9, 0, 8)
    with pytest.raises(ValueError):
        jacobi_quartic_exact(FieldTable(3, 1), 0, 1)


def test_gr_exponents_small(ring9):
    ring = ring9
    mat = [[ring.from_int(3), ring.zero()], [ring.zero(), ring.from_int(1)]]
    assert gr_exponents(ring, mat) == ([0, 1], 0)
    mat = [[ring.zero(), ring.zero()], [ring.zero(), ring.from_int(9)]]
    assert gr_exponents(ring, mat) == ([2], 1)
