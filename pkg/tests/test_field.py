import pytest

from peisert.field import FieldTable, build_field, is_prime, prime_factors

from oracles import element_order, quadratic_is_irreducible


def test_basic_utilities():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factors(132860) == [2, 5, 7, 13, 73]
    assert prime_factors(1) == []


def test_gf9_construction(field9):
    assert field9.q == 9
    assert field9.modulus == [1, 0, 1]  # x^2 + 1
    assert field9.beta == 4  # x + 1


def test_gf3_construction():
    F = FieldTable(3, 1)
    assert F.modulus == [0, 1]
    assert F.beta == 2


def test_gf49_construction(field49):
    assert field49.modulus == [1, 0, 1]
    assert field49.beta == 9  # x + 2


def test_modulus_is_smallest_irreducible_oracle(field9, field49):
    # exhaustive re-derivation for degree 2: smaller candidates all reducible
    for field in (field9, field49):
        p = field.p
        chosen = field.modulus[0] + field.modulus[1] * p
        for enc in range(chosen):
            coeffs = [enc % p, (enc // p) % p, 1]
            assert not quadratic_is_irreducible(coeffs, p)
        assert quadratic_is_irreducible(field.modulus, p)


def test_beta_is_smallest_primitive_oracle(field9, field49):
    # independent order computation via naive polynomial powering
    for field in (field9, field49):
        for enc in range(1, field.beta):
            assert element_order(enc, field.modulus, field.p) < field.q - 1
        assert element_order(field.beta, field.modulus, field.p) == field.q - 1


def test_log_antilog_bijection(field9, field81):
    for field in (field9, field81):
        q = field.q
        assert sorted(field.antilog) == list(range(1, q))
        for m in range(q - 1):
            assert field.log[field.antilog[m]] == m


def test_antilog_multiplicativity(field9):
    q = field9.q
    for a in range(q - 1):
        for b in range(q - 1):
            prod = field9.mul(field9.antilog[a], field9.antilog[b])
            assert prod == field9.antilog[(a + b) % (q - 1)]


def test_field_axioms_exhaustive(field9):
    F = field9
    for a in range(9):
        for b in range(9):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(a, b) == F.add(a, F.neg(b))
            for c in range(9):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in range(1, 9):
        assert F.mul(a, F.inv(a)) == 1


def test_determinism():
    a = FieldTable(3, 2)
    b = FieldTable(3, 2)
    assert a.modulus == b.modulus
    assert a.beta == b.beta
    assert a.log == b.log
    assert a.antilog == b.antilog


def test_quartic_class_values(field9):
    assert field9.quartic_class(1) == 0
    assert field9.quartic_class(2) == 0  # beta^4 = -1 = 2
    assert field9.quartic_class(4) == 1  # beta itself


def test_quartic_class_multiplicative(field9, field49):
    for F in (field9, field49):
        for x in range(1, F.q):
            for y in range(1, F.q):
                expected = (F.quartic_class(x) + F.quartic_class(y)) % 4
                assert F.quartic_class(F.mul(x, y)) == expected


def test_quartic_class_errors(field9):
    with pytest.raises(ValueError):
        field9.quartic_class(0)
    F3 = FieldTable(3, 1)
    with pytest.raises(ValueError):
        F3.quartic_class(1)  # q = 3 is not 1 mod 4


def test_connection_sets_gf9(field9):
    # encodings: 4 = x+1, 8 = 2x+2, 3 = x, 6 = 2x
    assert field9.connection_set("peisert") == (1, 2, 4, 8)
    assert field9.connection_set("paley") == (1, 2, 3, 6)


def test_connection_set_symmetric_and_sized(field9, field49, field81):
    for F in (field9, field49, field81):
        for kind in ("peisert", "paley"):
            conn = F.connection_set(kind)
            assert len(conn) == (F.q - 1) // 2
            assert set(conn) == {F.neg(x) for x in conn}


def test_connection_set_rejections():
    with pytest.raises(ValueError):
        FieldTable(3, 1).connection_set("peisert")  # odd degree
    with pytest.raises(ValueError):
        FieldTable(5, 2).connection_set("peisert")  # p = 1 mod 4
    with pytest.raises(ValueError):
        FieldTable(3, 3).connection_set("paley")  # q = 3 mod 4
    with pytest.raises(ValueError):
        FieldTable(3, 2).connection_set("petersen")


def test_build_rejections():
    with pytest.raises(ValueError):
        build_field(4, 2)
    with pytest.raises(ValueError):
        build_field(3, 0)
    with pytest.raises(ValueError):
        build_field(3, 2, max_size=5)


def test_build_field_alias(field9):
    F = build_field(3, 2)
    assert F.modulus == field9.modulus
    assert F.beta == field9.beta
