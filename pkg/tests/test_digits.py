import pytest

from peisert.digits import CarryContext

from oracles import carries_by_addition


def test_context_validation():
    with pytest.raises(ValueError):
        CarryContext(5, 1)  # p = 1 mod 4
    with pytest.raises(ValueError):
        CarryContext(4, 1)
    with pytest.raises(ValueError):
        CarryContext(3, 0)


def test_p_digits_examples(ctx9):
    assert ctx9.p_digits(2) == (2, 0)  # r
    assert ctx9.p_digits(4) == (1, 1)  # 2r
    assert ctx9.p_digits(7) == (1, 2)


def test_p_digits_reduction(ctx9):
    assert ctx9.p_digits(9) == ctx9.p_digits(1)  # 9 = 1 mod 8
    assert ctx9.p_digits(-1) == ctx9.p_digits(7)
    with pytest.raises(ValueError):
        ctx9.p_digits(0)
    with pytest.raises(ValueError):
        ctx9.p_digits(8)


def test_digit_patterns_of_r(ctx49, ctx81):
    # even positions (3p-1)/4, odd positions (p-3)/4; reversed for 3r
    for ctx in (ctx49, ctx81):
        hi, lo = (3 * ctx.p - 1) // 4, (ctx.p - 3) // 4
        digits_r = ctx.p_digits(ctx.r)
        digits_3r = ctx.p_digits(3 * ctx.r)
        assert digits_r == tuple(hi if i % 2 == 0 else lo for i in range(ctx.m))
        assert digits_3r == tuple(lo if i % 2 == 0 else hi for i in range(ctx.m))
        assert ctx.p_digits(2 * ctx.r) == ((ctx.p - 1) // 2,) * ctx.m


def test_digit_sum_examples(ctx9):
    assert ctx9.digit_sum(2) == 2
    assert ctx9.digit_sum(4) == 2
    assert ctx9.digit_sum(7) == 3


def test_digit_sum_of_quarter_points(ctx9, ctx49, ctx81):
    for ctx in (ctx9, ctx49, ctx81):
        expect = ctx.t * (ctx.p - 1)
        for mult in (1, 2, 3):
            assert ctx.digit_sum(mult * ctx.r) == expect


def test_digit_sum_complementarity(ctx49, ctx81):
    for ctx in (ctx49, ctx81):
        qm1 = ctx.q - 1
        for i in range(1, qm1):
            assert ctx.digit_sum(i) + ctx.digit_sum(qm1 - i) == ctx.m * (ctx.p - 1)


def test_carry_count_examples(ctx9):
    assert ctx9.carry_count(2, 2) == 1
    assert ctx9.carry_count(1, 2) == 1
    assert ctx9.carry_count(1, 6) == 0
    with pytest.raises(ValueError):
        ctx9.carry_count(1, 7)  # i + j = 0 mod 8


def test_carry_count_matches_addition_simulation(ctx9, ctx49):
    for ctx in (ctx9, ctx49):
        qm1 = ctx.q - 1
        for i in range(1, qm1):
            for j in range(1, qm1):
                if (i + j) % qm1 == 0:
                    continue
                assert ctx.carry_count(i, j) == carries_by_addition(i, j, ctx.p, ctx.m)


def test_carry_count_symmetry(ctx81):
    qm1 = ctx81.q - 1
    for i in range(1, qm1, 7):
        for j in range(1, qm1, 5):
            if (i + j) % qm1 == 0:
                continue
            assert ctx81.carry_count(i, j) == ctx81.carry_count(j, i)


def test_quarter_point_carries(ctx9, ctx49, ctx81):
    for ctx in (ctx9, ctx49, ctx81):
        r, t = ctx.r, ctx.t
        for i, j in ((r, r), (2 * r, 3 * r), (2 * r, r), (3 * r, 3 * r)):
            assert ctx.carry_count(i, j) == t


def test_class_reps(ctx9, ctx49, ctx81):
    assert ctx9.class_reps() == [(1, 3, 5, 7)]
    assert len(ctx49.class_reps()) == 11
    assert len(ctx81.class_reps()) == 19
    for ctx in (ctx9, ctx49, ctx81):
        classes = ctx.class_reps()
        seen = set()
        for cls in classes:
            seen.update(x % (ctx.q - 1) for x in cls)
        expected = set(range(ctx.q - 1)) - {0, ctx.r, 2 * ctx.r, 3 * ctx.r}
        assert seen == expected
        assert len(seen) == 4 * len(classes)


def test_class_identity_lemmas(ctx9, ctx49, ctx81):
    # sums of the two candidate lists and the diagonal balance
    for ctx in (ctx9, ctx49, ctx81):
        r, t = ctx.r, ctx.t
        cc = ctx.carry_count
        for i in range(1, r):
            list1 = cc(i, r) + cc(i + r, 3 * r) + cc(i + 2 * r, r) + cc(i + 3 * r, 3 * r)
            list2 = cc(i, 3 * r) + cc(i + r, r) + cc(i + 2 * r, 3 * r) + cc(i + 3 * r, r)
            assert list1 == 4 * t
            assert list2 == 4 * t
            assert cc(i, r) + cc(i + 2 * r, r) == cc(i, 3 * r) + cc(i + 2 * r, 3 * r)


def test_conjugation_identity_corrected(ctx9, ctx49, ctx81):
    for ctx in (ctx9, ctx49, ctx81):
        qm1 = ctx.q - 1
        r, t = ctx.r, ctx.t
        for i in range(1, qm1):
            if i in (r, 2 * r, 3 * r):
                continue
            assert ctx.carry_count(i, r) + ctx.carry_count(qm1 - i, 3 * r) == 2 * t


def test_conjugation_identity_naive_form_fails(ctx49):
    """The same-argument variant c(i,r) + c(-i,r) = 2t is false: q = 49,
    i = 2 gives 1 + 2 = 3.  The corrected form pairs r with 3r."""
    assert ctx49.carry_count(2, 12) == 1
    assert ctx49.carry_count(46, 12) == 2
    assert ctx49.carry_count(2, 12) + ctx49.carry_count(46, 12) != 2 * ctx49.t
    assert ctx49.carry_count(2, 12) + ctx49.carry_count(46, 36) == 2 * ctx49.t


def test_digit_sum_table_path():
    # q = 6561 crosses the cached-table threshold; spot check against divmod
    ctx = CarryContext(3, 4)
    for j in (1, 2, ctx.r, 2 * ctx.r, 3 * ctx.r, 6559, 4000):
        digits = ctx.p_digits(j)
        assert ctx.digit_sum(j) == sum(digits)
