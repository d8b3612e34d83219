from metaline.sampling import DENOMINATOR_BOUND, NUMERATOR_BOUND, RationalSampler


def test_same_seed_same_stream():
    a = RationalSampler(42)
    b = RationalSampler(42)
    assert [a.rational() for _ in range(20)] == [b.rational() for _ in range(20)]


def test_different_seeds_differ():
    a = RationalSampler(1)
    b = RationalSampler(2)
    assert [a.rational() for _ in range(10)] != [b.rational() for _ in range(10)]


def test_derive_streams_are_independent():
    base = RationalSampler(42)
    first = base.derive("alpha")
    # consuming one stream must not advance a sibling stream
    _ = [first.rational() for _ in range(50)]
    assert base.derive("beta").rational() == RationalSampler(42).derive("beta").rational()
    assert base.derive("alpha").vector(4) != base.derive("beta").vector(4)


def test_bounds():
    sampler = RationalSampler(7)
    for _ in range(200):
        value = sampler.rational()
        assert abs(value.numerator) <= NUMERATOR_BOUND
        assert 1 <= value.denominator <= DENOMINATOR_BOUND


def test_nonzero_variants():
    sampler = RationalSampler(9)
    assert all(sampler.nonzero_rational() != 0 for _ in range(50))
    assert any(c != 0 for c in sampler.nonzero_vector(3))


def test_distinct_rationals():
    values = RationalSampler(5).distinct_rationals(8)
    assert len(set(values)) == 8


def test_integer_bound():
    sampler = RationalSampler(3)
    assert all(0 <= sampler.integer(7) < 7 for _ in range(100))
