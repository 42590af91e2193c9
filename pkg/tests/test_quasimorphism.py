import pytest
from hypothesis import given
from hypothesis import strategies as st

from eulerlab.errors import BadIndex, BallTooLarge, IterationLimit, RankMismatch, SchemaError
from eulerlab.quasimorphism import (
    OddSequence,
    Word,
    ball,
    ball_size,
    bar_coboundary,
    constant,
    defect_lower_bound,
    defect_witness,
    exponent_sum,
    homogenize,
    power_word,
    reduce_word,
    rolli,
    rolli_eval,
    syllables,
)

letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=16)
UNIT = OddSequence.unit_sign()


def everywhere_sign(n=64):
    return OddSequence({k: 1.0 for k in range(1, n + 1)})


# ---------------------------------------------------------------- words


@pytest.mark.parametrize("raw, reduced", [([1, -1], []), ([1, 2, -2, 1], [1, 1]), ([1, 2, 1], [1, 2, 1]), ([], [])])
def test_reduce_word(raw, reduced):
    assert list(reduce_word(raw)) == reduced


def test_bad_letters():
    with pytest.raises(BadIndex):
        reduce_word([1, 0])
    with pytest.raises(BadIndex):
        reduce_word([3], rank=2)
    with pytest.raises(BadIndex):
        reduce_word([1.5])


@given(letters)
def test_reduce_idempotent_and_shortening(w):
    r = reduce_word(w)
    assert reduce_word(r) == r
    assert len(r) <= len(w)
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


@given(letters, letters)
def test_word_product_and_inverse(a, b):
    a, b = reduce_word(a), reduce_word(b)
    assert a * a.inverse() == Word()
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(letters, st.integers(-4, 6))
def test_power_word_matches_repeated_product(w, n):
    w = reduce_word(w)
    expect = Word()
    step = w if n >= 0 else w.inverse()
    for _ in range(abs(n)):
        expect = expect * step
    assert power_word(w, n) == expect
    assert w**n == expect


def test_syllables():
    assert syllables(Word([1, 1, 1, -2, -2, 1])) == ((1, 3), (2, -2), (1, 1))


@pytest.mark.parametrize("rank, radius", [(1, 3), (2, 1), (2, 3), (3, 2)])
def test_ball_size(rank, radius):
    words = ball(rank, radius)
    assert len(words) == ball_size(rank, radius) == len(set(words))
    assert all(reduce_word(w) == w for w in words)
    assert [len(w) for w in words] == sorted(len(w) for w in words)


# ---------------------------------------------------------------- Rolli


def test_rolli_direct_formula():
    assert rolli_eval(everywhere_sign(), Word([1, 1, 1, -2, -2])) == 0.0
    assert rolli_eval(UNIT, Word([1, 1, 1, -2, -2])) == 0.0
    assert rolli_eval(UNIT, Word()) == 0.0


@pytest.mark.parametrize("k", range(1, 7))
def test_rolli_alternating_word(k):
    assert rolli_eval(UNIT, Word([1, 2] * k)) == 2 * k


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        rolli_eval(UNIT, Word([3]))


def test_odd_sequence():
    a = OddSequence({"2": 0.5, 3: -1})
    assert a(2) == 0.5 and a(-2) == -0.5 and a(0) == 0.0 and a(7) == 0.0
    assert a.bound == 1.0
    assert OddSequence.from_json(a.to_json()) == a
    with pytest.raises(SchemaError):
        OddSequence({0: 1.0})
    with pytest.raises(SchemaError):
        OddSequence.from_json({"x": 1})


# ---------------------------------------------------------------- defect


def test_homomorphism_has_zero_coboundary():
    f = exponent_sum(1)
    for g1 in ball(2, 2):
        for g2 in ball(2, 2):
            assert bar_coboundary(f, g1, g2) == 0.0
    assert defect_lower_bound(f, 3) == 0.0


def test_constant_coboundary():
    assert bar_coboundary(constant(1.5), Word([1]), Word([2, 2])) == 1.5


def test_rolli_witness_pair():
    # f(s1 s2) = 2, f(s2^-1 s1) = 0, f(s1^2) = alpha(2) = 0
    assert bar_coboundary(rolli(UNIT), Word([1, 2]), Word([-2, 1])) == 2.0


def test_rolli_defect_ball_two():
    assert defect_lower_bound(rolli(UNIT), 2) >= 2.0
    d, g1, g2 = defect_witness(rolli(UNIT), 2)
    assert abs(bar_coboundary(rolli(UNIT), g1, g2)) == d


def test_everywhere_sign_regression():
    # derived by brute force: with alpha(n) = sign(n) for every n the pair
    # above only reaches 1, and so does every pair up to length 4
    f = rolli(everywhere_sign())
    assert bar_coboundary(f, Word([1, 2]), Word([-2, 1])) == 1.0
    assert [defect_lower_bound(f, L) for L in (1, 2, 3, 4)] == [1.0, 1.0, 1.0, 1.0]


@pytest.mark.parametrize("alpha", [UNIT, OddSequence({2: 1.0}), OddSequence({1: 0.5, 3: -2.0})])
def test_defect_monotone_in_radius(alpha):
    vals = [defect_lower_bound(rolli(alpha), L) for L in (1, 2, 3)]
    assert vals == sorted(vals)
    assert max(vals) > 0


def test_ball_budget():
    with pytest.raises(BallTooLarge):
        defect_lower_bound(rolli(UNIT), 9)
    with pytest.raises(BallTooLarge):
        defect_lower_bound(rolli(UNIT), 6, budget=1000)


# --------------------------------------------------------- homogenization


def test_homogenize_homomorphism():
    f = exponent_sum(1)
    v, err = homogenize(f, Word([1, 2, 1]), 0.0, 1e-3)
    assert v == 2.0 and err == 0.0


def test_homogenize_bounded_on_powers():
    v, err = homogenize(rolli(UNIT), Word([1]), 2.0, 1e-3)
    assert abs(v) <= 1e-3 and err <= 1e-3


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=5), st.integers(2, 4))
def test_homogenized_is_homogeneous(w, k):
    g = reduce_word(w)
    f = rolli(UNIT)
    v1, e1 = homogenize(f, g, 2.0, 1e-2)
    vk, ek = homogenize(f, power_word(g, k), 2.0, 1e-2)
    assert abs(vk - k * v1) <= ek + k * e1 + 1e-12


def test_homogenize_limits():
    with pytest.raises(IterationLimit):
        homogenize(rolli(UNIT), Word([1, 2]), 2.0, 1e-9, max_power=1024)
    with pytest.raises(ValueError):
        homogenize(rolli(UNIT), Word([1]), 2.0, 0.0)
    with pytest.raises(ValueError):
        homogenize(rolli(UNIT), Word([1]), -1.0, 0.1)


def test_quasimorphism_cache():
    calls = []
    f = rolli(UNIT)
    g = type(f)(lambda w: calls.append(w) or 1.0)
    g(Word([1])), g(Word([1]))
    assert len(calls) == 1
