import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import elliptic_sl2, lifts, pl_lifts, random_map, random_mobius, random_pl

from eulerlab.errors import IterationLimit, NonMonotonePL, SchemaError, SingularMatrix
from eulerlab.lifts import (
    IDENTITY,
    CircleMap,
    Compose,
    IntTranslate,
    Inverse,
    Mobius,
    MobiusKind,
    PiecewiseLinear,
    Rotation,
    displacement_range,
    evaluate,
    lift_algebra,
    lift_from_json,
    lift_to_json,
    mobius_classify,
    power,
    rotation_number,
    simplest_fraction,
    standard_lift,
    translation_number,
)

GRID = np.linspace(-2.0, 2.0, 401)


# ------------------------------------------------------------- evaluate


def test_rotation_evaluates_as_translation():
    assert evaluate(Rotation(0.25), 0.5) == 0.75


def test_pl_linear_interpolation():
    f = PiecewiseLinear(((0.0, 0.0), (0.5, 0.25)))
    assert evaluate(f, 0.25) == pytest.approx(0.125, abs=1e-15)


def test_identity_mobius_is_identity():
    xs = np.linspace(-1.5, 1.5, 31)
    np.testing.assert_allclose(evaluate(Mobius(((1, 0), (0, 1))), xs), xs, atol=1e-15)


def test_scalar_and_array_agree():
    f = Compose(random_pl(np.random.default_rng(1)), random_mobius(np.random.default_rng(2)))
    ys = evaluate(f, GRID)
    assert all(evaluate(f, float(x)) == y for x, y in zip(GRID[::40], ys[::40]))


def test_mobius_rotation_matrix_matches_rotation():
    for alpha in (0.0, 0.25, 0.7, 1.3, -0.4):
        np.testing.assert_allclose(evaluate(Mobius.from_rotation(alpha), GRID), GRID + alpha, atol=1e-12)


def test_mobius_angle_convention():
    # the matrix rotating vectors by pi/4 moves lines by a quarter turn of RP^1
    c = math.cos(math.pi / 4)
    m = Mobius(((c, -c), (c, c)))
    np.testing.assert_allclose(evaluate(m, np.array([0.0, 0.25])), [0.25, 0.5], atol=1e-15)


def test_nonmonotone_pl_rejected():
    with pytest.raises(NonMonotonePL):
        PiecewiseLinear(((0.0, 0.5), (0.5, 0.25)))
    with pytest.raises(NonMonotonePL):
        PiecewiseLinear(((0.0, 0.0), (0.5, 1.0)))
    with pytest.raises(NonMonotonePL):
        PiecewiseLinear(((0.2, 0.0), (0.2, 0.1)))


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrix):
        Mobius(((1.0, 0.0), (0.0, 0.98)))
    with pytest.raises(SingularMatrix):
        Mobius(((0.0, 1.0), (1.0, 0.0)))


@given(lifts())
def test_equivariance(f):
    ys = evaluate(f, GRID)
    np.testing.assert_allclose(evaluate(f, GRID + 1.0) - ys, 1.0, atol=1e-10)


@given(lifts())
def test_strictly_increasing(f):
    xs = np.sort(np.random.default_rng(0).uniform(-1, 1, 500))
    assert np.all(np.diff(evaluate(f, xs)) > 0)


@given(pl_lifts())
def test_pl_equivariance_exact(f):
    xs = np.linspace(0, 1, 17)[:-1]
    assert np.array_equal(f.eval_array(xs + 1.0), f.eval_array(xs) + 1.0)


# ---------------------------------------------------------- algebra


def test_compose_rotations():
    np.testing.assert_allclose(evaluate(lift_algebra("compose", Rotation(0.3), Rotation(0.4)), GRID), GRID + 0.7, atol=1e-15)


def test_inverse_rotation():
    np.testing.assert_allclose(evaluate(lift_algebra("inverse", Rotation(0.3)), GRID), GRID - 0.3, atol=1e-15)


def test_power_zero_is_identity():
    f = random_pl(np.random.default_rng(5))
    assert evaluate(lift_algebra("power", f, k=0), 0.37) == 0.37


@given(lifts())
def test_inverse_composes_to_identity(f):
    np.testing.assert_allclose(evaluate(Compose(f, Inverse(f)), GRID), GRID, atol=1e-9)
    np.testing.assert_allclose(evaluate(Compose(Inverse(f), f), GRID), GRID, atol=1e-9)


@given(lifts(), st.integers(-5, 5))
def test_power_matches_iteration(f, k):
    y = GRID.copy()
    step = f if k >= 0 else Inverse(f)
    for _ in range(abs(k)):
        y = evaluate(step, y)
    np.testing.assert_allclose(evaluate(power(f, k), GRID), y, atol=1e-9)


def test_mobius_inverse_fixes_zero():
    m = random_mobius(np.random.default_rng(3), branch=2)
    assert evaluate(Compose(m, Inverse(m)), 0.0) == pytest.approx(0.0, abs=1e-12)


def test_int_translate():
    f = random_pl(np.random.default_rng(4))
    np.testing.assert_allclose(evaluate(IntTranslate(3, f), GRID), evaluate(f, GRID) + 3)


def test_operators():
    f, g = Rotation(0.1), Rotation(0.2)
    assert evaluate(f * g, 0.0) == pytest.approx(0.3)
    assert evaluate(f**3, 0.0) == pytest.approx(0.3)
    assert evaluate(f.inverse(), 0.0) == pytest.approx(-0.1)
    assert evaluate(f.translate(2), 0.0) == pytest.approx(2.1)


# ---------------------------------------------------------- standard lift


@pytest.mark.parametrize("alpha, expected", [(1.3, 0.3), (0.0, 0.0), (-0.25, 0.75)])
def test_standard_lift_of_translations(alpha, expected):
    assert evaluate(standard_lift(Rotation(alpha)), 0.0) == pytest.approx(expected)


@given(lifts(), st.floats(-3, 3))
def test_standard_lift_range(f, x0):
    v = evaluate(standard_lift(f, x0), x0) - x0
    assert 0.0 <= v < 1.0


def test_circle_map():
    c = CircleMap.rotation(1.7)
    assert c(0.5) == pytest.approx(0.2)
    assert 0 <= evaluate(c.lift, 0.0) < 1
    assert rotation_number(c * c, 1e-9) == pytest.approx(0.4)
    assert rotation_number(c.inverse(), 1e-9) == pytest.approx(0.3)
    assert rotation_number(c**3, 1e-9) == pytest.approx(0.1)


# ----------------------------------------------------- translation number


def test_rotation_enclosure_exact():
    enc = translation_number(Rotation(0.3), 1e-9)
    assert enc.lo <= 0.3 <= enc.hi and enc.width <= 1e-9


def test_fixed_point_pl_has_rotation_zero():
    f = PiecewiseLinear(((0.0, 0.0), (0.3, 0.5), (0.7, 0.8)))
    enc = translation_number(f, 1e-9)
    assert enc.contains(0.0)
    assert rotation_number(f, 1e-9) == 0.0


def test_quarter_turn_matrix():
    # oracle: angle/pi for a rotation matrix, computed independently of the iterator
    c = math.cos(math.pi / 4)
    enc = translation_number(Mobius(((c, -c), (c, c))), 1e-10)
    assert enc.contains(0.25) and enc.width <= 1e-10


def test_conjugated_rotation_matrix():
    rng = np.random.default_rng(11)
    m = elliptic_sl2(rng, angle=1.1)
    enc = translation_number(Mobius(m), 1e-10)
    assert enc.contains(1.1 / math.pi, slack=1e-12)


@pytest.mark.parametrize("alpha, expected", [(0.7, 0.7), (2.25, 0.25)])
def test_rotation_number_rotations(alpha, expected):
    assert rotation_number(Rotation(alpha), 1e-9) == pytest.approx(expected)


def test_rotation_number_power():
    assert rotation_number(power(Rotation(0.3), 3), 1e-9) == pytest.approx(0.9)


@given(lifts())
def test_enclosures_nested(f):
    coarse = translation_number(f, 1e-4)
    fine = translation_number(f, 1e-5)
    assert coarse.lo - 1e-15 <= fine.lo and fine.hi <= coarse.hi + 1e-15


@given(lifts(), st.integers(2, 8))
def test_homogeneity(f, k):
    e1 = translation_number(f, 1e-6)
    ek = translation_number(power(f, k), 1e-6)
    assert abs(ek.mid - k * e1.mid) <= ek.width + k * e1.width + 1e-12


@given(lifts(), st.integers(-3, 3))
def test_integer_translate_shifts_by_k(f, k):
    e0 = translation_number(f, 1e-6)
    ek = translation_number(IntTranslate(k, f), 1e-6)
    assert abs(ek.mid - e0.mid - k) <= e0.width + ek.width + 1e-12


@given(lifts())
def test_fixed_point_criterion(f):
    lo, hi = displacement_range(f, 256)
    for a in range(math.ceil(lo), math.floor(hi) + 1):
        assert translation_number(IntTranslate(-a, f), 1e-6).contains(0.0)


@given(lifts())
def test_conjugation_invariance(f):
    h = random_pl(np.random.default_rng(99))
    e1 = translation_number(f, 1e-6)
    e2 = translation_number(Compose(Compose(h, f), Inverse(h)), 1e-6)
    assert abs(e1.mid - e2.mid) <= e1.width + e2.width + 1e-12


def test_continuity_probe():
    base = PiecewiseLinear(((0.0, 0.3), (0.4, 0.55), (0.8, 1.2)))
    mid0 = translation_number(base, 1e-8).mid
    diffs = []
    for delta in (1e-2, 1e-3, 1e-4, 1e-5):
        xs, ys = base.graph()
        g = PiecewiseLinear.from_graph(xs, ys + delta * np.array([1.0, -1.0, 0.5]))
        diffs.append(abs(translation_number(g, 1e-8).mid - mid0))
    assert diffs[-1] < 1e-3
    assert diffs[-1] <= diffs[0]


def test_rational_values_certified_exactly():
    rng = np.random.default_rng(1)
    f = random_map(rng, 1)
    enc = translation_number(f, 1e-12)
    assert enc.width <= 1e-12


def test_iteration_limit():
    f = Mobius(elliptic_sl2(np.random.default_rng(2), angle=1.0))
    with pytest.raises(IterationLimit):
        translation_number(f, 1e-12, max_steps=100)


def test_tol_must_be_positive():
    with pytest.raises(ValueError):
        translation_number(Rotation(0.1), 0.0)


def test_simplest_fraction():
    from fractions import Fraction

    assert simplest_fraction(0.3, 0.34) == Fraction(1, 3)
    assert simplest_fraction(0.5, 0.5) == Fraction(1, 2)
    assert simplest_fraction(-0.6, -0.4) == Fraction(-1, 2)
    assert simplest_fraction(1.9, 2.1) == 2


# ----------------------------------------------------- displacement range


def test_displacement_range_rotation():
    assert displacement_range(Rotation(0.3), 64) == pytest.approx((0.3, 0.3))


@given(lifts())
def test_displacement_range_width_below_one(f):
    lo, hi = displacement_range(f, 128)
    assert hi - lo < 1


def test_displacement_range_contains_zero_at_fixed_point():
    f = PiecewiseLinear(((0.0, 0.0), (0.5, 0.7)))
    lo, hi = displacement_range(f, 64)
    assert lo <= 0.0 <= hi


def test_displacement_range_grid_size():
    with pytest.raises(ValueError):
        displacement_range(Rotation(0.1), 1)


# ---------------------------------------------------------- classify


@pytest.mark.parametrize(
    "m, kind",
    [
        (((2, 0), (0, 0.5)), MobiusKind.HYPERBOLIC),
        (((0.5, -math.sqrt(3) / 2), (math.sqrt(3) / 2, 0.5)), MobiusKind.ELLIPTIC),
        (((1, 1), (0, 1)), MobiusKind.PARABOLIC),
        (((1, 0), (0, 1)), MobiusKind.IDENTITY),
        (((-1, 0), (0, -1)), MobiusKind.IDENTITY),
    ],
)
def test_classify(m, kind):
    assert mobius_classify(m).kind == kind


def test_classify_trace_and_band():
    assert mobius_classify(((0.5, -math.sqrt(3) / 2), (math.sqrt(3) / 2, 0.5))).trace == pytest.approx(1.0)
    m = np.array([[1.0 + 1e-11, 1.0], [0.0, 1.0 / (1.0 + 1e-11)]])
    assert mobius_classify(m).kind == MobiusKind.PARABOLIC
    with pytest.raises(SingularMatrix):
        mobius_classify(((2, 0), (0, 1)))


# ---------------------------------------------------------------- JSON


@given(lifts())
def test_json_round_trip(f):
    doc = json.loads(json.dumps(lift_to_json(Inverse(IntTranslate(2, Compose(f, Rotation(0.1)))))))
    g = lift_from_json(doc)
    np.testing.assert_allclose(evaluate(g, GRID), evaluate(Inverse(IntTranslate(2, Compose(f, Rotation(0.1)))), GRID), atol=1e-12)


def test_json_errors_have_location():
    with pytest.raises(SchemaError) as exc:
        lift_from_json({"kind": "compose", "outer": {"kind": "rotation", "alpha": 0.1}, "inner": {"kind": "nope"}})
    assert exc.value.location == ("inner",)
    with pytest.raises(SchemaError):
        lift_from_json({"kind": "mobius"})


def test_identity_constant():
    assert evaluate(IDENTITY, 0.42) == 0.42


def test_large_mobius_power_keeps_determinant():
    # regression: the 7th power has entries near 5e4 and a rounded det off by 5e-7
    f = Mobius([[2.578974030191069, -3.467076705151822], [-1.7709112588131763, 2.768498282161173]])
    enc = translation_number(power(f, 7), 1e-8)
    assert enc.width <= 1e-8
    assert mobius_classify(np.linalg.matrix_power(np.array(f.matrix).reshape(2, 2), 7)).kind == MobiusKind.HYPERBOLIC
    with pytest.raises(SingularMatrix):
        Mobius([[1.0, 0.0], [0.0, 1.0 + 1e-6]])


def test_rational_enclosure_brackets_exact_value():
    # 13 dyadic points p_i = i/16 cycled by i -> i+5, so rot is exactly 5/13, which is not a float
    from fractions import Fraction

    xs = [i / 16 for i in range(13)]
    ys = [(i + 5) / 16 if i + 5 < 13 else 1 + (i - 8) / 16 for i in range(13)]
    f = PiecewiseLinear.from_graph(xs, ys)
    assert evaluate(power(f, 13), 0.0) == 5.0
    enc = translation_number(f, 1e-10)
    assert Fraction(enc.lo) < Fraction(5, 13) < Fraction(enc.hi)
    h = random_pl(np.random.default_rng(0))
    enc = translation_number(Compose(Compose(h, f), Inverse(h)), 1e-10)
    assert Fraction(enc.lo) < Fraction(5, 13) < Fraction(enc.hi)
