"""Total, Zygmund and quadratic variation estimators."""
import math

import numpy as np
import pytest

from _partition_oracles import qv_oracle, tv_oracle, zv_oracle
from denjoylab import (IntervalFunction, UnresolvedExtremaError,
                       classify_regularity, example_function, make_map,
                       quadratic_variation)
from denjoylab.util import dyadic_grid
from denjoylab.variation import (avg_zygmund_variation,
                                 dyadic_second_differences,
                                 log_derivative_function,
                                 total_variation_estimate,
                                 zygmund_level_sums, zygmund_norm_estimate,
                                 zygmund_norm_profile,
                                 zygmund_variation_estimate)


def _fn(expr, label, lo=0.0, hi=1.0, deriv=None):
    return IntervalFunction(domain=(lo, hi), eval=expr, derivative=deriv,
                            oracle=None, label=label)


SQUARE = _fn(lambda x: np.asarray(x, dtype=float) ** 2, "square")
SINE = _fn(lambda x: np.sin(2.0 * np.pi * np.asarray(x, dtype=float)), "sine")


class TestTotalVariation:
    def test_monotone_value(self):
        assert total_variation_estimate(SQUARE, 6) == pytest.approx(1.0)

    def test_oscillation_counts_every_swing(self):
        assert total_variation_estimate(SINE, 8) == pytest.approx(
            4.0, abs=1e-6)

    def test_first_example_is_exactly_two(self):
        assert total_variation_estimate(example_function("ex1", 10),
                                        10) == 2.0


class TestZygmundVariation:
    def test_square_attains_half_on_single_cell(self):
        # per-cell second difference is (b-a)^2 / 2, so coarser is bigger
        assert zygmund_variation_estimate(SQUARE, 6) == pytest.approx(0.5)

    def test_level_sums_halve_for_square(self):
        # level j holds 2**j cells contributing (2**-j)**2 / 2 apiece
        sums = zygmund_level_sums(SQUARE, 5)
        assert sums.shape == (5,)
        assert np.allclose(sums, [2.0 ** -(j + 1) for j in range(1, 6)])

    def test_second_differences_uniform_for_square(self):
        d = dyadic_second_differences(SQUARE, 3)
        assert np.allclose(d, (1.0 / 8.0) ** 2 / 2.0)

    def test_average_variant_sandwich(self):
        avg = avg_zygmund_variation(SQUARE, 6)
        zv = zygmund_variation_estimate(SQUARE, 6)
        assert avg == pytest.approx(1.0 / 3.0)
        assert avg <= zv <= 2.0 * avg + 1e-12

    def test_matches_exhaustive_enumeration(self):
        rng = np.random.default_rng(11)
        grid = dyadic_grid(0.0, 1.0, 3)
        for _ in range(25):
            a, b, c = rng.uniform(-2.0, 2.0, size=3)
            f = _fn(lambda x, a=a, b=b, c=c: a * np.sin(2 * np.pi * np.asarray(x))
                    + b * np.asarray(x) ** 2 + c * np.asarray(x), "smooth")
            est = zygmund_variation_estimate(f, 3)
            assert est == pytest.approx(zv_oracle(f, grid), abs=1e-12)

    def test_piecewise_linear_equality(self):
        rng = np.random.default_rng(5)
        grid = dyadic_grid(0.0, 1.0, 3)
        for _ in range(25):
            knots = rng.uniform(-1.0, 1.0, size=9)
            f = _fn(lambda x, k=knots: np.interp(np.asarray(x), grid, k),
                    "pw-linear")
            est = zygmund_variation_estimate(f, 3)
            assert est == pytest.approx(zv_oracle(f, grid), abs=1e-12)


class TestQuadraticVariation:
    def test_monotone_square_of_rise(self):
        assert quadratic_variation(SQUARE, 5) == pytest.approx(1.0)

    def test_sine_runs(self):
        # runs rise 1, fall 2, rise 1: squared oscillations sum to 6
        assert quadratic_variation(SINE, 5) == pytest.approx(6.0)

    def test_matches_enumeration_on_samples(self):
        rng = np.random.default_rng(23)
        grid = dyadic_grid(0.0, 1.0, 3)
        for _ in range(20):
            a, b = rng.uniform(-1.5, 1.5, size=2)
            f = _fn(lambda x, a=a, b=b: a * np.sin(2 * np.pi * np.asarray(x))
                    + b * np.asarray(x), "smooth")
            vals = np.asarray(f.eval(grid), dtype=float)
            try:
                est = quadratic_variation(f, 3)
            except UnresolvedExtremaError:
                continue
            assert est == pytest.approx(qv_oracle(vals), abs=1e-12)

    def test_unresolved_dip_raises(self):
        # one grid sample dips below an otherwise rising profile, so a
        # single interior cell holds two uncertified extrema
        dip = _fn(lambda x: np.asarray(x) - 0.5 * np.maximum(
            0.0, 1.0 - 32.0 * np.abs(np.asarray(x) - 0.5)), "dip")
        with pytest.raises(UnresolvedExtremaError):
            quadratic_variation(dip, 3)

    def test_third_example_partial_sums(self):
        for d in (4, 8, 12):
            f = example_function("ex3", d)
            expected = sum(2.0 / n**2 for n in range(1, d + 1))
            assert quadratic_variation(f, d + 3) == pytest.approx(
                expected, abs=1e-12)


class TestTotalVariationOracle:
    def test_matches_enumeration(self):
        rng = np.random.default_rng(17)
        grid = dyadic_grid(0.0, 1.0, 3)
        for _ in range(20):
            knots = rng.uniform(-1.0, 1.0, size=9)
            f = _fn(lambda x, k=knots: np.interp(np.asarray(x), grid, k),
                    "pw-linear")
            vals = np.asarray(f.eval(grid), dtype=float)
            assert total_variation_estimate(f, 3) == pytest.approx(
                tv_oracle(vals), abs=1e-12)


class TestZygmundNorm:
    def test_first_example_grows_geometrically(self):
        prof = zygmund_norm_profile(example_function("ex1", 10), 7)
        ratios = prof[2:] / prof[1:-1]
        assert np.all(ratios >= math.sqrt(2.0) * 0.9)

    def test_second_example_saturates(self):
        vals = [zygmund_norm_estimate(example_function("ex2", d), 8)
                for d in range(4, 17)]
        assert max(vals) == 24.0
        assert vals[3:] == [24.0] * 10

    def test_estimate_is_profile_max(self):
        f = example_function("ex1", 8)
        assert zygmund_norm_estimate(f, 6) == pytest.approx(
            float(np.max(zygmund_norm_profile(f, 6))))


class TestClassifyRegularity:
    def test_first_example(self):
        rep = classify_regularity(example_function("ex1", 8), 8)
        assert rep.tv == pytest.approx(2.0)
        assert rep.diverging == {"tv": False, "zv": False, "zyg_norm": True}
        assert rep.holder is None
        assert set(rep.trends) == {"tv", "zv", "zyg_norm"}
        assert rep.describe("tv") == "2"

    def test_second_example(self):
        rep = classify_regularity(example_function("ex2", 10), 10)
        assert rep.diverging["tv"] is True
        assert rep.diverging["zyg_norm"] is False
        assert rep.holder is not None
        alpha, bound = rep.holder
        assert 0.0 < alpha < 1.0 and bound > 0.0

    def test_third_example(self):
        rep = classify_regularity(example_function("ex3", 8), 8)
        assert rep.qv == pytest.approx(sum(2.0 / n**2 for n in range(1, 9)))
        assert rep.diverging["zv"] is True

    def test_checks_hold_for_smooth_input(self):
        rep = classify_regularity(SQUARE, 6)
        assert all(rep.checks.values())

    def test_describe_rejects_unknown_metric(self):
        rep = classify_regularity(SQUARE, 4)
        with pytest.raises(AttributeError):
            rep.describe("depths")


class TestLogDerivativeInput:
    def test_rigid_rotation_is_flat(self, golden_rotation):
        f = log_derivative_function(golden_rotation)
        assert total_variation_estimate(f, 6) == pytest.approx(0.0, abs=1e-12)

    def test_matches_log_of_derivative(self):
        g = make_map({"kind": "arnold", "alpha": 0.3, "amplitude": 0.5})
        f = log_derivative_function(g)
        xs = np.linspace(0.0, 1.0, 33)
        assert np.allclose(np.asarray(f.eval(xs)),
                           np.log(np.asarray(g.derivative(xs))), atol=1e-12)
