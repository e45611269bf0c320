"""Built-in maps and example functions."""
import math

import numpy as np
import pytest

from denjoylab import (Arc, CATALOG_ENTRIES, NonMonotoneMapError,
                       example_function, make_denjoy, make_map,
                       takagi_total_variation, validate_lift)
from denjoylab.util import frac

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class TestMakeMap:
    def test_rigid(self):
        f = make_map({"kind": "rigid", "alpha": 0.3})
        assert float(f.lift(0.9)) == pytest.approx(1.2)
        assert float(f.derivative(0.123)) == 1.0

    def test_arnold_reduces_to_rigid_at_zero_amplitude(self):
        f = make_map({"kind": "arnold", "alpha": 0.3, "amplitude": 0.0})
        xs = np.linspace(0.0, 1.0, 17)
        assert np.allclose(f.lift(xs), xs + 0.3)

    def test_arnold_amplitude_bound(self):
        with pytest.raises(NonMonotoneMapError):
            make_map({"kind": "arnold", "alpha": 0.3, "amplitude": 1.0})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            make_map({"kind": "parabolic", "alpha": 0.3})


class TestDenjoy:
    def test_structure(self, denjoy50):
        d = denjoy50
        assert d.truncation == 50
        assert d.alpha == pytest.approx(math.sqrt(2.0) - 1.0)
        assert len(d.inserted_lengths) == 101
        total = sum(d.inserted_lengths)
        assert total <= 0.5 + 1e-12
        # lengths fall off quadratically in the orbit index
        assert d.insertion_length(0) > d.insertion_length(5)
        assert d.insertion_length(3) == d.insertion_length(-3)

    def test_wandering_arc_is_orbit_zero_insertion(self, denjoy50):
        ins = denjoy50.insertion_arc(0)
        assert denjoy50.wandering_arc.start == pytest.approx(ins.start)
        assert denjoy50.wandering_arc.length == pytest.approx(ins.length)

    def test_insertion_arcs_disjoint(self, denjoy50):
        arcs = [denjoy50.insertion_arc(m) for m in range(-8, 9)]
        for i, a in enumerate(arcs):
            for b in arcs[i + 1:]:
                assert not a.intersects(b)

    def test_base_is_smooth_circle_map(self, denjoy50):
        rep = validate_lift(denjoy50.base, grid_size=1000)
        assert rep.periodicity_defect <= 1e-9
        assert rep.monotonicity_defect == 0.0
        assert rep.derivative_min > 0.0

    def test_anchor_sits_outside_all_insertions(self, denjoy50):
        anchor = denjoy50.cantor_anchor
        for m in range(-denjoy50.truncation, denjoy50.truncation + 1):
            assert not denjoy50.insertion_arc(m).contains(anchor)

    def test_rational_alpha_rejected(self):
        with pytest.raises(ValueError):
            make_denjoy(0.5, N=10, mass=0.5)

    def test_mass_must_leave_room(self):
        with pytest.raises(ValueError):
            make_denjoy(GOLDEN, N=10, mass=1.0)


class TestExampleFunctions:
    def test_names_and_domains(self):
        for name in ("ex1", "ex2", "ex3"):
            f = example_function(name, 6)
            lo, hi = f.domain
            assert lo < hi
            assert np.isfinite(float(f.eval(0.5 * (lo + hi))))
        with pytest.raises(ValueError):
            example_function("ex4")

    def test_oracle_info_matches_design(self):
        ex1 = example_function("ex1", 8).oracle
        assert ex1.total_variation == pytest.approx(2.0)
        assert not ex1.zygmund_norm_bounded
        ex2 = example_function("ex2", 8).oracle
        assert ex2.zygmund_norm_bounded
        assert ex2.total_variation == pytest.approx(takagi_total_variation(8))
        ex3 = example_function("ex3", 8).oracle
        assert ex3.quadratic_variation == pytest.approx(
            sum(2.0 / n**2 for n in range(1, 9)))

    def test_tent_sum_evaluates_at_dyadic_points(self):
        f = example_function("ex2", 4)
        # every summand vanishes at 0 and 1
        assert float(f.eval(0.0)) == pytest.approx(0.0)
        assert float(f.eval(1.0)) == pytest.approx(0.0, abs=1e-12)


def test_takagi_total_variation_closed_form():
    for depth in range(1, 12):
        m = depth + 1
        expected = m * 2.0 ** (2 - m) * math.comb(m - 1, (m - 1) // 2)
        assert takagi_total_variation(depth) == pytest.approx(
            expected, rel=1e-12)
    vals = [takagi_total_variation(d) for d in range(1, 12)]
    assert vals == sorted(vals)
    # grows without bound, far slower than depth + 1
    assert vals[-1] < 12.0


def test_catalog_entries_cover_built_ins():
    names = {name for name, _ in CATALOG_ENTRIES}
    assert names == {"rigid", "arnold", "denjoy", "ex1", "ex2", "ex3"}
    assert all(blurb for _, blurb in CATALOG_ENTRIES)


def test_denjoy_base_maps_insertions_forward(denjoy50):
    d = denjoy50
    for k in (0, 1, 5):
        src = d.insertion_arc(k)
        img_start = frac(d.base.lift(src.start))
        tgt = d.insertion_arc(k + 1)
        assert abs(float(img_start) - tgt.start) < 1e-8 or \
            Arc(tgt.start - 1e-8, tgt.start + 1e-8).contains(float(img_start))
