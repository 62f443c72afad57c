import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from catmaj.decider import VerdictKind, decide, golden_section_min, sample_curve, window_bounds
from catmaj.errors import EndpointViolation, InvalidInput
from catmaj.majorization import catalyzed_majorizes, majorizes
from catmaj.renyi import INFINITE, f_r, g_curve
from catmaj.forge.search import brute_force_search
from catmaj.vectors import ProbVec, parse_vector, reduce_pair
from oracles import mp_g, random_rational_vector

P = parse_vector
CLASSIC_X, CLASSIC_Y = P("0.4,0.4,0.1,0.1"), P("0.5,0.25,0.25,0")


def _random_pair(rng, d, denom=1000, zeros=False):
    return (ProbVec(random_rational_vector(rng, d, denom, zeros)),
            ProbVec(random_rational_vector(rng, d, denom, zeros)))


class TestWindow:
    def test_classic(self):
        w = window_bounds(CLASSIC_X, CLASSIC_Y)
        assert w.r_hi == pytest.approx(math.log(4) / math.log(0.5 / 0.4), rel=1e-14)
        assert w.r_hi == pytest.approx(6.2126, abs=1e-4)
        assert w.zero_side and w.r_lo == 0

    def test_doubling_gives_one(self):
        assert window_bounds(P("1/2,1/2"), P("1,0")).r_hi == 1.0

    def test_endpoint_violation(self):
        with pytest.raises(EndpointViolation) as exc:
            window_bounds(P("0.5,0.25,0.25"), P("0.48,0.48,0.04"))
        assert exc.value.witness_r == math.inf
        with pytest.raises(EndpointViolation) as exc:
            window_bounds(P("0.45,0.35,0.2"), P("0.5,0.3,0.2"))
        assert exc.value.witness_r == -math.inf

    def test_positive_window(self):
        w = window_bounds(P("0.4,0.35,0.25"), P("0.7,0.2,0.1"))
        assert w.r_lo == pytest.approx(-math.log(3) / math.log(2.5))
        assert not w.zero_side and w.lo_reason and w.hi_reason

    def test_cut_is_sufficient_for_classic(self):
        # nothing beyond r_hi can fail: dense scan out to r = 200
        w = window_bounds(CLASSIC_X, CLASSIC_Y)
        for r in np.linspace(w.r_hi, 200, 400):
            assert mp_g(CLASSIC_X, CLASSIC_Y, r) > 0


class TestDecide:
    def test_classic(self):
        v = decide(CLASSIC_X, CLASSIC_Y)
        assert v.kind is VerdictKind.TRUMPED and v.trumped
        assert v.min_margin > 1e-9 and v.witness_r is None
        assert catalyzed_majorizes(CLASSIC_X, CLASSIC_Y, P("0.6,0.4")).holds

    def test_negative_control(self):
        x, y = P("0.5,0.25,0.25"), P("0.48,0.48,0.04")
        v = decide(x, y)
        assert v.kind is VerdictKind.NOT_TRUMPED and v.witness_r == math.inf
        assert f_r(x, 20) > f_r(y, 20)

    def test_equal(self):
        v = decide(P("0.7,0.3"), P("0.7,0.3"))
        assert v.kind is VerdictKind.EQUAL

    def test_equal_up_to_zero_padding(self):
        assert decide(P("0.7,0.3"), P("0.7,0.3,0")).kind is VerdictKind.EQUAL

    def test_requires_normalized(self):
        with pytest.raises(InvalidInput):
            decide(P("0.5,0.4"), P("0.5,0.5"))
        with pytest.raises(InvalidInput):
            decide(P("0.5,0.5"), P("0.5,0.5"), tol=0)

    def test_x_zero_not_trumped(self):
        v = decide(P("0.5,0.5,0"), P("0.6,0.3,0.1"))
        assert v.kind is VerdictKind.NOT_TRUMPED and v.witness_r == -math.inf

    def test_boundary_for_tiny_margin(self):
        # a tolerance above the whole margin forces Boundary
        v = decide(P("0.4,0.35,0.25"), P("0.7,0.2,0.1"), tol=1.0)
        assert v.kind is VerdictKind.BOUNDARY and abs(v.min_margin) <= 1.0

    def test_invariants_of_verdicts(self):
        rng = random.Random(21)
        for _ in range(150):
            x, y = _random_pair(rng, rng.randint(2, 5), 100, zeros=True)
            v = decide(x, y)
            if v.kind is VerdictKind.TRUMPED:
                assert v.min_margin > 1e-9
            elif v.kind is VerdictKind.NOT_TRUMPED:
                assert v.witness_r is not None and v.min_margin < -1e-9
            elif v.kind is VerdictKind.BOUNDARY:
                assert abs(v.min_margin) <= 1e-9

    def test_plain_majorization_means_trumped(self):
        rng = random.Random(22)
        hits = 0
        while hits < 80:
            x, y = _random_pair(rng, rng.randint(2, 5))
            if x == y or not majorizes(x, y).holds or set(x.components) & set(y.components):
                continue
            hits += 1
            assert decide(x, y).kind is VerdictKind.TRUMPED

    def test_monotone_consistency(self):
        rng = random.Random(23)
        hits = 0
        while hits < 80:
            x, y = _random_pair(rng, rng.randint(2, 5), 60, zeros=True)
            if x == y or x.has_zero and y.has_zero or not majorizes(x, y).holds:
                continue
            hits += 1
            assert decide(x, y).kind is not VerdictKind.NOT_TRUMPED

    def test_deterministic(self):
        for x, y in [(CLASSIC_X, CLASSIC_Y), (P("0.4,0.35,0.25"), P("0.7,0.2,0.1"))]:
            assert decide(x, y) == decide(x, y)

    def test_shared_components_reduced_first(self):
        x, y = P("0.3,0.25,0.25,0.2"), P("0.45,0.25,0.2,0.1")
        v = decide(x, y)
        assert v.reduced == reduce_pair(x, y)
        assert v.reduced.dim == 2


class TestOracleAgreement:
    def test_soundness_and_completeness_d3(self):
        rng = random.Random(31)
        found = not_trumped = 0
        for _ in range(500):
            x, y = _random_pair(rng, 3, 64, zeros=True)
            v = decide(x, y)
            z = brute_force_search(x, y, max_dim=3, grid=64)
            if v.kind is VerdictKind.NOT_TRUMPED:
                not_trumped += 1
                assert z is None
            hyp = x != y and not (x.has_zero and y.has_zero)
            if z is not None and hyp:
                found += 1
                assert v.kind is not VerdictKind.NOT_TRUMPED
        assert found > 50 and not_trumped > 50

    # d = 4 pairs (denominator 20) that need a 2-dimensional catalyst
    NONTRIVIAL_D4 = [
        ("3/5,3/10,1/20,1/20", "7/10,3/20,3/20,0"),
        ("11/20,7/20,1/20,1/20", "7/10,3/20,3/20,0"),
        ("1/2,2/5,1/20,1/20", "13/20,1/5,3/20,0"),
        ("1/2,7/20,1/10,1/20", "3/5,1/5,1/5,0"),
        ("9/20,9/20,1/20,1/20", "13/20,1/5,3/20,0"),
        ("9/20,7/20,1/10,1/10", "11/20,1/5,1/5,1/20"),
        ("2/5,2/5,3/20,1/20", "1/2,1/4,1/4,0"),
        ("2/5,2/5,1/10,1/10", "11/20,1/5,1/5,1/20"),
    ]

    @pytest.mark.parametrize("xs,ys", NONTRIVIAL_D4)
    def test_completeness_d4_nontrivial(self, xs, ys):
        x, y = P(xs), P(ys)
        assert not majorizes(x, y).holds
        z = brute_force_search(x, y, max_dim=2, grid=20)
        assert z is not None and z.dim == 2
        assert decide(x, y).kind is VerdictKind.TRUMPED

    def test_window_correctness(self):
        rng = random.Random(33)
        seen = 0
        while seen < 100:
            x, y = _random_pair(rng, rng.randint(3, 5), 200)
            v = decide(x, y)
            if not v.trumped:
                continue
            seen += 1
            xr, yr = v.reduced.renormalized()
            w = window_bounds(xr, yr)
            for r in np.linspace(w.r_hi, w.r_hi + 60, 50)[1:]:
                assert g_curve(xr, yr, float(r)).g > 0
            if not w.zero_side:
                for r in np.linspace(w.r_lo - 60, w.r_lo, 50)[:-1]:
                    assert g_curve(xr, yr, float(r)).g > 0


class TestSampleCurve:
    def test_equal_pair_zero(self):
        assert all(s.g == 0 for s in sample_curve(P("0.6,0.4"), P("0.6,0.4"), -3, 3, 25))

    def test_two_samples(self):
        s = sample_curve(CLASSIC_X, CLASSIC_Y, 2, 5, 2)
        assert [p.r for p in s] == [2, 5]

    def test_classic(self):
        samples = sample_curve(CLASSIC_X, CLASSIC_Y, -1, 8, 181)
        assert len(samples) == 181
        assert [s.r for s in samples] == sorted(s.r for s in samples)
        for s in samples:
            if s.r > 0:
                assert s.flag != INFINITE and s.g > 0
            else:
                assert s.flag == INFINITE and s.g == math.inf
        assert any(s.r == 0 for s in samples) and any(s.r == 1 for s in samples)

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            sample_curve(CLASSIC_X, CLASSIC_Y, 2, 1, 10)
        with pytest.raises(InvalidInput):
            sample_curve(CLASSIC_X, CLASSIC_Y, 0, 1, 1)


def test_golden_section():
    r, v = golden_section_min(lambda t: (t - 0.3) ** 2 + 1, -2, 2)
    assert abs(r - 0.3) < 1e-6 and v == pytest.approx(1.0)
