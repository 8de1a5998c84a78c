"""Complexity metric, security targets, and the density-optimization search."""

import math
from fractions import Fraction

import pytest

from qcmc.attacks import dca_wf_at, isda_wf_at
from qcmc.errors import ParameterError
from qcmc.optimize import (OptimizerConfig, complexity_c, m_star, optimize_design,
                           security_targets)


class TestComplexity:
    def test_reference_anchors_two_decimals(self):
        # the published anchors evaluate C at the printed decimal m values
        assert round(math.log2(complexity_c(16384, 59, 1, 10)), 2) == 23.21
        assert round(math.log2(complexity_c(16384, 59, Fraction(393, 100), 10)), 2) == 21.27
        assert round(math.log2(complexity_c(28672, 77, 1, 10)), 2) == 24.40
        assert round(math.log2(complexity_c(28672, 77, Fraction(513, 100), 10)), 2) == 22.09

    def test_m_below_one_rejected(self):
        with pytest.raises(ParameterError):
            complexity_c(1000, 50, 0.5, 10)

    def test_alpha_scales_decoding_term(self):
        base = complexity_c(1000, 50, 2, 10, alpha=1)
        doubled = complexity_c(1000, 50, 2, 10, alpha=2)
        assert doubled - base == 1000 * (50 / 2) * 10

    def test_convex_with_unique_minimum_at_m_star(self):
        n, dvp, I = 16384, 59, 10.0
        ms = [1 + 0.05 * i for i in range(800)]
        vals = [complexity_c(n, dvp, m, I) for m in ms]
        second = [vals[i - 1] - 2 * vals[i] + vals[i + 1] for i in range(1, len(vals) - 1)]
        assert all(d > -1e-6 for d in second)
        argmin = ms[vals.index(min(vals))]
        assert abs(argmin - m_star(dvp, I)) <= 0.05 + 1e-9


class TestMStar:
    def test_values(self):
        assert abs(m_star(59, 10) - 24.29) < 0.005
        assert m_star(1, 1) == 1.0

    def test_stationarity(self):
        n, dvp, I = 8192, 40, 10.0
        ms = m_star(dvp, I)
        at = complexity_c(n, dvp, ms, I)
        assert at <= complexity_c(n, dvp, ms - 1e-4, I)
        assert at <= complexity_c(n, dvp, ms + 1e-4, I)

    def test_positive_arguments(self):
        with pytest.raises(ParameterError):
            m_star(0, 10)


class TestSecurityTargets:
    def test_minimality_postcondition(self):
        dvp, t = security_targets(100, 4, 4096)
        assert dca_wf_at(4, 4096, dvp).log2_wf >= 100
        assert dca_wf_at(4, 4096, dvp - 1).log2_wf < 100
        assert isda_wf_at(4, 4096, t).log2_wf >= 100
        assert isda_wf_at(4, 4096, t - 1).log2_wf < 100

    def test_close_to_published_designs(self):
        # the cost model is a declared simplification with a +-4 bit anchor
        # tolerance; at ~1.6 bits per unit that is ~3 units in each parameter
        dvp, t = security_targets(100, 4, 4096)
        assert abs(dvp - 59) <= 3
        assert abs(t - 47) <= 3
        dvp2, t2 = security_targets(128, 4, 4096)
        assert abs(dvp2 - 77) <= 3
        assert abs(t2 - 62) <= 3

    def test_trivial_target(self):
        # boundary sanity: the smallest weights where the split model applies
        dvp, t = security_targets(1, 4, 1024)
        assert dvp == 1
        assert t == 2  # w = 1 admits no p_s >= 1 split, so 2 is minimal

    def test_unreachable(self):
        with pytest.raises(ParameterError):
            security_targets(100000, 4, 4096)


class TestOptimizerConfig:
    def test_resolution_must_fit_block_weights(self):
        with pytest.raises(ParameterError):
            OptimizerConfig(100, n0=4, m_resolution=Fraction(1, 8))
        OptimizerConfig(100, n0=4, m_resolution=Fraction(1, 2))

    def test_basic_validation(self):
        with pytest.raises(ParameterError):
            OptimizerConfig(0)
        with pytest.raises(ParameterError):
            OptimizerConfig(100, I=0.5)

    def test_even_candidates_rejected(self):
        # even column weights give even-weight circulants, which are never
        # ring-invertible, so no key could ever be generated
        with pytest.raises(ParameterError):
            OptimizerConfig(100, d_v_candidates=(14, 15))


@pytest.fixture(scope="module")
def report100():
    return optimize_design(OptimizerConfig(100))


class TestOptimizeDesign:
    def test_sparse_and_dense_rows_present(self, report100):
        by_dv = {d.params.d_v: d for d in report100.designs}
        assert 15 in by_dv, report100.rejections
        dense = [d for d in report100.designs if d.params.m == 1]
        assert dense, "no m=1 design emitted"
        sparse = by_dv[15]
        assert sparse.params.m > 1
        assert all(sparse.C_log2 < d.C_log2 for d in dense)

    def test_sorted_by_cost(self, report100):
        costs = [d.C_log2 for d in report100.designs]
        assert costs == sorted(costs)

    def test_every_row_reverifies(self, report100):
        from qcmc.attacks import h_enumeration_wf
        from qcmc.threshold import ThresholdQuery, bf_threshold
        for d in report100.designs:
            pr = d.params
            assert d.bf_margin >= 0
            assert d.dca_bits >= 100 and d.isda_bits >= 100 and d.h_enum_bits >= 100
            assert dca_wf_at(pr.n0, pr.p, pr.d_v_prime).log2_wf == pytest.approx(d.dca_bits)
            assert isda_wf_at(pr.n0, pr.p, d.t).log2_wf == pytest.approx(d.isda_bits)
            assert h_enumeration_wf(pr.p, pr.d_v) == pytest.approx(d.h_enum_bits)
            thr = bf_threshold(ThresholdQuery(pr.n, pr.n0, pr.d_v))
            assert thr - pr.t_prime == d.bf_margin
            assert 1 <= pr.m <= m_star(d.d_v_prime, 10.0) + 1e-9

    def test_sparser_cheaper_conclusion(self, report100):
        dense_cost = min(d.C_log2 for d in report100.designs if d.params.m == 1)
        for d in report100.designs:
            if d.params.m > 1:
                assert d.C_log2 < dense_cost

    def test_forced_single_mdpc_row(self):
        dvp, _ = security_targets(100, 4, 4096)
        dvp += 1 - dvp % 2  # candidates must be odd (invertibility)
        cfg = OptimizerConfig(100, d_v_candidates=(dvp,))
        report = optimize_design(cfg)
        assert len(report.designs) == 1
        row = report.designs[0]
        assert row.params.m == 1
        expected = complexity_c(row.params.n, row.d_v_prime, 1, 10)
        assert row.C_log2 == pytest.approx(math.log2(expected))

    def test_rejections_reported(self):
        # d_v too small: enumeration bound cannot reach the target
        cfg = OptimizerConfig(100, d_v_candidates=(3,))
        report = optimize_design(cfg)
        assert not report.designs
        assert report.rejections and report.rejections[0][0] == 3
