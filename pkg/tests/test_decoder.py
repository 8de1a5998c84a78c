"""Decoder correctness: syndromes, provable BF cases, SPA behavior, purity."""

import numpy as np
import pytest

from oracles import gf2_matmul
from qcmc.decoder import Algorithm, DecoderConfig, decode, decode_bf, decode_spa, syndrome
from qcmc.design import SystemParams, sample_h_random, systematic_generator
from qcmc.errors import ParameterError
from qcmc.gf2 import qc_vec_mul
from qcmc.prng import SeedStream


def weight_t_error(n, t, seed):
    e = np.zeros(n, dtype=np.uint8)
    if t:
        e[np.random.RandomState(seed).choice(n, t, replace=False)] = 1
    return e


class TestSyndrome:
    def test_zero_word(self, toy_h, toy_params):
        assert not syndrome(toy_h, np.zeros(toy_params.n, dtype=np.uint8)).any()

    def test_codewords_have_zero_syndrome(self, toy_h, toy_params):
        g = systematic_generator(toy_h)
        rng = SeedStream(3, "cw")
        for _ in range(10):
            u = np.frombuffer(rng.take_bytes(toy_params.k), dtype=np.uint8) & 1
            assert not syndrome(toy_h, qc_vec_mul(u, g)).any()

    def test_dense_oracle(self):
        params = SystemParams.make(2, 8, 3, 1)
        h = sample_h_random(params, SeedStream(4, "h"))
        dense = h.to_qc_matrix().expand()
        for seed in range(50):
            v = np.random.RandomState(seed).randint(0, 2, params.n).astype(np.uint8)
            assert np.array_equal(syndrome(h, v), gf2_matmul(dense, v[:, None])[:, 0])

    def test_length_check(self, toy_h):
        with pytest.raises(ParameterError):
            syndrome(toy_h, np.zeros(5, dtype=np.uint8))


class TestConfigValidation:
    def test_bf_fixed_needs_b(self):
        with pytest.raises(ParameterError):
            DecoderConfig(Algorithm.BF_FIXED)

    def test_b_range_checked_at_decode(self, rdf_h, rdf_params):
        cfg = DecoderConfig(Algorithm.BF_FIXED, b=2)  # below ceil(5/2)
        with pytest.raises(ParameterError):
            decode_bf(rdf_h, np.zeros(rdf_params.n, dtype=np.uint8), cfg)

    def test_spa_p0_range(self):
        with pytest.raises(ParameterError):
            DecoderConfig(Algorithm.SPA, p0=0.5)
        with pytest.raises(ParameterError):
            DecoderConfig(Algorithm.SPA, p0=0.0)

    def test_spa_needs_p0(self, rdf_h, rdf_params):
        with pytest.raises(ParameterError):
            decode_spa(rdf_h, np.zeros(rdf_params.n, dtype=np.uint8),
                       DecoderConfig(Algorithm.SPA))


class TestBitFlipping:
    def test_zero_errors_zero_iterations(self, rdf_h, rdf_params):
        out = decode_bf(rdf_h, np.zeros(rdf_params.n, dtype=np.uint8),
                        DecoderConfig(Algorithm.BF_VARIABLE))
        assert out.success and out.iterations_used == 0
        assert not out.error_estimate.any()

    def test_single_error_unanimous_threshold(self, rdf_h, rdf_params):
        # girth >= 6 and b = d_v: exactly the errored bit flips, iteration 1
        cfg = DecoderConfig(Algorithm.BF_FIXED, b=rdf_params.d_v)
        for j in (0, 1, rdf_params.p - 1, rdf_params.p, rdf_params.n - 1):
            e = np.zeros(rdf_params.n, dtype=np.uint8)
            e[j] = 1
            out = decode_bf(rdf_h, e, cfg)
            assert out.success and out.iterations_used == 1
            assert np.array_equal(out.error_estimate, e)

    def test_single_error_all_positions_small_code(self):
        from qcmc.design import sample_h_rdf
        params = SystemParams.make(4, 29, 3, 1)
        h = sample_h_rdf(params, SeedStream(6, "h"))
        cfg = DecoderConfig(Algorithm.BF_FIXED, b=3)
        for j in range(params.n):
            e = np.zeros(params.n, dtype=np.uint8)
            e[j] = 1
            out = decode_bf(h, e, cfg)
            assert out.success and np.array_equal(out.error_estimate, e)

    def test_success_implies_zero_syndrome(self, rdf_h, rdf_params):
        cfg = DecoderConfig(Algorithm.BF_VARIABLE)
        for seed in range(30):
            e = weight_t_error(rdf_params.n, 12, seed)
            out = decode_bf(rdf_h, e, cfg)
            if out.success:
                assert not syndrome(rdf_h, e ^ out.error_estimate).any()

    def test_inputs_not_modified_and_deterministic(self, rdf_h, rdf_params):
        e = weight_t_error(rdf_params.n, 10, 7)
        snapshot = e.copy()
        cfg = DecoderConfig(Algorithm.BF_VARIABLE)
        out1 = decode_bf(rdf_h, e, cfg)
        assert np.array_equal(e, snapshot)
        out2 = decode_bf(rdf_h, e, cfg)
        assert out1.success == out2.success
        assert np.array_equal(out1.error_estimate, out2.error_estimate)
        assert out1.iterations_used == out2.iterations_used

    def test_iteration_budget_respected(self, toy_h, toy_params):
        cfg = DecoderConfig(Algorithm.BF_FIXED, b=5, max_iterations=3)
        for seed in range(20):
            out = decode_bf(toy_h, weight_t_error(toy_params.n, 40, seed), cfg)
            assert out.iterations_used <= 3

    def test_failure_is_outcome_not_exception(self, toy_h, toy_params):
        # saturate with errors: must report failure, not raise
        heavy = weight_t_error(toy_params.n, toy_params.n // 2, 1)
        out = decode_bf(toy_h, heavy, DecoderConfig(Algorithm.BF_VARIABLE,
                                                    max_iterations=5))
        assert not out.success


class TestSumProduct:
    def test_zero_errors_immediate(self, rdf_h, rdf_params):
        out = decode_spa(rdf_h, np.zeros(rdf_params.n, dtype=np.uint8),
                         DecoderConfig(Algorithm.SPA, p0=0.01))
        assert out.success and out.iterations_used == 0

    def test_corrects_moderate_errors(self, rdf_h, rdf_params):
        for t_err in (5, 10, 15):
            cfg = DecoderConfig(Algorithm.SPA, p0=t_err / rdf_params.n)
            for seed in range(5):
                e = weight_t_error(rdf_params.n, t_err, 100 * t_err + seed)
                out = decode_spa(rdf_h, e, cfg)
                assert out.success
                assert np.array_equal(out.error_estimate, e)

    def test_deterministic(self, rdf_h, rdf_params):
        e = weight_t_error(rdf_params.n, 14, 9)
        cfg = DecoderConfig(Algorithm.SPA, p0=14 / rdf_params.n)
        out1, out2 = decode_spa(rdf_h, e, cfg), decode_spa(rdf_h, e, cfg)
        assert np.array_equal(out1.error_estimate, out2.error_estimate)
        assert out1.iterations_used == out2.iterations_used

    def test_success_zero_syndrome(self, rdf_h, rdf_params):
        cfg = DecoderConfig(Algorithm.SPA, p0=0.05)
        for seed in range(20):
            e = weight_t_error(rdf_params.n, 16, seed)
            out = decode_spa(rdf_h, e, cfg)
            if out.success:
                assert not syndrome(rdf_h, e ^ out.error_estimate).any()


class TestDispatch:
    def test_decode_routes(self, rdf_h, rdf_params):
        e = weight_t_error(rdf_params.n, 3, 2)
        spa = decode(rdf_h, e, DecoderConfig(Algorithm.SPA, p0=0.01))
        bfv = decode(rdf_h, e, DecoderConfig(Algorithm.BF_VARIABLE))
        assert spa.success and bfv.success
