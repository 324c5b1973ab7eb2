import math

import pytest

from rabipi.estimate import EstimateResult, PipelineError, estimate_pi
from rabipi.model import IDEAL, NoiseModel
from rabipi.montecarlo import (McConfig, aggregate, models_from_datasets,
                               run_mc)
from rabipi.simulate import DEFAULT_GRID, exact_dataset, inject_step, \
    sample_dataset

THREE_MODELS = [
    NoiseModel(0.90, 0.05, 0.0, 1.0),
    NoiseModel(0.85, 0.08, 0.1, 0.98),
    NoiseModel(0.95, 0.02, -0.1, 1.02),
]


def _result(pi_hat):
    return EstimateResult(alpha_hat=1, beta_hat=0, t1_hat=1.5, t2_hat=4.6,
                          integral_I=(4.6 - 1.5) / pi_hat, pi_hat=pi_hat,
                          c_hat=pi_hat / (4.6 - 1.5), t_minval=0.0,
                          t_maxval=3.1)


class TestRunMc:
    def test_150_run_protocol(self):
        s = run_mc(THREE_MODELS, McConfig(runs_per_model=50, shots=512))
        assert s.n_runs == 150
        assert s.failures + 150 - s.failures == s.n_runs
        assert s.std_pi >= 0 and s.std_dt >= 0 and s.std_I >= 0

    def test_deterministic(self):
        cfg = McConfig(runs_per_model=10, shots=1024, base_seed=3)
        assert run_mc(THREE_MODELS, cfg) == run_mc(THREE_MODELS, cfg)

    def test_order_independence(self):
        cfg = McConfig(runs_per_model=10, shots=1024, base_seed=3)
        a = run_mc(THREE_MODELS, cfg)
        b = run_mc(list(reversed(THREE_MODELS)), cfg)
        assert a.std_pi == b.std_pi
        assert a.std_dt == b.std_dt
        assert a.std_I == b.std_I

    def test_single_run_rejected(self):
        with pytest.raises(ValueError):
            McConfig(runs_per_model=1)

    def test_empty_model_list_rejected(self):
        with pytest.raises(ValueError):
            run_mc([], McConfig(runs_per_model=5, shots=64))

    def test_shot_scaling(self):
        # quadrupling shots should roughly halve std_I (binomial sqrt-n law)
        lo = run_mc([IDEAL], McConfig(runs_per_model=150, shots=8192))
        hi = run_mc([IDEAL], McConfig(runs_per_model=150, shots=4 * 8192))
        assert 1.7 <= lo.std_I / hi.std_I <= 2.3

    def test_mean_consistent_with_noiseless_value(self):
        noiseless = estimate_pi(exact_dataset(IDEAL, DEFAULT_GRID)).pi_hat
        s = run_mc([IDEAL], McConfig(runs_per_model=150, shots=8192))
        bound = 4 * s.std_pi / math.sqrt(150) + 0.005
        assert abs(s.mean_pi - noiseless) <= bound


class TestModelsFromDatasets:
    def test_closed_loop_recovery(self):
        # tolerances checked over 20 seeds before freezing this fixture
        truth = NoiseModel(0.9, 0.05, 0.0, 1.0)
        ds = sample_dataset(truth, DEFAULT_GRID, 8192, seed=13)
        m = models_from_datasets([ds])[0]
        assert m.alpha == pytest.approx(truth.alpha, abs=0.02)
        assert m.beta == pytest.approx(truth.beta, abs=0.02)
        assert m.c == pytest.approx(truth.c, abs=0.01)

    def test_exact_ideal_recovery(self):
        m = models_from_datasets([exact_dataset(IDEAL, DEFAULT_GRID)])[0]
        assert m.alpha == pytest.approx(1.0, abs=2e-3)   # grid extremum bias
        assert m.beta == pytest.approx(0.0, abs=2e-3)
        assert m.c == pytest.approx(1.0, abs=2e-3)
        assert m.phi0 == pytest.approx(0.0, abs=3e-3)

    def test_screened_dataset_rejected(self):
        ds = inject_step(sample_dataset(IDEAL, DEFAULT_GRID, 8192, seed=0),
                         4.0, 0.15)
        with pytest.raises(PipelineError, match="screening"):
            models_from_datasets([ds])


class TestAggregate:
    def test_three_qubit_mean(self):
        results = [(f"q{i}", _result(p)) for i, p in enumerate([3.14, 3.15, 3.16])]
        rep = aggregate(results, sigma=0.0085)
        assert rep.mean_pi == pytest.approx(3.15)
        assert rep.error_bar == pytest.approx(0.017)
        assert "single-run" in rep.sigma_source

    def test_single_result(self):
        rep = aggregate([("q0", _result(3.141))], sigma=0.01)
        assert rep.mean_pi == pytest.approx(3.141)
        assert rep.error_bar == pytest.approx(0.02)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate([], sigma=0.01)

    def test_nonpositive_sigma_rejected(self):
        with pytest.raises(ValueError):
            aggregate([("q0", _result(3.14))], sigma=0.0)
