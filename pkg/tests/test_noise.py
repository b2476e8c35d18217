import math

import numpy as np
import pytest

from echochain.noise import (
    FitResult,
    NoiseModel,
    child_seed,
    default_v_grid,
    loglog_fit,
    make_rng,
    protocol_runner,
    run_trials,
    sample_eta,
    slope_vs_n,
)

# Frozen on the first verified run of the echo pipeline
# (n=10, t=pi/2, N=4, v=0.03, 100 trials, master seed 77).
GOLDEN_ECHO_MEAN_INFIDELITY = 0.02660586876691544


class TestSampleEta:
    def test_zero_strength_is_exactly_zero(self):
        rng = make_rng(0)
        assert all(sample_eta(rng, 0.0) == 0.0 for _ in range(100))

    def test_moments(self):
        rng = make_rng(123)
        draws = np.array([sample_eta(rng, 0.1) for _ in range(10**6)])
        assert abs(draws.mean()) < 4e-4       # ~3 sigma of the sample mean
        assert abs(draws.std() - 0.1) < 1e-3  # within 1%

    def test_rejects_negative_strength(self):
        with pytest.raises(ValueError):
            sample_eta(make_rng(0), -0.1)
        with pytest.raises(ValueError):
            NoiseModel(v=-0.5)


class TestSeeding:
    def test_child_seed_extends_tuples(self):
        assert child_seed(5, 3) == (5, 3)
        assert child_seed((5, 3), 1) == (5, 3, 1)

    def test_make_rng_streams_are_independent(self):
        a = make_rng((1, 0)).standard_normal(4)
        b = make_rng((1, 1)).standard_normal(4)
        assert not np.allclose(a, b)

    def test_make_rng_is_reproducible(self):
        assert np.array_equal(make_rng((9, 2)).standard_normal(8), make_rng((9, 2)).standard_normal(8))


class TestRunTrials:
    def test_noise_free_echo_has_no_spread(self):
        runner = protocol_runner("echo", n=5, t=1.0, n_steps=2)
        stats = run_trials(runner, 0.0, 5, 1, protocol="echo", n=5)
        assert stats.mean_infidelity < 1e-9
        assert stats.std_infidelity == pytest.approx(0.0, abs=1e-12)

    def test_golden_echo_value(self):
        runner = protocol_runner("echo", n=10, t=math.pi / 2, n_steps=4)
        stats = run_trials(runner, 0.03, 100, 77, protocol="echo", n=10)
        assert 0.0 < stats.mean_infidelity < 1.0
        assert stats.mean_infidelity == pytest.approx(GOLDEN_ECHO_MEAN_INFIDELITY, rel=1e-9)

    def test_repeat_runs_are_bit_identical(self):
        runner = protocol_runner("echo", n=6, t=1.0, n_steps=2)
        a = run_trials(runner, 0.05, 12, 3, protocol="echo", n=6)
        b = run_trials(runner, 0.05, 12, 3, protocol="echo", n=6)
        assert np.array_equal(a.infidelities, b.infidelities)
        assert a.mean_infidelity == b.mean_infidelity

    def test_thread_count_does_not_change_results(self, monkeypatch):
        runner = protocol_runner("echo", n=6, t=1.0, n_steps=2)
        baseline = run_trials(runner, 0.05, 8, 3, protocol="echo", n=6)
        monkeypatch.setenv("ECHOCHAIN_THREADS", "4")
        threaded = run_trials(runner, 0.05, 8, 3, protocol="echo", n=6)
        assert np.array_equal(baseline.infidelities, threaded.infidelities)

    def test_vanishing_noise_approaches_noise_free(self):
        runner = protocol_runner("echo", n=6, t=1.0, n_steps=2)
        silent = run_trials(runner, 0.0, 10, 5, protocol="echo", n=6)
        faint = run_trials(runner, 1e-6, 10, 5, protocol="echo", n=6)
        assert abs(faint.mean_infidelity - silent.mean_infidelity) < 1e-6

    def test_rejects_zero_trials(self):
        runner = protocol_runner("echo", n=5, t=1.0, n_steps=2)
        with pytest.raises(ValueError):
            run_trials(runner, 0.1, 0, 1)

    def test_transfer_protocol_runner(self):
        runner = protocol_runner("transfer", n=4, engine="trotter-simfm", n_steps=8)
        stats = run_trials(runner, 0.02, 5, 2, protocol="transfer", n=4)
        assert 0.0 < stats.mean_infidelity < 1.0

    def test_unknown_protocol_rejected(self):
        with pytest.raises(ValueError):
            protocol_runner("sideways", n=4)


class TestLogLogFit:
    def test_exact_square_law(self):
        points = [(v, v**2) for v in (0.001, 0.01, 0.1, 0.5)]
        fit = loglog_fit(points)
        assert fit.b == pytest.approx(2.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.reliable

    def test_exact_cubic_with_prefactor(self):
        points = [(v, 0.5 * v**3) for v in (0.001, 0.01, 0.1)]
        fit = loglog_fit(points)
        assert fit.a == pytest.approx(math.log(0.5), abs=1e-10)
        assert fit.b == pytest.approx(3.0, abs=1e-10)

    def test_rejects_bad_points(self):
        with pytest.raises(ValueError):
            loglog_fit([(0.1, 0.01), (0.2, 0.04)])  # too few
        with pytest.raises(ValueError):
            loglog_fit([(0.1, 0.01), (0.2, 0.04), (0.3, 0.0)])  # log(0)
        with pytest.raises(ValueError):
            loglog_fit([(0.0, 0.01), (0.2, 0.04), (0.3, 0.09)])  # v = 0

    def test_residuals_shape(self):
        fit = loglog_fit([(v, v**2 * (1 + 0.01)) for v in (0.01, 0.03, 0.1, 0.3)])
        assert fit.residuals.shape == (4,)


def test_default_v_grid():
    grid = default_v_grid()
    assert len(grid) == 8
    assert grid[0] == pytest.approx(1e-3)
    assert grid[-1] == pytest.approx(1e-1)
    with pytest.raises(ValueError):
        default_v_grid(v_min=0.0)


def test_slope_vs_n_small_echo_sweep():
    collected = []
    results = slope_vs_n(
        "echo",
        [5, 6],
        [0.003, 0.01, 0.03],
        trials=20,
        master_seed=11,
        on_stats=collected.append,
        t=1.0,
        n_steps=2,
    )
    assert [n for n, _ in results] == [5, 6]
    for _, fit in results:
        assert isinstance(fit, FitResult)
        assert 1.0 < fit.b < 3.0
    assert len(collected) == 6  # two chain lengths x three error strengths
    assert all(stats.trials == 20 for stats in collected)
