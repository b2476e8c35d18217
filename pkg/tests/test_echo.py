import math

import pytest

from echochain.echo import (
    BACKWARD_EXACT,
    BACKWARD_TROTTERIZED,
    EchoConfig,
    echo_fidelity_curve,
    max_leg_duration,
    run_echo,
)
from echochain.noise import NoiseModel


def test_zero_time_revives():
    result = run_echo(EchoConfig(n=4, t=0.0, n_steps=1))
    assert result.fidelity == pytest.approx(1.0)
    assert result.elapsed == 0.0


@pytest.mark.parametrize("n", [3, 5, 8, 11])
@pytest.mark.parametrize("t,steps", [(0.4, 1), (1.7, 4), (2.9, 16)])
def test_trotterized_echo_revives_exactly(n, t, steps):
    result = run_echo(EchoConfig(n=n, t=t, n_steps=steps))
    assert abs(result.fidelity - 1.0) < 1e-9
    assert result.infidelity == pytest.approx(0.0, abs=1e-9)


def test_exact_backward_exposes_forward_trotter_error():
    early = run_echo(EchoConfig(n=6, t=1.0, n_steps=4, backward_mode=BACKWARD_EXACT))
    late = run_echo(EchoConfig(n=6, t=3.0, n_steps=4, backward_mode=BACKWARD_EXACT))
    assert early.fidelity < 1.0
    assert late.fidelity < early.fidelity


def test_exact_backward_fidelity_improves_with_steps():
    fidelities = [
        run_echo(EchoConfig(n=6, t=3.0, n_steps=n, backward_mode=BACKWARD_EXACT)).fidelity
        for n in (4, 8, 16)
    ]
    assert fidelities[0] <= fidelities[1] + 1e-6
    assert fidelities[1] <= fidelities[2] + 1e-6


def test_noise_lowers_fidelity():
    result = run_echo(
        EchoConfig(n=8, t=math.pi / 2, n_steps=4, noise=NoiseModel(v=0.05), seed=2)
    )
    assert 0.0 <= result.fidelity < 1.0


def test_noisy_runs_are_seed_deterministic():
    config = EchoConfig(n=7, t=1.1, n_steps=4, noise=NoiseModel(v=0.03), seed=9)
    assert run_echo(config).fidelity == run_echo(config).fidelity


def test_conservation_metadata():
    result = run_echo(
        EchoConfig(n=9, t=2.0, n_steps=8, noise=NoiseModel(v=0.04), seed=3)
    )
    assert abs(result.metadata["final_norm"] - 1.0) < 1e-10
    assert abs(result.metadata["sz_final"] - result.metadata["sz_initial"]) < 1e-10


class TestCurve:
    def test_single_zero_point(self):
        curve = echo_fidelity_curve(EchoConfig(n=4, t=0.0, n_steps=1), [0.0])
        assert curve == [(0.0, pytest.approx(1.0))]

    def test_noise_free_grid_is_flat_at_one(self):
        curve = echo_fidelity_curve(
            EchoConfig(n=5, t=0.0, n_steps=4), [0.5, 1.0, 1.5]
        )
        for _, fidelity in curve:
            assert abs(fidelity - 1.0) < 1e-9

    def test_noisy_grid_is_deterministic_and_below_one(self):
        config = EchoConfig(
            n=6, t=0.0, n_steps=4, noise=NoiseModel(v=0.05), seed=17
        )
        grid = [0.5, 1.5, 2.5]
        first = echo_fidelity_curve(config, grid)
        second = echo_fidelity_curve(config, grid)
        assert first == second
        assert all(f < 1.0 for _, f in first)


def test_config_validation():
    with pytest.raises(ValueError):
        EchoConfig(n=2, t=1.0, n_steps=1)
    with pytest.raises(ValueError):
        EchoConfig(n=4, t=-1.0, n_steps=1)
    with pytest.raises(ValueError):
        EchoConfig(n=4, t=1.0, n_steps=0)
    with pytest.raises(ValueError):
        EchoConfig(n=4, t=1.0, n_steps=1, backward_mode="sideways")


def test_wrap_period_budget():
    assert max_leg_duration(1.0, 4) == pytest.approx(8 * math.pi)
    # a leg just past the budget must be rejected by plan construction
    with pytest.raises(ValueError):
        run_echo(EchoConfig(n=4, t=2 * math.pi + 0.1, n_steps=1))
