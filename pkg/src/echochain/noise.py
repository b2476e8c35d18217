"""Gate-error model, Monte-Carlo trial orchestration, and the log-log
infidelity fit.

Every exchange angle theta executed under a NoiseModel becomes
theta * (1 + eta) with eta ~ Normal(0, v^2) drawn fresh per gate per
step.  This multiplies the coupling at fixed duration, so a long pulse
(the near-2*pi antiferromagnetic pulses of the simulated ferromagnet)
is proportionally more sensitive than a short one.

Trials are seeded with SeedSequence([master_seed, trial]) so every
trial has an independent stream and results do not depend on execution
order or thread count.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

Seed = int | tuple[int, ...]
TrialRunner = Callable[[Seed, "NoiseModel"], float]


@dataclass(frozen=True)
class NoiseModel:
    """Multiplicative Gaussian gate error of standard deviation v.

    Field phases are perturbed only when include_fields is set; the
    default error model touches exchange couplings only.
    """

    v: float
    include_fields: bool = False

    def __post_init__(self) -> None:
        if self.v < 0:
            raise ValueError(f"noise strength must be nonnegative, got {self.v}")


def sample_eta(rng: np.random.Generator, v: float) -> float:
    """One multiplicative error draw; exactly 0.0 when v = 0."""
    if v < 0:
        raise ValueError(f"noise strength must be nonnegative, got {v}")
    return float(rng.standard_normal()) * v


def make_rng(seed: Seed) -> np.random.Generator:
    """Deterministic generator from an int or a tuple of ints."""
    if isinstance(seed, (tuple, list)):
        entropy: int | Sequence[int] = [int(s) for s in seed]
    else:
        entropy = int(seed)
    return np.random.default_rng(np.random.SeedSequence(entropy))


def child_seed(seed: Seed, index: int) -> tuple[int, ...]:
    """Derive an independent sub-stream seed (order-insensitive)."""
    if isinstance(seed, (tuple, list)):
        return (*[int(s) for s in seed], int(index))
    return (int(seed), int(index))


def thread_count() -> int:
    """Worker cap from ECHOCHAIN_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("ECHOCHAIN_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class TrialStats:
    """Mean and spread of infidelity over repeated noisy runs."""

    protocol: str
    n: int
    v: float
    trials: int
    mean_infidelity: float
    std_infidelity: float
    infidelities: np.ndarray = field(repr=False)


@dataclass
class FitResult:
    """Least-squares line through (log v, log I)."""

    a: float
    b: float
    r_squared: float
    residuals: np.ndarray = field(repr=False)

    @property
    def reliable(self) -> bool:
        """A slope counts as a robustness exponent only when the
        power-law fit is tight; anything below 0.95 flags the points."""
        return self.r_squared >= 0.95


def run_trials(
    runner: TrialRunner,
    v: float,
    trials: int,
    master_seed: Seed,
    *,
    protocol: str = "",
    n: int = 0,
    include_fields: bool = False,
) -> TrialStats:
    """Repeat a protocol `trials` times at noise strength v.

    runner(seed, noise) must return one infidelity; trial k receives
    the seed child_seed(master_seed, k).  Results are folded in trial
    order regardless of how many worker threads execute them.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    noise = NoiseModel(v=v, include_fields=include_fields)

    def one(k: int) -> float:
        return runner(child_seed(master_seed, k), noise)

    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, range(trials)))
    else:
        values = [one(k) for k in range(trials)]
    infidelities = np.array(values, dtype=float)
    if np.any(infidelities < -1e-12) or np.any(infidelities > 1 + 1e-12):
        raise RuntimeError("trial infidelity left [0, 1]")
    return TrialStats(
        protocol=protocol,
        n=n,
        v=v,
        trials=trials,
        mean_infidelity=float(infidelities.mean()),
        std_infidelity=float(infidelities.std()),
        infidelities=infidelities,
    )


def loglog_fit(points: Iterable[tuple[float, float]]) -> FitResult:
    """Ordinary least squares of log(I) = a + b log(v).

    Raises ValueError on fewer than 3 points or any nonpositive v or I
    (the caller should drop such points).
    """
    pts = list(points)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    if any(v <= 0 or i <= 0 for v, i in pts):
        raise ValueError("all v and infidelities must be positive")
    log_v = np.log([v for v, _ in pts])
    log_i = np.log([i for _, i in pts])
    b, a = np.polyfit(log_v, log_i, 1)
    predicted = a + b * log_v
    residuals = log_i - predicted
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((log_i - log_i.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(a=float(a), b=float(b), r_squared=r_squared, residuals=residuals)


def default_v_grid(
    v_min: float = 1e-3, v_max: float = 1e-1, points: int = 8
) -> np.ndarray:
    """Log-spaced error strengths for robustness sweeps."""
    if v_min <= 0 or v_max <= v_min or points < 3:
        raise ValueError("grid must be positive, increasing, with >= 3 points")
    return np.geomspace(v_min, v_max, points)


def protocol_runner(protocol: str, **params) -> TrialRunner:
    """Trial runner for one of the named protocols.

    For 'echo': params n, j, t, n_steps, backward_mode.
    For 'transfer': params n, t, n_steps, engine.
    Imports are deferred so the protocol modules can depend on this one.
    """
    if protocol == "echo":
        from .echo import EchoConfig, run_echo

        cfg = dict(
            n=params["n"],
            j=params.get("j", 1.0),
            t=params.get("t", math.pi / 2),
            n_steps=params.get("n_steps", 4),
            backward_mode=params.get("backward_mode", "trotterized"),
        )

        def run(seed: Seed, noise: NoiseModel) -> float:
            return run_echo(EchoConfig(noise=noise, seed=seed, **cfg)).infidelity

        return run
    if protocol == "transfer":
        from .transfer import TransferConfig, run_transfer

        cfg = dict(
            n=params["n"],
            t=params.get("t", math.pi / 2),
            n_steps=params.get("n_steps"),
            engine=params.get("engine", "trotter-simfm"),
        )

        def run(seed: Seed, noise: NoiseModel) -> float:
            return run_transfer(TransferConfig(noise=noise, seed=seed, **cfg)).infidelity

        return run
    raise ValueError(f"unknown protocol '{protocol}'")


def slope_vs_n(
    protocol: str,
    n_range: Sequence[int],
    v_grid: Sequence[float],
    trials: int,
    master_seed: Seed,
    *,
    on_stats: Callable[[TrialStats], None] | None = None,
    include_fields: bool = False,
    **params,
) -> list[tuple[int, FitResult]]:
    """One log-log fit per chain length.

    Each (n, v) point runs `trials` noisy repetitions seeded from
    (master_seed, n, v-index, trial).  Points with zero mean infidelity
    are dropped before fitting.  on_stats, when given, receives every
    TrialStats as it is produced (for CSV capture).
    """
    results: list[tuple[int, FitResult]] = []
    for n in n_range:
        runner = protocol_runner(protocol, n=n, **params)
        points: list[tuple[float, float]] = []
        for vi, v in enumerate(v_grid):
            stats = run_trials(
                runner,
                float(v),
                trials,
                child_seed(child_seed(master_seed, n), vi),
                protocol=protocol,
                n=n,
                include_fields=include_fields,
            )
            if on_stats is not None:
                on_stats(stats)
            if stats.mean_infidelity > 0:
                points.append((float(v), stats.mean_infidelity))
        results.append((n, loglog_fit(points)))
    return results
