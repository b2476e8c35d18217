"""Self-contained invariant suite behind the oracle-check command.

Each check compares the production path against an independent route
(eigendecomposition gate oracle, dense exact evolution) or asserts a
conservation law, and reports a named pass/fail with a numeric detail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import exact_evolve, transfer_chain, uniform_echo_chain
from .echo import EchoConfig, run_echo
from .gates import (
    afm_duration_for_fm,
    exchange_unitary,
    exchange_unitary_reference,
    heisenberg_pair_coupling,
    wrap_period,
)
from .noise import NoiseModel, make_rng
from .statevec import prepare_singlet_head
from .transfer import TransferConfig, run_transfer
from .trotter import MODE_DIRECT, execute_plan, three_term_plan


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_exchange_closed_form(inject_theta_sign_bug: bool = False) -> CheckResult:
    """Closed-form exchange gate vs the eigendecomposition oracle."""
    thetas = np.concatenate(
        [np.linspace(-4 * math.pi, 4 * math.pi, 41), [0.1, math.pi / 3, 2 * math.pi]]
    )
    worst = 0.0
    for theta in thetas:
        probe = -theta if inject_theta_sign_bug else theta
        dev = float(np.max(np.abs(exchange_unitary(probe) - exchange_unitary_reference(theta))))
        worst = max(worst, dev)
    return CheckResult(
        name="exchange-closed-form",
        passed=worst < 1e-12,
        detail=f"max_dev={worst:.3e}",
    )


def check_two_spin_equivalence(samples: int = 1000, seed: int = 0) -> CheckResult:
    """Mapped antiferromagnetic pulse vs exact ferromagnetic evolution
    on random two-spin states: overlap magnitude must be 1."""
    rng = make_rng(seed)
    w, v = np.linalg.eigh(heisenberg_pair_coupling())
    worst = 0.0
    for _ in range(samples):
        j_fm = rng.uniform(0.5, 2.0)
        j_afm = rng.uniform(0.5, 2.0)
        t = rng.uniform(0.0, wrap_period(j_fm))
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        t_prime = afm_duration_for_fm(t, j_afm, j_fm)
        pulsed = exchange_unitary(j_afm * t_prime) @ psi
        exact = (v * np.exp(+1j * j_fm * t * w)) @ v.conj().T @ psi
        worst = max(worst, abs(abs(np.vdot(pulsed, exact)) - 1.0))
    return CheckResult(
        name="two-spin-equivalence",
        passed=worst < 1e-10,
        detail=f"samples={samples} max_dev={worst:.3e}",
    )


def check_trotter_scaling(
    n: int = 6, steps: tuple[int, ...] = (8, 16, 32)
) -> CheckResult:
    """Second-order convergence of the direct three-term plan against
    the dense oracle: halving the step size should shrink the error
    about fourfold."""
    spec = transfer_chain(n)
    t = math.pi / 2
    reference = exact_evolve(spec, prepare_singlet_head(n), t)

    def error(n_steps: int) -> float:
        state = prepare_singlet_head(n)
        execute_plan(three_term_plan(spec, t, n_steps, MODE_DIRECT), state)
        return float(np.linalg.norm(state.amplitudes - reference.amplitudes))

    errs = {m: error(m) for m in list(steps) + [2 * steps[-1]]}
    ratios = [errs[m] / errs[2 * m] for m in steps]
    ok = all(3.0 <= r <= 5.0 for r in ratios)
    detail = " ".join(f"ratio(N={m})={r:.2f}" for m, r in zip(steps, ratios))
    return CheckResult(name="trotter-second-order", passed=ok, detail=detail)


def check_conservation(n: int = 8) -> CheckResult:
    """Norm and total S^z conservation on a noisy echo and a noisy
    trotterized transfer."""
    echo = run_echo(
        EchoConfig(n=n, t=1.0, n_steps=4, noise=NoiseModel(v=0.05), seed=11)
    )
    transfer = run_transfer(
        TransferConfig(
            n=n, n_steps=32, engine="trotter-simfm", noise=NoiseModel(v=0.05), seed=12
        )
    )
    devs = [
        abs(echo.metadata["sz_final"] - echo.metadata["sz_initial"]),
        abs(echo.metadata["final_norm"] - 1.0),
        abs(transfer.metadata["sz_final"] - transfer.metadata["sz_initial"]),
        abs(transfer.metadata["final_norm"] - 1.0),
    ]
    worst = max(devs)
    return CheckResult(
        name="sz-and-norm-conservation",
        passed=worst < 1e-10,
        detail=f"max_dev={worst:.3e}",
    )


def check_echo_revival(n: int = 8) -> CheckResult:
    """Noise-free trotterized echo must revive exactly."""
    worst = 0.0
    for t, steps in [(0.7, 1), (1.9, 4), (math.pi / 2, 16)]:
        result = run_echo(EchoConfig(n=n, t=t, n_steps=steps))
        worst = max(worst, abs(result.fidelity - 1.0))
    return CheckResult(
        name="echo-revival", passed=worst < 1e-9, detail=f"max_dev={worst:.3e}"
    )


def check_transfer_peak(max_n: int = 8) -> CheckResult:
    """Exact engine must reach the far end at t = pi/2."""
    worst = 1.0
    for n in range(2, max_n + 1):
        worst = min(worst, run_transfer(TransferConfig(n=n)).fidelity)
    return CheckResult(
        name="transfer-peak", passed=worst >= 0.999, detail=f"min_f={worst:.9f}"
    )


def run_all_checks(
    max_n: int = 8,
    trotter_steps: tuple[int, ...] = (8, 16, 32),
    samples: int = 1000,
    seed: int = 0,
    inject_theta_sign_bug: bool = False,
) -> list[CheckResult]:
    scaling_n = min(6, max_n)
    return [
        check_exchange_closed_form(inject_theta_sign_bug),
        check_two_spin_equivalence(samples=samples, seed=seed),
        check_trotter_scaling(n=scaling_n, steps=trotter_steps),
        check_conservation(n=min(8, max_n)),
        check_echo_revival(n=min(8, max_n)),
        check_transfer_peak(max_n=max_n),
    ]
