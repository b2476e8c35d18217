#!/usr/bin/env python3
"""Echo gate-noise robustness: 100-trial Monte Carlo over 8 log-spaced
error strengths for n = 5..12, with the per-n log-log fits and the
slope-versus-n summary plot."""
import pathlib
import sys

from echochain.cli import main

OUT = pathlib.Path("results")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    sys.exit(
        main(
            [
                "robustness",
                "--protocol", "echo",
                "--n-range", "5:12",
                "--steps", "4",
                "--trials", "100",
                "--seed", "42",
                "--out-trials", str(OUT / "echo_trials.csv"),
                "--out-fits", str(OUT / "echo_fits.csv"),
                "--plot-fit", str(OUT / "echo_loglog.svg"),
                "--plot-slopes", str(OUT / "echo_slopes.svg"),
            ]
        )
    )
