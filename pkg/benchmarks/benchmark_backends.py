"""Throughput comparison of the compiled and pure-numpy trial kernels.

Feeds both backends the same pre-drawn noise chunk at the showcase
scenario and reports per-trial cost, alongside the cost of drawing the
noise itself so the numbers carry context: the random draws dominate a
sweep, so the kernel choice shifts total runtime by a modest factor.

Usage::

    python3 benchmarks/benchmark_backends.py [--chunk 256] [--reps 40]
"""

import argparse
import time

import numpy as np

from itshsr.backend import available_backends, select_backend
from itshsr.estimators import build_omega, estimate_channels
from itshsr.harness import demo_scenario
from itshsr.linksim import ReceivedFrame, clean_frame, draw_noise, trial_stream
from itshsr.pilots import make_pilot_design


def time_call(func, reps):
    best = float("inf")
    for _ in range(reps):
        started = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - started)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--chunk", type=int, default=256, help="trials per call")
    parser.add_argument("--reps", type=int, default=40, help="timing repetitions")
    parser.add_argument("--snr-db", type=float, default=20.0)
    args = parser.parse_args()

    config, params = demo_scenario()
    design = make_pilot_design(config)
    base = estimate_channels(
        ReceivedFrame(y=clean_frame(params, design, config), noise_variance=0.0),
        design,
    )
    v_clean = np.stack([base.g_hat, base.h_hat])
    pinv_omega = np.linalg.pinv(build_omega(config.geom))
    sigma2 = 10.0 ** (-args.snr_db / 10.0)

    noise = np.empty(
        (args.chunk, 2, config.n_subblocks, config.n_pilots), dtype=complex
    )

    def draw_chunk():
        for j in range(args.chunk):
            noise[j] = draw_noise(trial_stream(config.seed, 0, j), config, sigma2)

    draw_seconds = time_call(draw_chunk, max(3, args.reps // 8))
    print(f"scenario: {config.n_subblocks} subblocks x {config.n_pilots} pilots, "
          f"{config.geom.m_total}-element surface, chunk {args.chunk}")
    print(f"noise draw: {draw_seconds / args.chunk * 1e6:8.2f} us/trial")

    for name in available_backends():
        kernel = select_backend(name)
        call = lambda: kernel.trial_error_block(
            noise, v_clean, design.psi, design.phi_bar, pinv_omega,
            config.subblock_duration, params.f_d1, params.f_d2,
            params.beta1, params.beta2, params.phi_y, params.phi_z,
        )
        call()  # warm up caches and lazy imports before timing
        seconds = time_call(call, args.reps)
        print(f"{name:>10s}: {seconds / args.chunk * 1e6:8.2f} us/trial")


if __name__ == "__main__":
    main()
