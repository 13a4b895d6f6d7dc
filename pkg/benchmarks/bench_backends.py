#!/usr/bin/env python3
"""Time the numba kernel against the pure-numpy fallback.

The workload is the package's hot loop: propagating the full four-level
model on a truncated Fock space, step-capped to resolve the fastest
detuning phase.  Run directly::

    python benchmarks/bench_backends.py [--tau 2.0] [--cutoff 10] [--repeat 3]

The first numba call includes JIT compilation; it is timed separately.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cavsqueeze.fock import InitialState, Stage, build_model, fock_evolve
from cavsqueeze.kernels import DEFAULT_BACKEND
from cavsqueeze.sweep import FIGURE_BASE


def run(backend: str, model, initial, tau: float):
    start = time.perf_counter()
    psi, stats = fock_evolve(model, initial, tau, backend=backend)
    return psi, stats, time.perf_counter() - start


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--tau", type=float, default=2.0)
    parser.add_argument("--cutoff", type=int, default=10)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    model = build_model(FIGURE_BASE, Stage.FULL, args.cutoff, args.cutoff)
    initial = InitialState("d", 0.5, 0.5)
    print(f"dim = {model.dim}, tau = {args.tau}, default backend = "
          f"{DEFAULT_BACKEND}")

    backends = ["numpy"]
    if DEFAULT_BACKEND == "numba":
        _, _, warmup = run("numba", model, initial, 0.01)
        print(f"numba warmup (includes JIT): {warmup:.2f} s")
        backends.append("numba")

    states = {}
    for backend in backends:
        times = []
        for _ in range(args.repeat):
            psi, stats, elapsed = run(backend, model, initial, args.tau)
            times.append(elapsed)
        states[backend] = psi
        print(f"{backend:>6}: best {min(times):.3f} s over {args.repeat} runs "
              f"({stats['accepted']} steps, {stats['rejected']} rejected, "
              f"norm drift {stats['max_norm_drift']:.1e})")

    if len(states) == 2:
        dev = np.max(np.abs(states["numba"] - states["numpy"]))
        print(f"max |psi_numba - psi_numpy| = {dev:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
