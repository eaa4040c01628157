"""Compare the compiled kernels against the pure-python fallback.

Run:  python3 benchmarks/bench_core.py [--repeat 5]

Times the three hot kernels on engine-realistic shapes and a full learned
run on both backends. Falls back gracefully (with a note) when the compiled
extension is absent.
"""

import argparse
import statistics
import time

import numpy as np

from dcflow import _core


def _time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.median(samples)


def bench_maxmin(backend, rng, n_flows=2000, n_links=200, repeat=5):
    indptr = [0]
    idx = []
    for _ in range(n_flows):
        k = int(rng.integers(2, 7))
        idx.extend(sorted(rng.choice(n_links, k, replace=False)))
        indptr.append(len(idx))
    indptr = np.array(indptr, dtype=np.int64)
    idx = np.array(idx, dtype=np.int32)
    caps = rng.uniform(1e9, 4e10, n_links)
    return _time(lambda: backend.maxmin_csr(indptr, idx, caps), repeat)


def bench_neighbor_sum(backend, rng, n_src=3000, n_dst=400, d=300, repeat=5):
    x = rng.normal(0, 1, (n_src, d)).astype(np.float32)
    indptr = [0]
    idx = []
    for _ in range(n_dst):
        k = int(rng.integers(1, 30))
        idx.extend(sorted(rng.choice(n_src, k, replace=False)))
        indptr.append(len(idx))
    indptr = np.array(indptr, dtype=np.int64)
    idx = np.array(idx, dtype=np.int32)
    return _time(lambda: backend.neighbor_sum(x, indptr, idx), repeat)


def bench_gru_pointwise(backend, rng, m=2000, dh=400, repeat=5):
    a = rng.normal(0, 1, (m, 3 * dh)).astype(np.float32)
    b = rng.normal(0, 1, (m, 3 * dh)).astype(np.float32)
    h = rng.normal(0, 1, (m, dh)).astype(np.float32)
    return _time(lambda: backend.gru_pointwise(a, b, h), repeat)


def bench_full_run(force_fallback, repeat=3):
    import os
    import subprocess
    import sys
    code = (
        "import time\n"
        "from dcflow.netmodel import build_fattree, NetworkConfig\n"
        "from dcflow.traffic import WorkloadSpec, sample_flow_schedule\n"
        "from dcflow.fluid import ScheduleSource\n"
        "from dcflow.nn.weights import random_bundle\n"
        "from dcflow.engine import m4_run\n"
        "topo = build_fattree(2, 2, 2, 2)\n"
        "w = WorkloadSpec(size_dist='exponential', theta=20000, sigma=1.0,\n"
        "                 max_load=0.6, n_flows=400, seed=1)\n"
        "flows = sample_flow_schedule(w, topo)\n"
        "cfg = NetworkConfig('dctcp', 128000, 10000, (20000.0,))\n"
        "b = random_bundle(seed=0, hidden_dim=64, gnn_dim=48, mlp_hidden=64)\n"
        "t0 = time.perf_counter()\n"
        "m4_run(ScheduleSource(flows), topo, cfg, b)\n"
        "print(time.perf_counter() - t0)\n"
    )
    env = dict(os.environ)
    if force_fallback:
        env["DCFLOW_FORCE_FALLBACK"] = "1"
    else:
        env.pop("DCFLOW_FORCE_FALLBACK", None)
    times = []
    for _ in range(repeat):
        out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                             text=True, env=env, check=True)
        times.append(float(out.stdout.strip()))
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    fallback = _core.get_backend("fallback")
    try:
        compiled = _core.get_backend("compiled")
    except Exception:
        compiled = None
        print("compiled kernels unavailable; timing fallback only\n")

    rng = np.random.default_rng(0)
    rows = []
    for name, fn in [("maxmin_csr 2000x200", bench_maxmin),
                     ("neighbor_sum 3000->400 d=300", bench_neighbor_sum),
                     ("gru_pointwise 2000x400", bench_gru_pointwise)]:
        fb_best, _ = fn(fallback, np.random.default_rng(0), repeat=args.repeat)
        if compiled is not None:
            c_best, _ = fn(compiled, np.random.default_rng(0), repeat=args.repeat)
            rows.append((name, fb_best, c_best))
        else:
            rows.append((name, fb_best, None))

    print(f"{'kernel':<32} {'fallback':>12} {'compiled':>12} {'speedup':>9}")
    for name, fb, c in rows:
        if c is None:
            print(f"{name:<32} {fb * 1e3:>10.3f}ms {'-':>12} {'-':>9}")
        else:
            print(f"{name:<32} {fb * 1e3:>10.3f}ms {c * 1e3:>10.3f}ms {fb / c:>8.1f}x")

    print("\nfull learned run, 400 flows (subprocess, import-time selection):")
    fb_t = bench_full_run(True, repeat=3)
    line = f"  fallback: {fb_t:.3f}s"
    if compiled is not None:
        c_t = bench_full_run(False, repeat=3)
        line += f"   compiled: {c_t:.3f}s   speedup {fb_t / c_t:.2f}x"
    print(line)


if __name__ == "__main__":
    main()
