#!/usr/bin/env python3
"""Manual CPU-time benchmark for the feature-ranking pipeline.

Times Gram construction, the eigendecomposition and the full ranking on
synthetic matrices at the benchmark-dataset scales (and any extra NxP
sizes passed on the command line). Wall-clock numbers are hardware
dependent; this script exists for manual comparison, not as a test.

Usage: python scripts/benchmark_timing.py [NxP ...] [--q Q] [--threads 1]
"""

import argparse
import os
import sys
import time
from pathlib import Path

DEFAULT_SIZES = ["50x4434", "174x9182", "165x12626"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("sizes", nargs="*", default=DEFAULT_SIZES, metavar="NxP")
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--threads", type=int, default=0,
                    help="cap BLAS threads (0 = leave library defaults)")
    args = ap.parse_args()
    if args.threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(args.threads)

    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
    from kpcaig import KernelSpec, fit_kpca, rank_features, sigma_heuristic, standardize
    from kpcaig.synthetic import gaussian_matrix

    print(f"{'size':>14} {'gram+fit s':>11} {'rank s':>9} {'total s':>9}")
    for size in args.sizes:
        n, p = (int(v) for v in size.lower().split("x"))
        data = standardize(gaussian_matrix(n, p, seed=0))
        t0 = time.perf_counter()
        model = fit_kpca(data, KernelSpec("rbf", sigma=sigma_heuristic(data)), args.q)
        t_fit = time.perf_counter() - t0
        t0 = time.perf_counter()
        rank_features(model)
        t_rank = time.perf_counter() - t0
        print(f"{size:>14} {t_fit:>11.2f} {t_rank:>9.2f} {t_fit + t_rank:>9.2f}")


if __name__ == "__main__":
    main()
