"""Time each hot kernel under numba and under the pure-numpy fallback.

    python benchmarks/bench_kernels.py --repeat 20

The backend switch is read on every call, so both paths run in one process.
Also reports the largest absolute disagreement between the two paths.
"""

import argparse
import os
import statistics
import time

import numpy as np

from wsforge import kernels
from wsforge.metrics.oracle import SubjectOracle, indicator_map
from wsforge.rng import SplitMix64
from wsforge.world import World, make_reference_set


def cases(g):
    x_mlp = g.normal((2080, 512))  # AR MLP hidden at batch 8
    g_mlp = g.normal((2080, 512))
    att = g.normal((8, 4, 260, 260))  # attention scores at batch 8
    g_att = g.normal((8, 4, 260, 260))
    y_att = kernels.softmax(att)
    x_ln = g.normal((2080, 128))
    xhat, rstd = kernels.layernorm(x_ln, 1e-12)
    g_ln = g.normal((2080, 128))
    idx = g.integers(0, 104, 2080)
    g_emb = g.normal((2080, 128))
    world = World.default(0)
    tpl = SubjectOracle.build(world.subjects).templates[2]
    img = make_reference_set(world, world.subject(2), 1)[0][0]
    imap = indicator_map(img, tpl.colors)
    return {
        "gelu": lambda: kernels.gelu(x_mlp),
        "gelu_grad": lambda: kernels.gelu_grad(x_mlp, g_mlp),
        "softmax": lambda: kernels.softmax(att),
        "softmax_grad": lambda: kernels.softmax_grad(y_att, g_att),
        "layernorm": lambda: kernels.layernorm(x_ln, 1e-12)[0],
        "layernorm_grad": lambda: kernels.layernorm_grad(xhat, rstd, g_ln),
        "scatter_add_rows": lambda: kernels.scatter_add_rows(104, idx, g_emb),
        "ncc_search": lambda: kernels.ncc_search(imap, tpl.tpl, tpl.tpl_h, tpl.tpl_w, tpl.tpl_norm)[0],
    }


def timed(fn, repeat):
    fn()  # warm-up (and numba compile on first use)
    out = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def with_backend(pure: bool, fn):
    old = os.environ.get("WSFORGE_PURE_NUMPY")
    os.environ["WSFORGE_PURE_NUMPY"] = "1" if pure else "0"
    try:
        return fn()
    finally:
        if old is None:
            del os.environ["WSFORGE_PURE_NUMPY"]
        else:
            os.environ["WSFORGE_PURE_NUMPY"] = old


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=10)
    ap.add_argument("--only", nargs="*", help="kernel names to run")
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':18s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, fn in cases(SplitMix64(0)).items():
        if args.only and name not in args.only:
            continue
        t_nb = with_backend(False, lambda: timed(fn, args.repeat))
        t_np = with_backend(True, lambda: timed(fn, args.repeat))
        diff = float(np.max(np.abs(with_backend(False, fn) - with_backend(True, fn))))
        print(f"{name:18s} {t_nb * 1e3:10.3f} {t_np * 1e3:10.3f} {t_np / t_nb:7.2f}x {diff:11.2e}")


if __name__ == "__main__":
    main()
