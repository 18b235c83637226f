"""Compare the compiled and pure-numpy conv/pool kernels on LeNet shapes.

Usage: python bench/bench_kernels.py [--batch 128] [--repeats 5]

Imports both backend modules directly, so the SPARSEACT_BACKEND env flag
does not matter here.
"""

import argparse
import time

import numpy as np

from sparseact.kernels import numba_backend as nb
from sparseact.kernels import numpy_backend as np_ref

# (name, batch-relative shapes): conv layers of the 28x28 net
LAYERS = [
    ("conv1 1->6 5x5 p2", (1, 6, 28, 28, 2)),
    ("conv2 6->16 5x5 p0", (6, 16, 12, 12, 0)),
]


def _conv_args(batch, cin, cout, hw, pad, gen):
    x = gen.standard_normal((batch, cin, hw, hw))
    xp = np.zeros((batch, cin, hw + 2 * pad, hw + 2 * pad))
    xp[:, :, pad:pad + hw, pad:pad + hw] = x
    k = gen.standard_normal((cout, cin, 5, 5))
    bias = gen.standard_normal(cout)
    oh = hw + 2 * pad - 4
    out = np.zeros((batch, cout, oh, oh))
    dout = gen.standard_normal(out.shape)
    return xp, k, bias, out, dout


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_conv(batch, repeats):
    gen = np.random.default_rng(0)
    print(f"{'kernel':<34}{'numba':>12}{'numpy':>12}{'ratio':>8}")
    for name, (cin, cout, hw, _hw2, pad) in LAYERS:
        xp, k, bias, out, dout = _conv_args(batch, cin, cout, hw, pad, gen)
        dk = np.zeros_like(k)
        db = np.zeros_like(bias)
        dxp = np.zeros_like(xp)

        cases = [
            ("fwd", lambda b: b.conv2d_forward(xp, k, bias, 1, out)),
            ("bwd-kernel", lambda b: b.conv2d_backward_kernel(xp, dout, 1, dk, db)),
            ("bwd-input", lambda b: b.conv2d_backward_input(k, dout, 1, dxp)),
        ]
        for case, fn in cases:
            fn(nb)  # JIT warmup outside the timed region
            dxp[:] = 0.0
            t_nb = _time(lambda: fn(nb), repeats)
            dxp[:] = 0.0
            t_np = _time(lambda: fn(np_ref), repeats)
            dxp[:] = 0.0
            print(f"{name + ' ' + case:<34}{t_nb * 1e3:>10.2f}ms"
                  f"{t_np * 1e3:>10.2f}ms{t_np / t_nb:>8.2f}x")


def bench_pool(batch, repeats):
    gen = np.random.default_rng(1)
    for hw, ch in ((28, 6), (12, 16)):
        x = gen.standard_normal((batch, ch, hw, hw))
        out = np.zeros((batch, ch, hw // 2, hw // 2))
        idx = np.zeros(out.shape, dtype=np.int8)
        dout = gen.standard_normal(out.shape)
        dx = np.zeros_like(x)

        nb.maxpool2_forward(x, out, idx)
        t_nb = _time(lambda: nb.maxpool2_forward(x, out, idx), repeats)
        t_np = _time(lambda: np_ref.maxpool2_forward(x, out, idx), repeats)
        print(f"{'pool2 fwd %dx%dx%d' % (ch, hw, hw):<34}{t_nb * 1e3:>10.2f}ms"
              f"{t_np * 1e3:>10.2f}ms{t_np / t_nb:>8.2f}x")

        nb.maxpool2_backward(dout, idx, dx)
        dx[:] = 0.0
        t_nb = _time(lambda: nb.maxpool2_backward(dout, idx, dx), repeats)
        dx[:] = 0.0
        t_np = _time(lambda: np_ref.maxpool2_backward(dout, idx, dx), repeats)
        print(f"{'pool2 bwd %dx%dx%d' % (ch, hw, hw):<34}{t_nb * 1e3:>10.2f}ms"
              f"{t_np * 1e3:>10.2f}ms{t_np / t_nb:>8.2f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--batch", type=int, default=128)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    print(f"batch={args.batch}, best of {args.repeats}")
    bench_conv(args.batch, args.repeats)
    bench_pool(args.batch, args.repeats)


if __name__ == "__main__":
    main()
