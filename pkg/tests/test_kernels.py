import os
import random
import subprocess
import sys

import numpy as np
import pytest

from curvedefect import _pykernels, kernels, random_curve, torus_knot
from curvedefect.casson import _weights

try:
    from curvedefect import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("CURVEDEFECT_PURE") != "1":
        assert kernels.BACKEND == "cython"


def test_pure_override():
    code = "import curvedefect.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, CURVEDEFECT_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@pytest.mark.parametrize("seed", range(25))
def test_canonical_code_parity(seed):
    c = random_curve(1 + seed % 17, seed)
    for mirror in (False, True):
        assert _ckernels.canonical_code(c.alpha, c.n, mirror) == _pykernels.canonical_code(c.alpha, c.n, mirror)


@needs_ext
def test_interleave_parity():
    rng = random.Random(0)
    for _ in range(30):
        n = rng.randint(0, 30)
        word = list(range(n)) * 2
        rng.shuffle(word)
        first, second = {}, {}
        for i, x in enumerate(word):
            (second if x in first else first)[x] = i
        f = [first[x] for x in range(n)]
        s = [second[x] for x in range(n)]
        assert _ckernels.interleave_matrix(f, s) == _pykernels.interleave_matrix(f, s)


@needs_ext
@pytest.mark.parametrize("curve", [torus_knot(2, 3), torus_knot(3, 4), random_curve(11, 3), random_curve(13, 8)], ids=str)
def test_casson_sum_parity(curve):
    _, w = _weights(curve)
    n = curve.n
    ones = [[1] * n for _ in range(n)]
    assert _ckernels.casson_sum(w.tolist(), ones) == _pykernels.casson_sum(w.tolist(), ones)


def test_casson_sum_brute():
    c = random_curve(7, 5)
    _, w = _weights(c)
    n = c.n
    brute = 0
    for mask in range(1 << n):
        asc = np.array([(mask >> i) & 1 for i in range(n)])
        brute += int(-((1 - asc) @ w @ asc))
    ones = [[1] * n for _ in range(n)]
    assert kernels.casson_sum(w.tolist(), ones) == brute == _pykernels.casson_sum(w.tolist(), ones)


def test_canonical_code_rejects_disconnected():
    two = [4, 5, 6, 7, 0, 1, 2, 3]
    alpha = [1, 0, 3, 2, 5, 4, 7, 6]
    with pytest.raises(ValueError):
        kernels.canonical_code(alpha, 2, True)
    assert kernels.canonical_code(two, 2, True)
