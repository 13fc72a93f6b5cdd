import os
import subprocess
import sys

import numpy as np
import pytest

from gaussggm import _kernels, haar
from gaussggm._accel import HAVE_NUMBA
from gaussggm.ggm import bipartition_subsets

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable or disabled")


@needs_numba
@pytest.mark.parametrize("n, nu_bar", [(2, 1.5), (3, 2.6), (5, 5.0), (6, 2.6), (8, 1.1), (9, 3.0)])
def test_numba_matches_numpy(n, nu_bar):
    sigmas = haar.sample_states(haar.RandomStateSpec(n, nu_bar), 300, haar.make_rng(n))
    table, sizes = _kernels.subset_table(bipartition_subsets(n))
    lam_a, arg_a = _kernels.max_schmidt_numba(sigmas, table, sizes)
    lam_b, arg_b = _kernels.max_schmidt_numpy(sigmas, table, sizes)
    assert np.allclose(lam_a, lam_b, rtol=0, atol=1e-12)
    # argmax may only differ on numerical ties
    for i in np.flatnonzero(arg_a != arg_b):
        pair = [arg_a[i], arg_b[i]]
        each = [
            _kernels.max_schmidt_numpy(sigmas[i : i + 1], table[[row]], sizes[[row]])[0][0]
            for row in pair
        ]
        assert each[0] == pytest.approx(each[1], abs=1e-12)


@needs_numba
def test_numba_vacuum_is_exact():
    table, sizes = _kernels.subset_table(bipartition_subsets(6))
    lam, arg = _kernels.max_schmidt_numba(np.eye(12)[None], table, sizes)
    assert lam[0] == 1.0 and arg[0] == 0


@needs_numba
def test_jacobi_eigenvalues():
    rng = np.random.default_rng(0)
    for m in (2, 5, 8):
        a = rng.standard_normal((m, m))
        a = a + a.T
        ev = np.sort(_kernels._jacobi_eigvalsh(a.copy()))
        assert np.allclose(ev, np.linalg.eigvalsh(a), atol=1e-12)


def test_numpy_fallback_selected_by_env():
    code = (
        "import gaussggm, gaussggm._kernels as k;"
        "print(gaussggm.backend(), k.max_schmidt is k.max_schmidt_numpy)"
    )
    env = dict(os.environ, GAUSS_GGM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]


def test_fallback_ensemble_matches():
    code = (
        "from gaussggm import *;"
        "s = run_ensemble(EnsembleSpec(RandomStateSpec(4, 2.6, 5), 500));"
        "print(repr(s.mean), repr(s.stddev))"
    )
    env = dict(os.environ, GAUSS_GGM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    mean, std = map(float, out.stdout.split())
    from gaussggm import EnsembleSpec, RandomStateSpec, run_ensemble

    s = run_ensemble(EnsembleSpec(RandomStateSpec(4, 2.6, 5), 500))
    assert mean == pytest.approx(s.mean, abs=1e-12)
    assert std == pytest.approx(s.stddev, abs=1e-12)
