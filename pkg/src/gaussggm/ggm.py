"""Generalized geometric measure (GGM) of pure multimode Gaussian states.

For a pure state the GGM is ``1 - lambda_max``, where ``lambda_max`` is the
largest Schmidt coefficient over all bipartitions. A k-mode reduction with
symplectic eigenvalues ``nu_i`` is a product of thermal states with inverse
temperatures ``beta_i = ln((nu_i + 1) / (nu_i - 1))``; its largest eigenvalue is
``prod_i (1 - exp(-beta_i)) = prod_i 2 / (1 + nu_i)``.
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError, UnsupportedStateError
from .symplectic import TOL_PURE, check_covariance, is_pure, mode_count, mode_subset, reduce, symplectic_spectrum

MAX_FULL_MODES = 24

__all__ = [
    "MAX_FULL_MODES",
    "GgmResult",
    "bipartition_subsets",
    "bipartition_max_schmidt",
    "compute_ggm",
    "compute_ggm_single_mode",
    "ggm_values",
    "asymptotic_ggm",
]


@dataclass(frozen=True)
class GgmResult:
    value: float
    lambda_max: float
    argmax_subset: tuple
    argmax_spectrum: tuple

    def to_dict(self):
        return {
            "ggm": self.value,
            "lambda_max": self.lambda_max,
            "argmax_modes": list(self.argmax_subset),
            "argmax_spectrum": list(self.argmax_spectrum),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            value=float(data["ggm"]),
            lambda_max=float(data["lambda_max"]),
            argmax_subset=tuple(int(i) for i in data["argmax_modes"]),
            argmax_spectrum=tuple(float(v) for v in data["argmax_spectrum"]),
        )


@lru_cache(maxsize=None)
def bipartition_subsets(n, single_mode=False):
    """Mode subsets visited by the GGM maximization, in lexicographic order.

    Sizes run from 1 to ``n // 2``. Both halves of an even split are kept.
    """
    top = 1 if single_mode else n // 2
    subsets = [c for k in range(1, top + 1) for c in itertools.combinations(range(n), k)]
    return tuple(sorted(subsets))


@lru_cache(maxsize=None)
def _table(n, single_mode):
    return _kernels.subset_table(bipartition_subsets(n, single_mode))


def _schmidt_product(nu):
    nu = np.where(np.asarray(nu) < 1.0 + _kernels.CLAMP, 1.0, nu)
    return float(np.prod(2.0 / (1.0 + nu)))


def bipartition_max_schmidt(sigma, subset):
    """Largest Schmidt coefficient of the bipartition ``subset | complement``."""
    sigma = check_covariance(sigma)
    n = mode_count(sigma)
    subset = mode_subset(subset, n)
    if len(subset) == n:
        raise InvalidArgumentError("subset covers every mode; there is no bipartition")
    return _schmidt_product(symplectic_spectrum(reduce(sigma, subset)))


def _check_pure_multimode(sigma, tol):
    sigma = check_covariance(sigma)
    n = mode_count(sigma)
    if n < 2:
        raise InvalidArgumentError("GGM needs at least two modes")
    if not is_pure(sigma, tol):
        raise UnsupportedStateError("GGM is implemented for pure states only")
    return sigma, n


def _result(sigma, subsets, lam, row):
    subset = subsets[row]
    spectrum = tuple(symplectic_spectrum(reduce(sigma, subset)).tolist())
    return GgmResult(
        value=1.0 - float(lam),
        lambda_max=float(lam),
        argmax_subset=subset,
        argmax_spectrum=spectrum,
    )


def compute_ggm(sigma, tol_pure=TOL_PURE):
    """GGM by exhaustive search over every subset of up to ``n // 2`` modes.

    Ties are resolved in favour of the lexicographically smallest subset.
    Refuses ``n > MAX_FULL_MODES``; use :func:`compute_ggm_single_mode` there.
    """
    sigma, n = _check_pure_multimode(sigma, tol_pure)
    if n > MAX_FULL_MODES:
        raise InvalidArgumentError(
            f"full GGM enumeration is capped at {MAX_FULL_MODES} modes (got {n}); "
            "use the single-mode approximation"
        )
    table, sizes = _table(n, False)
    lam, row = _kernels.max_schmidt(sigma[None], table, sizes)
    return _result(sigma, bipartition_subsets(n), lam[0], int(row[0]))


def compute_ggm_single_mode(sigma, tol_pure=TOL_PURE):
    """GGM restricted to single-mode bipartitions.

    Cost is linear in ``n``. Exact for ``n <= 3`` and accurate only when the
    largest Schmidt coefficient sits in a one-mode reduction, which is the
    typical situation for many modes. Never smaller than :func:`compute_ggm`.
    """
    sigma, n = _check_pure_multimode(sigma, tol_pure)
    table, sizes = _table(n, True)
    lam, row = _kernels.max_schmidt(sigma[None], table, sizes)
    return _result(sigma, bipartition_subsets(n, True), lam[0], int(row[0]))


def ggm_values(sigmas, single_mode=False):
    """GGM of a batch ``(count, 2n, 2n)`` of pure states, without validation."""
    sigmas = np.asarray(sigmas, dtype=float)
    n = sigmas.shape[-1] // 2
    if not single_mode and n > MAX_FULL_MODES:
        raise InvalidArgumentError(
            f"full GGM enumeration is capped at {MAX_FULL_MODES} modes (got {n})"
        )
    table, sizes = _table(n, single_mode)
    lam, _ = _kernels.max_schmidt(sigmas, table, sizes)
    return 1.0 - lam


def asymptotic_ggm(nu_bar):
    """Large-n Haar-averaged GGM, ``(nu_bar - 1) / (nu_bar + 1)``."""
    if not nu_bar >= 1.0 or math.isinf(nu_bar):
        raise InvalidArgumentError(f"nu_bar must be a finite number >= 1, got {nu_bar!r}")
    return (nu_bar - 1.0) / (nu_bar + 1.0)
