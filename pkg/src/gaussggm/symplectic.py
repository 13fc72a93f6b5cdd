"""Phase-space linear algebra for zero-mean Gaussian states.

All matrices use the block quadrature ordering ``(q_1, ..., q_n, p_1, ..., p_n)``
and the convention that the vacuum covariance matrix is the identity, so that
every symplectic eigenvalue of a physical state is at least one.

Mode indices are 0-based throughout.
"""

import numpy as np

from .errors import InvalidArgumentError, UnphysicalStateError

TOL_SYM = 1e-10
TOL_PHYS = 1e-8
TOL_PURE = 1e-8

__all__ = [
    "TOL_SYM",
    "TOL_PHYS",
    "TOL_PURE",
    "symplectic_form",
    "mode_count",
    "check_covariance",
    "mode_subset",
    "reduce",
    "symplectic_spectrum",
    "symplectic_spectra",
    "average_energy_per_mode",
    "is_pure",
    "is_orthosymplectic",
    "tmsv_covariance",
]


def symplectic_form(n):
    """Return ``J = [[0, -I], [I, 0]]`` for ``n`` modes."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"mode count must be a positive integer, got {n!r}")
    n = int(n)
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


def mode_count(matrix):
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] == 0 or matrix.shape[0] % 2:
        raise InvalidArgumentError(
            f"phase-space matrices have even positive dimension, got {matrix.shape[0]}"
        )
    return matrix.shape[0] // 2


def check_covariance(sigma, tol_sym=TOL_SYM):
    """Validate shape, finiteness and symmetry; return ``sigma`` as a float array."""
    sigma = np.asarray(sigma, dtype=float)
    mode_count(sigma)
    if not np.all(np.isfinite(sigma)):
        raise InvalidArgumentError("covariance matrix has non-finite entries")
    asym = np.max(np.abs(sigma - sigma.T))
    if asym > tol_sym:
        raise InvalidArgumentError(
            f"covariance matrix is not symmetric (max asymmetry {asym:.3e} > {tol_sym:.0e})"
        )
    return sigma


def mode_subset(indices, n):
    """Normalize ``indices`` into a sorted tuple of distinct modes in ``range(n)``."""
    try:
        idx = [int(i) for i in indices]
    except TypeError:
        idx = [int(indices)]
    if not idx:
        raise InvalidArgumentError("mode subset must be non-empty")
    if len(set(idx)) != len(idx):
        raise InvalidArgumentError(f"mode subset has duplicates: {idx}")
    bad = [i for i in idx if not 0 <= i < n]
    if bad:
        raise InvalidArgumentError(f"mode indices {bad} out of range for {n} modes")
    return tuple(sorted(idx))


def reduce(sigma, subset):
    """Covariance matrix of the modes in ``subset``, repacked in block ordering."""
    sigma = np.asarray(sigma, dtype=float)
    n = mode_count(sigma)
    subset = mode_subset(subset, n)
    rows = list(subset) + [i + n for i in subset]
    return sigma[np.ix_(rows, rows)]


def symplectic_spectrum(sigma, tol_sym=TOL_SYM, tol_phys=TOL_PHYS):
    """Symplectic eigenvalues of ``sigma``, sorted in descending order.

    The eigenvalues of ``iJ sigma`` come in pairs ``+nu, -nu``. Their moduli are
    sorted and each pair is averaged, which removes the small splitting a
    general eigensolver introduces. Values that undershoot one by no more than
    ``tol_phys`` are clamped to one.

    Raises
    ------
    InvalidArgumentError
        If ``sigma`` is not a symmetric phase-space matrix.
    UnphysicalStateError
        If a symplectic eigenvalue is below ``1 - tol_phys``.
    """
    sigma = check_covariance(sigma, tol_sym)
    n = mode_count(sigma)
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ sigma)))[::-1]
    nu = 0.5 * (moduli[0::2] + moduli[1::2])
    if nu[-1] < 1.0 - tol_phys:
        raise UnphysicalStateError(
            f"symplectic eigenvalue {nu[-1]:.12g} violates the uncertainty principle"
        )
    return np.maximum(nu, 1.0)


def symplectic_spectra(sigmas):
    """Batched :func:`symplectic_spectrum` for a ``(count, 2k, 2k)`` stack, without validation."""
    sigmas = np.asarray(sigmas, dtype=float)
    k = sigmas.shape[-1] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(k) @ sigmas)), axis=-1)
    nu = 0.5 * (moduli[..., 0::2] + moduli[..., 1::2])
    return np.maximum(nu, 1.0)[..., ::-1]


def average_energy_per_mode(sigma):
    """``Tr(sigma) / 2n``; equal to one for the vacuum."""
    sigma = np.asarray(sigma, dtype=float)
    n = mode_count(sigma)
    return float(np.trace(sigma)) / (2 * n)


def is_pure(sigma, tol=TOL_PURE):
    sigma = np.asarray(sigma, dtype=float)
    n = mode_count(sigma)
    js = symplectic_form(n) @ sigma
    return bool(np.linalg.norm(js @ js + np.eye(2 * n)) <= tol)


def is_orthosymplectic(matrix, tol=TOL_SYM):
    """True if ``matrix`` is both orthogonal and symplectic, i.e. lies in K(n)."""
    matrix = np.asarray(matrix)
    if np.iscomplexobj(matrix):
        return False
    n = mode_count(matrix)
    j = symplectic_form(n)
    eye = np.eye(2 * n)
    return bool(
        np.linalg.norm(matrix @ matrix.T - eye) <= tol
        and np.linalg.norm(matrix @ j @ matrix.T - j) <= tol
    )


def tmsv_covariance(r):
    """Two-mode squeezed vacuum with squeezing parameter ``r``."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array(
        [
            [c, s, 0.0, 0.0],
            [s, c, 0.0, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, -s, c],
        ]
    )
