"""Batched maximal-Schmidt-coefficient kernels.

``max_schmidt(sigmas, subsets, sizes)`` evaluates, for every covariance
matrix in the batch, ``prod_i 2 / (1 + nu_i)`` over the symplectic spectrum of
each listed mode subset and returns the maximum and the index of the first
subset attaining it.

Two implementations:

* ``max_schmidt_numpy`` stacks the reduced matrices of one subset across the
  batch and runs a general complex eigensolver on ``iJ sigma``.
* ``max_schmidt_numba`` loops per state and per subset. One- and two-mode
  reductions use the closed forms ``nu = sqrt(det A)`` and
  ``nu_+ nu_- = sqrt(det sigma)``, ``nu_+^2 + nu_-^2 = det A + det B + 2 det C``;
  larger reductions use a Cholesky factor ``sigma = L L^T`` and Jacobi
  eigenvalues of ``(L^T J L)^T (L^T J L)``, whose spectrum is every ``nu_i^2``
  twice.

The module-level ``max_schmidt`` is the numba version unless numba is missing
or ``GAUSS_GGM_DISABLE_NUMBA`` is set.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

# symplectic eigenvalues this close to 1 are treated as exactly 1
CLAMP = 1e-9


def subset_table(subsets):
    """Pack a list of index tuples into a padded ``int64`` table and a size vector."""
    sizes = np.array([len(s) for s in subsets], dtype=np.int64)
    table = np.full((len(subsets), max(sizes)), -1, dtype=np.int64)
    for row, s in enumerate(subsets):
        table[row, : len(s)] = s
    return table, sizes


def _pair_moduli(eig):
    moduli = np.sort(np.abs(eig), axis=-1)
    return 0.5 * (moduli[..., 0::2] + moduli[..., 1::2])


def max_schmidt_numpy(sigmas, table, sizes):
    sigmas = np.asarray(sigmas, dtype=float)
    count, dim, _ = sigmas.shape
    n = dim // 2
    best = np.full(count, -1.0)
    arg = np.zeros(count, dtype=np.int64)
    for row in range(table.shape[0]):
        modes = table[row, : sizes[row]]
        k = modes.size
        idx = np.concatenate([modes, modes + n])
        red = sigmas[:, idx[:, None], idx[None, :]]
        ij = np.zeros((2 * k, 2 * k), dtype=complex)
        ij[:k, k:] = -1j * np.eye(k)
        ij[k:, :k] = 1j * np.eye(k)
        nu = _pair_moduli(np.linalg.eigvals(ij @ red))
        nu = np.where(nu < 1.0 + CLAMP, 1.0, nu)
        lam = np.prod(2.0 / (1.0 + nu), axis=-1)
        better = lam > best
        best = np.where(better, lam, best)
        arg = np.where(better, row, arg)
    return best, arg


@njit(cache=True)
def _clamp(nu):
    if nu < 1.0 + CLAMP:
        return 1.0
    return nu


@njit(cache=True)
def _det2(a, b, c, d):
    return a * d - b * c


@njit(cache=True)
def _det4(m):
    # Laplace expansion along the first two rows
    s = 0.0
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    signs = (1.0, -1.0, 1.0, 1.0, -1.0, 1.0)
    for t in range(6):
        i, j = pairs[t]
        k, l = pairs[5 - t]
        s += signs[t] * _det2(m[0, i], m[0, j], m[1, i], m[1, j]) * _det2(
            m[2, k], m[2, l], m[3, k], m[3, l]
        )
    return s


@njit(cache=True)
def _schmidt_one(sig, a, n):
    det = sig[a, a] * sig[a + n, a + n] - sig[a, a + n] * sig[a + n, a]
    nu = _clamp(np.sqrt(max(det, 1.0)))
    return 2.0 / (1.0 + nu)


@njit(cache=True)
def _schmidt_two(sig, a, b, n):
    idx = (a, a + n, b, b + n)
    m = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            m[i, j] = sig[idx[i], idx[j]]
    det_a = _det2(m[0, 0], m[0, 1], m[1, 0], m[1, 1])
    det_b = _det2(m[2, 2], m[2, 3], m[3, 2], m[3, 3])
    det_c = _det2(m[0, 2], m[0, 3], m[1, 2], m[1, 3])
    delta = det_a + det_b + 2.0 * det_c
    prod = np.sqrt(max(_det4(m), 1.0))
    total = np.sqrt(max(delta + 2.0 * prod, 4.0))
    gap = np.sqrt(max(total * total - 4.0 * prod, 0.0))
    nu_hi = _clamp(0.5 * (total + gap))
    nu_lo = _clamp(0.5 * (total - gap))
    return 4.0 / ((1.0 + nu_hi) * (1.0 + nu_lo))


@njit(cache=True)
def _cholesky(a):
    m = a.shape[0]
    low = np.zeros((m, m))
    for j in range(m):
        d = a[j, j]
        for p in range(j):
            d -= low[j, p] * low[j, p]
        low[j, j] = np.sqrt(max(d, 1e-300))
        for i in range(j + 1, m):
            v = a[i, j]
            for p in range(j):
                v -= low[i, p] * low[j, p]
            low[i, j] = v / low[j, j]
    return low


@njit(cache=True)
def _jacobi_eigvalsh(a, tol=1e-15, max_sweeps=64):
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations (destroys ``a``)."""
    m = a.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        scale = 0.0
        for i in range(m):
            scale += a[i, i] * a[i, i]
            for j in range(i + 1, m):
                off += a[i, j] * a[i, j]
        if off <= tol * tol * scale:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for r in range(m):
                    arp = a[r, p]
                    arq = a[r, q]
                    a[r, p] = c * arp - s * arq
                    a[r, q] = s * arp + c * arq
                for r in range(m):
                    apr = a[p, r]
                    aqr = a[q, r]
                    a[p, r] = c * apr - s * aqr
                    a[q, r] = s * apr + c * aqr
    out = np.empty(m)
    for i in range(m):
        out[i] = a[i, i]
    return out


@njit(cache=True)
def _schmidt_general(sig, modes, n):
    # With sigma = L L^T, A = L^T J L is antisymmetric and A^T A has every
    # nu_i^2 twice, so prod_i (1 + nu_i)^2 = prod_j (1 + sqrt(mu_j)).
    k = modes.size
    red = np.empty((2 * k, 2 * k))
    for i in range(2 * k):
        gi = modes[i] if i < k else modes[i - k] + n
        for j in range(2 * k):
            gj = modes[j] if j < k else modes[j - k] + n
            red[i, j] = sig[gi, gj]
    low = _cholesky(red)
    m = 2 * k
    # A = L^T J L, with (J L) = [-L_p; L_q] row blocks
    anti = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            v = 0.0
            for r in range(k):
                v += low[r, i] * -low[r + k, j] + low[r + k, i] * low[r, j]
            anti[i, j] = v
            anti[j, i] = -v
    gram = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            v = 0.0
            for r in range(m):
                v += anti[r, i] * anti[r, j]
            gram[i, j] = v
            gram[j, i] = v
    mu = _jacobi_eigvalsh(gram)
    denom = 1.0
    for j in range(m):
        denom *= 1.0 + _clamp(np.sqrt(max(mu[j], 0.0)))
    return 2.0 ** k / np.sqrt(denom)


@njit(cache=True)
def max_schmidt_numba(sigmas, table, sizes):
    count = sigmas.shape[0]
    n = sigmas.shape[1] // 2
    best = np.full(count, -1.0)
    arg = np.zeros(count, dtype=np.int64)
    for s in range(count):
        sig = sigmas[s]
        for row in range(table.shape[0]):
            k = sizes[row]
            if k == 1:
                lam = _schmidt_one(sig, table[row, 0], n)
            elif k == 2:
                lam = _schmidt_two(sig, table[row, 0], table[row, 1], n)
            else:
                lam = _schmidt_general(sig, table[row, :k].copy(), n)
            if lam > best[s]:
                best[s] = lam
                arg[s] = row
    return best, arg


if HAVE_NUMBA:
    def max_schmidt(sigmas, table, sizes):
        return max_schmidt_numba(np.ascontiguousarray(sigmas, dtype=np.float64), table, sizes)
else:
    max_schmidt = max_schmidt_numpy
