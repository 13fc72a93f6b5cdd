"""Haar-random pure Gaussian states on a fixed average-energy-per-mode shell.

A pure state is drawn as ``sigma = O Gamma O^T`` where ``O`` is the
orthosymplectic image of a Haar-random unitary and
``Gamma = diag(z_1, ..., z_n, 1/z_1, ..., 1/z_n)`` is a squeezing spectrum with
``sum(z_i + 1/z_i) / 2n = nu_bar``.

Random streams
--------------
Every draw comes from a :class:`numpy.random.Generator` over PCG64. A state
seed ``s`` maps to ``SeedSequence(s)``; ensemble worker ``w`` uses
``SeedSequence(s, spawn_key=(w,))``. One unitary of size ``n`` consumes
exactly ``2 n**2`` standard normals, filling the complex Ginibre matrix in
column-major order with the real part of each entry drawn before its
imaginary part. Nothing else is drawn, so batched and one-at-a-time sampling
produce identical sequences.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolationError, InvalidArgumentError
from .symplectic import TOL_PHYS

TOL_UNITARY = 1e-10
TOL_SHELL = 1e-10

__all__ = [
    "SqueezingSpectrum",
    "RandomStateSpec",
    "make_rng",
    "worker_rng",
    "sample_haar_unitary",
    "haar_unitaries",
    "embed_unitary",
    "uniform_squeezing",
    "validate_squeezing",
    "sample_state",
    "sample_states",
]


@dataclass(frozen=True)
class SqueezingSpectrum:
    """Diagonal squeezing values ``z_i >= 1`` on the ``nu_bar`` energy shell."""

    z: tuple
    nu_bar: float

    @property
    def n(self):
        return len(self.z)

    def gamma(self):
        z = np.asarray(self.z, dtype=float)
        return np.diag(np.concatenate([z, 1.0 / z]))


@dataclass(frozen=True)
class RandomStateSpec:
    n: int
    nu_bar: float
    seed: int = 42
    gamma: object = "uniform"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidArgumentError(f"n must be a positive integer, got {self.n!r}")
        if not self.nu_bar >= 1.0:
            raise InvalidArgumentError(f"nu_bar must be >= 1, got {self.nu_bar!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "nu_bar", float(self.nu_bar))
        object.__setattr__(self, "seed", int(self.seed))
        if isinstance(self.gamma, str):
            if self.gamma != "uniform":
                raise InvalidArgumentError(f"unknown gamma policy {self.gamma!r}")
        else:
            z = tuple(float(v) for v in self.gamma)
            if len(z) != self.n:
                raise InvalidArgumentError(
                    f"explicit gamma has {len(z)} entries, expected n={self.n}"
                )
            object.__setattr__(self, "gamma", z)

    def squeezing(self):
        if self.gamma == "uniform":
            return uniform_squeezing(self.n, self.nu_bar)
        return validate_squeezing(self.gamma, self.nu_bar)

    def replace(self, **changes):
        fields = {"n": self.n, "nu_bar": self.nu_bar, "seed": self.seed, "gamma": self.gamma}
        fields.update(changes)
        return RandomStateSpec(**fields)


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def worker_rng(seed, worker):
    """Independent sub-stream for ensemble worker ``worker``."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(worker,)))
    )


def haar_unitaries(n, count, rng):
    """Draw ``count`` Haar-random ``n x n`` unitaries, shape ``(count, n, n)``.

    Complex Ginibre matrices are orthonormalized by QR and the phases are fixed
    so that ``R`` has a positive real diagonal; without that step the
    distribution is not Haar.
    """
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"dimension must be a positive integer, got {n!r}")
    n = int(n)
    raw = rng.standard_normal((count, n * n, 2))
    z = (raw[..., 0] + 1j * raw[..., 1]) / math.sqrt(2.0)
    z = z.reshape(count, n, n).transpose(0, 2, 1)  # column-major fill
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def sample_haar_unitary(n, rng):
    return haar_unitaries(n, 1, rng)[0]


def _embed(u):
    re, im = u.real, u.imag
    top = np.concatenate([re, im], axis=-1)
    bottom = np.concatenate([-im, re], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def embed_unitary(u, tol=TOL_UNITARY):
    """Map ``U`` in U(n) to ``[[Re U, Im U], [-Im U, Re U]]`` in K(n)."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {u.shape}")
    err = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if err > tol:
        raise InvalidArgumentError(f"matrix is not unitary (||U^dag U - I|| = {err:.3e})")
    return _embed(u)


def uniform_squeezing(n, nu_bar):
    """All ``z_i`` equal to ``nu_bar + sqrt(nu_bar**2 - 1)``, the root of ``(z + 1/z)/2 = nu_bar``."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    if not nu_bar >= 1.0:
        raise InvalidArgumentError(f"nu_bar must be >= 1, got {nu_bar!r}")
    z = nu_bar + math.sqrt(nu_bar * nu_bar - 1.0)
    return SqueezingSpectrum(z=(z,) * int(n), nu_bar=float(nu_bar))


def validate_squeezing(z, nu_bar, tol=TOL_SHELL):
    """Accept a user-supplied squeezing spectrum if it lies on the ``nu_bar`` shell.

    Values below one are replaced by their reciprocal (a q/p relabeling of that
    mode); values within ``TOL_PHYS`` of one are snapped to one.
    """
    z = np.asarray(z, dtype=float).ravel()
    if z.size == 0:
        raise InvalidArgumentError("squeezing spectrum is empty")
    if not np.all(np.isfinite(z)) or np.any(z <= 0):
        raise InvalidArgumentError("squeezing values must be finite and positive")
    z = np.where(z < 1.0, 1.0 / z, z)
    z = np.where(z - 1.0 <= TOL_PHYS, 1.0, z)
    energy = float(np.sum(z + 1.0 / z)) / (2 * z.size)
    residual = energy - nu_bar
    if abs(residual) > tol:
        raise ConstraintViolationError(
            f"squeezing spectrum has energy per mode {energy!r}, "
            f"off the nu_bar={nu_bar!r} shell by {residual:.3e}",
            residual=residual,
        )
    return SqueezingSpectrum(z=tuple(z.tolist()), nu_bar=float(nu_bar))


def sample_states(spec, count, rng):
    """Draw ``count`` covariance matrices ``O Gamma O^T``, shape ``(count, 2n, 2n)``."""
    gamma_diag = np.diag(spec.squeezing().gamma())
    o = _embed(haar_unitaries(spec.n, count, rng))
    if np.all(gamma_diag == 1.0):
        # vacuum is invariant under passive operations
        return np.broadcast_to(np.eye(2 * spec.n), o.shape).copy()
    sigma = (o * gamma_diag[None, None, :]) @ o.transpose(0, 2, 1)
    # exact symmetry; matmul leaves ~1e-16 asymmetry
    return 0.5 * (sigma + sigma.transpose(0, 2, 1))


def sample_state(spec, rng=None):
    """One Haar-random state; with ``rng=None`` the stream is seeded from ``spec.seed``."""
    if rng is None:
        rng = make_rng(spec.seed)
    return sample_states(spec, 1, rng)[0]
