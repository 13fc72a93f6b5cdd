"""JSON and CSV formats.

Covariance matrix::

    {"n": 2, "ordering": "qqpp", "sigma": [[...], ...]}

``sigma`` is the 2n x 2n matrix as nested row-major lists in the
``(q_1..q_n, p_1..p_n)`` ordering. Random-state spec::

    {"n": 3, "nu_bar": 2.6, "seed": 42, "gamma": "uniform" | [z_1, ..., z_n]}

Floats are written with Python's shortest round-trip representation, so every
file reads back bit-identically.
"""

import json

import numpy as np

from .errors import InvalidArgumentError
from .haar import RandomStateSpec
from .symplectic import check_covariance, mode_count

ORDERING = "qqpp"


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def covariance_to_dict(sigma):
    sigma = np.asarray(sigma, dtype=float)
    return {"n": mode_count(sigma), "ordering": ORDERING, "sigma": sigma.tolist()}


def covariance_from_dict(data):
    try:
        n = int(data["n"])
        ordering = data.get("ordering", ORDERING)
        sigma = np.array(data["sigma"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed covariance-matrix document: {exc}") from None
    if ordering != ORDERING:
        raise InvalidArgumentError(f"unsupported quadrature ordering {ordering!r}")
    if sigma.ndim == 1 and sigma.size == 4 * n * n:
        sigma = sigma.reshape(2 * n, 2 * n)
    if sigma.shape != (2 * n, 2 * n):
        raise InvalidArgumentError(f"sigma has shape {sigma.shape}, expected {(2 * n, 2 * n)}")
    return check_covariance(sigma)


def state_spec_to_dict(spec):
    gamma = spec.gamma if isinstance(spec.gamma, str) else list(spec.gamma)
    return {"n": spec.n, "nu_bar": spec.nu_bar, "seed": spec.seed, "gamma": gamma}


def state_spec_from_dict(data):
    try:
        return RandomStateSpec(
            n=data["n"],
            nu_bar=float(data["nu_bar"]),
            seed=data.get("seed", 42),
            gamma=data.get("gamma", "uniform"),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed random-state spec: {exc}") from None


def write_covariance(path, sigma):
    with open(path, "w") as fh:
        fh.write(dumps(covariance_to_dict(sigma)))


def read_covariance(path):
    with open(path) as fh:
        return covariance_from_dict(json.load(fh))


def read_state_spec(path):
    with open(path) as fh:
        return state_spec_from_dict(json.load(fh))
