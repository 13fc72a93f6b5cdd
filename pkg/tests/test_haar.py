import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussggm import haar
from gaussggm.errors import ConstraintViolationError, InvalidArgumentError
from gaussggm.symplectic import average_energy_per_mode, is_orthosymplectic, is_pure, symplectic_spectrum


def test_single_mode_phase_is_uniform():
    u = haar.haar_unitaries(1, 100_000, haar.make_rng(0))[:, 0, 0]
    assert np.allclose(np.abs(u), 1.0)
    assert abs(u.mean()) <= 0.02


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_unitarity(n):
    for u in haar.haar_unitaries(n, 20, haar.make_rng(n)):
        assert np.linalg.norm(u.conj().T @ u - np.eye(n)) <= 1e-10


def test_first_moment():
    n, count = 4, 100_000
    # fixed seed; a max over n^2 entries at 3 SE misses a few percent of seeds
    u = haar.haar_unitaries(n, count, haar.make_rng(0))
    p = np.abs(u) ** 2
    # |U_jk|^2 ~ Beta(1, n-1): variance (n-1) / (n^2 (n+1))
    se = math.sqrt((n - 1) / (n * n * (n + 1)) / count)
    assert np.all(np.abs(p.mean(axis=0) - 1 / n) <= 3 * se)


def test_trace_moments():
    # For Haar U(n), E|Tr U|^2 = 1 and E|Tr U|^4 = 2 (n >= 2). The uncorrected
    # QR of a Ginibre matrix biases both.
    n, count = 3, 100_000
    t = np.abs(np.trace(haar.haar_unitaries(n, count, haar.make_rng(2)), axis1=1, axis2=2)) ** 2
    assert t.mean() == pytest.approx(1.0, abs=5 * t.std() / math.sqrt(count))
    t2 = t * t
    assert t2.mean() == pytest.approx(2.0, abs=5 * t2.std() / math.sqrt(count))


def test_batched_matches_sequential():
    rng_a, rng_b = haar.make_rng(9), haar.make_rng(9)
    batch = haar.haar_unitaries(4, 7, rng_a)
    seq = np.stack([haar.sample_haar_unitary(4, rng_b) for _ in range(7)])
    assert np.array_equal(batch, seq)


def test_stream_consumption_is_documented_order():
    rng = haar.make_rng(5)
    u = haar.sample_haar_unitary(3, rng)
    raw = haar.make_rng(5).standard_normal(18)
    z = (raw[0::2] + 1j * raw[1::2]).reshape(3, 3, order="F") / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    assert np.allclose(u, q * (d / abs(d)), atol=1e-14)
    # nothing else was drawn
    assert rng.standard_normal() == haar.make_rng(5).standard_normal(19)[-1]


def test_embed_examples():
    assert np.array_equal(haar.embed_unitary(np.eye(3)), np.eye(6))
    o = haar.embed_unitary(1j * np.eye(2))
    eye, zero = np.eye(2), np.zeros((2, 2))
    assert np.array_equal(o, np.block([[zero, eye], [-eye, zero]]))


def test_embed_homomorphism():
    rng = haar.make_rng(4)
    u, v = haar.sample_haar_unitary(5, rng), haar.sample_haar_unitary(5, rng)
    lhs = haar.embed_unitary(u) @ haar.embed_unitary(v)
    assert np.allclose(lhs, haar.embed_unitary(u @ v), atol=1e-10)
    assert is_orthosymplectic(haar.embed_unitary(u))


def test_embed_rejects_non_unitary():
    with pytest.raises(InvalidArgumentError):
        haar.embed_unitary(2 * np.eye(2))


@pytest.mark.parametrize("nu_bar, z", [(1.0, 1.0), (2.6, 5.0), (1.25, 2.0)])
def test_uniform_squeezing(nu_bar, z):
    spec = haar.uniform_squeezing(4, nu_bar)
    assert spec.z == pytest.approx((z,) * 4, rel=1e-15)
    assert np.sum(np.array(spec.z) + 1 / np.array(spec.z)) / 8 == pytest.approx(nu_bar, abs=1e-12)


def test_uniform_squeezing_rejects():
    with pytest.raises(InvalidArgumentError):
        haar.uniform_squeezing(3, 0.9)


def test_validate_squeezing():
    assert haar.validate_squeezing([5, 5, 5], 2.6).z == (5.0, 5.0, 5.0)
    s = 6 * 2.6 - 4
    z1 = (s + math.sqrt(s * s - 4)) / 2
    assert z1 == pytest.approx(11.5131, abs=1e-4)
    spec = haar.validate_squeezing([z1, 1, 1], 2.6)
    assert spec.z[1:] == (1.0, 1.0)
    with pytest.raises(ConstraintViolationError) as err:
        haar.validate_squeezing([2, 2, 2], 2.6)
    assert err.value.residual == pytest.approx(1.25 - 2.6)


def test_validate_squeezing_reciprocal():
    assert haar.validate_squeezing([0.2, 5.0], 2.6).z == pytest.approx((5.0, 5.0))
    assert haar.validate_squeezing([1 - 1e-12], 1.0).z == (1.0,)


def test_vacuum_shell_gives_identity():
    for n in (1, 4):
        sigma = haar.sample_state(haar.RandomStateSpec(n=n, nu_bar=1.0, seed=3))
        assert np.array_equal(sigma, np.eye(2 * n))


def test_energy_shell_over_many_seeds():
    worst = 0.0
    for seed in range(10_000):
        sigma = haar.sample_state(haar.RandomStateSpec(n=3, nu_bar=2.6, seed=seed))
        worst = max(worst, abs(np.trace(sigma) / 6 - 2.6))
    assert worst <= 1e-10


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 10), nu_bar=st.floats(1.0, 8.0), seed=st.integers(0, 2**64 - 1))
def test_sampled_states_are_valid(n, nu_bar, seed):
    sigma = haar.sample_state(haar.RandomStateSpec(n=n, nu_bar=nu_bar, seed=seed))
    assert np.array_equal(sigma, sigma.T)
    assert is_pure(sigma)
    assert np.allclose(symplectic_spectrum(sigma), 1.0, atol=1e-6)
    assert average_energy_per_mode(sigma) == pytest.approx(nu_bar, abs=1e-10)


def test_explicit_gamma_policy():
    spec = haar.RandomStateSpec(n=2, nu_bar=2.6, seed=1, gamma=[5.0, 0.2])
    sigma = haar.sample_state(spec)
    assert average_energy_per_mode(sigma) == pytest.approx(2.6, abs=1e-12)
    with pytest.raises(ConstraintViolationError):
        haar.RandomStateSpec(n=2, nu_bar=2.6, gamma=[2.0, 2.0]).squeezing()


def test_determinism():
    spec = haar.RandomStateSpec(n=5, nu_bar=2.6, seed=2**63 + 7)
    assert np.array_equal(haar.sample_state(spec), haar.sample_state(spec))
    assert not np.array_equal(haar.sample_state(spec), haar.sample_state(spec.replace(seed=1)))


@pytest.mark.parametrize(
    "kwargs",
    [dict(n=0, nu_bar=2.0), dict(n=2, nu_bar=0.5), dict(n=2, nu_bar=2.0, seed=-1),
     dict(n=2, nu_bar=2.0, seed=2**64), dict(n=2, nu_bar=2.0, gamma="literal"),
     dict(n=2, nu_bar=2.0, gamma=[1.0])],
)
def test_spec_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        haar.RandomStateSpec(**kwargs)


def test_worker_streams_independent():
    a = haar.worker_rng(7, 0).standard_normal(4)
    b = haar.worker_rng(7, 1).standard_normal(4)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, haar.worker_rng(7, 0).standard_normal(4))
