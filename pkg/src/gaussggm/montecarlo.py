"""Monte Carlo ensembles of Haar-random pure Gaussian states.

Ensembles are split over ``workers`` independent random sub-streams (see
:mod:`gaussggm.haar`). Worker ``w`` draws ``samples // workers`` states, plus
one when ``w < samples % workers``, and the per-worker GGM values are
concatenated in worker order. For a fixed ``(seed, workers)`` every statistic
is reproducible bit for bit; different worker counts give different (equally
valid) samples.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from .errors import InvalidArgumentError
from .ggm import MAX_FULL_MODES, asymptotic_ggm, ggm_values
from .haar import RandomStateSpec, sample_states, worker_rng
from .symplectic import symplectic_spectra

GGM_MODES = ("full", "single_mode")

# keep each batch of covariance matrices around 32 MB
_BATCH_DOUBLES = 1 << 22

__all__ = [
    "EnsembleSpec",
    "Histogram",
    "EnsembleStats",
    "TailEstimate",
    "EquivalenceReport",
    "ProbeSummary",
    "ensemble_values",
    "summarize",
    "run_ensemble",
    "tail_from_values",
    "tail_probability",
    "ks_critical_value",
    "compare_samples",
    "gamma_equivalence_test",
    "left_invariance_test",
    "symplectic_concentration_probe",
]


@dataclass(frozen=True)
class EnsembleSpec:
    state: RandomStateSpec
    samples: int = 100_000
    ggm_mode: str = "full"
    workers: int = 1

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 1:
            raise InvalidArgumentError(f"samples must be a positive integer, got {self.samples!r}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise InvalidArgumentError(f"workers must be a positive integer, got {self.workers!r}")
        if self.ggm_mode not in GGM_MODES:
            raise InvalidArgumentError(f"ggm_mode must be one of {GGM_MODES}, got {self.ggm_mode!r}")
        if self.state.n < 2:
            raise InvalidArgumentError("GGM ensembles need at least two modes")
        if self.ggm_mode == "full" and self.state.n > MAX_FULL_MODES:
            raise InvalidArgumentError(
                f"full GGM mode is capped at n={MAX_FULL_MODES}; use ggm_mode='single_mode'"
            )

    @property
    def single_mode(self):
        return self.ggm_mode == "single_mode"

    def worker_counts(self):
        base, extra = divmod(self.samples, self.workers)
        return [base + (w < extra) for w in range(self.workers)]


@dataclass(frozen=True)
class Histogram:
    """Right-closed bins ``(x - width, x]`` with right edges ``0, width, 2 width, ...``.

    The first bin, with right edge 0, only ever holds exact zeros.
    """

    bin_width: float
    right_edges: tuple
    counts: tuple

    @property
    def total(self):
        return sum(self.counts)

    @property
    def fractions(self):
        total = self.total
        return tuple(c / total for c in self.counts)

    @classmethod
    def from_values(cls, values, bin_width=0.05, upper=1.0):
        if not bin_width > 0:
            raise InvalidArgumentError(f"bin width must be positive, got {bin_width!r}")
        values = np.asarray(values, dtype=float)
        nbins = int(math.ceil(upper / bin_width - 1e-12)) + 1
        index = np.clip(np.ceil(values / bin_width), 0, nbins - 1).astype(np.int64)
        counts = np.bincount(index, minlength=nbins)
        edges = tuple(round(k * bin_width, 12) for k in range(nbins))
        return cls(float(bin_width), edges, tuple(int(c) for c in counts))

    def to_dict(self):
        return {
            "bin_width": self.bin_width,
            "right_edges": list(self.right_edges),
            "counts": list(self.counts),
            "fractions": list(self.fractions),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            float(data["bin_width"]),
            tuple(float(e) for e in data["right_edges"]),
            tuple(int(c) for c in data["counts"]),
        )

    def to_csv(self):
        lines = ["bin_right_edge,fraction"]
        lines += [f"{e!r},{f!r}" for e, f in zip(self.right_edges, self.fractions)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EnsembleStats:
    n: int
    nu_bar: float
    samples: int
    mean: float
    stddev: float
    sum_g: float
    sum_g2: float
    histogram: Histogram
    ggm_mode: str = "full"
    seed: int = 0
    workers: int = 1
    gamma: object = "uniform"

    @property
    def stderr(self):
        """Standard error of the mean."""
        return self.stddev / math.sqrt(self.samples)

    @property
    def stddev_stderr(self):
        """Large-sample standard error of the standard deviation."""
        return self.stddev / math.sqrt(2.0 * max(self.samples - 1, 1))

    def to_dict(self):
        data = asdict(self)
        data["histogram"] = self.histogram.to_dict()
        data["gamma"] = self.gamma if isinstance(self.gamma, str) else list(self.gamma)
        return data

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["histogram"] = Histogram.from_dict(data["histogram"])
        if not isinstance(data.get("gamma", "uniform"), str):
            data["gamma"] = tuple(data["gamma"])
        return cls(**data)


@dataclass(frozen=True)
class TailEstimate:
    epsilons: tuple
    probabilities: tuple
    reference: float
    n: int
    samples: int
    fitted_c: object = None

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["epsilons"] = tuple(data["epsilons"])
        data["probabilities"] = tuple(data["probabilities"])
        return cls(**data)


@dataclass(frozen=True)
class EquivalenceReport:
    ks_statistic: float
    p_value: float
    critical_value: float
    alpha: float
    mean_a: float
    mean_b: float
    stddev_a: float
    stddev_b: float
    samples: int

    @property
    def equivalent(self):
        """Verdict: same distribution is not rejected at level ``alpha``."""
        return self.ks_statistic <= self.critical_value

    def to_dict(self):
        data = asdict(self)
        data["equivalent"] = self.equivalent
        return data


@dataclass(frozen=True)
class ProbeSummary:
    n: int
    nu_bar: float
    k: int
    samples: int
    mean_nu: tuple
    stddev_nu: tuple
    mean_deviation: tuple = field(default=())

    def to_dict(self):
        return asdict(self)


def _worker_values(spec, worker, count):
    rng = worker_rng(spec.state.seed, worker)
    n = spec.state.n
    batch = max(1, _BATCH_DOUBLES // (4 * n * n))
    out = np.empty(count)
    done = 0
    while done < count:
        size = min(batch, count - done)
        sigmas = sample_states(spec.state, size, rng)
        out[done : done + size] = ggm_values(sigmas, spec.single_mode)
        done += size
    return out


def ensemble_values(spec):
    """GGM of every sampled state, concatenated in worker order."""
    counts = spec.worker_counts()
    if spec.workers == 1:
        return _worker_values(spec, 0, counts[0])
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        futures = [pool.submit(_worker_values, spec, w, c) for w, c in enumerate(counts)]
        return np.concatenate([f.result() for f in futures])


def summarize(values, spec, bin_width=0.05):
    values = np.asarray(values, dtype=float)
    count = values.size
    # fsum is correctly rounded, so the moments do not depend on summation order
    sum_g = math.fsum(values.tolist())
    sum_g2 = math.fsum((values * values).tolist())
    mean = sum_g / count
    var = sum_g2 / count - mean * mean
    state = spec.state
    return EnsembleStats(
        n=state.n,
        nu_bar=state.nu_bar,
        samples=count,
        mean=mean,
        stddev=math.sqrt(max(var, 0.0)),
        sum_g=sum_g,
        sum_g2=sum_g2,
        histogram=Histogram.from_values(values, bin_width),
        ggm_mode=spec.ggm_mode,
        seed=state.seed,
        workers=spec.workers,
        gamma=state.gamma,
    )


def run_ensemble(spec, bin_width=0.05):
    """Sample ``spec.samples`` states and return GGM moments and histogram."""
    return summarize(ensemble_values(spec), spec, bin_width)


def tail_from_values(values, reference, epsilons, n):
    """Empirical ``P{(G - reference)^2 > eps}`` on a sorted ``epsilons`` grid.

    ``fitted_c`` is the least-squares slope through the origin of
    ``-log p`` against ``eps^2 n``, using only grid points with ``p > 0``;
    it is ``None`` when every probability vanishes.
    """
    eps = np.unique(np.asarray(epsilons, dtype=float))
    if eps.size == 0:
        raise InvalidArgumentError("epsilon grid is empty")
    if np.any(eps <= 0):
        raise InvalidArgumentError("epsilon values must be positive")
    if not 0.0 <= reference < 1.0:
        raise InvalidArgumentError(f"reference must lie in [0, 1), got {reference!r}")
    values = np.asarray(values, dtype=float)
    dev = np.sort((values - reference) ** 2)
    exceed = values.size - np.searchsorted(dev, eps, side="right")
    prob = exceed / values.size
    mask = prob > 0
    fitted_c = None
    if np.any(mask):
        x = eps[mask] ** 2 * n
        fitted_c = float(-np.sum(x * np.log(prob[mask])) / np.sum(x * x))
    return TailEstimate(
        epsilons=tuple(eps.tolist()),
        probabilities=tuple(prob.tolist()),
        reference=float(reference),
        n=int(n),
        samples=int(values.size),
        fitted_c=fitted_c,
    )


def tail_probability(spec, reference=None, epsilons=(1e-4, 3e-4, 1e-3, 3e-3, 1e-2)):
    """Tail estimate around ``reference`` (default: the large-n closed form)."""
    if reference is None:
        reference = asymptotic_ggm(spec.state.nu_bar)
    return tail_from_values(ensemble_values(spec), reference, epsilons, spec.state.n)


def ks_critical_value(size_a, size_b, alpha=0.01):
    """Asymptotic two-sample Kolmogorov-Smirnov critical value."""
    c_alpha = math.sqrt(-math.log(alpha / 2.0) / 2.0)
    return c_alpha * math.sqrt((size_a + size_b) / (size_a * size_b))


def compare_samples(a, b, alpha=0.01):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    result = stats.ks_2samp(a, b)
    return EquivalenceReport(
        ks_statistic=float(result.statistic),
        p_value=float(result.pvalue),
        critical_value=ks_critical_value(a.size, b.size, alpha),
        alpha=alpha,
        mean_a=float(a.mean()),
        mean_b=float(b.mean()),
        stddev_a=float(a.std()),
        stddev_b=float(b.std()),
        samples=int(a.size),
    )


def gamma_equivalence_test(spec_a, spec_b, alpha=0.01):
    """Compare GGM distributions of two ensembles that differ only in their squeezing spectrum.

    Reports the KS statistic and a verdict; it does not presume the
    distributions agree.
    """
    sa, sb = spec_a.state, spec_b.state
    if (sa.n, sa.nu_bar, spec_a.samples) != (sb.n, sb.nu_bar, spec_b.samples):
        raise InvalidArgumentError(
            "ensembles must share n, nu_bar and sample count: "
            f"{(sa.n, sa.nu_bar, spec_a.samples)} vs {(sb.n, sb.nu_bar, spec_b.samples)}"
        )
    return compare_samples(ensemble_values(spec_a), ensemble_values(spec_b), alpha)


def left_invariance_test(spec, left, alpha=0.01, other_seed=None):
    """KS comparison of GGM for ``O Gamma O^T`` against ``(L O) Gamma (L O)^T``.

    ``left`` is a fixed orthosymplectic matrix. The two ensembles use
    independent seeds (``other_seed`` defaults to ``seed + 1``).
    """
    left = np.asarray(left, dtype=float)
    base = ensemble_values(spec)
    state = spec.state
    seed = (state.seed + 1) % 2**64 if other_seed is None else other_seed
    rng = worker_rng(seed, 0)
    sigmas = sample_states(state, spec.samples, rng)
    rotated = left[None] @ sigmas @ left.T[None]
    rotated = 0.5 * (rotated + rotated.transpose(0, 2, 1))
    return compare_samples(base, ggm_values(rotated, spec.single_mode), alpha)


def symplectic_concentration_probe(n, nu_bar, k=1, samples=1000, seed=42):
    """Statistics of the symplectic spectrum of the first ``k`` modes.

    Returns per-rank (descending) mean and standard deviation of ``nu_i`` and
    the mean of ``nu_i - nu_bar``.
    """
    if not 1 <= k <= n // 2:
        raise InvalidArgumentError(f"k must lie in [1, {n // 2}] for n={n}, got {k}")
    state = RandomStateSpec(n=n, nu_bar=nu_bar, seed=seed)
    rng = worker_rng(seed, 0)
    batch = max(1, _BATCH_DOUBLES // (4 * n * n))
    idx = np.r_[0:k, n : n + k]
    spectra = []
    done = 0
    while done < samples:
        size = min(batch, samples - done)
        sigmas = sample_states(state, size, rng)
        spectra.append(symplectic_spectra(sigmas[:, idx[:, None], idx[None, :]]))
        done += size
    nu = np.concatenate(spectra)
    mean = nu.mean(axis=0)
    return ProbeSummary(
        n=n,
        nu_bar=float(nu_bar),
        k=k,
        samples=samples,
        mean_nu=tuple(mean.tolist()),
        stddev_nu=tuple(nu.std(axis=0).tolist()),
        mean_deviation=tuple((mean - nu_bar).tolist()),
    )
