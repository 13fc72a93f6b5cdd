"""Command-line front end: ``gaussggm <command> [options]``.

Exit status is 0 on success, 1 on a usage error and 2 on a numerical,
validation or I/O error.
"""

import argparse
import json
import os
import sys

from . import io
from .errors import GaussGGMError
from .ggm import asymptotic_ggm, compute_ggm, compute_ggm_single_mode
from .haar import RandomStateSpec, sample_state
from .montecarlo import (
    GGM_MODES,
    EnsembleSpec,
    gamma_equivalence_test,
    run_ensemble,
    tail_probability,
)

DEFAULT_SEED = 42
SEED_ENV = "GAUSS_GGM_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _gamma(text):
    if text == "uniform":
        return text
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 'uniform' or a comma-separated list of numbers, got {text!r}"
        ) from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_state_args(p, n=3):
    p.add_argument("--n", type=int, default=n, help="number of modes (default %(default)s)")
    p.add_argument("--nu-bar", type=float, default=2.6, help="average energy per mode (default %(default)s)")
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or {DEFAULT_SEED})")
    p.add_argument("--gamma", type=_gamma, default="uniform", help="'uniform' or z_1,...,z_n")
    p.add_argument("--spec", default=None, help="random-state spec JSON file (overrides the flags above)")


def _add_ensemble_args(p, ggm_mode="full"):
    _add_state_args(p)
    p.add_argument("--samples", type=int, default=100_000, help="ensemble size (default %(default)s)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default %(default)s)")
    p.add_argument("--ggm-mode", choices=GGM_MODES, default=ggm_mode)


def _add_output_args(p, formats=("json",)):
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser():
    parser = _Parser(prog="gaussggm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="draw one random pure state and emit its covariance matrix")
    _add_state_args(p)
    _add_output_args(p)

    p = sub.add_parser("ggm", help="GGM of a covariance matrix read from JSON")
    p.add_argument("input", help="covariance-matrix JSON file, or - for stdin")
    p.add_argument("--single-mode", action="store_true", help="only single-mode bipartitions")
    _add_output_args(p)

    p = sub.add_parser("ensemble", help="GGM statistics of a random-state ensemble")
    _add_ensemble_args(p)
    p.add_argument("--bins", type=float, default=0.05, help="histogram bin width (default %(default)s)")
    _add_output_args(p, ("json", "csv"))

    p = sub.add_parser("asymptotic", help="large-n Haar-averaged GGM")
    p.add_argument("--nu-bar", type=float, default=2.6)

    p = sub.add_parser("tail", help="empirical tail probabilities of the GGM")
    _add_ensemble_args(p, ggm_mode="single_mode")
    p.add_argument("--reference", type=float, default=None, help="centre (default (nu_bar-1)/(nu_bar+1))")
    p.add_argument("--epsilons", type=_float_list, default=[1e-4, 3e-4, 1e-3, 3e-3, 1e-2])
    _add_output_args(p)

    p = sub.add_parser("gamma-test", help="compare GGM distributions for two squeezing spectra")
    _add_ensemble_args(p)
    p.set_defaults(samples=10_000)
    p.add_argument("--gamma-b", type=_gamma, required=True, help="second squeezing policy")
    p.add_argument("--seed-b", type=int, default=None, help="seed of the second ensemble (default: --seed)")
    _add_output_args(p)

    p = sub.add_parser("table1", help="mean and standard deviation of the GGM for several n")
    p.add_argument("--modes", type=_int_list, default=[3, 4, 5, 6])
    p.add_argument("--nu-bar", type=float, default=2.6)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    _add_output_args(p, ("text", "json"))
    return parser


def _state_spec(args):
    if args.spec:
        return io.read_state_spec(args.spec)
    seed = _default_seed() if args.seed is None else args.seed
    return RandomStateSpec(n=args.n, nu_bar=args.nu_bar, seed=seed, gamma=args.gamma)


def _ensemble_spec(args, state=None):
    return EnsembleSpec(
        state=state or _state_spec(args),
        samples=args.samples,
        ggm_mode=args.ggm_mode,
        workers=args.workers,
    )


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sample(args):
    _emit(args, io.dumps(io.covariance_to_dict(sample_state(_state_spec(args)))))


def _cmd_ggm(args):
    if args.input == "-":
        sigma = io.covariance_from_dict(json.load(sys.stdin))
    else:
        sigma = io.read_covariance(args.input)
    result = compute_ggm_single_mode(sigma) if args.single_mode else compute_ggm(sigma)
    _emit(args, io.dumps(result.to_dict()))


def _cmd_ensemble(args):
    stats = run_ensemble(_ensemble_spec(args), bin_width=args.bins)
    if args.format == "csv":
        _emit(args, stats.histogram.to_csv())
    else:
        _emit(args, io.dumps(stats.to_dict()))


def _cmd_asymptotic(args):
    print(repr(asymptotic_ggm(args.nu_bar)))


def _cmd_tail(args):
    estimate = tail_probability(_ensemble_spec(args), args.reference, args.epsilons)
    _emit(args, io.dumps(estimate.to_dict()))


def _cmd_gamma_test(args):
    spec_a = _ensemble_spec(args)
    seed_b = spec_a.state.seed if args.seed_b is None else args.seed_b
    spec_b = _ensemble_spec(args, spec_a.state.replace(gamma=args.gamma_b, seed=seed_b))
    _emit(args, io.dumps(gamma_equivalence_test(spec_a, spec_b).to_dict()))


def _cmd_table1(args):
    seed = _default_seed() if args.seed is None else args.seed
    rows = []
    for n in args.modes:
        state = RandomStateSpec(n=n, nu_bar=args.nu_bar, seed=seed)
        stats = run_ensemble(EnsembleSpec(state, args.samples, "full", args.workers))
        rows.append(stats)
    if args.format == "json":
        _emit(args, io.dumps([
            {"n": s.n, "mean": s.mean, "stddev": s.stddev, "stderr": s.stderr, "samples": s.samples}
            for s in rows
        ]))
        return
    lines = [f"nu_bar = {args.nu_bar}, N = {args.samples}, seed = {seed}"]
    lines.append("n        " + "".join(f"{s.n:>10d}" for s in rows))
    lines.append("E[G]     " + "".join(f"{s.mean:>10.4f}" for s in rows))
    lines.append("E[dG]    " + "".join(f"{s.stddev:>10.4f}" for s in rows))
    _emit(args, "\n".join(lines) + "\n")


COMMANDS = {
    "sample": _cmd_sample,
    "ggm": _cmd_ggm,
    "ensemble": _cmd_ensemble,
    "asymptotic": _cmd_asymptotic,
    "tail": _cmd_tail,
    "gamma-test": _cmd_gamma_test,
    "table1": _cmd_table1,
}


def run(argv=None):
    """Execute one command; return the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (GaussGGMError, OSError, json.JSONDecodeError) as exc:
        print(f"gaussggm: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
