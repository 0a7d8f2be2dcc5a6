import argparse
import logging
import sys

from config.load import load_config
from errors import SubrecError
from harness.commands import cmd_distances, cmd_estimate, cmd_synth
from harness.experiments import (
    cmd_experiment_convergence,
    cmd_experiment_exact_recovery,
    cmd_experiment_noise,
)
from logger import setup_logging

logger = logging.getLogger(__name__)


def _parser(*args, **kwargs):
    return argparse.ArgumentParser(*args, allow_abbrev=False, **kwargs)


def _add_model_flags(parser, inliers=True):
    parser.add_argument("--D", type=int, required=True, help="ambient dimension")
    parser.add_argument("--d", type=int, required=True, help="subspace dimension")
    if inliers:
        parser.add_argument("--n-inliers", type=int, required=True)
    parser.add_argument("--n-outliers", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0, help="64-bit seed; negative values wrap modulo 2**64")


def _add_estimator_flags(parser):
    parser.add_argument("--tol", type=float, default=None, help="relative Frobenius step tolerance")
    parser.add_argument("--max-iter", type=int, default=None)


def _add_output_flags(parser):
    parser.add_argument("--out", required=True)
    parser.add_argument("--force", action="store_true", help="overwrite existing output files")


def build_parser():
    parser = _parser(prog="subrec", description="Tyler's M-estimator for robust subspace recovery")
    parser.add_argument("--config_path", type=str, default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", allow_abbrev=False, help="sample the synthetic inlier/outlier model")
    _add_model_flags(synth)
    synth.add_argument("--noise", type=float, default=0.0)
    synth.add_argument("--rotate", action="store_true", help="randomly rotate the true subspace")
    synth.add_argument("--truth-out", required=True)
    _add_output_flags(synth)
    synth.set_defaults(func=cmd_synth)

    est = commands.add_parser("estimate", allow_abbrev=False, help="run the fixed-point iteration on a CSV")
    est.add_argument("--in", dest="input", required=True)
    est.add_argument("--d", type=int, required=True)
    est.add_argument("--trace", default=None)
    est.add_argument("--truth", default=None)
    _add_estimator_flags(est)
    _add_output_flags(est)
    est.set_defaults(func=cmd_estimate)

    dist = commands.add_parser("distances", allow_abbrev=False,
                               help="distances of held-out points to the fitted subspaces")
    dist.add_argument("--train", required=True)
    dist.add_argument("--test", required=True)
    dist.add_argument("--d", type=int, required=True)
    dist.add_argument("--center", action="store_true", help="mean-center before PCA")
    _add_estimator_flags(dist)
    _add_output_flags(dist)
    dist.set_defaults(func=cmd_distances)

    experiment = commands.add_parser("experiment", allow_abbrev=False, help="synthetic experiments")
    experiments = experiment.add_subparsers(dest="experiment", required=True)

    exact = experiments.add_parser("exact-recovery", allow_abbrev=False)
    _add_model_flags(exact, inliers=False)
    exact.add_argument("--n-inliers-range", required=True, help="lo:hi:step")
    exact.add_argument("--noise", type=float, default=0.0)
    exact.add_argument("--trials", type=int, default=None)
    _add_estimator_flags(exact)
    _add_output_flags(exact)
    exact.set_defaults(func=cmd_experiment_exact_recovery)

    convergence = experiments.add_parser("convergence", allow_abbrev=False)
    _add_model_flags(convergence)
    convergence.add_argument("--noise", type=float, default=0.0)
    _add_estimator_flags(convergence)
    _add_output_flags(convergence)
    convergence.set_defaults(func=cmd_experiment_convergence)

    noise = experiments.add_parser("noise", allow_abbrev=False)
    _add_model_flags(noise)
    noise.add_argument("--noise-range", required=True, help="lo:hi:steps, log-spaced")
    noise.add_argument("--trials", type=int, default=None)
    _add_estimator_flags(noise)
    _add_output_flags(noise)
    noise.set_defaults(func=cmd_experiment_noise)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = ["subrec", *argv]
    try:
        config = load_config(args.config_path)
        setup_logging(config['logger'])
        args.func(args, config)
    except (SubrecError, OSError, ValueError) as e:
        logger.error("命令执行失败: %s", e)
        print(f"subrec: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
