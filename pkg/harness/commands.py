"""synth / estimate / distances 子命令"""
import logging

import numpy as np
import pandas as pd

from errors import DimensionMismatchError, InvalidParameterError
from estimator.tyler import EstimatorConfig, estimate
from harness.io import (
    ensure_writable,
    read_data_csv,
    read_truth_json,
    truth_payload,
    write_data_csv,
    write_frame,
    write_json,
)
from harness.manifest import RunManifest, manifest_path
from subspace.basis import distances_to_subspace, pca_subspace, recovery_error, top_d_subspace
from synth.model import SyntheticModel, generate

logger = logging.getLogger(__name__)


def estimator_config(args, config: dict, **overrides) -> EstimatorConfig:
    return EstimatorConfig.from_config(
        config['estimator'],
        tol=getattr(args, 'tol', None),
        max_iter=getattr(args, 'max_iter', None),
        **overrides,
    )


def _check_subspace_dim(d: int, ambient_dim: int):
    if not 1 <= d < ambient_dim:
        raise InvalidParameterError(f"--d must satisfy 1 <= d < D={ambient_dim}, got {d}")


def cmd_synth(args, config: dict):
    manifest = RunManifest(command=args.argv, config=config, seeds=[args.seed])
    model = SyntheticModel(args.D, args.d, args.n_inliers, args.n_outliers, args.noise, args.seed, args.rotate)
    ensure_writable(args.out, args.force)
    ensure_writable(manifest_path(args.out), args.force)
    ensure_writable(args.truth_out, args.force)

    data, truth = generate(model)
    write_data_csv(args.out, data, args.force)
    write_json(args.truth_out, truth_payload(truth), args.force)

    manifest.outputs = {'data': args.out, 'truth': args.truth_out}
    manifest.finish()
    manifest.write(manifest_path(args.out), args.force)


def trace_frame(result, d: int, truth=None) -> pd.DataFrame:
    errors = [np.nan] * result.iterations
    if truth is not None and result.iterates:
        errors = [recovery_error(top_d_subspace(sigma, d, strict=False), truth) for sigma in result.iterates]
    return pd.DataFrame({
        'k': [record.k for record in result.trace],
        'objective': [record.objective for record in result.trace],
        'rel_step': [record.rel_step for record in result.trace],
        'lambda_min': [record.lambda_min for record in result.trace],
        'recovery_error': errors,
    })


def result_payload(result, data, subspace, truth=None) -> dict:
    payload = {
        "D": data.dim,
        "d": subspace.dim,
        "termination": result.termination.value,
        "iterations": result.iterations,
        "objective": result.final_objective(data),
        "lambda_min": result.lambda_min,
        "sigma": result.sigma.entries.tolist(),
        "basis": subspace.basis.tolist(),
    }
    if truth is not None:
        payload["recovery_error"] = recovery_error(subspace, truth)
    return payload


def cmd_estimate(args, config: dict):
    manifest = RunManifest(command=args.argv, config=config, inputs={'data': args.input})
    data = read_data_csv(args.input)
    _check_subspace_dim(args.d, data.dim)
    truth = None
    if args.truth:
        truth = read_truth_json(args.truth)
        manifest.inputs['truth'] = args.truth
        if truth.ambient_dim != data.dim:
            raise DimensionMismatchError(f"truth lives in R^{truth.ambient_dim} but data in R^{data.dim}")
    ensure_writable(args.out, args.force)
    ensure_writable(manifest_path(args.out), args.force)
    if args.trace:
        ensure_writable(args.trace, args.force)

    cfg = estimator_config(args, config, keep_iterates=bool(truth is not None and args.trace))
    result = estimate(data, cfg)
    subspace = top_d_subspace(result.sigma, args.d, strict=False)
    payload = result_payload(result, data, subspace, truth)
    if truth is not None:
        logger.info("恢复误差 %.3e", payload["recovery_error"])

    write_json(args.out, payload, args.force)
    manifest.outputs['result'] = args.out
    if args.trace:
        write_frame(args.trace, trace_frame(result, args.d, truth), args.force)
        manifest.outputs['trace'] = args.trace
    manifest.finish()
    manifest.write(manifest_path(args.out), args.force)


def cmd_distances(args, config: dict):
    """在训练集上拟合 Tyler 与 PCA 子空间，输出测试点到两者的有序距离"""
    manifest = RunManifest(command=args.argv, config=config, inputs={'train': args.train, 'test': args.test})
    train = read_data_csv(args.train)
    test = read_data_csv(args.test)
    if train.dim != test.dim:
        raise DimensionMismatchError(f"train is in R^{train.dim} but test in R^{test.dim}")
    _check_subspace_dim(args.d, train.dim)
    ensure_writable(args.out, args.force)
    ensure_writable(manifest_path(args.out), args.force)

    result = estimate(train, estimator_config(args, config))
    tyler = top_d_subspace(result.sigma, args.d, strict=False)
    pca = pca_subspace(train, args.d, center=args.center)
    frame = pd.DataFrame({
        'rank': np.arange(1, test.size + 1),
        'tyler_distance': np.sort(distances_to_subspace(test.points, tyler)),
        'pca_distance': np.sort(distances_to_subspace(test.points, pca)),
    })
    write_frame(args.out, frame, args.force)
    manifest.outputs['distances'] = args.out
    manifest.finish()
    manifest.write(manifest_path(args.out), args.force)
