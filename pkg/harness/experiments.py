"""合成实验：精确恢复相变、线性收敛、噪声鲁棒性"""
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import List, Sequence

import numpy as np
import pandas as pd

from config.load import resolve_threads
from errors import InvalidParameterError
from estimator.status import Termination
from estimator.tyler import EstimatorConfig, estimate
from harness.commands import estimator_config
from harness.io import ensure_writable, write_frame
from harness.manifest import RunManifest, manifest_path
from subspace.basis import recovery_error, top_d_subspace
from synth.model import SyntheticModel, generate

logger = logging.getLogger(__name__)


def parse_int_range(text: str) -> List[int]:
    """"lo:hi:step"，包含 hi"""
    try:
        lo, hi, step = (int(part) for part in text.split(":"))
    except ValueError as e:
        raise InvalidParameterError(f"range must look like lo:hi:step, got {text!r}") from e
    if step <= 0 or lo > hi:
        raise InvalidParameterError(f"empty range {text!r}")
    return list(range(lo, hi + 1, step))


def parse_noise_range(text: str) -> List[float]:
    """"lo:hi:steps"，对数等距且包含两端；steps == 1 时只取 lo（可为 0）"""
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError as e:
        raise InvalidParameterError(f"noise range must look like lo:hi:steps, got {text!r}") from e
    if steps < 1 or lo > hi or lo < 0:
        raise InvalidParameterError(f"empty noise range {text!r}")
    if steps == 1:
        return [lo]
    if lo == 0:
        raise InvalidParameterError("a log-spaced noise range needs lo > 0")
    return [float(value) for value in np.geomspace(lo, hi, steps)]


def run_trials(function, items: Sequence, threads: int = 1) -> list:
    """并行运行相互独立的试验，结果按输入顺序返回"""
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, items))


def recovery_trial(model: SyntheticModel, config: EstimatorConfig) -> float:
    """生成一组数据并返回 Tyler 估计的恢复误差；崩溃时使用崩溃前的迭代点"""
    data, truth = generate(model)
    result = estimate(data, config)
    if result.termination == Termination.MaxIterations:
        logger.debug("seed=%d 在 %d 次迭代内未收敛", model.seed, result.iterations)
    return recovery_error(top_d_subspace(result.sigma, model.d, strict=False), truth)


def _summarize(errors: Sequence[float]) -> dict:
    errors = np.asarray(errors, dtype=float)
    return {'mean_recovery_error': float(errors.mean()), 'std': float(errors.std()), 'trials': len(errors)}


def exact_recovery_sweep(D: int, d: int, n_outliers: int, n_inliers_values: Sequence[int], trials: int,
                         seed: int, config: EstimatorConfig, threads: int = 1, noise: float = 0.0) -> pd.DataFrame:
    models = [SyntheticModel(D, d, n_inliers, n_outliers, noise, seed + trial)
              for n_inliers in n_inliers_values for trial in range(trials)]
    errors = run_trials(partial(recovery_trial, config=config), models, threads)
    rows = []
    for position, n_inliers in enumerate(n_inliers_values):
        summary = _summarize(errors[position * trials:(position + 1) * trials])
        logger.info("n_inliers=%d 平均恢复误差 %.3e", n_inliers, summary['mean_recovery_error'])
        rows.append({'n_inliers': n_inliers, **summary})
    return pd.DataFrame(rows, columns=['n_inliers', 'mean_recovery_error', 'std', 'trials'])


def noise_sweep(D: int, d: int, n_inliers: int, n_outliers: int, noise_values: Sequence[float], trials: int,
                seed: int, config: EstimatorConfig, threads: int = 1) -> pd.DataFrame:
    models = [SyntheticModel(D, d, n_inliers, n_outliers, noise, seed + trial)
              for noise in noise_values for trial in range(trials)]
    errors = run_trials(partial(recovery_trial, config=config), models, threads)
    rows = []
    for position, noise in enumerate(noise_values):
        summary = _summarize(errors[position * trials:(position + 1) * trials])
        logger.info("epsilon=%.3e 平均恢复误差 %.3e", noise, summary['mean_recovery_error'])
        rows.append({'epsilon': noise, 'mean_recovery_error': summary['mean_recovery_error'], 'std': summary['std']})
    return pd.DataFrame(rows, columns=['epsilon', 'mean_recovery_error', 'std'])


def _log_contraction(result, model: SyntheticModel):
    # 只记录，不作断言
    if result.iterations < 2 or model.n_outliers == 0:
        return
    first, last = result.trace[0].lambda_min, result.trace[-1].lambda_min
    rate = (last / first) ** (1.0 / (result.iterations - 1))
    alpha = model.n_inliers * (model.D - model.d) / (model.n_outliers * model.d)
    logger.info("lambda_min 平均收缩率 %.4f, 1/alpha = %.4f (alpha = %.4f)", rate, 1.0 / alpha, alpha)


def convergence_trace(model: SyntheticModel, config: EstimatorConfig) -> pd.DataFrame:
    """单次运行的 ‖Σ^{(k)} − Σ^{(K)}‖_F 与逐步恢复误差"""
    config = EstimatorConfig(config.tol, config.max_iter, config.breakdown_check, keep_iterates=True)
    data, truth = generate(model)
    result = estimate(data, config)
    _log_contraction(result, model)
    final = result.sigma.entries
    return pd.DataFrame({
        'k': [record.k for record in result.trace],
        'sigma_diff_to_final': [float(np.linalg.norm(sigma - final, 'fro')) for sigma in result.iterates],
        'recovery_error_k': [recovery_error(top_d_subspace(sigma, model.d, strict=False), truth)
                             for sigma in result.iterates],
    })


def cmd_experiment_exact_recovery(args, config: dict):
    values = parse_int_range(args.n_inliers_range)
    trials = args.trials or int(config['experiment']['trials'])
    ensure_writable(args.out, args.force)
    ensure_writable(manifest_path(args.out), args.force)
    manifest = RunManifest(command=args.argv, config=config, seeds=[args.seed + t for t in range(trials)])
    frame = exact_recovery_sweep(args.D, args.d, args.n_outliers, values, trials, args.seed,
                                 estimator_config(args, config), resolve_threads(config['experiment']),
                                 noise=args.noise)
    write_frame(args.out, frame, args.force)
    manifest.outputs['results'] = args.out
    manifest.finish()
    manifest.write(manifest_path(args.out), args.force)


def cmd_experiment_convergence(args, config: dict):
    ensure_writable(args.out, args.force)
    ensure_writable(manifest_path(args.out), args.force)
    manifest = RunManifest(command=args.argv, config=config, seeds=[args.seed])
    model = SyntheticModel(args.D, args.d, args.n_inliers, args.n_outliers, args.noise, args.seed)
    frame = convergence_trace(model, estimator_config(args, config))
    write_frame(args.out, frame, args.force)
    manifest.outputs['results'] = args.out
    manifest.finish()
    manifest.write(manifest_path(args.out), args.force)


def cmd_experiment_noise(args, config: dict):
    values = parse_noise_range(args.noise_range)
    trials = args.trials or int(config['experiment']['trials'])
    ensure_writable(args.out, args.force)
    ensure_writable(manifest_path(args.out), args.force)
    manifest = RunManifest(command=args.argv, config=config, seeds=[args.seed + t for t in range(trials)])
    frame = noise_sweep(args.D, args.d, args.n_inliers, args.n_outliers, values, trials, args.seed,
                        estimator_config(args, config), resolve_threads(config['experiment']))
    write_frame(args.out, frame, args.force)
    manifest.outputs['results'] = args.out
    manifest.finish()
    manifest.write(manifest_path(args.out), args.force)
