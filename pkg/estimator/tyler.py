"""Tyler M 估计：目标函数 F(Σ)、不动点算子 T 与迭代估计"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from errors import (
    DimensionMismatchError,
    InvalidParameterError,
    NotPositiveDefiniteError,
)
from estimator.data import DataSet
from estimator.status import Termination
from geometry.matrix import (
    SPDMatrix,
    SymmetricMatrix,
    as_spd,
    is_numerically_spd,
    symmetrize,
)

logger = logging.getLogger(__name__)

TRACE_ATOL = 1e-12


class TraceOneSPD(SPDMatrix):
    """迹为 1 的对称正定矩阵，即约束集中的迭代点 Σ^{(k)}"""

    def __init__(self, entries):
        super().__init__(entries)
        if abs(self.trace - 1.0) > TRACE_ATOL:
            raise InvalidParameterError(f"trace must be 1, got {self.trace!r}")

    @classmethod
    def normalized(cls, entries) -> "TraceOneSPD":
        array = np.asarray(entries, dtype=float)
        return cls(array / np.trace(array))

    @classmethod
    def identity(cls, dim: int) -> "TraceOneSPD":
        return cls(np.eye(dim) / dim)


@dataclass(frozen=True)
class EstimatorConfig:
    tol: float = 1e-8
    max_iter: int = 1000
    breakdown_check: bool = True
    keep_iterates: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParameterError(f"tol must be > 0, got {self.tol}")
        if self.max_iter < 1:
            raise InvalidParameterError(f"max_iter must be >= 1, got {self.max_iter}")

    @classmethod
    def from_config(cls, estimator: dict, **overrides) -> "EstimatorConfig":
        values = {
            'tol': float(estimator['tol']),
            'max_iter': int(estimator['max_iter']),
            'breakdown_check': bool(estimator['breakdown_check']),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class IterationRecord:
    k: int
    objective: float
    rel_step: float
    lambda_min: float


@dataclass(frozen=True)
class EstimateResult:
    sigma: TraceOneSPD
    iterations: int
    termination: Termination
    trace: Tuple[IterationRecord, ...]
    iterates: Tuple[np.ndarray, ...] = ()

    @property
    def converged(self) -> bool:
        return self.termination == Termination.Converged

    @property
    def lambda_min(self) -> float:
        return self.sigma.lambda_min

    def final_objective(self, data: DataSet) -> float:
        if self.trace:
            return self.trace[-1].objective
        return objective(self.sigma, data)


def _check_dims(sigma: SymmetricMatrix, data: DataSet):
    if sigma.dim != data.dim:
        raise DimensionMismatchError(f"sigma is {sigma.dim}x{sigma.dim} but data lives in R^{data.dim}")


def _cholesky(array: np.ndarray):
    try:
        return linalg.cho_factor(array, lower=True, check_finite=False)
    except linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(f"Cholesky factorization failed: {e}") from e


def _quadratic_forms(factor, points: np.ndarray) -> np.ndarray:
    # 解 Σy = x 后取 xᵀy，不显式求逆
    solved = linalg.cho_solve(factor, points.T, check_finite=False)
    return np.einsum('ij,ji->i', points, solved)


def _log_det(factor) -> float:
    return float(2.0 * np.sum(np.log(np.diag(factor[0]))))


def quadratic_forms(sigma, data: DataSet) -> np.ndarray:
    """每个点的 xᵀΣ⁻¹x"""
    sigma = as_spd(sigma)
    _check_dims(sigma, data)
    return _quadratic_forms(_cholesky(sigma.entries), data.points)


def log_determinant(sigma) -> float:
    return _log_det(_cholesky(as_spd(sigma).entries))


def _objective(array: np.ndarray, points: np.ndarray) -> float:
    factor = _cholesky(array)
    forms = _quadratic_forms(factor, points)
    if not np.all(forms > 0):
        raise NotPositiveDefiniteError("non-positive quadratic form x^T Sigma^-1 x")
    mean_log = math.fsum(np.log(forms)) / len(forms)
    return mean_log + _log_det(factor) / array.shape[0]


def objective(sigma, data: DataSet) -> float:
    """F(Σ) = (1/N) Σ_x log(xᵀΣ⁻¹x) + (1/D) log det Σ"""
    sigma = as_spd(sigma)
    _check_dims(sigma, data)
    return _objective(sigma.entries, data.points)


def _weighted_scatter(array: np.ndarray, points: np.ndarray) -> np.ndarray:
    forms = _quadratic_forms(_cholesky(array), points)
    if not np.all(np.isfinite(forms) & (forms > 0)):
        raise NotPositiveDefiniteError("non-positive quadratic form x^T Sigma^-1 x")
    return symmetrize(points.T @ (points / forms[:, None]))


def _tyler_map(array: np.ndarray, points: np.ndarray) -> np.ndarray:
    scatter = _weighted_scatter(array, points)
    return scatter / np.trace(scatter)


def fixed_point_step(sigma: TraceOneSPD, data: DataSet) -> TraceOneSPD:
    """T(Σ) = Σ_x xxᵀ/(xᵀΣ⁻¹x) 归一化到迹 1

    数据不张成 R^D 时输出奇异，抛出 NotPositiveDefiniteError。
    """
    sigma = as_spd(sigma)
    _check_dims(sigma, data)
    return TraceOneSPD(_tyler_map(sigma.entries, data.points))


def fixed_point_residual(sigma, data: DataSet) -> float:
    """‖T(Σ) − Σ‖_F"""
    sigma = as_spd(sigma)
    _check_dims(sigma, data)
    return float(np.linalg.norm(_tyler_map(sigma.entries, data.points) - sigma.entries, 'fro'))


def fixed_point_identity(sigma, data: DataSet) -> np.ndarray:
    """Σ⁻¹·Σ_x xxᵀ/(xᵀΣ⁻¹x)，不动点处与单位阵成比例"""
    sigma = as_spd(sigma)
    _check_dims(sigma, data)
    scatter = _weighted_scatter(sigma.entries, data.points)
    return linalg.cho_solve(_cholesky(sigma.entries), scatter, check_finite=False)


def breakdown_detected(sigma, data: DataSet) -> bool:
    """λ_min 低于正定阈值、分解失败或出现 xᵀΣ⁻¹x ≤ 0 时返回 True"""
    array = np.asarray(sigma, dtype=float)
    if array.shape != (data.dim, data.dim):
        return True
    eigenvalues = linalg.eigvalsh(array, check_finite=False)
    if not is_numerically_spd(eigenvalues):
        return True
    try:
        forms = _quadratic_forms(_cholesky(array), data.points)
    except NotPositiveDefiniteError:
        return True
    return not bool(np.all(np.isfinite(forms) & (forms > 0)))


def estimate(data: DataSet, config: Optional[EstimatorConfig] = None) -> EstimateResult:
    """从 Σ^{(0)} = I/D 出发迭代 T，直到相对步长 < tol、达到 max_iter 或数值崩溃"""
    config = config or EstimatorConfig()
    points = data.points
    sigma = TraceOneSPD.identity(data.dim)
    records = []
    iterates = []
    termination = Termination.MaxIterations

    for k in range(1, config.max_iter + 1):
        try:
            candidate = TraceOneSPD(_tyler_map(sigma.entries, points))
            if config.breakdown_check and breakdown_detected(candidate, data):
                raise NotPositiveDefiniteError(f"breakdown check failed at lambda_min={candidate.lambda_min:.3e}")
            value = _objective(candidate.entries, points)
        except NotPositiveDefiniteError as e:
            logger.info("第 %d 次迭代数值崩溃，保留上一步迭代点: %s", k, e)
            termination = Termination.Breakdown
            break

        rel_step = float(np.linalg.norm(candidate.entries - sigma.entries, 'fro')
                         / np.linalg.norm(candidate.entries, 'fro'))
        records.append(IterationRecord(k, value, rel_step, candidate.lambda_min))
        logger.debug("k=%d F=%.12g rel_step=%.3e lambda_min=%.3e", k, value, rel_step, candidate.lambda_min)
        sigma = candidate
        if config.keep_iterates:
            iterates.append(candidate.entries)
        if rel_step < config.tol:
            termination = Termination.Converged
            break

    logger.info("估计结束: %s, 迭代 %d 次, lambda_min=%.3e", termination.value, len(records), sigma.lambda_min)
    return EstimateResult(
        sigma=sigma,
        iterations=len(records),
        termination=termination,
        trace=tuple(records),
        iterates=tuple(iterates),
    )
