"""合成数据模型：子空间上的高斯内点 + 单位立方体中的均匀外点 + 可选高斯噪声

随机源固定为 numpy 的 PCG64。种子按 64 位补码取无符号值（-1 与 2**64-1 等价），
SeedSequence(seed) 派生两个子序列：
第一个只用于（可选的）随机旋转 L*，第二个依次生成内点、外点、噪声。
输出中内点在前、外点在后。
"""
import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from errors import InvalidParameterError
from estimator.data import DataSet
from oracles.status import CheckMethod
from subspace.basis import Subspace, membership_mask, numerical_rank

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 100_000
RANDOM_SUBSETS = 10_000
SEED_MASK = 2 ** 64 - 1


def seed_sequence(seed: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(seed) & SEED_MASK)


def _generator(sequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(sequence))


@dataclass(frozen=True)
class SyntheticModel:
    D: int
    d: int
    n_inliers: int
    n_outliers: int
    noise: float = 0.0
    seed: int = 0
    rotate: bool = False

    def __post_init__(self):
        if not 1 <= self.d <= self.D:
            raise InvalidParameterError(f"need 1 <= d <= D, got d={self.d}, D={self.D}")
        if self.n_inliers < 0 or self.n_outliers < 0:
            raise InvalidParameterError("point counts must be non-negative")
        if self.n_inliers + self.n_outliers < 1:
            raise InvalidParameterError("the model must generate at least one point")
        if not self.noise >= 0:
            raise InvalidParameterError(f"noise must be >= 0, got {self.noise}")

    @property
    def size(self) -> int:
        return self.n_inliers + self.n_outliers

    def _streams(self):
        return seed_sequence(self.seed).spawn(2)

    @cached_property
    def truth(self) -> Subspace:
        """L*：默认取前 d 个坐标轴，rotate=True 时做一次带种子的随机旋转"""
        if not self.rotate:
            return Subspace(np.eye(self.D)[:, :self.d])
        rng = _generator(self._streams()[0])
        q, r = np.linalg.qr(rng.standard_normal((self.D, self.d)))
        return Subspace(q * np.sign(np.diag(r)))

    def inlier_mask(self) -> np.ndarray:
        return np.arange(self.size) < self.n_inliers

    def with_seed(self, seed: int) -> "SyntheticModel":
        return SyntheticModel(self.D, self.d, self.n_inliers, self.n_outliers, self.noise, seed, self.rotate)


def generate(model: SyntheticModel) -> Tuple[DataSet, Subspace]:
    truth = model.truth
    rng = _generator(model._streams()[1])
    # N(0, Π_{L*})：R^d 中标准正态再用 P_{L*} 嵌入
    inliers = rng.standard_normal((model.n_inliers, model.d)) @ truth.basis.T
    outliers = rng.random((model.n_outliers, model.D))
    points = np.vstack([inliers, outliers])
    if model.noise > 0:
        points = points + model.noise * rng.standard_normal(points.shape)
    return DataSet(points), truth


def spherical_projection(data: DataSet) -> DataSet:
    """把每个点投影到单位球面"""
    return DataSet(data.points / data.norms()[:, None])


@dataclass(frozen=True)
class GeneralPositionReport:
    holds: bool
    method: CheckMethod

    def __bool__(self):
        return self.holds


def _subsets_independent(coords: np.ndarray, ambient: int, rng, exhaustive_limit: int, samples: int):
    count = coords.shape[0]
    size = min(ambient, count)
    if size == 0:
        return True, CheckMethod.Exhaustive
    if math.comb(count, size) <= exhaustive_limit:
        method = CheckMethod.Exhaustive
        subsets = itertools.combinations(range(count), size)
    else:
        method = CheckMethod.Randomized
        subsets = (rng.choice(count, size=size, replace=False) for _ in range(samples))
    # 所有 size 元子集满秩即蕴含更小的子集也满秩
    for subset in subsets:
        if numerical_rank(coords[list(subset)]) < size:
            return False, method
    return True, method


def general_position_check(data: DataSet, truth: Subspace, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                           samples: int = RANDOM_SUBSETS, seed: int = 0) -> GeneralPositionReport:
    """内点在 L* 上的投影、外点在 L*⊥ 上的投影是否各自处于一般位置"""
    points = data.points
    inside = membership_mask(points, truth)
    rng = _generator(seed_sequence(seed))

    inlier_ok, inlier_method = _subsets_independent(
        points[inside] @ truth.basis, truth.dim, rng, exhaustive_limit, samples)
    methods = {inlier_method}
    outlier_ok = True
    if inlier_ok and truth.dim < truth.ambient_dim:
        outlier_ok, outlier_method = _subsets_independent(
            points[~inside] @ truth.complement().basis, truth.ambient_dim - truth.dim,
            rng, exhaustive_limit, samples)
        methods.add(outlier_method)

    method = CheckMethod.Randomized if CheckMethod.Randomized in methods else CheckMethod.Exhaustive
    holds = inlier_ok and outlier_ok
    if method == CheckMethod.Randomized and holds:
        logger.info("一般位置检查为随机抽样通过（probabilistic pass）")
    return GeneralPositionReport(holds, method)
