"""定理条件的暴力判定：唯一性条件与精确恢复条件"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import DimensionMismatchError
from estimator.data import DataSet
from oracles.status import CheckMethod
from subspace.basis import Subspace, membership_mask

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 100_000
RANDOM_SUBSETS = 10_000


@dataclass(frozen=True)
class Witness:
    subspace: Subspace
    members: int
    threshold: float


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    method: CheckMethod
    witness: Optional[Witness] = None
    fraction: Optional[float] = None

    def __bool__(self):
        return self.holds


def count_members(data: DataSet, subspace: Subspace) -> int:
    if data.dim != subspace.ambient_dim:
        raise DimensionMismatchError(f"data lives in R^{data.dim} but subspace in R^{subspace.ambient_dim}")
    return int(np.count_nonzero(membership_mask(data.points, subspace)))


def _candidate_subsets(size: int, dim: int, exhaustive_limit: int, samples: int, seed: int):
    sizes = range(1, dim)
    total = sum(math.comb(size, k) for k in sizes)
    if total <= exhaustive_limit:
        subsets = itertools.chain.from_iterable(itertools.combinations(range(size), k) for k in sizes)
        return subsets, CheckMethod.Exhaustive
    rng = np.random.Generator(np.random.PCG64(seed))

    def sampled():
        for _ in range(samples):
            k = int(rng.integers(1, min(dim, size + 1)))
            yield sorted(rng.choice(size, size=k, replace=False))

    logger.info("候选子集 %d 个超过上限，改为随机抽样 %d 个", total, samples)
    return sampled(), CheckMethod.Randomized


def uniqueness_condition(data: DataSet, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                         samples: int = RANDOM_SUBSETS, seed: int = 0) -> ConditionReport:
    """对所有真子空间 L 检查 |X∩L|/N < dim(L)/D

    使违反最严重的 L 总可以取为它所含数据点的张成，所以只需枚举点子集的张成。
    """
    points = data.points
    size, dim = data.size, data.dim
    subsets, method = _candidate_subsets(size, dim, exhaustive_limit, samples, seed)
    for subset in subsets:
        span = Subspace.from_vectors(points[list(subset)].T)
        if span.dim >= dim:
            continue
        members = count_members(data, span)
        # 边界情形（相等）也算违反
        if members * dim >= span.dim * size:
            return ConditionReport(False, method, Witness(span, members, span.dim / dim), members / size)
    return ConditionReport(True, method)


def recovery_condition(data: DataSet, candidate: Subspace) -> ConditionReport:
    """|X∩L*|/|X| > d/D"""
    members = count_members(data, candidate)
    fraction = members / data.size
    holds = members * candidate.ambient_dim > candidate.dim * data.size
    witness = None if holds else Witness(candidate, members, candidate.dim / candidate.ambient_dim)
    return ConditionReport(holds, CheckMethod.Exhaustive, witness, fraction)
