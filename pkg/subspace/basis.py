"""线性子空间：正交基、投影、恢复误差与 PCA 基线"""
import logging
from functools import cached_property

import numpy as np
from scipy import linalg

from errors import (
    AmbiguousSubspaceError,
    DimensionMismatchError,
    InvalidDataError,
    InvalidParameterError,
    NotOrthonormalError,
)
from estimator.data import DataSet
from geometry.matrix import SymmetricMatrix, as_symmetric, sym_eigendecompose

logger = logging.getLogger(__name__)

ORTHONORMAL_TOL = 1e-8
RANK_RTOL = 1e-10
MEMBERSHIP_RTOL = 1e-9
GAP_RTOL = 1e-12


def _reorthonormalize(basis: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(basis)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def numerical_rank(matrix) -> int:
    singular_values = linalg.svdvals(np.atleast_2d(matrix))
    if singular_values.size == 0 or singular_values[0] == 0:
        return 0
    return int(np.sum(singular_values > RANK_RTOL * singular_values[0]))


class Subspace:
    """R^D 中 d 维子空间，基为 D×d 列正交矩阵 P_L"""

    def __init__(self, basis):
        array = np.array(basis, dtype=float)
        if array.ndim == 1:
            array = array[:, None]
        if array.ndim != 2:
            raise InvalidParameterError(f"basis must be a D x d matrix, got shape {array.shape}")
        ambient_dim, dim = array.shape
        if not 1 <= dim <= ambient_dim:
            raise InvalidParameterError(f"need 1 <= d <= D, got d={dim}, D={ambient_dim}")
        if not np.all(np.isfinite(array)):
            raise InvalidDataError("basis has non-finite entries")
        gram_error = np.max(np.abs(array.T @ array - np.eye(dim)))
        if gram_error > ORTHONORMAL_TOL:
            raise NotOrthonormalError(f"basis columns are not orthonormal (error {gram_error:.3e})")
        if gram_error > 0:
            array = _reorthonormalize(array)
        array.setflags(write=False)
        self._basis = array

    @classmethod
    def from_vectors(cls, vectors) -> "Subspace":
        """vectors 各列张成的子空间"""
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        u, s, _ = linalg.svd(vectors, full_matrices=False)
        if s.size == 0 or s[0] == 0:
            raise InvalidParameterError("cannot span a subspace from zero vectors")
        rank = int(np.sum(s > RANK_RTOL * s[0]))
        return cls(u[:, :rank])

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def ambient_dim(self) -> int:
        return self._basis.shape[0]

    @property
    def dim(self) -> int:
        return self._basis.shape[1]

    @cached_property
    def projector(self) -> np.ndarray:
        projector = self._basis @ self._basis.T
        projector.setflags(write=False)
        return projector

    def complement(self) -> "Subspace":
        if self.dim == self.ambient_dim:
            raise InvalidParameterError("the orthogonal complement of R^D is trivial")
        return Subspace(linalg.null_space(self._basis.T))

    def project(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return (points @ self._basis) @ self._basis.T

    def __repr__(self):
        return f"Subspace(D={self.ambient_dim}, d={self.dim})"


def _check_ambient(points_dim: int, subspace: Subspace):
    if points_dim != subspace.ambient_dim:
        raise DimensionMismatchError(f"points live in R^{points_dim} but subspace in R^{subspace.ambient_dim}")


def distances_to_subspace(points, subspace: Subspace) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    _check_ambient(points.shape[1], subspace)
    return np.linalg.norm(points - subspace.project(points), axis=1)


def distance_to_subspace(x, subspace: Subspace) -> float:
    """‖x − Π_L x‖"""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidParameterError(f"expected a vector, got shape {x.shape}")
    return float(distances_to_subspace(x[None, :], subspace)[0])


def membership_mask(points, subspace: Subspace, rtol: float = MEMBERSHIP_RTOL) -> np.ndarray:
    """‖x − Π_L x‖ ≤ rtol·‖x‖ 的点"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return distances_to_subspace(points, subspace) <= rtol * np.linalg.norm(points, axis=1)


def top_d_subspace(sigma, d: int, strict: bool = True) -> Subspace:
    """最大 d 个特征值对应的不变子空间

    第 d 与第 d+1 个特征值相差不超过 1e-12·|λ_max| 时子空间不唯一：
    strict 模式抛出 AmbiguousSubspaceError，否则记录警告后照常返回。
    """
    sigma = as_symmetric(sigma)
    if not 1 <= d <= sigma.dim:
        raise InvalidParameterError(f"need 1 <= d <= D, got d={d}, D={sigma.dim}")
    eigenvalues, eigenvectors = sym_eigendecompose(sigma)
    if d < sigma.dim:
        gap = eigenvalues[d - 1] - eigenvalues[d]
        scale = max(abs(eigenvalues[0]), np.finfo(float).tiny)
        if gap <= GAP_RTOL * scale:
            message = f"eigenvalues {d} and {d + 1} coincide ({eigenvalues[d - 1]:.6e}, {eigenvalues[d]:.6e})"
            if strict:
                raise AmbiguousSubspaceError(message)
            logger.warning("子空间不唯一: %s", message)
    return Subspace(eigenvectors[:, :d])


def recovery_error(first: Subspace, second: Subspace) -> float:
    """‖Π_{L1} − Π_{L2}‖_F"""
    if first.ambient_dim != second.ambient_dim:
        raise DimensionMismatchError(f"ambient dimensions differ: {first.ambient_dim} vs {second.ambient_dim}")
    return float(np.linalg.norm(first.projector - second.projector, 'fro'))


def pca_subspace(data: DataSet, d: int, center: bool = False) -> Subspace:
    """二阶矩矩阵 (1/N)Σ xxᵀ 的前 d 维特征子空间，center=True 时先减均值"""
    points = data.points
    if center:
        points = points - points.mean(axis=0)
    moment = points.T @ points / data.size
    return top_d_subspace(SymmetricMatrix(moment), d, strict=False)
