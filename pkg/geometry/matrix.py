"""对称矩阵与正定矩阵的基本运算：特征分解、平方根、对数、幂"""
import numpy as np
from scipy import linalg

from errors import (
    DimensionMismatchError,
    InvalidDataError,
    InvalidParameterError,
    NotPositiveDefiniteError,
    NotSymmetricError,
)

SYMMETRY_RTOL = 1e-12
SPD_RTOL = 1e-14


def is_numerically_spd(eigenvalues) -> bool:
    """λ_min > 1e-14·λ_max 视为数值正定"""
    eigenvalues = np.asarray(eigenvalues)
    lam_min, lam_max = eigenvalues.min(), eigenvalues.max()
    return bool(lam_max > 0 and lam_min > SPD_RTOL * lam_max)


class SymmetricMatrix:
    """D×D 实对称矩阵，构造时以 (A+Aᵀ)/2 吸收浮点误差"""

    def __init__(self, entries):
        array = np.array(entries, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise InvalidParameterError(f"expected a non-empty square matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise InvalidDataError("matrix has non-finite entries")
        scale = np.max(np.abs(array))
        asymmetry = np.max(np.abs(array - array.T))
        if asymmetry > SYMMETRY_RTOL * scale:
            raise NotSymmetricError(f"relative asymmetry {asymmetry / scale:.3e} exceeds {SYMMETRY_RTOL:g}")
        array = 0.5 * (array + array.T)
        array.setflags(write=False)
        self._entries = array

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self._entries))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries
        return self._entries.astype(dtype)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class SPDMatrix(SymmetricMatrix):
    """对称正定矩阵，缓存最小特征值"""

    def __init__(self, entries):
        super().__init__(entries)
        eigenvalues = linalg.eigvalsh(self._entries, check_finite=False)
        if not is_numerically_spd(eigenvalues):
            raise NotPositiveDefiniteError(
                f"matrix is not numerically SPD (lambda_min={eigenvalues[0]:.3e}, lambda_max={eigenvalues[-1]:.3e})"
            )
        self._lambda_min = float(eigenvalues[0])
        self._lambda_max = float(eigenvalues[-1])

    @property
    def lambda_min(self) -> float:
        return self._lambda_min

    @property
    def lambda_max(self) -> float:
        return self._lambda_max

    def log_det(self) -> float:
        factor = linalg.cholesky(self._entries, lower=True, check_finite=False)
        return float(2.0 * np.sum(np.log(np.diag(factor))))


def as_symmetric(matrix) -> SymmetricMatrix:
    if isinstance(matrix, SymmetricMatrix):
        return matrix
    return SymmetricMatrix(matrix)


def as_spd(matrix) -> SPDMatrix:
    if isinstance(matrix, SPDMatrix):
        return matrix
    return SPDMatrix(matrix)


def check_same_dim(first: SymmetricMatrix, second: SymmetricMatrix):
    if first.dim != second.dim:
        raise DimensionMismatchError(f"dimension mismatch: {first.dim} vs {second.dim}")


def symmetrize(array: np.ndarray) -> np.ndarray:
    return 0.5 * (array + array.T)


def sym_eigendecompose(matrix):
    """特征值降序排列，特征向量按列对应"""
    matrix = as_symmetric(matrix)
    eigenvalues, eigenvectors = linalg.eigh(matrix.entries, check_finite=False)
    return eigenvalues[::-1].copy(), eigenvectors[:, ::-1].copy()


def _spectral_apply(matrix: SymmetricMatrix, function) -> np.ndarray:
    eigenvalues, eigenvectors = linalg.eigh(matrix.entries, check_finite=False)
    return symmetrize((eigenvectors * function(eigenvalues)) @ eigenvectors.T)


def spd_sqrt(matrix) -> SPDMatrix:
    return SPDMatrix(_spectral_apply(as_spd(matrix), np.sqrt))


def spd_inv_sqrt(matrix) -> SPDMatrix:
    return SPDMatrix(_spectral_apply(as_spd(matrix), lambda w: 1.0 / np.sqrt(w)))


def spd_power(matrix, exponent: float) -> SPDMatrix:
    return SPDMatrix(_spectral_apply(as_spd(matrix), lambda w: w ** exponent))


def spd_log(matrix) -> SymmetricMatrix:
    return SymmetricMatrix(_spectral_apply(as_spd(matrix), np.log))


def congruence(outer, inner) -> np.ndarray:
    """返回 A·M·Aᵀ（对称化）"""
    outer = np.asarray(outer)
    return symmetrize(outer @ np.asarray(inner) @ outer.T)
