"""正定矩阵流形上的仿射不变度量：距离、测地线与几何平均"""
import numpy as np
from scipy import linalg

from errors import InvalidParameterError
from geometry.matrix import (
    SPDMatrix,
    as_spd,
    check_same_dim,
    congruence,
    spd_inv_sqrt,
    spd_sqrt,
    symmetrize,
)


def spd_distance(first, second) -> float:
    """dist = ‖log(Σ1^{-1/2} Σ2 Σ1^{-1/2})‖_F

    Σ1^{-1/2} Σ2 Σ1^{-1/2} 与广义特征问题 Σ2 v = λ Σ1 v 同谱，直接求广义特征值。
    """
    first, second = as_spd(first), as_spd(second)
    check_same_dim(first, second)
    eigenvalues = linalg.eigvalsh(second.entries, first.entries, check_finite=False)
    return float(np.sqrt(np.sum(np.log(eigenvalues) ** 2)))


def _relative_power(inner: np.ndarray, t: float) -> np.ndarray:
    # 中间矩阵的条件数可达两端之积，不再做正定阈值检查
    eigenvalues, eigenvectors = linalg.eigh(inner, check_finite=False)
    eigenvalues = np.maximum(eigenvalues, np.finfo(float).tiny)
    return symmetrize((eigenvectors * eigenvalues ** t) @ eigenvectors.T)


def geodesic(first, second, t: float) -> SPDMatrix:
    """γ(t) = Σ1^{1/2} (Σ1^{-1/2} Σ2 Σ1^{-1/2})^t Σ1^{1/2}, 0 ≤ t ≤ 1"""
    if not 0.0 <= t <= 1.0:
        raise InvalidParameterError(f"geodesic position must lie in [0, 1], got {t}")
    first, second = as_spd(first), as_spd(second)
    check_same_dim(first, second)
    inner = congruence(spd_inv_sqrt(first).entries, second.entries)
    return SPDMatrix(congruence(spd_sqrt(first).entries, _relative_power(inner, t)))


def geometric_mean(first, second) -> SPDMatrix:
    """测地线中点 γ(1/2)"""
    return geodesic(first, second, 0.5)
