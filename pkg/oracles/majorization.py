"""单调下降证明中的优化函数 G(Σ, Σ*)

G(Σ, Σ*) = ⟨(1/N) Σ_x xxᵀ/(xᵀΣ*⁻¹x), Σ⁻¹⟩ + (1/D) log det Σ + C，
C 由 G(Σ*, Σ*) = F(Σ*) 确定：C = (1/N) Σ_x log(xᵀΣ*⁻¹x) − 1。
"""
import math

import numpy as np

from estimator.data import DataSet
from estimator.tyler import log_determinant, quadratic_forms
from geometry.matrix import SPDMatrix, symmetrize


def majorizer(sigma, anchor, data: DataSet) -> float:
    forms = quadratic_forms(sigma, data)
    anchor_forms = quadratic_forms(anchor, data)
    constant = math.fsum(np.log(anchor_forms)) / data.size - 1.0
    # ⟨A, Σ⁻¹⟩ = (1/N) Σ_x xᵀΣ⁻¹x / xᵀΣ*⁻¹x
    return float(np.mean(forms / anchor_forms) + log_determinant(sigma) / data.dim + constant)


def majorization_gap(sigma, anchor, data: DataSet) -> float:
    """G(Σ, Σ*) − F(Σ) = (1/N) Σ_x (r − log r − 1)，r = xᵀΣ⁻¹x / xᵀΣ*⁻¹x"""
    ratio = quadratic_forms(sigma, data) / quadratic_forms(anchor, data)
    return float(np.mean(ratio - np.log(ratio) - 1.0))


def majorizer_minimizer(anchor, data: DataSet) -> SPDMatrix:
    """G(·, Σ*) 的无约束极小点 (D/N) Σ_x xxᵀ/(xᵀΣ*⁻¹x)"""
    points = data.points
    forms = quadratic_forms(anchor, data)
    return SPDMatrix(symmetrize(data.dim / data.size * points.T @ (points / forms[:, None])))
