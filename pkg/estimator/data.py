import numpy as np

from errors import InvalidDataError


class DataSet:
    """R^D 中 N 个点，按行存储；不允许零向量"""

    def __init__(self, points):
        try:
            array = np.array(points, dtype=float)
        except (TypeError, ValueError) as e:
            raise InvalidDataError(f"points are not a numeric matrix: {e}") from e
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise InvalidDataError(f"expected an N x D matrix with N, D >= 1, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise InvalidDataError("points have non-finite entries")
        norms = np.linalg.norm(array, axis=1)
        zero = np.flatnonzero(norms == 0)
        if zero.size:
            raise InvalidDataError(f"point {zero[0]} is the zero vector")
        array.setflags(write=False)
        self._points = array

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    @property
    def size(self) -> int:
        return self._points.shape[0]

    def __len__(self):
        return self.size

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self._points, axis=1)

    def subset(self, indices) -> "DataSet":
        return DataSet(self._points[np.asarray(indices)])

    def __repr__(self):
        return f"DataSet(N={self.size}, D={self.dim})"
