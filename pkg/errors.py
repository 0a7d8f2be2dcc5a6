class SubrecError(Exception):
    """所有库级错误的基类"""


class InvalidDataError(SubrecError):
    pass


class InvalidParameterError(SubrecError):
    pass


class DimensionMismatchError(SubrecError):
    pass


class NotSymmetricError(SubrecError):
    pass


class NotPositiveDefiniteError(SubrecError):
    pass


class NotOrthonormalError(SubrecError):
    pass


class AmbiguousSubspaceError(SubrecError):
    """第 d 与第 d+1 个特征值无法区分，子空间不唯一"""
