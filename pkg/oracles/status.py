from enum import Enum


class CheckMethod(Enum):
    Exhaustive = 'exhaustive'
    Randomized = 'randomized'
