from enum import Enum


class Termination(Enum):
    Converged = 'converged'
    MaxIterations = 'max_iterations'
    Breakdown = 'breakdown'
