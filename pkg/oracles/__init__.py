from oracles.conditions import (
    ConditionReport,
    Witness,
    count_members,
    recovery_condition,
    uniqueness_condition,
)
from oracles.majorization import majorization_gap, majorizer, majorizer_minimizer
from oracles.status import CheckMethod
