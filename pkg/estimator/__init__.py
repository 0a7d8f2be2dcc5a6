from estimator.data import DataSet
from estimator.status import Termination
from estimator.tyler import (
    EstimateResult,
    EstimatorConfig,
    IterationRecord,
    TraceOneSPD,
    breakdown_detected,
    estimate,
    fixed_point_residual,
    fixed_point_step,
    objective,
)
