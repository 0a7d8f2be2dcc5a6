from synth.model import (
    GeneralPositionReport,
    SyntheticModel,
    general_position_check,
    generate,
    spherical_projection,
)
