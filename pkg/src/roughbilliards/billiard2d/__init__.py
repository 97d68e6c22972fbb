from .macro import (
    MacroOutcome,
    ReflState,
    count_status,
    macro_reflection,
    reflect_lambda1,
    reflect_states,
    reflect_uniform,
    run_macro,
    sample_lambda1,
)
from .trace import Event, TrajectoryLog, reflect, trace
