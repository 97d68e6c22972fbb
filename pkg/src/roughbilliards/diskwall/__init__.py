from .params import (
    ConfigState,
    DiskParams,
    TiltedState,
    apply_collision_matrix,
    collision_matrix,
    contact_normal,
    from_tilted,
    reflect_velocity,
    rolling_momentum,
    sample_lambda2,
    satellite_count,
    satellite_positions,
    to_tilted,
)
from .collision import (
    CollisionOutcome,
    collide,
    collide_at_angles,
    collide_cyl,
    collide_states,
    cylinder_base,
    outcome_angles,
    run_collide,
    state_from_angles,
)
from .rough import ClusterSummary, cluster_velocities, rough_collision_law, rough_collision_sample
