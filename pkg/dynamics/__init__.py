# Pendulum PRNG - Dynamics Module
from dynamics.pendulum import (  # noqa: F401
    NonFiniteStateError,
    PendulumParams,
    PendulumState,
    StateTuple,
    advance,
    angular_accelerations,
    damp,
    denominator,
    integrate,
    positions,
    step,
    total_energy,
    trajectory,
)
