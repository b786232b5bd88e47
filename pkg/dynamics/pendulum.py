"""
Planar double pendulum: equations of motion, a fixed-step RK4 integrator,
bob positions and total mechanical energy.

Angles are measured from the downward vertical; y grows along gravity.
"""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

# (theta1, theta2, omega1, omega2)
StateTuple = Tuple[float, float, float, float]


class NonFiniteStateError(RuntimeError):
    """Integration produced NaN or Inf in the pendulum state"""

    def __init__(self, state: StateTuple, steps: int):
        self.state = state
        self.steps = steps
        super().__init__(f"Non-finite pendulum state after {steps} steps: {state}")


class PendulumParams(BaseModel):
    """Physical configuration of the double pendulum"""

    model_config = ConfigDict(frozen=True)

    m1: float = Field(1.0, gt=0, description="Inner bob mass (kg)")
    m2: float = Field(1.0, ge=0, description="Outer bob mass (kg); 0 gives the single-pendulum limit")
    L1: float = Field(1.0, gt=0, description="Inner link length (m)")
    L2: float = Field(1.0, gt=0, description="Outer link length (m)")
    g: float = Field(9.81, gt=0, description="Gravitational acceleration (m/s^2)")
    d: float = Field(1.0, gt=0, le=1, description="Per-step angular velocity multiplier; 1 is frictionless")


class PendulumState(BaseModel):
    """Two angles and two angular velocities"""

    model_config = ConfigDict(frozen=True)

    theta1: float = Field(0.0, allow_inf_nan=False)
    theta2: float = Field(0.0, allow_inf_nan=False)
    omega1: float = Field(0.0, allow_inf_nan=False)
    omega2: float = Field(0.0, allow_inf_nan=False)

    def as_tuple(self) -> StateTuple:
        return (self.theta1, self.theta2, self.omega1, self.omega2)

    @classmethod
    def from_tuple(cls, y: StateTuple) -> "PendulumState":
        return cls(theta1=y[0], theta2=y[1], omega1=y[2], omega2=y[3])


def _accelerations(m1: float, m2: float, L1: float, L2: float, g: float,
                   t1: float, t2: float, w1: float, w2: float) -> Tuple[float, float]:
    delta = t1 - t2
    sin_delta = math.sin(delta)
    cos_delta = math.cos(delta)
    den = 2 * m1 + m2 - m2 * math.cos(2 * t1 - 2 * t2)

    alpha1 = (
        -g * (2 * m1 + m2) * math.sin(t1)
        - m2 * g * math.sin(t1 - 2 * t2)
        - 2 * sin_delta * m2 * (w2 * w2 * L2 + w1 * w1 * L1 * cos_delta)
    ) / (L1 * den)

    alpha2 = (
        2 * sin_delta * (
            w1 * w1 * L1 * (m1 + m2)
            + g * (m1 + m2) * math.cos(t1)
            + w2 * w2 * L2 * m2 * cos_delta
        )
    ) / (L2 * den)

    return alpha1, alpha2


def angular_accelerations(p: PendulumParams, s: PendulumState) -> Tuple[float, float]:
    """Closed-form (alpha1, alpha2) for the coupled system.

    The denominator factor 2*m1 + m2 - m2*cos(2*theta1 - 2*theta2) is bounded
    below by 2*m1, so the expressions are total on valid parameters.
    """
    return _accelerations(p.m1, p.m2, p.L1, p.L2, p.g, s.theta1, s.theta2, s.omega1, s.omega2)


def denominator(p: PendulumParams, s: PendulumState) -> float:
    """Shared denominator factor of both acceleration equations"""
    return 2 * p.m1 + p.m2 - p.m2 * math.cos(2 * s.theta1 - 2 * s.theta2)


def advance(p: PendulumParams, y: StateTuple, h: float, steps: int) -> StateTuple:
    """Run `steps` RK4 steps (each followed by damping) on a plain float tuple.

    This is the hot loop used by the generators; `step` and `integrate` wrap it.
    """
    if h < 0:
        raise ValueError(f"Step size must be non-negative, got {h}")
    if steps < 0:
        raise ValueError(f"Step count must be non-negative, got {steps}")

    m1, m2, L1, L2, g, d = p.m1, p.m2, p.L1, p.L2, p.g, p.d
    acc = _accelerations
    half = 0.5 * h
    sixth = h / 6.0
    t1, t2, w1, w2 = y

    diverged = False
    try:
        for _ in range(steps):
            a1, b1 = acc(m1, m2, L1, L2, g, t1, t2, w1, w2)

            k2t1 = w1 + half * a1
            k2t2 = w2 + half * b1
            a2, b2 = acc(m1, m2, L1, L2, g, t1 + half * w1, t2 + half * w2, k2t1, k2t2)

            k3t1 = w1 + half * a2
            k3t2 = w2 + half * b2
            a3, b3 = acc(m1, m2, L1, L2, g, t1 + half * k2t1, t2 + half * k2t2, k3t1, k3t2)

            k4t1 = w1 + h * a3
            k4t2 = w2 + h * b3
            a4, b4 = acc(m1, m2, L1, L2, g, t1 + h * k3t1, t2 + h * k3t2, k4t1, k4t2)

            t1 = t1 + sixth * (w1 + 2 * k2t1 + 2 * k3t1 + k4t1)
            t2 = t2 + sixth * (w2 + 2 * k2t2 + 2 * k3t2 + k4t2)
            w1 = (w1 + sixth * (a1 + 2 * a2 + 2 * a3 + a4)) * d
            w2 = (w2 + sixth * (b1 + 2 * b2 + 2 * b3 + b4)) * d
    except ValueError:
        # math.sin/cos reject infinite angles
        diverged = True

    result = (t1, t2, w1, w2)
    if diverged or not all(math.isfinite(v) for v in result):
        logger.error(f"[DYNAMICS] Integration diverged: params={p.model_dump()}, h={h}, steps={steps}")
        raise NonFiniteStateError(result, steps)
    return result


def damp(p: PendulumParams, s: PendulumState) -> PendulumState:
    """Damping substep: both angular velocities scaled by d"""
    return s.model_copy(update={"omega1": s.omega1 * p.d, "omega2": s.omega2 * p.d})


def step(p: PendulumParams, s: PendulumState, h: float) -> PendulumState:
    """One classical RK4 step of width h followed by the damping substep"""
    return PendulumState.from_tuple(advance(p, s.as_tuple(), h, 1))


def integrate(p: PendulumParams, s: PendulumState, h: float, steps: int,
              callback: Optional[Callable[[int, PendulumState], None]] = None) -> PendulumState:
    """Advance `steps` steps; `callback(i, state)` sees every intermediate state when given"""
    if callback is None:
        return PendulumState.from_tuple(advance(p, s.as_tuple(), h, steps))

    y = s.as_tuple()
    for i in range(steps):
        y = advance(p, y, h, 1)
        callback(i + 1, PendulumState.from_tuple(y))
    return PendulumState.from_tuple(y)


def trajectory(p: PendulumParams, s: PendulumState, h: float, steps: int) -> np.ndarray:
    """States after 0..steps steps as a (steps + 1, 4) array"""
    out = np.empty((steps + 1, 4), dtype=np.float64)
    y = s.as_tuple()
    out[0] = y
    for i in range(1, steps + 1):
        y = advance(p, y, h, 1)
        out[i] = y
    return out


def positions(p: PendulumParams, s: PendulumState) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Bob coordinates relative to the pivot, y measured along gravity"""
    x1 = p.L1 * math.sin(s.theta1)
    y1 = p.L1 * math.cos(s.theta1)
    x2 = x1 + p.L2 * math.sin(s.theta2)
    y2 = y1 + p.L2 * math.cos(s.theta2)
    return (x1, y1), (x2, y2)


def total_energy(p: PendulumParams, s: PendulumState) -> float:
    """Kinetic plus gravitational potential energy, pivot at the origin"""
    potential = -p.g * ((p.m1 + p.m2) * p.L1 * math.cos(s.theta1) + p.m2 * p.L2 * math.cos(s.theta2))

    # Bob velocities from the time derivatives of positions()
    v1_sq = (p.L1 * s.omega1) ** 2
    v2_sq = (
        v1_sq
        + (p.L2 * s.omega2) ** 2
        + 2 * p.L1 * p.L2 * s.omega1 * s.omega2 * math.cos(s.theta1 - s.theta2)
    )
    kinetic = 0.5 * p.m1 * v1_sq + 0.5 * p.m2 * v2_sq
    return kinetic + potential
