"""Closed-form special solutions: sech homoclinics and harmonic periodic orbits.

On a leaf with c > 0 the unstable axis equilibrium (0,0,0,0,c) carries a
two-parameter family of homoclinic orbits with sech/tanh profile, found by
passing to polar coordinates on the leaf and solving the resulting scalar
second-order equation.  Independently, the rank-2 invariant set supports a
family of exactly periodic solutions with constant z and angular frequency
y1_0/x2_0.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, as_state, conserved

TWO_PI = 2.0 * math.pi


@dataclass
class PolarState:
    """Leaf chart point: x1 = r1 cos(theta), x2 = r1 sin(theta), z = c - r1^2/2."""

    r1: float
    theta: float
    y1: float
    y2: float
    c: float


def polar_to_state(q: PolarState) -> np.ndarray:
    if q.r1 <= 0:
        raise DomainError("polar chart requires r1 > 0")
    return as_state([
        q.r1 * math.cos(q.theta),
        q.y1,
        q.r1 * math.sin(q.theta),
        q.y2,
        q.c - 0.5 * q.r1 ** 2,
    ])


def state_to_polar(p, c: float) -> PolarState:
    x1, y1, x2, y2, _ = as_state(p)
    if x1 == 0.0 and x2 == 0.0:
        raise DomainError("polar chart excludes the x1 = x2 = 0 axis")
    if abs(conserved(p).C - c) > 1e-10:
        raise DomainError(f"point is not on the leaf C={c}")
    theta = math.atan2(x2, x1) % TWO_PI
    return PolarState(r1=math.hypot(x1, x2), theta=theta, y1=y1, y2=y2, c=c)


def reduced_polar_field(q: PolarState):
    """Leaf dynamics in the polar chart: (dr1, dtheta, dy1, dy2)."""
    if q.r1 == 0.0:
        raise DomainError("polar field is singular at r1 = 0")
    ct, st = math.cos(q.theta), math.sin(q.theta)
    radial = q.r1 * (q.c - 0.5 * q.r1 ** 2)
    return (
        q.y1 * ct + q.y2 * st,
        (q.y2 * ct - q.y1 * st) / q.r1,
        radial * ct,
        radial * st,
    )


@dataclass
class HomoclinicParams:
    """Selects one homoclinic at the leaf equilibrium (0,0,0,0,c), c > 0."""

    c: float
    theta0: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("homoclinics exist only on leaves with c > 0")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def homoclinic(params: HomoclinicParams, t):
    """Closed-form homoclinic orbit; t may be a scalar or an array.

    x1 = +-2 sqrt(c) sech(sqrt(c) t) cos(theta0) and cyclic companions;
    z = c (1 - 2 sech^2).  Returns shape (..., 5).
    """
    c, th, s = params.c, params.theta0, float(params.sign)
    rc = math.sqrt(c)
    t = np.asarray(t, dtype=float)
    sech = 1.0 / np.cosh(rc * t)
    tanh = np.tanh(rc * t)
    ct, st = math.cos(th), math.sin(th)
    return np.stack([
        s * 2.0 * rc * sech * ct,
        -s * 2.0 * c * sech * tanh * ct,
        s * 2.0 * rc * sech * st,
        -s * 2.0 * c * sech * tanh * st,
        c * (1.0 - 2.0 * sech ** 2),
    ], axis=-1)


def homoclinic_derivative(params: HomoclinicParams, t):
    """Analytic d/dt of the homoclinic (sech' = -sech tanh, tanh' = sech^2)."""
    c, th, s = params.c, params.theta0, float(params.sign)
    rc = math.sqrt(c)
    t = np.asarray(t, dtype=float)
    sech = 1.0 / np.cosh(rc * t)
    tanh = np.tanh(rc * t)
    ct, st = math.cos(th), math.sin(th)
    d_sech = -rc * sech * tanh
    d_secht = rc * (sech * sech ** 2 - sech * tanh ** 2)  # d/dt (sech*tanh)
    return np.stack([
        s * 2.0 * rc * d_sech * ct,
        -s * 2.0 * c * d_secht * ct,
        s * 2.0 * rc * d_sech * st,
        -s * 2.0 * c * d_secht * st,
        -4.0 * c * sech * d_sech,
    ], axis=-1)


def second_order_profile(c: float, t):
    """Radial pulse r1(t) = 2 sqrt(c) sech(sqrt(c) t) and its derivative.

    Solves r1'' = r1 (c - r1^2 / 2); rescaling r1 = 2 sqrt(c) u,
    tt = sqrt(c) t turns this into u'' = u - 2 u^3 with u = sech.
    """
    if c <= 0:
        raise DomainError("radial pulse requires c > 0")
    rc = math.sqrt(c)
    t = np.asarray(t, dtype=float)
    sech = 1.0 / np.cosh(rc * t)
    return 2.0 * rc * sech, -2.0 * c * sech * np.tanh(rc * t)


@dataclass
class PeriodicParams:
    """Initial data (x1_0, y1_0, x2_0) on the rank-2 set, x2_0, y1_0 != 0."""

    x1_0: float
    y1_0: float
    x2_0: float

    def __post_init__(self):
        if self.x2_0 == 0 or self.y1_0 == 0:
            raise ValueError("periodic family requires x2_0 != 0 and y1_0 != 0")

    @property
    def omega(self) -> float:
        return self.y1_0 / self.x2_0

    @property
    def period(self) -> float:
        return TWO_PI / abs(self.omega)


def periodic_solution(params: PeriodicParams, t):
    """Explicit periodic orbit of the full system; shape (..., 5).

    z is frozen at -omega^2 and the (x1, x2) pair rotates with frequency
    omega = y1_0 / x2_0; y1 = omega x2 and y2 = -omega x1 along the orbit.
    """
    w = params.omega
    t = np.asarray(t, dtype=float)
    s, co = np.sin(w * t), np.cos(w * t)
    x1 = params.x2_0 * s + params.x1_0 * co
    x2 = -params.x1_0 * s + params.x2_0 * co
    y1 = -w * (params.x1_0 * s - params.x2_0 * co)
    y2 = -w * (params.x2_0 * s + params.x1_0 * co)
    z = np.broadcast_to(-w * w, t.shape) if t.shape else -w * w
    return np.stack([x1, y1, x2, y2, np.asarray(z, dtype=float)], axis=-1)


def periodic_derivative(params: PeriodicParams, t):
    """Analytic d/dt of periodic_solution."""
    w = params.omega
    t = np.asarray(t, dtype=float)
    s, co = np.sin(w * t), np.cos(w * t)
    dx1 = w * (params.x2_0 * co - params.x1_0 * s)
    dx2 = -w * (params.x1_0 * co + params.x2_0 * s)
    dy1 = -w * w * (params.x1_0 * co + params.x2_0 * s)
    dy2 = -w * w * (params.x2_0 * co - params.x1_0 * s)
    dz = np.zeros(t.shape) if t.shape else 0.0
    return np.stack([dx1, dy1, dx2, dy2, np.asarray(dz, dtype=float)], axis=-1)


def m1_solution(params: PeriodicParams, t):
    """First three components (x1, y1, x2) of the orbit: the reduced flow
    on the x2 != 0 piece of the rank-2 set, valid between punctures."""
    full = periodic_solution(params, t)
    return full[..., [0, 1, 2]]


@dataclass
class PunctureSchedule:
    """Times t_k where the orbit crosses x2 = y1 = 0 (leaves the x2 != 0 piece)."""

    vartheta: float  # in [0, 2 pi): the phase with sin = x2_0/r, cos = x1_0/r
    ratio: float  # x2_0 / y1_0

    def t_k(self, k: int) -> float:
        return self.ratio * self.vartheta + k * math.pi * self.ratio

    def count_in(self, t_end: float) -> int:
        """Number of punctures with 0 < t_k <= t_end."""
        count, k = 0, 0
        while True:
            t = self.t_k(k)
            if t > t_end:
                break
            if t > 0:
                count += 1
            k += 1
        return count


def puncture_times(params: PeriodicParams) -> PunctureSchedule:
    vartheta = math.atan2(params.x2_0, params.x1_0) % TWO_PI
    return PunctureSchedule(vartheta=vartheta, ratio=params.x2_0 / params.y1_0)
