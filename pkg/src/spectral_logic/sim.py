"""Braitenberg vehicle simulation driven by logical observables.

Wheel commands come from the two-argument actuator observables in their
{+1,-1} form (excitation positive, inhibition negative), read out
crisply on basis states, fuzzily through the Born rule, or through the
tri-valued Min/Max connectives on quantized light levels. The stepper is
a deterministic explicit-Euler differential drive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .connectives import LogicalObservable, basis_index, rank1_projector, to_isometric
from .fuzzy import decide, fuzzify, membership
from .linop import expectation
from .multivalued import dictator, dictators_3, max3, min3

ARCHETYPES = ("fear", "aggress", "love", "explore")
MODES = ("crisp", "fuzzy", "trivalued")
DEFAULT_DT = 0.02

_Z = to_isometric(dictator(2, 2, 0))  # first-argument dictator: diag(1,1,-1,-1)
_Y = to_isometric(dictator(2, 2, 1))  # second-argument dictator: diag(1,-1,1,-1)


def _negated(f: LogicalObservable) -> LogicalObservable:
    return LogicalObservable(-f.op, m=f.m, n=f.n, alphabet=f.alphabet)

# Actuator wiring per archetype: (left motor, right motor).
_ACTUATORS = {
    "fear": (_negated(_Z), _negated(_Y)),
    "aggress": (_negated(_Y), _negated(_Z)),
    "love": (_Z, _Y),
    "explore": (_Y, _Z),
}

_MIN3 = min3()
_MAX3 = max3()
_U, _V = dictators_3()

# Projectors onto the four joint wheel-command outcomes, used to turn a
# pair of normalized wheel speeds into a motion-decision label.
_DECISION_PROJECTORS = {
    "backwards": rank1_projector(2, 2, 0),  # |00>: neither wheel driven
    "left": rank1_projector(2, 2, 1),       # |01>: right wheel only
    "right": rank1_projector(2, 2, 2),      # |10>: left wheel only
    "forwards": rank1_projector(2, 2, 3),   # |11>: both wheels driven
}


@dataclass(frozen=True)
class LightSource:
    x: float
    y: float
    power: float = 1.0

    def __post_init__(self):
        if self.power < 0:
            raise ValueError(f"light power must be nonnegative, got {self.power}")


@dataclass(frozen=True)
class Bounds:
    xmin: float = -10.0
    ymin: float = -10.0
    xmax: float = 10.0
    ymax: float = 10.0

    def __post_init__(self):
        if self.xmin >= self.xmax or self.ymin >= self.ymax:
            raise ValueError("bounds rectangle is empty")

    def clamp(self, x: float, y: float) -> tuple[float, float]:
        return (
            min(max(x, self.xmin), self.xmax),
            min(max(y, self.ymin), self.ymax),
        )


@dataclass(frozen=True)
class Vehicle:
    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0
    wheel_base: float = 0.2
    v_max: float = 1.0
    sensor_offset_angle: float = math.radians(30.0)
    sensor_distance: float = 0.1
    archetype: str = "love"
    mode: str = "fuzzy"
    crisp_threshold: float = 0.5
    tri_thresholds: tuple[float, float] = (1.0 / 3.0, 2.0 / 3.0)
    tri_connective: str = "min"
    tri_steering_offset: bool = True
    # Installed by a live session's set_formula; replaces the archetype
    # wiring in crisp and fuzzy modes. Diagonals are already isometric.
    custom_motors: Optional[tuple[LogicalObservable, LogicalObservable]] = None
    # Telemetry from the most recent step.
    vl: float = 0.0
    vr: float = 0.0
    mu_left: float = 0.0
    mu_right: float = 0.0
    decision: str = "backwards"

    def __post_init__(self):
        if self.wheel_base <= 0:
            raise ValueError("wheel_base must be positive")
        if self.v_max <= 0:
            raise ValueError("v_max must be positive")
        if self.archetype not in ARCHETYPES:
            raise ValueError(f"unknown archetype {self.archetype!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.crisp_threshold <= 1.0:
            raise ValueError("crisp_threshold must lie in [0, 1]")
        t1, t2 = self.tri_thresholds
        if not 0.0 < t1 < t2 <= 1.0:
            raise ValueError("tri_thresholds must satisfy 0 < t1 < t2 <= 1")
        if self.tri_connective not in ("min", "max"):
            raise ValueError(f"tri_connective must be 'min' or 'max'")


@dataclass(frozen=True)
class World:
    lights: tuple[LightSource, ...] = ()
    vehicles: tuple[Vehicle, ...] = ()
    bounds: Bounds = field(default_factory=Bounds)
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "lights", tuple(self.lights))
        object.__setattr__(self, "vehicles", tuple(self.vehicles))


@dataclass(frozen=True)
class SensorReading:
    left: float
    right: float


def sensor_positions(v: Vehicle) -> tuple[tuple[float, float], tuple[float, float]]:
    """World coordinates of the (left, right) sensors."""
    left_angle = v.heading + v.sensor_offset_angle
    right_angle = v.heading - v.sensor_offset_angle
    return (
        (v.x + v.sensor_distance * math.cos(left_angle),
         v.y + v.sensor_distance * math.sin(left_angle)),
        (v.x + v.sensor_distance * math.cos(right_angle),
         v.y + v.sensor_distance * math.sin(right_angle)),
    )


def _intensity_at(world: World, x: float, y: float) -> float:
    raw = 0.0
    for light in world.lights:
        d2 = (light.x - x) ** 2 + (light.y - y) ** 2
        raw += light.power / (1.0 + d2)
    return min(raw, 1.0)


def sense(world: World, v: Vehicle) -> SensorReading:
    """Normalized light intensity at each sensor, clamped to [0, 1]."""
    (xl, yl), (xr, yr) = sensor_positions(v)
    return SensorReading(
        left=_intensity_at(world, xl, yl),
        right=_intensity_at(world, xr, yr),
    )


def actuator_observables(archetype: str) -> tuple[LogicalObservable, LogicalObservable]:
    """Left/right motor observables for an archetype, over {+1,-1}."""
    try:
        return _ACTUATORS[archetype]
    except KeyError:
        raise ValueError(f"unknown archetype {archetype!r}") from None


def eigenvalue_to_speed(eigenvalue: float, v_max: float) -> float:
    """Map an excitation/inhibition eigenvalue in [-1,1] to [0, v_max]."""
    if abs(eigenvalue) > 1.0 + 1e-9:
        raise ValueError(f"eigenvalue {eigenvalue} outside [-1, 1]")
    speed = v_max * (eigenvalue + 1.0) / 2.0
    return min(max(speed, 0.0), v_max)


def _motors(v: Vehicle) -> tuple[LogicalObservable, LogicalObservable]:
    if v.custom_motors is not None:
        return v.custom_motors
    return actuator_observables(v.archetype)


def controller_crisp(s: SensorReading, v: Vehicle) -> tuple[float, float]:
    """Threshold sensors to bits and read the motor eigenvalues directly."""
    bits = (int(s.left >= v.crisp_threshold), int(s.right >= v.crisp_threshold))
    index = basis_index(bits, 2)
    ml, mr = _motors(v)
    return (
        eigenvalue_to_speed(float(ml.diagonal[index]), v.v_max),
        eigenvalue_to_speed(float(mr.diagonal[index]), v.v_max),
    )


def controller_fuzzy(s: SensorReading, v: Vehicle) -> tuple[float, float]:
    """Born mean of each motor observable on the fuzzified joint state."""
    joint = fuzzify(s.left).kron(fuzzify(s.right))
    ml, mr = _motors(v)
    return (
        eigenvalue_to_speed(expectation(joint, ml.op), v.v_max),
        eigenvalue_to_speed(expectation(joint, mr.op), v.v_max),
    )


def quantize_level(intensity: float, thresholds: tuple[float, float]) -> int:
    """Map intensity to {0,1,2}: no light, weak-level, high-level."""
    t1, t2 = thresholds
    if intensity >= t2:
        return 2
    if intensity >= t1:
        return 1
    return 0


def controller_trivalued(
    s: SensorReading, v: Vehicle, connective: Optional[str] = None
) -> tuple[float, float]:
    """Drive both wheels at the Min/Max level, plus a steering offset.

    The base command is the connective's eigenvalue at the quantized
    level pair, scaled by level/2. Min and Max alone are symmetric in
    their arguments, so an optional differential term proportional to
    the dictator difference u - v steers toward the brighter side for
    approach archetypes and away from it for fear; speeds are clamped
    to [0, v_max].
    """
    kind = connective or v.tri_connective
    if kind == "min":
        table = _MIN3
    elif kind == "max":
        table = _MAX3
    else:
        raise ValueError(f"tri-valued connective must be 'min' or 'max', got {kind!r}")
    levels = (
        quantize_level(s.left, v.tri_thresholds),
        quantize_level(s.right, v.tri_thresholds),
    )
    index = basis_index(levels, 3)
    base = float(table.diagonal[index]) / 2.0 * v.v_max
    vl = vr = base
    if v.tri_steering_offset:
        u = float(_U.diagonal[index])
        w = float(_V.diagonal[index])
        offset = (u - w) / 2.0 * (v.v_max / 2.0)
        toward = v.archetype != "fear"
        if toward:
            vl, vr = base - offset, base + offset
        else:
            vl, vr = base + offset, base - offset
    return (
        min(max(vl, 0.0), v.v_max),
        min(max(vr, 0.0), v.v_max),
    )


_CONTROLLERS = {
    "crisp": controller_crisp,
    "fuzzy": controller_fuzzy,
    "trivalued": controller_trivalued,
}


def motion_decision(vl: float, vr: float, v_max: float) -> str:
    """Label the wheel command by demultiplexing it over the four joint outcomes.

    Normalized speeds are fuzzified and the product state is projected
    onto |00>, |01>, |10>, |11>; the winning outcome names the decision
    (both driven = forwards, right only = left turn, and so on).
    """
    states = (fuzzify(min(vl / v_max, 1.0)), fuzzify(min(vr / v_max, 1.0)))
    weights = {
        name: membership(states, proj) for name, proj in _DECISION_PROJECTORS.items()
    }
    return decide(weights)


def step(world: World, dt: float) -> World:
    """Advance every vehicle one explicit-Euler step; pure and deterministic.

    Controllers read only the pre-step world, so vehicle updates are
    order-independent.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    vehicles = []
    for v in world.vehicles:
        reading = sense(world, v)
        vl, vr = _CONTROLLERS[v.mode](reading, v)
        speed = (vl + vr) / 2.0
        omega = (vr - vl) / v.wheel_base
        x = v.x + speed * math.cos(v.heading) * dt
        y = v.y + speed * math.sin(v.heading) * dt
        x, y = world.bounds.clamp(x, y)
        vehicles.append(
            replace(
                v,
                x=x,
                y=y,
                heading=v.heading + omega * dt,
                vl=vl,
                vr=vr,
                mu_left=reading.left,
                mu_right=reading.right,
                decision=motion_decision(vl, vr, v.v_max),
            )
        )
    return World(
        lights=world.lights,
        vehicles=tuple(vehicles),
        bounds=world.bounds,
        time=world.time + dt,
    )


@dataclass(frozen=True)
class TrajectoryRow:
    t: float
    vehicle_id: int
    x: float
    y: float
    heading: float
    vl: float
    vr: float
    mu_left: float
    mu_right: float


def run(world: World, steps: int, dt: float = DEFAULT_DT) -> tuple[list[TrajectoryRow], World]:
    """Step the world repeatedly, recording one row per vehicle per step."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rows: list[TrajectoryRow] = []
    for _ in range(steps):
        world = step(world, dt)
        for vid, v in enumerate(world.vehicles):
            rows.append(
                TrajectoryRow(
                    t=world.time,
                    vehicle_id=vid,
                    x=v.x,
                    y=v.y,
                    heading=v.heading,
                    vl=v.vl,
                    vr=v.vr,
                    mu_left=v.mu_left,
                    mu_right=v.mu_right,
                )
            )
    return rows, world


def _fmt(value: float) -> str:
    return format(value, ".9g")


def trajectory_csv(rows: Sequence[TrajectoryRow]) -> str:
    """Trajectory as CSV text, 9 significant digits, LF line endings."""
    lines = ["t,vehicle_id,x,y,heading,vL,vR,muL,muR"]
    for r in rows:
        lines.append(
            ",".join(
                (
                    _fmt(r.t),
                    str(r.vehicle_id),
                    _fmt(r.x),
                    _fmt(r.y),
                    _fmt(r.heading),
                    _fmt(r.vl),
                    _fmt(r.vr),
                    _fmt(r.mu_left),
                    _fmt(r.mu_right),
                )
            )
        )
    return "\n".join(lines) + "\n"


def summarize(rows: Sequence[TrajectoryRow], final: World) -> dict:
    """Per-vehicle final pose, mean speed and minimum distance to each light."""
    summary = []
    for vid, v in enumerate(final.vehicles):
        own = [r for r in rows if r.vehicle_id == vid]
        speeds = [(r.vl + r.vr) / 2.0 for r in own]
        min_dists = []
        for light in final.lights:
            dists = [math.hypot(r.x - light.x, r.y - light.y) for r in own]
            min_dists.append(min(dists) if dists else math.hypot(v.x - light.x, v.y - light.y))
        summary.append(
            {
                "vehicle_id": vid,
                "final_x": v.x,
                "final_y": v.y,
                "final_heading": v.heading,
                "final_vL": v.vl,
                "final_vR": v.vr,
                "mean_speed": sum(speeds) / len(speeds) if speeds else 0.0,
                "min_distance_to_lights": min_dists,
            }
        )
    return {"time": final.time, "vehicles": summary}
