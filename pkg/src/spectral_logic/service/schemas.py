"""Pydantic models: simulation config, REST payloads, session protocol.

Every model rejects unknown fields so config and protocol mistakes
surface as validation errors with a field path.
"""

from __future__ import annotations

import json
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .. import sim

SCHEMA_VERSION = 1


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# Simulation config ---------------------------------------------------------


class BoundsModel(StrictModel):
    xmin: float = -10.0
    ymin: float = -10.0
    xmax: float = 10.0
    ymax: float = 10.0

    @model_validator(mode="after")
    def _nonempty(self):
        if self.xmin >= self.xmax or self.ymin >= self.ymax:
            raise ValueError("bounds rectangle is empty")
        return self

    def build(self) -> sim.Bounds:
        return sim.Bounds(self.xmin, self.ymin, self.xmax, self.ymax)


class LightModel(StrictModel):
    x: float
    y: float
    power: float = Field(default=1.0, ge=0.0)

    def build(self) -> sim.LightSource:
        return sim.LightSource(x=self.x, y=self.y, power=self.power)


class VehicleModel(StrictModel):
    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0
    wheel_base: float = Field(default=0.2, gt=0.0)
    v_max: float = Field(default=1.0, gt=0.0)
    sensor_offset_angle: float = math.radians(30.0)
    sensor_distance: float = Field(default=0.1, ge=0.0)
    archetype: Literal["fear", "aggress", "love", "explore"] = "love"
    mode: Literal["crisp", "fuzzy", "trivalued"] = "fuzzy"
    crisp_threshold: float = Field(default=0.5, ge=0.0, le=1.0)
    tri_thresholds: tuple[float, float] = (1.0 / 3.0, 2.0 / 3.0)
    tri_connective: Literal["min", "max"] = "min"

    @field_validator("tri_thresholds")
    @classmethod
    def _ordered(cls, value):
        t1, t2 = value
        if not 0.0 < t1 < t2 <= 1.0:
            raise ValueError("tri_thresholds must satisfy 0 < t1 < t2 <= 1")
        return value

    def build(self, tri_steering_offset: bool = True) -> sim.Vehicle:
        return sim.Vehicle(
            x=self.x,
            y=self.y,
            heading=self.heading,
            wheel_base=self.wheel_base,
            v_max=self.v_max,
            sensor_offset_angle=self.sensor_offset_angle,
            sensor_distance=self.sensor_distance,
            archetype=self.archetype,
            mode=self.mode,
            crisp_threshold=self.crisp_threshold,
            tri_thresholds=self.tri_thresholds,
            tri_connective=self.tri_connective,
            tri_steering_offset=tri_steering_offset,
        )


class WorldModel(StrictModel):
    bounds: BoundsModel = Field(default_factory=BoundsModel)
    lights: list[LightModel] = Field(default_factory=list)


class SimConfig(StrictModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    world: WorldModel = Field(default_factory=WorldModel)
    vehicles: list[VehicleModel] = Field(default_factory=list)
    dt: float = Field(default=sim.DEFAULT_DT, gt=0.0)
    steps: int = Field(default=0, ge=0)
    tri_steering_offset: bool = True

    def build_world(self) -> sim.World:
        return sim.World(
            lights=tuple(light.build() for light in self.world.lights),
            vehicles=tuple(
                v.build(tri_steering_offset=self.tri_steering_offset)
                for v in self.vehicles
            ),
            bounds=self.world.bounds.build(),
        )


# REST payloads --------------------------------------------------------------


class TruthTableRequest(StrictModel):
    expression: str
    m: int = Field(default=2, ge=2)


class TruthTableRow(StrictModel):
    assignment: list[int]
    value: int


class TruthTableResponse(StrictModel):
    expression: str
    formula: str
    m: int
    n: int
    variables: list[str]
    rows: list[TruthTableRow]
    diagonal: list[float]


class MembershipRequest(StrictModel):
    formula: str
    mu: list[float]


class MembershipResponse(StrictModel):
    formula: str
    variables: list[str]
    membership: float


class EvalRequest(StrictModel):
    formula: str
    assignment: list[int]
    m: int = Field(default=2, ge=2)


class EvalResponse(StrictModel):
    formula: str
    value: int


class SimulateRequest(StrictModel):
    config: SimConfig


class SimulateResponse(StrictModel):
    csv: str
    summary: dict


# Session protocol -----------------------------------------------------------

CLIENT_KINDS = (
    "add_light",
    "move_light",
    "remove_light",
    "set_archetype",
    "set_mode",
    "set_formula",
    "pause",
    "resume",
    "step_once",
    "reset",
)
SERVER_KINDS = ("snapshot", "error", "ack")


class SessionMessage(StrictModel):
    """One protocol frame: a kind, a monotone sequence number, a payload."""

    kind: str
    seq: int = Field(ge=0)
    payload: dict = Field(default_factory=dict)

    @field_validator("kind")
    @classmethod
    def _known(cls, value):
        if value not in CLIENT_KINDS and value not in SERVER_KINDS:
            raise ValueError(f"unknown message kind {value!r}")
        return value


class AddLightPayload(StrictModel):
    x: float
    y: float
    power: float = Field(default=1.0, ge=0.0)


class MoveLightPayload(StrictModel):
    id: int
    x: float
    y: float


class RemoveLightPayload(StrictModel):
    id: int


class SetArchetypePayload(StrictModel):
    id: int
    archetype: Literal["fear", "aggress", "love", "explore"]


class SetModePayload(StrictModel):
    id: int
    mode: Literal["crisp", "fuzzy", "trivalued"]


class SetFormulaPayload(StrictModel):
    """Custom motor connectives, one formula per wheel, over two variables."""

    id: int
    left: str
    right: str


class EmptyPayload(StrictModel):
    pass


class VehicleSnapshot(StrictModel):
    id: int
    x: float
    y: float
    heading: float
    vL: float
    vR: float
    muL: float
    muR: float
    archetype: str
    mode: str
    decision: str


class LightSnapshot(StrictModel):
    id: int
    x: float
    y: float
    power: float


class SnapshotPayload(StrictModel):
    time: float
    vehicles: list[VehicleSnapshot]
    lights: list[LightSnapshot]


class AckPayload(StrictModel):
    command_seq: int
    command_kind: str


class ErrorPayload(StrictModel):
    message: str
    command_seq: Optional[int] = None


PAYLOAD_MODELS = {
    "add_light": AddLightPayload,
    "move_light": MoveLightPayload,
    "remove_light": RemoveLightPayload,
    "set_archetype": SetArchetypePayload,
    "set_mode": SetModePayload,
    "set_formula": SetFormulaPayload,
    "pause": EmptyPayload,
    "resume": EmptyPayload,
    "step_once": EmptyPayload,
    "reset": EmptyPayload,
    "snapshot": SnapshotPayload,
    "ack": AckPayload,
    "error": ErrorPayload,
}


def encode_message(message: SessionMessage) -> str:
    """One compact JSON document per frame."""
    return json.dumps(message.model_dump(), separators=(",", ":"))


def parse_message(text: str) -> SessionMessage:
    """Parse and validate a frame, including its per-kind payload."""
    message = SessionMessage.model_validate_json(text)
    PAYLOAD_MODELS[message.kind].model_validate(message.payload)
    return message
