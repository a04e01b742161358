"""Live simulation session: one loop owner, command queue, fan-out.

Connection handlers never touch the world. They enqueue validated
commands and read rendered snapshot text from their own outbound queue;
the loop applies commands between steps, so no snapshot reflects a
half-applied command, and every client receives byte-identical frames.
"""

from __future__ import annotations

import asyncio
from collections import deque
from dataclasses import replace

from .. import sim
from ..connectives import TruthTable, observable_from_truth_table, to_isometric
from ..formula import eval_classical, parse
from . import schemas

SNAPSHOT_INTERVAL = 0.02  # seconds per tick: 50 snapshots/s


class Client:
    """Per-connection outbound frame queue and inbound sequence gate."""

    def __init__(self):
        self.queue: asyncio.Queue = asyncio.Queue()
        self.last_seq = -1


def compile_motor(text: str):
    """Compile a wheel formula over sensor variables A (left) and B (right).

    The result is validated as projective and returned in isometric
    {+1,-1} form, ready to drive eigenvalue_to_speed.
    """
    formula = parse(text)
    extra = sorted(set(formula.variables) - {"A", "B"})
    if extra:
        raise ValueError(
            f"motor formulas may use only variables A and B, got {', '.join(extra)}"
        )
    values = []
    for a in (0, 1):
        for b in (0, 1):
            env = {"A": a, "B": b}
            letters = [env[name] for name in formula.variables]
            values.append(eval_classical(formula, letters, 2))
    table = TruthTable(m=2, n=2, values=tuple(values))
    f = observable_from_truth_table(table)
    if not f.is_projective():
        raise ValueError("motor connective must be projective")
    return to_isometric(f)


class Session:
    """Single-owner world with an ordered command queue and broadcast."""

    def __init__(self, config: schemas.SimConfig, interval: float = SNAPSHOT_INTERVAL):
        self.config = config
        self.interval = interval
        self.world = config.build_world()
        self.paused = False
        self.pending_steps = 0
        self._commands: deque = deque()
        self._clients: list[Client] = []
        self._out_seq = 0
        self._light_ids: list[int] = list(range(len(self.world.lights)))
        self._next_light_id = len(self.world.lights)
        self._latest_snapshot = self._render()

    # Connection side -------------------------------------------------------

    def attach(self) -> Client:
        """Register a connection; it immediately receives the latest snapshot."""
        client = Client()
        client.queue.put_nowait(self._latest_snapshot)
        self._clients.append(client)
        return client

    def detach(self, client: Client) -> None:
        if client in self._clients:
            self._clients.remove(client)

    def submit_text(self, client: Client, text: str) -> None:
        """Validate one inbound frame; queue it or answer with an error.

        Validation is staged so the error names the outermost problem:
        unparseable frame, then non-client kind, then stale sequence,
        then a bad payload for an otherwise well-formed command.
        """
        try:
            message = schemas.SessionMessage.model_validate_json(text)
        except ValueError as exc:
            self._send(client, "error", {"message": str(exc), "command_seq": None})
            return
        if message.kind not in schemas.CLIENT_KINDS:
            self._send(
                client,
                "error",
                {
                    "message": f"{message.kind!r} is not a client command",
                    "command_seq": message.seq,
                },
            )
            return
        if message.seq <= client.last_seq:
            self._send(
                client,
                "error",
                {
                    "message": f"seq {message.seq} is not increasing"
                    f" (last was {client.last_seq})",
                    "command_seq": message.seq,
                },
            )
            return
        try:
            schemas.PAYLOAD_MODELS[message.kind].model_validate(message.payload)
        except ValueError as exc:
            self._send(
                client, "error", {"message": str(exc), "command_seq": message.seq}
            )
            return
        client.last_seq = message.seq
        self._commands.append((client, message))

    # Loop side --------------------------------------------------------------

    async def run_loop(self) -> None:
        while True:
            await asyncio.sleep(self.interval)
            self.tick()

    def tick(self) -> None:
        """Apply queued commands, then advance or re-render as needed."""
        mutated = self._drain_commands()
        if not self.paused:
            self._advance()
        elif self.pending_steps > 0:
            self.pending_steps -= 1
            self._advance()
        elif mutated:
            # Paused edits still become visible without advancing time.
            self._broadcast(self._render())

    def _drain_commands(self) -> bool:
        mutated = False
        while self._commands:
            client, message = self._commands.popleft()
            try:
                mutated = self._apply(message) or mutated
            except ValueError as exc:
                self._send(
                    client, "error", {"message": str(exc), "command_seq": message.seq}
                )
            else:
                self._send(
                    client,
                    "ack",
                    {"command_seq": message.seq, "command_kind": message.kind},
                )
        return mutated

    def _advance(self) -> None:
        self.world = sim.step(self.world, self.config.dt)
        self._broadcast(self._render())

    # Command application ----------------------------------------------------

    def _apply(self, message: schemas.SessionMessage) -> bool:
        """Apply one command; returns whether the world was mutated."""
        payload = schemas.PAYLOAD_MODELS[message.kind].model_validate(message.payload)
        handler = getattr(self, "_apply_" + message.kind)
        return handler(payload)

    def _light_index(self, light_id: int) -> int:
        try:
            return self._light_ids.index(light_id)
        except ValueError:
            raise ValueError(f"unknown light id {light_id}") from None

    def _vehicle(self, vehicle_id: int) -> sim.Vehicle:
        if not 0 <= vehicle_id < len(self.world.vehicles):
            raise ValueError(f"unknown vehicle id {vehicle_id}")
        return self.world.vehicles[vehicle_id]

    def _replace_vehicle(self, vehicle_id: int, vehicle: sim.Vehicle) -> None:
        vehicles = list(self.world.vehicles)
        vehicles[vehicle_id] = vehicle
        self.world = replace(self.world, vehicles=tuple(vehicles))

    def _apply_add_light(self, p: schemas.AddLightPayload) -> bool:
        light = sim.LightSource(x=p.x, y=p.y, power=p.power)
        self.world = replace(self.world, lights=self.world.lights + (light,))
        self._light_ids.append(self._next_light_id)
        self._next_light_id += 1
        return True

    def _apply_move_light(self, p: schemas.MoveLightPayload) -> bool:
        index = self._light_index(p.id)
        lights = list(self.world.lights)
        lights[index] = replace(lights[index], x=p.x, y=p.y)
        self.world = replace(self.world, lights=tuple(lights))
        return True

    def _apply_remove_light(self, p: schemas.RemoveLightPayload) -> bool:
        index = self._light_index(p.id)
        lights = list(self.world.lights)
        del lights[index]
        del self._light_ids[index]
        self.world = replace(self.world, lights=tuple(lights))
        return True

    def _apply_set_archetype(self, p: schemas.SetArchetypePayload) -> bool:
        vehicle = self._vehicle(p.id)
        # Archetype wiring replaces any custom motors installed earlier.
        self._replace_vehicle(
            p.id, replace(vehicle, archetype=p.archetype, custom_motors=None)
        )
        return True

    def _apply_set_mode(self, p: schemas.SetModePayload) -> bool:
        vehicle = self._vehicle(p.id)
        self._replace_vehicle(p.id, replace(vehicle, mode=p.mode))
        return True

    def _apply_set_formula(self, p: schemas.SetFormulaPayload) -> bool:
        vehicle = self._vehicle(p.id)
        motors = (compile_motor(p.left), compile_motor(p.right))
        self._replace_vehicle(p.id, replace(vehicle, custom_motors=motors))
        return True

    def _apply_pause(self, p: schemas.EmptyPayload) -> bool:
        self.paused = True
        return False

    def _apply_resume(self, p: schemas.EmptyPayload) -> bool:
        self.paused = False
        self.pending_steps = 0
        return False

    def _apply_step_once(self, p: schemas.EmptyPayload) -> bool:
        self.pending_steps += 1
        return False

    def _apply_reset(self, p: schemas.EmptyPayload) -> bool:
        self.world = self.config.build_world()
        self._light_ids = list(range(len(self.world.lights)))
        self._next_light_id = len(self.world.lights)
        return True

    # Outbound frames ----------------------------------------------------------

    def _next_seq(self) -> int:
        seq = self._out_seq
        self._out_seq += 1
        return seq

    def _send(self, client: Client, kind: str, payload: dict) -> None:
        frame = schemas.SessionMessage(kind=kind, seq=self._next_seq(), payload=payload)
        client.queue.put_nowait(schemas.encode_message(frame))

    def _broadcast(self, text: str) -> None:
        for client in self._clients:
            client.queue.put_nowait(text)

    def _render(self) -> str:
        """Serialize the current world once; also kept for late joiners."""
        payload = schemas.SnapshotPayload(
            time=self.world.time,
            vehicles=[
                schemas.VehicleSnapshot(
                    id=vid,
                    x=v.x,
                    y=v.y,
                    heading=v.heading,
                    vL=v.vl,
                    vR=v.vr,
                    muL=v.mu_left,
                    muR=v.mu_right,
                    archetype=v.archetype,
                    mode=v.mode,
                    decision=v.decision,
                )
                for vid, v in enumerate(self.world.vehicles)
            ],
            lights=[
                schemas.LightSnapshot(id=lid, x=light.x, y=light.y, power=light.power)
                for lid, light in zip(self._light_ids, self.world.lights)
            ],
        )
        frame = schemas.SessionMessage(
            kind="snapshot", seq=self._next_seq(), payload=payload.model_dump()
        )
        text = schemas.encode_message(frame)
        self._latest_snapshot = text
        return text
