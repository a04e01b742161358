"""Record a session-protocol exchange for the frontend test fixtures.

A fear vehicle sits at the origin facing +x with one light ahead-left.
After a few snapshots the light is dragged to ahead-right; the recorded
frames let the UI tests assert that vL/vR cross within three snapshots
of the move without talking to a live server.

Usage: python3 scripts/record_fixture.py frontend/test/fixtures/fear_drag.json
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from spectral_logic.service.schemas import (
    BoundsModel,
    LightModel,
    SimConfig,
    VehicleModel,
    WorldModel,
)
from spectral_logic.service.session import Session


def record() -> dict:
    config = SimConfig(
        world=WorldModel(
            bounds=BoundsModel(),
            lights=[LightModel(x=2.0, y=0.8, power=1.0)],
        ),
        vehicles=[VehicleModel(archetype="fear", mode="fuzzy")],
    )
    session = Session(config)
    client = session.attach()

    def drain() -> list[str]:
        frames = []
        while not client.queue.empty():
            frames.append(client.queue.get_nowait())
        return frames

    frames: list[str] = drain()  # the greeting snapshot
    for _ in range(5):
        session.tick()
    frames += drain()

    move_seq = 0
    session.submit_text(
        client,
        json.dumps(
            {
                "kind": "move_light",
                "seq": move_seq,
                "payload": {"id": 0, "x": 2.0, "y": -0.8},
            }
        ),
    )
    for _ in range(5):
        session.tick()
    frames += drain()
    return {"move_seq": move_seq, "frames": frames}


def main() -> None:
    out = Path(sys.argv[1])
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(record(), indent=1) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
