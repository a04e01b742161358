"""FastAPI application: REST endpoints plus the live session endpoint."""

from __future__ import annotations

import asyncio
import contextlib
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect

from ..connectives import (
    NAMED_BINARY_BITS,
    LogicalObservable,
    binary_connective,
    index_digits,
)
from ..formula import compile_formula, eval_classical, format_formula, parse, truth_table_rows
from ..fuzzy import fuzzify, membership
from ..multivalued import max3, min3
from ..sim import run, summarize, trajectory_csv
from . import schemas
from .session import Session


def default_config() -> schemas.SimConfig:
    """One fuzzy love vehicle and one light: the smallest interesting world."""
    return schemas.SimConfig(
        world=schemas.WorldModel(
            bounds=schemas.BoundsModel(),
            lights=[schemas.LightModel(x=2.0, y=1.0, power=1.0)],
        ),
        vehicles=[
            schemas.VehicleModel(x=-2.0, y=-1.0, heading=0.0, archetype="love", mode="fuzzy")
        ],
        steps=1000,
    )


def _named_observable(expression: str, m: int) -> Optional[tuple[LogicalObservable, str]]:
    """Resolve a connective name (or raw bit string) to its tabled observable."""
    key = expression.strip().upper()
    if m == 2:
        key = {"MIN": "AND", "MAX": "OR"}.get(key, key)
        if key in NAMED_BINARY_BITS or (len(key) == 4 and set(key) <= set("01")):
            return binary_connective(key), key
    if m == 3:
        if key == "MIN":
            return min3(), "MIN"
        if key == "MAX":
            return max3(), "MAX"
    return None


def _truth_table_response(request: schemas.TruthTableRequest) -> schemas.TruthTableResponse:
    named = _named_observable(request.expression, request.m)
    if named is not None:
        f, display = named
        rows = [
            schemas.TruthTableRow(
                assignment=list(index_digits(i, f.m, f.n)),
                value=int(round(float(f.diagonal[i]))),
            )
            for i in range(f.dim)
        ]
        return schemas.TruthTableResponse(
            expression=request.expression,
            formula=display,
            m=f.m,
            n=f.n,
            variables=["A", "B"],
            rows=rows,
            diagonal=[float(v) for v in f.diagonal],
        )
    formula = parse(request.expression)
    f = compile_formula(formula, request.m)
    rows = [
        schemas.TruthTableRow(assignment=list(assignment), value=value)
        for assignment, value in truth_table_rows(formula, request.m)
    ]
    return schemas.TruthTableResponse(
        expression=request.expression,
        formula=format_formula(formula),
        m=request.m,
        n=formula.arity,
        variables=list(formula.variables),
        rows=rows,
        diagonal=[float(v) for v in f.diagonal],
    )


async def _pump(ws: WebSocket, client) -> None:
    while True:
        text = await client.queue.get()
        await ws.send_text(text)


def create_app(config: Optional[schemas.SimConfig] = None) -> FastAPI:
    cfg = config if config is not None else default_config()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        loop_task = asyncio.create_task(app.state.session.run_loop())
        try:
            yield
        finally:
            loop_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await loop_task

    app = FastAPI(title="spectral-logic", lifespan=lifespan)
    app.state.config = cfg
    app.state.session = Session(cfg)

    @app.post("/truth-table", response_model=schemas.TruthTableResponse)
    def truth_table(request: schemas.TruthTableRequest):
        try:
            return _truth_table_response(request)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except KeyError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/membership", response_model=schemas.MembershipResponse)
    def membership_endpoint(request: schemas.MembershipRequest):
        try:
            formula = parse(request.formula)
            if len(request.mu) != formula.arity:
                raise ValueError(
                    f"formula has {formula.arity} variables"
                    f" but {len(request.mu)} membership values were given"
                )
            if formula.arity == 0:
                value = float(eval_classical(formula, [], 2))
            else:
                f = compile_formula(formula, 2)
                states = [fuzzify(mu) for mu in request.mu]
                value = membership(states, f)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.MembershipResponse(
            formula=format_formula(formula),
            variables=list(formula.variables),
            membership=value,
        )

    @app.post("/eval", response_model=schemas.EvalResponse)
    def eval_endpoint(request: schemas.EvalRequest):
        try:
            formula = parse(request.formula)
            value = eval_classical(formula, request.assignment, request.m)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.EvalResponse(formula=format_formula(formula), value=value)

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    def simulate(request: schemas.SimulateRequest):
        try:
            world = request.config.build_world()
            rows, final = run(world, request.config.steps, request.config.dt)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.SimulateResponse(
            csv=trajectory_csv(rows), summary=summarize(rows, final)
        )

    @app.websocket("/session")
    async def session_endpoint(ws: WebSocket):
        await ws.accept()
        session: Session = app.state.session
        client = session.attach()
        sender = asyncio.create_task(_pump(ws, client))
        try:
            while True:
                frame = await ws.receive()
                if frame["type"] == "websocket.disconnect":
                    break
                if "text" in frame and frame["text"] is not None:
                    text = frame["text"]
                else:
                    # Binary frames are malformed input, not a hangup:
                    # let the validator answer with an error frame.
                    text = bytes(frame.get("bytes") or b"").decode("utf-8", "replace")
                session.submit_text(client, text)
        except WebSocketDisconnect:
            pass
        finally:
            session.detach(client)
            sender.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await sender

    return app
