"""Command-line client for the service.

Every subcommand speaks to the HTTP API: against a remote server when
--server is given, otherwise against an in-process application, so both
paths exercise the same request validation and handlers.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Optional

import httpx
import uvicorn

from .service import create_app, default_config
from .service.schemas import SimConfig


class ServiceError(Exception):
    """Non-2xx response from the service, with its rendered detail."""


def _format_detail(detail) -> str:
    if isinstance(detail, str):
        return detail
    if isinstance(detail, list):  # pydantic validation errors carry field paths
        lines = []
        for item in detail:
            loc = [str(p) for p in item.get("loc", []) if p != "body"]
            lines.append(f"{'.'.join(loc) or 'request'}: {item.get('msg', 'invalid')}")
        return "\n".join(lines)
    return json.dumps(detail)


class ServiceClient:
    """Thin POST wrapper over httpx or the in-process test client."""

    def __init__(self, server: Optional[str]):
        if server:
            self._client = httpx.Client(base_url=server, timeout=60.0)
        else:
            # Imported lazily: remote-mode runs never need it, and some
            # environments warn on import about their bundled httpx.
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient
            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code != 200:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(_format_detail(detail))
        return response.json()


def _fmt(value: float) -> str:
    return format(value, "g")


def _cmd_truth_table(args) -> int:
    client = ServiceClient(args.server)
    resp = client.post("/truth-table", {"expression": args.expression, "m": args.m})
    variables = ", ".join(resp["variables"])
    print(f"{resp['formula']}  (m={resp['m']}, n={resp['n']}, variables: {variables})")
    for row in resp["rows"]:
        assignment = ",".join(str(a) for a in row["assignment"])
        print(f"({assignment}) -> {row['value']}")
    print("diagonal: " + ", ".join(_fmt(v) for v in resp["diagonal"]))
    return 0


def _cmd_membership(args) -> int:
    client = ServiceClient(args.server)
    resp = client.post("/membership", {"formula": args.formula, "mu": args.mu})
    print(f"{resp['membership']:.12f}")
    return 0


def _cmd_eval(args) -> int:
    client = ServiceClient(args.server)
    resp = client.post(
        "/eval", {"formula": args.formula, "assignment": args.letters, "m": args.m}
    )
    print(resp["value"])
    return 0


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_simulate(args) -> int:
    client = ServiceClient(args.server)
    resp = client.post("/simulate", {"config": _load_config(args.config)})
    csv_text = resp["csv"]
    with open(args.out, "wb") as fh:
        fh.write(csv_text.encode("utf-8"))
    rows = csv_text.count("\n") - 1
    print(f"wrote {rows} rows to {args.out}")
    summary = resp["summary"]
    print(f"time: {_fmt(summary['time'])}")
    for v in summary["vehicles"]:
        pose = (
            f"x={_fmt(v['final_x'])} y={_fmt(v['final_y'])}"
            f" heading={_fmt(v['final_heading'])}"
        )
        wheels = f"vL={_fmt(v['final_vL'])} vR={_fmt(v['final_vR'])}"
        print(
            f"vehicle {v['vehicle_id']}: {pose} {wheels}"
            f" mean_speed={_fmt(v['mean_speed'])}"
        )
        for lid, dist in enumerate(v["min_distance_to_lights"]):
            print(f"  min distance to light {lid}: {_fmt(dist)}")
    return 0


def _cmd_serve(args) -> int:
    if args.config:
        config = SimConfig.model_validate(_load_config(args.config))
    else:
        config = default_config()
    uvicorn.run(create_app(config), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-logic",
        description="Logic-observable workbench: tables, memberships, vehicle runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_server(p):
        p.add_argument(
            "--server",
            default=None,
            help="base URL of a running service (default: in-process)",
        )

    p = sub.add_parser("truth-table", help="print a connective's table and diagonal")
    p.add_argument("expression", help="connective name, 4-bit string, or formula")
    p.add_argument("--m", type=int, default=2, help="alphabet size (default 2)")
    add_server(p)
    p.set_defaults(func=_cmd_truth_table)

    p = sub.add_parser("membership", help="fuzzy membership of a formula")
    p.add_argument("formula")
    p.add_argument("mu", type=float, nargs="*", help="one value in [0,1] per variable")
    add_server(p)
    p.set_defaults(func=_cmd_membership)

    p = sub.add_parser("eval", help="classical value of a formula at one assignment")
    p.add_argument("formula")
    p.add_argument("letters", type=int, nargs="*", help="one letter per variable")
    p.add_argument("--m", type=int, default=2, help="alphabet size (default 2)")
    add_server(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("simulate", help="run a config and write the trajectory CSV")
    p.add_argument("--config", required=True, help="SimConfig JSON path")
    p.add_argument("--out", required=True, help="output CSV path")
    add_server(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="serve the HTTP API and live session endpoint")
    p.add_argument("--config", default=None, help="SimConfig JSON path")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
