"""Command line client for the experiment runner.

Runs in-process by default; with --server it becomes a thin HTTP client of a
`mixlab serve` instance, with identical output. Subcommands: run, verify,
list-scenarios, serve. Exit codes: 0 when the report's verdict passes, 2 when
the run completes but the claim is not reproduced, 1 on execution errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import ConfigError, Report, list_scenarios, run_config, verify_report
from .ramsey import DEFAULT_NODE_BUDGET
from .reportio import CSV_FORMAT, JSON_FORMAT, export_report

PASS, ERROR, FAIL = 0, 1, 2


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    try:
        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
    except httpx.HTTPError as exc:
        raise ConfigError(f"cannot reach server {server}: {exc}") from exc
    if resp.status_code != 200:
        raise ConfigError(f"server returned {resp.status_code}: {resp.text}")
    return resp.json()


def _cmd_run(args) -> int:
    try:
        config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
        return ERROR
    try:
        if args.server:
            body = _post(args.server, "/run",
                         {"scenario": config.get("scenario"),
                          "params": config.get("params", {}), "budget": args.budget})
            report = Report.from_json(body["report"])
        else:
            report = run_config(config, budget=args.budget)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    payload = export_report(report, args.format)
    if args.out:
        try:
            Path(args.out).write_bytes(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return ERROR
        print(f"{report.scenario}: {report.verdict} -> {args.out}")
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return PASS if report.passed else FAIL


def _cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read report {args.report}: {exc}", file=sys.stderr)
        return ERROR
    try:
        if args.server:
            body = _post(args.server, "/verify", {"report": data, "budget": args.budget})
            ok, details = body["ok"], body["details"]
        else:
            ok, details = verify_report(data, budget=args.budget)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    for line in details:
        print(line)
    return PASS if ok else FAIL


def _cmd_list(_args) -> int:
    for info in list_scenarios():
        print(f"{info['id']}: {info['summary']}")
        print(f"    defaults: {json.dumps(info['defaults'])}")
    return PASS


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario from a JSON config")
    run_p.add_argument("config", help="path to {\"scenario\": ..., \"params\": {...}}")
    run_p.add_argument("--out", help="write the report here instead of stdout")
    run_p.add_argument("--format", choices=[JSON_FORMAT, CSV_FORMAT], default=JSON_FORMAT)
    run_p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                       help="search node budget for the extraction steps")
    run_p.add_argument("--server", help="base URL of a running service to delegate to")
    run_p.set_defaults(func=_cmd_run)

    ver_p = sub.add_parser("verify", help="re-run a report's config and compare")
    ver_p.add_argument("report", help="path to a JSON report")
    ver_p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    ver_p.add_argument("--server", help="base URL of a running service to delegate to")
    ver_p.set_defaults(func=_cmd_verify)

    list_p = sub.add_parser("list-scenarios", help="list scenario ids and defaults")
    list_p.set_defaults(func=_cmd_list)

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
