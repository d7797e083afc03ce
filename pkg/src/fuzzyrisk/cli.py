"""Command-line client for the scoring service.

The CLI computes nothing itself: it reads local files, bundles them into
service requests, and writes response bodies verbatim. By default requests
run against an in-process instance of the service; --server points them at
a remote one instead.

Exit codes: 0 success, 1 validation failure, 2 runtime error (I/O, transport).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise CliError(f"cannot read {path}: {err}", EXIT_RUNTIME) from err


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise CliError(f"{path} is not valid JSON: {err}", EXIT_VALIDATION) from err


def _collect_rule_files(hierarchy: dict, base: Path) -> dict[str, str]:
    """Inline every rule file the hierarchy references, resolved next to it.

    Unreadable references are skipped here and reported by the service as
    validation findings, so a dangling path exits 1 rather than 2.
    """
    collected: dict[str, str] = {}

    def walk(node) -> None:
        if not isinstance(node, dict):
            return
        ref = node.get("rules")
        if isinstance(ref, str) and ref not in collected:
            try:
                collected[ref] = (base / ref).read_text(encoding="utf-8")
            except OSError:
                pass
        for child in node.get("children", []) or []:
            walk(child)

    walk(hierarchy)
    return collected


def _bundle(hierarchy_path: str) -> dict:
    hierarchy = _read_json(hierarchy_path)
    base = Path(hierarchy_path).parent
    return {
        "hierarchy": hierarchy,
        "rule_files": _collect_rule_files(hierarchy, base)
        if isinstance(hierarchy, dict)
        else {},
    }


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    try:
        if server is None:
            from .service.app import app

            async def go() -> httpx.Response:
                transport = httpx.ASGITransport(app=app)
                async with httpx.AsyncClient(
                    transport=transport, base_url="http://fuzzyrisk.local"
                ) as client:
                    return await client.post(path, json=payload)

            return asyncio.run(go())
        with httpx.Client(base_url=server, timeout=60.0) as client:
            return client.post(path, json=payload)
    except httpx.HTTPError as err:
        raise CliError(f"service request failed: {err}", EXIT_RUNTIME) from err


def _print_diagnostics(diagnostics: list[dict]) -> None:
    for d in diagnostics:
        where = d.get("where", "")
        prefix = f" [{where}]" if where else ""
        print(f"{d.get('severity', 'error')}{prefix}: {d.get('message', '')}", file=sys.stderr)


def _check_response(resp: httpx.Response) -> httpx.Response:
    if resp.status_code < 400:
        return resp
    if resp.status_code < 500:
        try:
            detail = resp.json().get("detail")
        except json.JSONDecodeError:
            detail = resp.text
        if isinstance(detail, dict):
            message = detail.get("message")
            if message:
                print(f"error: {message}", file=sys.stderr)
            _print_diagnostics(detail.get("diagnostics", []))
        else:
            print(f"error: {detail}", file=sys.stderr)
        raise CliError("request rejected", EXIT_VALIDATION)
    raise CliError(f"service error {resp.status_code}: {resp.text}", EXIT_RUNTIME)


def _write_output(content: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.write(content.decode("utf-8"))
    else:
        try:
            Path(out).write_bytes(content)
        except OSError as err:
            raise CliError(f"cannot write {out}: {err}", EXIT_RUNTIME) from err


def _parse_inputs(pairs: str) -> dict[str, float]:
    inputs: dict[str, float] = {}
    for part in pairs.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise CliError(
                f"malformed --inputs entry {part!r}; expected name=value", EXIT_VALIDATION
            )
        try:
            inputs[name] = float(value)
        except ValueError:
            raise CliError(
                f"malformed --inputs value for {name!r}: {value!r}", EXIT_VALIDATION
            ) from None
    if not inputs:
        raise CliError("--inputs is empty; expected name=value pairs", EXIT_VALIDATION)
    return inputs


def cmd_validate(args: argparse.Namespace) -> int:
    payload = _bundle(args.hierarchy)
    if args.questionnaire:
        payload["questionnaire"] = _read_json(args.questionnaire)
    resp = _check_response(_post(args.server, "/validate", payload))
    body = resp.json()
    _print_diagnostics(body.get("diagnostics", []))
    if body.get("ok"):
        print("ok")
        return EXIT_OK
    return EXIT_VALIDATION


def cmd_assess(args: argparse.Namespace) -> int:
    payload = _bundle(args.hierarchy)
    payload["questionnaire"] = _read_json(args.questionnaire)
    payload["answers"] = _read_json(args.answers)
    payload["format"] = args.format
    payload["include_meta"] = not args.no_meta
    resp = _check_response(_post(args.server, "/assess", payload))
    _write_output(resp.content, args.out)
    return EXIT_OK


def cmd_explain(args: argparse.Namespace) -> int:
    payload = _bundle(args.hierarchy)
    payload["node"] = args.node
    payload["inputs"] = _parse_inputs(args.inputs)
    payload["format"] = args.format
    resp = _check_response(_post(args.server, "/explain", payload))
    _write_output(resp.content, args.out)
    return EXIT_OK


def cmd_surface(args: argparse.Namespace) -> int:
    payload = _bundle(args.hierarchy)
    payload["node"] = args.node
    payload["resolution"] = args.resolution
    resp = _check_response(_post(args.server, "/surface", payload))
    _write_output(resp.content, args.out)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("fuzzyrisk.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyrisk",
        description="Questionnaire-driven security scoring over layered fuzzy inference.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("hierarchy", help="hierarchy JSON file")
        p.add_argument("--server", default=None, help="remote service URL (default: in-process)")

    p = sub.add_parser("validate", help="check a hierarchy (and questionnaire) for problems")
    add_common(p)
    p.add_argument("--questionnaire", default=None, help="questionnaire JSON to cross-check")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("assess", help="score a full assessment from an answers file")
    add_common(p)
    p.add_argument("--questionnaire", required=True, help="questionnaire JSON file")
    p.add_argument("--answers", required=True, help="answers JSON file (id -> label or number)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--no-meta", action="store_true", help="omit the volatile metadata block")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("explain", help="show the rule-by-rule trace of one inference unit")
    add_common(p)
    p.add_argument("--node", required=True, help="name of the fis-node to explain")
    p.add_argument("--inputs", required=True, help='crisp inputs, e.g. "Group_1=6.2,Group_2=7.97"')
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("surface", help="export the response surface of a 2-input fis-node")
    add_common(p)
    p.add_argument("--node", required=True)
    p.add_argument("--resolution", type=int, default=21)
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        if str(err) != "request rejected":
            print(f"error: {err}", file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
