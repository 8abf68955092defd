"""Command-line front end.

The CLI is a thin client of the HTTP service: every subcommand builds a
request and renders the response.  By default the service runs in-process
(no network, same behaviour); pass ``--server URL`` to talk to a remote
instance instead.

Configuration defaults can live in a ``key=value`` file named by the
``MLLP_GOI_CONFIG`` environment variable; command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import httpx


CONFIG_ENV = "MLLP_GOI_CONFIG"
CONFIG_KEYS = {"mode", "window", "n_alpha", "max_size", "seed", "strategy",
               "output", "server", "atoms", "samples"}


def load_config() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path or not Path(path).is_file():
        return {}
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        key = key.strip()
        if key in CONFIG_KEYS:
            out[key] = value.strip()
    return out


def make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import app
    return TestClient(app)


def _fail(payload: dict) -> int:
    detail = payload.get("detail", payload)
    if isinstance(detail, dict):
        print(f"error: {detail.get('error', '')}: {detail.get('message', detail)}",
              file=sys.stderr)
    else:
        print(f"error: {detail}", file=sys.stderr)
    return 1


def _post(client: httpx.Client, path: str, body: dict) -> tuple[int, dict]:
    resp = client.post(path, json=body)
    try:
        payload = resp.json()
    except ValueError:
        payload = {"detail": resp.text}
    return resp.status_code, payload


def _matrix_lines(m: dict) -> list[str]:
    head = "      " + " ".join(m["dom"])
    lines = [head]
    for wire, row in zip(m["cod"], m["entries"]):
        lines.append(f"{wire:>4}  " + " ".join(row))
    return lines


def cmd_check(client, args) -> int:
    code, payload = _post(client, "/check", {"proof": _read_proof(args.file)})
    if code != 200:
        return _fail(payload)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(payload["sequent"]["text"])
    return 0


def cmd_interp(client, args) -> int:
    code, payload = _post(client, "/interp",
                          {"proof": _read_proof(args.file), "mode": args.mode})
    if code != 200:
        return _fail(payload)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(payload["sequent"]["text"])
    print("upper:")
    print("\n".join(_matrix_lines(payload["upper"])))
    print("lower:")
    print("\n".join(_matrix_lines(payload["lower"])))
    return 0


def cmd_exec(client, args) -> int:
    code, payload = _post(client, "/exec",
                          {"proof": _read_proof(args.file), "mode": args.mode})
    if code != 200:
        return _fail(payload)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(payload["sequent"]["text"])
    print("Ex upper:")
    print("\n".join(_matrix_lines(payload["upper"])))
    print("Ex lower:")
    print("\n".join(_matrix_lines(payload["lower"])))
    return 0


def cmd_normalize(client, args) -> int:
    code, payload = _post(client, "/normalize",
                          {"proof": _read_proof(args.file),
                           "strategy": args.strategy, "trace": args.trace})
    if code != 200:
        return _fail(payload)
    if args.trace:
        for step in payload["trace"]:
            print(json.dumps(step))
    if args.json:
        shown = dict(payload)
        shown.pop("trace", None)
        print(json.dumps(shown, indent=2))
    else:
        print(f"normal form after {payload['steps']} steps:")
        print(payload["normal_form"])
        print(payload["sequent"]["text"])
    return 0


def cmd_verify(client, args) -> int:
    body = {"kind": args.kind, "max_size": args.max_size,
            "atoms": args.atoms.split(","), "mode": args.mode,
            "strategy": args.strategy, "reports": args.json}
    code, payload = _post(client, "/verify", body)
    if code != 200:
        return _fail(payload)
    if args.json:
        # one report object per checked proof, then the suite summary
        for rep in payload.get("reports") or []:
            print(json.dumps(rep))
        summary = {k: v for k, v in payload.items() if k != "reports"}
        print(json.dumps(summary))
    else:
        state = "PASS" if payload["passed"] else "FAIL"
        print(f"{payload['kind']}: {state} ({payload['total']} cases, "
              f"{payload['elapsed']}s)")
        for f in payload["failures"]:
            print("  failure:", json.dumps(f))
    return 0 if payload["passed"] else 1


def cmd_laws(client, args) -> int:
    body = {"seed": args.seed, "samples": args.samples, "window": args.window,
            "n_alpha": args.n_alpha}
    code, payload = _post(client, "/laws", body)
    if code != 200:
        return _fail(payload)
    if args.json:
        print(json.dumps(payload, indent=2))
    ok = all(suite["passed"] for suite in payload)
    if not args.json:
        for suite in payload:
            state = "PASS" if suite["passed"] else "FAIL"
            print(f"{suite['kind']}: {state} ({suite['total']} cases, "
                  f"{suite['elapsed']}s)")
            for f in suite["failures"]:
                print("  failure:", json.dumps(f))
    return 0 if ok else 1


def cmd_intrel_demo(client, args) -> int:
    resp = client.get("/intrel-demo")
    if resp.status_code != 200:
        return _fail(resp.json())
    payload = resp.json()
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("shift adjunction demo")
        print("  transpose positive:", payload["transpose_is_positive"])
        print("  round trip:", json.dumps(payload["round_trip"]))
    return 0


def cmd_serve(client, args) -> int:
    import uvicorn
    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _read_proof(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    text = Path(path).read_text()
    if not text.strip():
        print(f"error: empty proof file {path}", file=sys.stderr)
        raise SystemExit(2)
    return text


def build_parser(config: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mllp-goi",
        description="Polarized proof checking and relational execution formulas.")
    parser.add_argument("--server", default=config.get("server"),
                        help="base URL of a running service; default in-process")

    def common(sub, proof_file=True):
        if proof_file:
            sub.add_argument("file", help="proof file (.mllp), or - for stdin")
        sub.add_argument("--json", action="store_true",
                         default=config.get("output") == "json")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a proof and print its sequent")
    common(p)
    p.set_defaults(run=cmd_check)

    for name, fn in (("interp", cmd_interp), ("exec", cmd_exec)):
        p = sub.add_parser(name, help=f"{name} a proof")
        common(p)
        p.add_argument("--mode", default=config.get("mode", "rel"),
                       choices=["rel", "pinj-degenerate"])
        p.set_defaults(run=fn)

    p = sub.add_parser("normalize", help="reduce a proof to cut-free form")
    common(p)
    p.add_argument("--strategy", default=config.get("strategy", "leftmost"),
                   choices=["leftmost", "innermost"])
    p.add_argument("--trace", action="store_true",
                   help="emit one JSON object per rewrite step")
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("kind", choices=["invariance", "focus", "converse"])
    p.add_argument("--max-size", type=int,
                   default=int(config.get("max_size", 6)), dest="max_size")
    p.add_argument("--seed", type=int, default=int(config.get("seed", 0)))
    p.add_argument("--atoms", default=config.get("atoms", "X,Y"))
    p.add_argument("--mode", default=config.get("mode", "rel"),
                   choices=["rel", "pinj-degenerate"])
    p.add_argument("--strategy", default=config.get("strategy", "leftmost"),
                   choices=["leftmost", "innermost"])
    p.add_argument("--json", action="store_true",
                   default=config.get("output") == "json")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("laws", help="model laws against the window oracle")
    p.add_argument("--seed", type=int, default=int(config.get("seed", 0)))
    p.add_argument("--samples", type=int,
                   default=int(config.get("samples", 1000)))
    p.add_argument("--window", type=int, default=int(config.get("window", 16)))
    p.add_argument("--n-alpha", type=int, dest="n_alpha",
                   default=int(config.get("n_alpha", 0)))
    p.add_argument("--json", action="store_true",
                   default=config.get("output") == "json")
    p.set_defaults(run=cmd_laws)

    p = sub.add_parser("intrel-demo", help="shift adjunction on a tiny object")
    p.add_argument("--json", action="store_true",
                   default=config.get("output") == "json")
    p.set_defaults(run=cmd_intrel_demo)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(run=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    config = load_config()
    parser = build_parser(config)
    args = parser.parse_args(argv)
    if args.command == "serve":
        return args.run(None, args)
    with make_client(args.server) as client:
        return args.run(client, args)


if __name__ == "__main__":
    raise SystemExit(main())
