"""Command-line client for the kernel.

Every subcommand builds the same request model the service accepts and
dispatches it either in-process (default) or to a running server via
--server.  Exit codes: 0 built/holds, 1 property refuted or certificate
not found, 2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .homs import BudgetExceeded
from .service import handlers
from .service.models import (
    BuildRequest, CertifyRequest, CheckRequest, CountRequest, ExportRequest,
    SliceRequest, VerifyRequest,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_BUDGET = int(os.environ.get("SSETKIT_BUDGET", "100000"))


class _Remote:
    """POSTs requests to a running service."""

    def __init__(self, base_url: str):
        import httpx
        self.base_url = base_url.rstrip("/")
        self.client = httpx.Client(timeout=600.0)

    def call(self, endpoint: str, request) -> dict:
        response = self.client.post(f"{self.base_url}/{endpoint}",
                                    json=request.model_dump())
        if response.status_code == 400:
            raise handlers.UsageError(response.json().get("error", "usage"))
        if response.status_code == 422:
            raise BudgetExceeded(response.json().get("error", "budget"))
        response.raise_for_status()
        return response.json()


class _Local:
    """Calls the service handlers in-process."""

    _routes = {"build": handlers.build_space,
               "count": handlers.count_simplices,
               "check": handlers.check_map,
               "certify": handlers.certify_inclusion,
               "slice": handlers.slice_space,
               "verify": handlers.verify_claim,
               "export": handlers.export_space}

    def call(self, endpoint: str, request) -> dict:
        return self._routes[endpoint](request).model_dump()


def _transport(args):
    return _Remote(args.server) if args.server else _Local()


def _emit(text: str, out_path=None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def cmd_build(args) -> int:
    body = _transport(args).call("build", BuildRequest(expr=args.expr))
    _emit(_canonical(body["space"]), args.output)
    return EXIT_OK


def cmd_count(args) -> int:
    mode = "nondegenerate" if args.nondeg else "all"
    body = _transport(args).call(
        "count", CountRequest(expr=args.expr, dim=args.dim, mode=mode))
    sys.stdout.write(f"{body['count']}\n")
    return EXIT_OK


def cmd_check(args) -> int:
    with open(args.mapfile, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    body = _transport(args).call(
        "check", CheckRequest(map=payload, fibration_class=args.fib_class,
                              max_dim=args.max_dim, budget=args.budget))
    if body["holds"]:
        sys.stdout.write(f"holds: {args.fib_class} fibration at dims <= "
                         f"{args.max_dim}\n")
        return EXIT_OK
    sys.stdout.write(_canonical({"holds": False,
                                 "witness": body["witness"]}))
    return EXIT_REFUTED


def cmd_certify(args) -> int:
    body = _transport(args).call(
        "certify", CertifyRequest(sub_expr=args.sub, sup_expr=args.sup,
                                  fibration_class=args.fib_class,
                                  budget=args.budget))
    if body["status"] == "found":
        sys.stdout.write(_canonical(body["certificate"]))
        return EXIT_OK
    sys.stderr.write(f"no certificate: {body['status']} after "
                     f"{body['tried']} extensions\n")
    return EXIT_BUDGET if body["status"] == "budget" else EXIT_REFUTED


def cmd_slice(args, kind: str) -> int:
    with open(args.setfile, "r", encoding="utf-8") as handle:
        space = json.load(handle)
    with open(args.mapfile, "r", encoding="utf-8") as handle:
        mapping = json.load(handle)
    body = _transport(args).call(
        "slice", SliceRequest(kind=kind, space=space, map=mapping,
                              max_dim=args.max_dim))
    _emit(_canonical(body["space"]), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    body = _transport(args).call(
        "verify", VerifyRequest(claim=args.claim, n=args.n, bound=args.bound))
    for report in body["reports"]:
        status = "pass" if report["passed"] else "FAIL"
        params = ",".join(f"{k}={v}" for k, v in report["params"].items())
        sys.stdout.write(f"{report['claim']}[{params}] {status} "
                         f"({report['elapsed_ms']} ms)\n")
        for check in report["checks"]:
            if not check["ok"] or args.verbose:
                mark = "ok" if check["ok"] else "FAIL"
                sys.stdout.write(f"  {mark:4} {check['name']}"
                                 f"{': ' + check['detail'] if check['detail'] else ''}\n")
    return EXIT_OK if body["passed"] else EXIT_REFUTED


def cmd_export(args) -> int:
    body = _transport(args).call(
        "export", ExportRequest(expr=args.expr, format=args.format))
    _emit(body["payload"], args.output)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn
    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssetkit",
        description="Finite simplicial set kernel: construction "
                    "expressions, fibration checks, anodyne certificates "
                    "and the claim verification suite.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default is "
                             "in-process execution")
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; all algorithms are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="evaluate an expression to JSON")
    p.add_argument("expr")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", help="count simplices of an expression")
    p.add_argument("expr")
    p.add_argument("--dim", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", default=True)
    group.add_argument("--nondeg", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("check", help="fibration check of a map JSON file")
    p.add_argument("mapfile")
    p.add_argument("--class", dest="fib_class", required=True,
                   choices=["inner", "left", "right", "kan", "trivial"])
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify",
                       help="search a horn-pushout certificate for an "
                            "inclusion of expressions")
    p.add_argument("sub")
    p.add_argument("sup")
    p.add_argument("--class", dest="fib_class", default="inner",
                   choices=["inner", "left", "right", "kan"])
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_certify)

    for kind, name in (("slice", "slice"), ("wide-slice", "wide-slice")):
        p = sub.add_parser(name, help=f"{kind} of a set under a map, "
                                      "truncated at --max-dim")
        p.add_argument("setfile")
        p.add_argument("mapfile")
        p.add_argument("--max-dim", type=int, required=True)
        p.add_argument("-o", "--output", default=None)
        p.set_defaults(func=lambda a, kind=kind: cmd_slice(a, kind))

    p = sub.add_parser("verify", help="run one verification claim")
    p.add_argument("claim", choices=["prism", "afilt", "bfilt", "thmC",
                                     "thmA", "thmB", "thmD", "wjcounts"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="export an expression as json or dot")
    p.add_argument("expr")
    p.add_argument("--format", required=True, choices=["json", "dot"])
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except handlers.UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
