"""Command-line front end.

Subcommands: ``grassmann`` (single constant-dimension bound), ``projective``
(packing LP, its integer refinement, or the reduced SDP), ``table``
(recompute the embedded reference tables and self-grade), ``export``
(write SDPA sparse or LP text model files).

Exit codes: 0 success, 2 invalid parameters, 3 solver failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .grassmann import METHODS, grassmann_bounds, best_grassmann_bound
from .optim import export_lp_text, export_sdpa
from .projective_lp import ev_model, solve_ev, theorem51_cuts
from .projective_sdp import sdp_model, solve_sdp
from .qcombinat import GrassmannParams, Metric, ProjectiveParams
from .reports import BoundReport, fraction_decimal
from .tables import format_results, reproduce_table, thread_count

EXIT_BAD_PARAMS = 2
EXIT_SOLVER = 3
EXIT_IO = 4

_CLI_METHOD = {
    "sphere": "sphere_packing",
    "singleton": "singleton",
    "anticode": "anticode",
    "johnson1": "johnson1",
    "johnson2": "johnson2_chain",
    "combined": "combined",
    "delsarte-lp": "delsarte_lp",
}


def _fail(code: int, message: str) -> None:
    print(message, file=sys.stderr)
    raise SystemExit(code)


def _emit(report: BoundReport, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
    else:
        cuts = f" cuts={','.join(report.cuts_applied)}" if report.cuts_applied else ""
        print(
            f"{report.method}: bound {report.floored_bound} "
            f"(raw {report.raw_value}, status {report.status}{cuts})"
        )


def cmd_grassmann(args) -> int:
    try:
        params = GrassmannParams(n=args.n, k=args.k, delta=args.delta, q=args.q)
    except ValueError as exc:
        _fail(EXIT_BAD_PARAMS, f"invalid parameters: {exc}")
    methods = METHODS if args.method == "all" else (_CLI_METHOD[args.method],)
    t0 = time.perf_counter()
    reports = grassmann_bounds(params, methods)
    wall_ms = (time.perf_counter() - t0) * 1e3
    for name in methods:
        rep = reports[name]
        out = BoundReport(
            q=params.q,
            n=params.n,
            k=params.k,
            d=2 * params.delta,
            metric="subspace",
            method=name,
            raw_value=fraction_decimal(rep.value) if rep.value is not None else "",
            floored_bound=rep.floored if rep.floored is not None else -1,
            status=rep.status if rep.applicable else "not_applicable",
            gap=0.0,
            wall_ms=wall_ms,
        )
        _emit(out, args.json)
    if args.method == "all":
        best = best_grassmann_bound(params, METHODS)
        print(f"best: {best.floored}" if not args.json else json.dumps({"best": best.floored}))
    return 0


def cmd_projective(args) -> int:
    try:
        params = ProjectiveParams(n=args.n, d=args.d, q=args.q, metric=Metric(args.metric))
    except ValueError as exc:
        _fail(EXIT_BAD_PARAMS, f"invalid parameters: {exc}")
    cuts = None
    if args.extra_cuts:
        from .grassmann import grassmann_cap

        cap_c = grassmann_cap(params.n, (params.d + 1) // 2, (params.d + 1) // 2, params.q)
        cuts = theorem51_cuts(params.n, params.d, params.q, cap_c)
    if args.method in ("ev-lp", "ev-ip"):
        model = ev_model(params)
        report = solve_ev(
            model, cuts, mode="real" if args.method == "ev-lp" else "integer", params=params
        )
        _emit(report, args.json)
        return 0
    # SDP path
    model = sdp_model(params, with_dim_cuts=not args.no_dim_cuts, extra_cuts=cuts)
    rep = solve_sdp(model, tol=args.tol, params=params)
    if rep.status != "optimal":
        payload = {
            "status": rep.status,
            "raw_value": rep.raw_value,
            "dual_value": rep.dual_value,
            "gap": rep.gap,
            "iterations": rep.iterations,
        }
        _fail(EXIT_SOLVER, json.dumps(payload))
    report = BoundReport(
        q=params.q,
        n=params.n,
        d=params.d,
        metric=params.metric.value,
        method="sdp",
        raw_value=repr(rep.raw_value),
        floored_bound=rep.floored,
        status=rep.status,
        gap=rep.gap,
        cuts_applied=list(rep.cuts_applied),
        wall_ms=rep.wall_ms,
    )
    _emit(report, args.json)
    return 0


def cmd_table(args) -> int:
    methods = tuple(args.methods.split(",")) if args.methods else ("lp", "sdp")
    for m in methods:
        if m not in ("lp", "sdp"):
            _fail(EXIT_BAD_PARAMS, f"invalid method {m!r} (use lp, sdp)")
    results = reproduce_table(
        args.which, max_n=args.max_n, methods=methods, tol=args.tol, threads=thread_count()
    )
    sys.stdout.write(format_results(results, args.which, args.format))
    return 0


def cmd_export(args) -> int:
    try:
        params = ProjectiveParams(n=args.n, d=args.d, q=args.q, metric=Metric(args.metric))
    except ValueError as exc:
        _fail(EXIT_BAD_PARAMS, f"invalid parameters: {exc}")
    if args.model == "sdp":
        text = export_sdpa(sdp_model(params, with_dim_cuts=not args.no_dim_cuts))
    else:
        text = export_lp_text(ev_model(params))
    try:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {args.out}: {exc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subspace-bounds",
        description="Upper bounds for projective and constant-dimension subspace codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grassmann", help="constant-dimension code bounds")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--method", default="combined", choices=list(_CLI_METHOD) + ["all"])
    g.add_argument("--json", action="store_true", help="emit JSON reports")
    g.set_defaults(func=cmd_grassmann)

    p = sub.add_parser("projective", help="projective code bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--metric", default="subspace", choices=["subspace", "injection"])
    p.add_argument("--method", default="ev-lp", choices=["ev-lp", "ev-ip", "sdp"])
    p.add_argument("--extra-cuts", action="store_true", help="add the window cuts")
    p.add_argument("--no-dim-cuts", action="store_true", help="drop dimension cap rows (SDP)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_projective)

    t = sub.add_parser("table", help="recompute the reference tables")
    t.add_argument("--which", type=int, required=True, choices=[1, 2])
    t.add_argument("--max-n", type=int, default=16)
    t.add_argument("--format", default="text", choices=["text", "json", "csv"])
    t.add_argument("--methods", default="", help="comma list: lp,sdp (default both)")
    t.add_argument("--tol", type=float, default=1e-8)
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("export", help="write a model file")
    e.add_argument("--model", required=True, choices=["sdp", "ev-lp"])
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--metric", default="subspace", choices=["subspace", "injection"])
    e.add_argument("--no-dim-cuts", action="store_true")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
