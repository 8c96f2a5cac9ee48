"""Command-line driver.

Subcommands:
  run      replay a scenario file and print/write the per-window reports
  serve    start the HTTP/JSON service around a live session
  diff     compare a saved missing list against a user grocery list
  inspect  summarize a saved state file

Exit codes: 0 success, 1 usage error, 2 scenario/state error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .errors import GrocermindError
from .persistence import StateSnapshot, load_state, save_state
from .reasoner import MissingList
from .simulation import ScenarioScript, prepare_scenario, run_scenario
from .stcm import StcmBuffer

DEFAULT_PORT = 8750
PORT_ENV_VAR = "GROCERMIND_PORT"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SCENARIO = 2

BUNDLED_SCENARIOS = {
    "experiment1": "experiment1_missing_week.json",
    "experiment2": "experiment2_moved_items.json",
    "experiment3": "experiment3_storage.json",
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def scenario_path(name_or_path: str) -> Path:
    """Resolve a bundled scenario name (experiment1..3) or a filesystem path."""
    if name_or_path in BUNDLED_SCENARIOS:
        ref = resources.files("grocermind") / "scenarios" / BUNDLED_SCENARIOS[name_or_path]
        return Path(str(ref))
    return Path(name_or_path)


def _load_script(name_or_path: str, seed=None) -> ScenarioScript:
    path = scenario_path(name_or_path)
    if not path.is_file():
        raise GrocermindError(f"scenario file not found: {path}")
    script = ScenarioScript.from_json_file(path)
    if seed is not None:
        script.rng_seed = int(seed)
    return script


def _format_report_table(reports) -> str:
    lines = ["Day  Missing Groceries              Storage Items"]
    for report in reports:
        missing = ", ".join(sorted(report.missing_list)) or "-"
        storage = ", ".join(sorted(report.storage_items)) or "-"
        lines.append(f"{report.window_end_day:>3}  {missing:<30} {storage}")
    return "\n".join(lines)


def cmd_run(args) -> int:
    script = _load_script(args.scenario, seed=args.seed)
    vocab, env, model, classifier, net = prepare_scenario(script)
    reports = run_scenario(script, net, classifier, env, model)
    print(_format_report_table(reports))
    if args.out:
        payload = {
            "rngSeed": script.rng_seed,
            "reports": [r.to_dict() for r in reports],
        }
        Path(args.out).write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n"
        )
        print(f"wrote {args.out}")
    if args.state:
        final_missing = (
            MissingList(set(reports[-1].missing_list)) if reports else MissingList()
        )
        stcm = StcmBuffer(
            script.window_days,
            window_start_day=1 + script.window_days * len(reports),
        )
        snapshot = StateSnapshot(
            vocabulary=vocab,
            network=net,
            stcm=stcm,
            missing_list=final_missing,
            day_cursor=script.duration_days + 1,
            rng_state=None,
        )
        save_state(snapshot, args.state)
        print(f"wrote {args.state}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app
    from .session import Session

    script = _load_script(args.scenario)
    session = Session(script, pretrain=not args.no_pretrain)
    ui_dir = args.ui
    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    app = create_app(session, ui_dir=ui_dir)
    port = args.port or int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    print(f"serving on http://127.0.0.1:{port}  (scenario: {args.scenario})")
    if ui_dir:
        print(f"ui at http://127.0.0.1:{port}/ui/")
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def cmd_diff(args) -> int:
    snapshot = load_state(args.state)
    user_list = {item.strip() for item in args.list.split(",") if item.strip()}
    difference = sorted(snapshot.missing_list.items - user_list)
    print(json.dumps({"difference": difference}, sort_keys=True))
    return EXIT_OK


def cmd_inspect(args) -> int:
    snapshot = load_state(args.state)
    lam = snapshot.network.lambda_
    print(f"format version : {snapshot.format_version}")
    print(
        f"vocabulary     : {snapshot.vocabulary.dimension} labels: "
        + ", ".join(snapshot.vocabulary.labels)
    )
    print(f"clusters       : {snapshot.network.n_clusters}")
    for centroid, label, is_storage in snapshot.network.clusters():
        strong = [
            snapshot.vocabulary.labels[j]
            for j in range(len(centroid))
            if centroid[j] >= 0.5
        ]
        kind = "storage" if is_storage else "regular"
        print(f"  - {label} ({kind}): {', '.join(strong) or '(empty)'}")
    print(f"lambda range   : [{lam.min():.6g}, {lam.max():.6g}]")
    print(
        f"window         : days {snapshot.stcm.window_start_day}"
        f"..{snapshot.stcm.window_end_day}, {len(snapshot.stcm)} buffered"
    )
    print(f"day cursor     : {snapshot.day_cursor}")
    print(f"missing list   : {', '.join(snapshot.missing_list.to_list()) or '(empty)'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="grocermind",
        description="Household grocery-tracking simulator and reasoning engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="replay a scenario file")
    p_run.add_argument(
        "scenario",
        help="scenario JSON path, or a bundled name: "
        + ", ".join(sorted(BUNDLED_SCENARIOS)),
    )
    p_run.add_argument("--seed", type=int, default=None, help="override rngSeed")
    p_run.add_argument("--out", default=None, help="write report JSON here")
    p_run.add_argument("--state", default=None, help="write final state snapshot here")
    p_run.set_defaults(func=cmd_run)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument(
        "--scenario", default="experiment3", help="scenario to load (default: experiment3)"
    )
    p_serve.add_argument("--port", type=int, default=None,
                         help=f"port (default ${PORT_ENV_VAR} or {DEFAULT_PORT})")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument(
        "--no-pretrain",
        action="store_true",
        help="start with an untrained network (teach via the UI)",
    )
    p_serve.add_argument("--ui", default=None, help="built frontend directory to serve")
    p_serve.set_defaults(func=cmd_serve)

    p_diff = sub.add_parser("diff", help="diff saved missing list against a user list")
    p_diff.add_argument("--list", required=True, help="comma-separated user grocery list")
    p_diff.add_argument("--state", default="state.json", help="state snapshot path")
    p_diff.set_defaults(func=cmd_diff)

    p_inspect = sub.add_parser("inspect", help="summarize a state snapshot")
    p_inspect.add_argument("state", help="state snapshot path")
    p_inspect.set_defaults(func=cmd_inspect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GrocermindError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO


if __name__ == "__main__":
    sys.exit(main())
