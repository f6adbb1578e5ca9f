"""Command-line entry point: ``xc run | check | validate-trace``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .lang import Diagnostic
from .netsim import ConfigError, TraceFormatError, load_config, read_trace, validate_structure, write_trace
from .netsim.trace import summary
from .oracles import oracle_denotational
from .scenarios import SCENARIOS, export_csv, mean_series, run_scenario
from .stdlib import load_with_prelude, prelude_lines

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_CONFIG = 2

log = logging.getLogger("xcalc")


class UsageError(Exception):
    """Bad configuration, unreadable input or malformed trace (exit 2)."""


def _setup_logging() -> None:
    level = os.environ.get("XC_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _user_diagnostics(prog) -> list[Diagnostic]:
    """Shift diagnostics from the combined prelude+program text to user lines."""
    offset = prelude_lines()
    out = []
    for d in prog.diagnostics:
        line = d.line - offset if d.line > offset else d.line
        out.append(Diagnostic(line, d.col, d.message, d.severity))
    return out


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path}: {exc.strerror}") from None


def cmd_check(args) -> int:
    text = _read_text(args.file, "program")
    prog = load_with_prelude(text)
    diags = _user_diagnostics(prog)
    for d in diags:
        print(d.render(args.file))
    if prog.ok:
        print(f"{args.file}: ok")
        return EXIT_OK
    return EXIT_DIAGNOSTICS


def _run_once(cfg, extras, scenario, source, seed, outdir: Path):
    cfg.seed = seed
    result = run_scenario(scenario, cfg, extras, source)
    trace = result.trace
    trace.meta["seed"] = str(seed)
    for key, value in sorted(vars(cfg).items()):
        if key not in ("seed", "positions"):
            trace.meta[f"cfg.{key}"] = str(value)
    outdir.mkdir(parents=True, exist_ok=True)
    export_csv(result.series, outdir / "metrics.csv")
    write_trace(trace, outdir / "trace.txt")
    failed = sum(e is not None for e in trace.errors)
    if failed:
        log.warning("%d of %d events failed to evaluate", failed, len(trace))
    log.info("seed %d: %d events written to %s", seed, len(trace), outdir)
    return result


def cmd_run(args) -> int:
    try:
        cfg, extras = load_config(args.config)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    scenario = args.scenario or extras.pop("scenario", None)
    extras.pop("scenario", None)
    if scenario is None:
        raise UsageError("no scenario given (use --scenario or 'scenario = ...' in the config)")
    if scenario not in SCENARIOS:
        raise UsageError(f"unknown scenario {scenario!r} (expected one of {', '.join(SCENARIOS)})")
    if args.repeat < 1:
        raise UsageError("--repeat must be at least 1")
    source = None
    if args.program:
        source = _read_text(args.program, "program")
        prog = load_with_prelude(source)
        if not prog.ok:
            for d in _user_diagnostics(prog):
                print(d.render(args.program), file=sys.stderr)
            return EXIT_DIAGNOSTICS
    seed = args.seed if args.seed is not None else cfg.seed
    out = Path(args.out)
    try:
        first = _run_once(cfg, extras, scenario, source, seed, out)
        if args.repeat > 1:
            runs = [first.series]
            for s in range(seed + 1, seed + args.repeat):
                runs.append(_run_once(cfg, extras, scenario, source, s, out / f"seed-{s}").series)
            export_csv(mean_series(runs), out / "metrics_mean.csv")
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    except OSError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        trace = read_trace(args.trace)
    except OSError as exc:
        raise UsageError(f"cannot read trace {args.trace}: {exc.strerror}") from None
    except TraceFormatError as exc:
        raise UsageError(f"malformed trace {args.trace}: {exc}") from None
    problems = validate_structure(trace)
    for p in problems:
        print(f"{args.trace}: {p}")
    checked = 0
    if "program" in trace.meta and trace.sensors:
        try:
            main = json.loads(trace.meta["program"])
        except json.JSONDecodeError:
            raise UsageError(f"malformed trace {args.trace}: bad program metadata") from None
        prog = load_with_prelude(main, trace.meta.get("gossip_clock") == "True")
        if not prog.ok:
            raise UsageError(f"malformed trace {args.trace}: embedded program does not check")
        if not problems:
            devices = [ev.device for ev in trace.events]
            expected = oracle_denotational(devices, trace.edges, trace.sensors, prog.parsed)
            for ev, (w, err), got in zip(trace.events, expected, trace.summaries):
                want = summary(w, err)
                if want != got:
                    problems.append(f"event {ev.id}: recorded {got} but re-evaluation gives {want}")
                    print(f"{args.trace}: {problems[-1]}")
                checked += 1
    else:
        print(f"{args.trace}: no program or sensor snapshots; structure checked only")
    if problems:
        return EXIT_DIAGNOSTICS
    print(f"{args.trace}: ok ({len(trace)} events, {len(trace.edges)} edges, {checked} results re-evaluated)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xc", description="Exchange calculus interpreter and simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and write metrics.csv and trace.txt")
    run.add_argument("--config", required=True, help="key = value configuration file")
    run.add_argument("--scenario", choices=SCENARIOS, help="overrides 'scenario' in the config")
    run.add_argument("--seed", type=int, help="random seed (default: the config's seed, else 0)")
    run.add_argument("--out", default="out", help="output directory (default: out)")
    run.add_argument("--repeat", type=int, default=1, help="run seeds seed..seed+K-1 and average")
    run.add_argument("--program", help="XC program replacing the scenario's built-in one")
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check", help="parse and check an XC program")
    check.add_argument("file")
    check.set_defaults(func=cmd_check)

    val = sub.add_parser("validate-trace", help="validate a trace and re-evaluate its results")
    val.add_argument("trace")
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"xc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
