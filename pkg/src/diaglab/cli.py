"""Command-line entry point.

    diaglab run <preset|file> [--horizon N] [--n-max N] [--samples N] [--seed N]
                              [--format table|machine] [--timestamp]
    diaglab presets

Exit codes: 0 success, 1 input error, 2 engine refusal.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from . import census as cz
from . import config
from . import numerosity as nm
from . import report as rp
from .diagonal import diagonal_stream, induction_trace
from .errors import EngineRefusal, InputError
from .presets import PRESETS, list_presets, preset_text

__all__ = ["run", "list_presets", "main"]

_OVERRIDES = {
    "horizon": ("diagonal",),
    "n_max": ("induction", "numerosity"),
    "samples": ("census",),
    "seed": ("census",),
}


def resolve(target):
    """Load a preset by name, otherwise a definition file by path."""
    if target in PRESETS:
        return config.loads(preset_text(target), source=f"preset:{target}")
    path = Path(target)
    if not path.exists():
        raise InputError(f"{target!r} is neither a preset nor a readable file")
    return config.load(path)


def _run_one(exp):
    p, inp = exp.params, exp.inputs
    if exp.kind == "diagonal":
        lst = inp["list"]
        rep = diagonal_stream(lst, inp["rule"], p.get("horizon", 256))
        return {"record": rp.diagonal_record(rep, lst), "table": rp.diagonal_table(rep, lst), "payload": rep}
    if exp.kind == "induction":
        tr = induction_trace(inp["list"], inp["rule"], p.get("n_max", 1000), p.get("search_bound"))
        return {"record": rp.induction_record(tr), "table": rp.induction_table(tr), "payload": tr}
    if exp.kind == "census":
        strings, rule = inp["strings"], inp["rule"]
        mode = p.get("mode", "auto")
        if mode == cz.SAMPLED:
            rep = cz.census_sampled(strings, rule, p.get("samples", 10_000), p.get("seed", 0))
        elif mode == "counted":
            rep = cz.count_member_orderings(strings, rule)
        else:
            rep = cz.census_exhaustive(strings, rule, mode, p.get("budget", cz.DEFAULT_BUDGET))
        return {"record": rp.census_record(rep), "table": rp.census_table(rep), "payload": rep}
    # numerosity
    a, b, n_max = inp["a"], inp["b"], p.get("n_max", 10_000)
    audit = None
    if "pairing" in inp:
        audit, verdict = nm.contrast(inp["pairing"], a, b, n_max)
    else:
        verdict = nm.compare_profiles(nm.partial_counts(a, n_max), nm.partial_counts(b, n_max))
    record = {"kind": "numerosity", "n_max": n_max, "verdict": rp.comparison_record(verdict)}
    record["audit"] = None if audit is None else rp.audit_record(audit)
    return {"record": record, "table": rp.numerosity_table(verdict, audit), "payload": (verdict, audit)}


def run(definition, overrides=None, timestamp=False):
    """Run every experiment of a Definition and collect a Report.

    ``overrides`` maps horizon / n_max / samples / seed to values applied to
    each experiment of a kind that takes that parameter.
    """
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        for exp in definition.experiments:
            if exp.kind in _OVERRIDES[key]:
                exp.params[key] = value
    report = rp.Report(
        source=definition.source,
        config=[e.echo() for e in definition.experiments],
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat() if timestamp else None,
    )
    for exp in definition.experiments:
        try:
            report.results.append(_run_one(exp))
        except (InputError, EngineRefusal) as exc:
            exc.args = (f"experiment {exp.index + 1} ({exp.kind}): {exc}",)
            raise
    return report


def _parser():
    ap = argparse.ArgumentParser(prog="diaglab", description="Exact diagonalization experiments.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a preset or a definition file")
    r.add_argument("target", help="preset name or path to a definition file")
    r.add_argument("--horizon", type=int)
    r.add_argument("--n-max", dest="n_max", type=int)
    r.add_argument("--samples", type=int)
    r.add_argument("--seed", type=int)
    r.add_argument("--format", choices=("table", "machine"), default="table")
    r.add_argument("--timestamp", action="store_true", help="add a UTC timestamp (not deterministic)")
    sub.add_parser("presets", help="list built-in presets")
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    if args.command == "presets":
        for name, desc in list_presets():
            print(f"{name:<26} {desc}")
        return 0
    overrides = {"horizon": args.horizon, "n_max": args.n_max, "samples": args.samples, "seed": args.seed}
    try:
        definition = resolve(args.target)
        report = run(definition, overrides, timestamp=args.timestamp)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EngineRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.machine() if args.format == "machine" else report.table())
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
