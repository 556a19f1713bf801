"""Command line front end.

Exit status: 0 clean, 1 when some points carry numerical error tags (output
is still written), 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .analysis import linear_path, track_exceptional_value
from .errors import PicardScanError
from .families import (
    CATALOG,
    EXCEPTIONAL_NOTES,
    PARAM_SCHEMAS,
    family_from_spec,
    get_family,
)
from .scan import GridSpec, exceptional_set_scan, scan_to_csv, scan_to_json, trace_to_json
from .sphere import as_sphere_value
from .suites import SUITES

EXIT_OK, EXIT_PARTIAL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _floats(text, n: Optional[int], what: str) -> list:
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    if n is not None and len(parts) != n:
        raise ConfigError(f"{what} needs {n} comma-separated values, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse {what}: {text!r}") from None


def _ints(text, what):
    vals = _floats(text, None, what)
    if any(v != int(v) for v in vals):
        raise ConfigError(f"{what} must be integers")
    return [int(v) for v in vals]


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _merged(args, cfg: dict, name: str, default: Any = None) -> Any:
    value = getattr(args, name, None)
    if value is not None:
        return value
    return cfg.get(name, default)


def _family(args, cfg):
    spec = _merged(args, cfg, "family")
    if spec is None:
        raise ConfigError("no family given (use --family)")
    params = _merged(args, cfg, "params")
    if isinstance(params, str):
        try:
            params = json.loads(params)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--params is not valid JSON: {exc}") from None
    if isinstance(spec, dict):
        spec = dict(spec)
        if params is not None:
            spec["params"] = params
        return family_from_spec(spec)
    if params is not None and not isinstance(params, dict):
        raise ConfigError("params must be a JSON object")
    return get_family(spec, params)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from None


def cmd_scan(args) -> int:
    cfg = _load_config(args.config)
    family = _family(args, cfg)
    grid_vals = _merged(args, cfg, "grid")
    if grid_vals is None:
        raise ConfigError("no grid given (use --grid re0,re1,im0,im1,nre,nim)")
    g = _floats(grid_vals, 6, "grid")
    if g[4] != int(g[4]) or g[5] != int(g[5]):
        raise ConfigError("grid sizes must be integers")
    grid = GridSpec(g[0], g[1], g[2], g[3], int(g[4]), int(g[5]))
    radius = float(_merged(args, cfg, "radius", 10.0))
    fp = _merged(args, cfg, "fp")
    p_list = _ints(fp, "fp") if fp is not None else None
    fmt = _merged(args, cfg, "format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}")
    threads = int(_merged(args, cfg, "threads", 1))
    report = exceptional_set_scan(family, grid, radius, p_list, threads=threads)
    _emit(scan_to_csv(report) if fmt == "csv" else scan_to_json(report), _merged(args, cfg, "out"))
    if report.errors:
        print(f"{report.errors} of {len(report.records)} points carry error tags", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _constant(value):
    if isinstance(value, (list, tuple)):
        a = as_sphere_value(complex(float(value[0]), float(value[1])))
    else:
        try:
            a = as_sphere_value(value if value == "inf" else complex(str(value).replace(" ", "")))
        except ValueError:
            raise ConfigError(f"cannot parse candidate value {value!r}") from None
    return lambda w: a


def cmd_track(args) -> int:
    cfg = _load_config(args.config)
    family = _family(args, cfg)
    path = _merged(args, cfg, "path")
    if path is None:
        raise ConfigError("no path given (use --path re0,im0,re1,im1,n)")
    p = _floats(path, 5, "path")
    if p[4] != int(p[4]) or p[4] < 2:
        raise ConfigError("path point count must be an integer >= 2")
    ws = linear_path(complex(p[0], p[1]), complex(p[2], p[3]), int(p[4]))
    radius = float(_merged(args, cfg, "radius", 20.0))
    cand = _merged(args, cfg, "candidate")
    trace = track_exceptional_value(
        family,
        ws,
        radius,
        candidate=_constant(cand) if cand is not None else None,
        pole_tol=float(_merged(args, cfg, "pole_tol", 1e-3)),
        exclusion=float(_merged(args, cfg, "exclusion", 0.05)),
        threads=int(_merged(args, cfg, "threads", 1)),
    )
    _emit(trace_to_json(trace), _merged(args, cfg, "out"))
    if trace.errors:
        print(f"{trace.errors} of {len(trace.samples)} samples carry error tags", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _load_config(args.config)
    suite = args.suite
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; known: {', '.join(sorted(SUITES))}")
    seed = int(_merged(args, cfg, "seed", 0))
    result = SUITES[suite](seed=seed)
    counts = result.counts()
    line = {"suite": suite, "seed": seed, "trials": len(result.trials), **counts}
    text = json.dumps(line) + "\n"
    if args.verbose:
        text += "".join(f"{v}\t{label}\t{detail}\n" for label, v, detail in result.trials)
    _emit(text, _merged(args, cfg, "out"))
    for label, v, detail in result.trials:
        if v == "fail":
            print(f"FAIL {label}: {detail}", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_PARTIAL


def families_table() -> str:
    rows = [("key", "order", "exceptional", "params", "definition")]
    for key in sorted(CATALOG):
        fam = get_family(key)
        rows.append(
            (key, fam.order_label, EXCEPTIONAL_NOTES.get(key, "-"), PARAM_SCHEMAS.get(key, "-"), fam.domain_note)
        )
    return "".join("\t".join(r) + "\n" for r in rows)


def cmd_families(args) -> int:
    _emit(families_table(), getattr(args, "out", None))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="picardscan", description="Exceptional sets of holomorphic families")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--family")
        p.add_argument("--params", help="family parameters as a JSON object")
        p.add_argument("--radius", type=float)
        p.add_argument("--out")
        p.add_argument("--threads", type=int)
        p.add_argument("--config", help="JSON file with the same keys as the flags")

    scan = sub.add_parser("scan", help="scan a rectangular parameter grid")
    common(scan)
    scan.add_argument("--grid", help="re0,re1,im0,im1,nre,nim")
    scan.add_argument("--fp", help="comma-separated orders p")
    scan.add_argument("--format", choices=("csv", "json"))
    scan.set_defaults(func=cmd_scan)

    track = sub.add_parser("track", help="verify an exceptional value along a segment")
    common(track)
    track.add_argument("--path", help="re0,im0,re1,im1,n")
    track.add_argument("--candidate", help="constant candidate value (complex or 'inf')")
    track.add_argument("--pole-tol", dest="pole_tol", type=float)
    track.add_argument("--exclusion", type=float)
    track.set_defaults(func=cmd_track)

    check = sub.add_parser("check", help="run a property suite")
    check.add_argument("suite")
    check.add_argument("--seed", type=int)
    check.add_argument("--out")
    check.add_argument("--config")
    check.add_argument("-v", "--verbose", action="store_true")
    check.set_defaults(func=cmd_check)

    fams = sub.add_parser("families", help="list the family catalog")
    fams.add_argument("--out")
    fams.set_defaults(func=cmd_families)
    return parser


VALUE_FLAGS = ("--grid", "--path", "--fp", "--candidate")


def _glue_values(argv: Sequence[str]) -> list:
    # "--grid -1,1,..." would otherwise read the value as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return args.func(args)
    except (ConfigError, PicardScanError) as exc:
        # numerical errors are caught per point; anything reaching here is setup
        print(f"picardscan: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
