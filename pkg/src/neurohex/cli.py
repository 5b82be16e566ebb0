"""Command-line entry point: convert, render, stats, bench.

Exit codes: 0 success, 1 pipeline or model error, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .hexcore import DEFAULT_BITS, MAX_BITS
from .osm2hex import (
    BBox,
    Grid,
    ModelSchemaError,
    OsmError,
    PolicyError,
    ResolutionPolicy,
    dumps_model,
    loads_model,
    model_from_result,
    policy_named,
    render_svg,
    run_pipeline,
    stats_json,
)
from .shapes import ShapeError

EXIT_OK, EXIT_PIPELINE, EXIT_USAGE = 0, 1, 2

CONFIG_KEYS = {"policy", "bbox", "grid", "quantization_bits", "outputs"}
GRID_KEYS = {"cell_size", "origin"}
OUTPUT_KEYS = {"model", "stats", "svg"}


class UsageError(Exception):
    pass


def load_config(path: str | None) -> dict:
    """Read and validate a JSON config file (unknown keys are rejected)."""
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"config {path}: invalid JSON ({e})") from None
    if not isinstance(cfg, dict):
        raise UsageError(f"config {path}: top level must be an object")
    for section, allowed in ((cfg, CONFIG_KEYS), (cfg.get("grid", {}), GRID_KEYS),
                             (cfg.get("outputs", {}), OUTPUT_KEYS)):
        if not isinstance(section, dict):
            raise UsageError(f"config {path}: sections must be objects")
        extra = set(section) - allowed
        if extra:
            raise UsageError(f"config {path}: unknown keys {sorted(extra)}")
    return cfg


def _policy(cfg_policy, flag: str | None, cell_size: float | None) -> ResolutionPolicy:
    overrides = {}
    if isinstance(cfg_policy, dict):
        overrides = dict(cfg_policy)
        name = overrides.pop("base", "zoom")
    else:
        name = cfg_policy or "zoom"
    if flag:
        name = flag
    if cell_size is not None:
        overrides["cell_size"] = cell_size
    return policy_named(name, **overrides)


def _bbox(text: str | None, cfg_bbox) -> BBox:
    if text:
        return BBox.parse(text)
    if cfg_bbox is None:
        raise UsageError("a bounding box is required (--bbox W,S,E,N or 'bbox' in the config)")
    if not (isinstance(cfg_bbox, list) and len(cfg_bbox) == 4):
        raise UsageError("config bbox must be [W, S, E, N]")
    return BBox(*(float(v) for v in cfg_bbox))


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_convert(args) -> int:
    cfg = load_config(args.config)
    try:
        policy = _policy(cfg.get("policy"), args.policy, args.cell_size)
        bbox = _bbox(args.bbox, cfg.get("bbox"))
    except (PolicyError, ValueError, TypeError) as e:
        raise UsageError(str(e)) from None
    bits = args.quantization_bits if args.quantization_bits is not None else cfg.get("quantization_bits", DEFAULT_BITS)
    if not isinstance(bits, int) or not 0 <= bits <= MAX_BITS:
        raise UsageError(f"quantization bits must be an integer in [0, {MAX_BITS}]")
    grid = None
    origin = cfg.get("grid", {}).get("origin", "bbox-center")
    if origin != "bbox-center":
        if not (isinstance(origin, list) and len(origin) == 2):
            raise UsageError("grid origin must be 'bbox-center' or [lon, lat]")
        grid = Grid(float(origin[0]), float(origin[1]), policy.cell_size)
    if "cell_size" in cfg.get("grid", {}) and args.cell_size is None:
        try:
            policy = policy.with_overrides(cell_size=cfg["grid"]["cell_size"])
        except PolicyError as e:
            raise UsageError(str(e)) from None
        if grid:
            grid = Grid(grid.origin_lon, grid.origin_lat, policy.cell_size)

    outputs = cfg.get("outputs", {})
    src = Path(args.input)
    out = args.out or outputs.get("model") or f"{src.stem}.{policy.scale}.ndjson"
    stats_out = args.stats or outputs.get("stats") or str(Path(out).with_suffix("")) + ".stats.json"
    svg_out = args.svg or outputs.get("svg")

    if not src.is_file():
        raise FileNotFoundError(f"input file not found: {src}")
    with open(src, "rb") as fh:
        result = run_pipeline(fh, bbox, policy, bits, grid)
    model = model_from_result(result)
    _write(out, dumps_model(model))
    _write(stats_out, stats_json(result.stats))
    if svg_out:
        _write(svg_out, render_svg(model))
    s = result.stats
    print(f"{s.raw_geometry_count} raw geometries -> {s.kept_object_count} objects, "
          f"{s.primitive_count} primitives; wrote {out}")
    return EXIT_OK


def _read_model(path: str):
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"model file not found: {p}")
    return loads_model(p.read_text(encoding="utf-8"))


def cmd_render(args) -> int:
    model = _read_model(args.model)
    svg = render_svg(model)
    if args.out:
        _write(args.out, svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def format_stats(model) -> str:
    s = model.stats
    lines = [
        f"objects            {len(model.objects)}",
        f"primitives         {sum(len(o.primitives) for o in model.objects)}",
        f"raw geometries     {s.raw_geometry_count}",
        f"raw vertices       {s.raw_vertex_count}",
        f"after simplify     {s.post_simplification_feature_count} features, "
        f"{s.post_simplification_vertex_count} vertices",
        f"inaccurate mosaics {sum(not o.accurate for o in model.objects)}",
        "per tier:",
    ]
    tiers: dict[str, list[int]] = {}
    for o in model.objects:
        row = tiers.setdefault(o.cls.tier.label, [0, 0])
        row[0] += 1
        row[1] += len(o.primitives)
    for tier in ("identity", "structural", "contextual"):
        n, p = tiers.get(tier, (0, 0))
        lines.append(f"  {tier:<11} {n} objects, {p} primitives")
    lines.append("reduction ratios:")
    for k, v in s.ratios.items():
        lines.append(f"  {k:<14} {v:.4f}")
    return "\n".join(lines) + "\n"


def cmd_stats(args) -> int:
    model = _read_model(args.model)
    if args.json:
        sys.stdout.write(stats_json(model.stats))
    else:
        sys.stdout.write(format_stats(model))
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = oracle.benchmark_rows(n_bits=args.n_bits, bits=args.quantization_bits,
                                 count=args.count, seed=args.seed)
    text = oracle.benchmark_csv(rows)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="neurohex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert an OSM XML extract to a lattice world model")
    c.add_argument("input")
    c.add_argument("--bbox", help="W,S,E,N in decimal degrees")
    c.add_argument("--policy", choices=("metro", "zoom"))
    c.add_argument("--cell-size", type=float, help="cell pitch in meters")
    c.add_argument("--quantization-bits", type=int, help="angle bits per wedge (B)")
    c.add_argument("--out", help="model output (.ndjson)")
    c.add_argument("--stats", help="stats output (.json)")
    c.add_argument("--svg", help="also render an SVG")
    c.add_argument("--config", help="JSON config file")
    c.set_defaults(func=cmd_convert)

    r = sub.add_parser("render", help="render a model to SVG")
    r.add_argument("model")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("stats", help="summarize a model")
    s.add_argument("model")
    s.add_argument("--json", action="store_true", help="print the stats record as JSON")
    s.set_defaults(func=cmd_stats)

    b = sub.add_parser("bench", help="operation-count comparison as CSV")
    b.add_argument("--n-bits", type=int, default=16)
    b.add_argument("--quantization-bits", type=int, default=DEFAULT_BITS)
    b.add_argument("--count", type=int, default=200)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def _glue_bbox(argv: list[str]) -> list[str]:
    # western/southern boxes start with "-", which argparse reads as a flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--bbox" and i + 1 < len(argv):
            out.append(f"--bbox={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_bbox(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"neurohex {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"neurohex {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OsmError, ModelSchemaError, ShapeError) as e:
        print(f"neurohex {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
