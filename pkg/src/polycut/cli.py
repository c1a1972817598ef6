"""Command line entry point: ``polycut enumerate | analyze | export | verify``.

Exit codes: 0 success, 1 verification mismatch, 2 bad arguments or unreadable
input, 3 a configured cap was exceeded.  Lines starting with ``[time]`` carry
wall-clock timings and are the only nondeterministic output.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import graph6
from .analyze import DEFAULT_CAP, analyze_catalog, summary_table, write_analysis
from .canon import canonical_key
from .cutsets import CapExceeded
from .enumerate import (
    CatalogFormatError,
    ConfigError,
    EnumerationConfig,
    enumerate_all,
    enumerate_to_file,
    read_catalog,
    resume,
    write_catalog,
)

FORMATS = ("jsonl", "graph6", "dot")
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _formats(values: Sequence[str] | None) -> list[str]:
    out: list[str] = []
    for v in values or ["jsonl"]:
        for part in v.split(","):
            part = part.strip()
            if part not in FORMATS:
                raise UsageError(f"unknown format {part!r}; choose from {', '.join(FORMATS)}")
            if part not in out:
                out.append(part)
    return out


def _default_workers() -> int:
    raw = os.environ.get("POLYCUT_WORKERS")
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POLYCUT_WORKERS must be an integer, got {raw!r}") from None


def _counts_line(counts: dict[int, int]) -> str:
    return ", ".join(f"n={n}: {c}" for n, c in sorted(counts.items()))


def export_graph6(catalog, path: Path) -> None:
    path.write_text("".join(e.key + "\n" for e in catalog.sorted_entries()), encoding="utf-8")


def export_dot(catalog, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for n in sorted(catalog.counts()):
        for i, e in enumerate(catalog.level(n)):
            name = f"d{e.d}_n{n}_{i:04d}"
            (directory / f"{name}.dot").write_text(graph6.to_dot(e.graph, name), encoding="utf-8")


def _export(catalog, output: Path, formats: Sequence[str]) -> list[Path]:
    written = []
    if "jsonl" in formats:
        write_catalog(catalog, output)
        written.append(output)
    if "graph6" in formats:
        p = output.with_suffix(".g6")
        export_graph6(catalog, p)
        written.append(p)
    if "dot" in formats:
        p = output.with_name(output.stem + "_dot")
        export_dot(catalog, p)
        written.append(p)
    return written


def cmd_enumerate(args) -> int:
    workers = args.workers if args.workers is not None else _default_workers()
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    if args.max_facets <= args.dim:
        raise UsageError(f"--max-facets must exceed --dim (got {args.max_facets} <= {args.dim})")
    if args.max_cutset_size is not None and args.max_cutset_size < 1:
        raise UsageError("--max-cutset-size must be positive")
    formats = _formats(args.format)
    config = EnumerationConfig(enforce_face_condition=not args.no_footnote_condition,
                               max_cutset_size=args.max_cutset_size, workers=workers)
    output = Path(args.output)
    start = time.perf_counter()
    if args.resume:
        catalog = resume(output, args.dim, args.max_facets, config)
    elif "jsonl" in formats:
        catalog = enumerate_to_file(output, args.dim, args.max_facets, config)
    else:
        catalog = enumerate_all(args.dim, args.max_facets, config)
    elapsed = time.perf_counter() - start
    print(_counts_line(catalog.counts()))
    flag = "exact" if args.dim == 3 else "superset"
    print(f"d={args.dim}: {sum(catalog.counts().values())} types ({flag})")
    if "jsonl" in formats:
        print(f"wrote {output}")
    for path in _export(catalog, output, [f for f in formats if f != "jsonl"]):
        print(f"wrote {path}")
    print(f"[time] enumerate {elapsed:.2f}s")
    return EXIT_OK


def _load(path: str):
    p = Path(path)
    if not p.exists():
        raise UsageError(f"catalog not found: {p}")
    return read_catalog(p)


def cmd_analyze(args) -> int:
    if args.expansion_cap < 1:
        raise UsageError("--expansion-cap must be positive")
    catalog = _load(args.catalog)
    start = time.perf_counter()
    records = analyze_catalog(catalog, args.expansion_cap)
    out = Path(args.output) if args.output else Path(args.catalog).with_suffix(".analysis.jsonl")
    write_analysis(records, out)
    sys.stdout.write(summary_table(catalog, records))
    print(f"wrote {out}")
    print(f"[time] analyze {time.perf_counter() - start:.2f}s")
    return EXIT_OK


def cmd_export(args) -> int:
    catalog = _load(args.catalog)
    formats = _formats(args.format)
    out = Path(args.output)
    if "jsonl" in formats:
        write_catalog(catalog, out.with_suffix(".jsonl"))
        print(f"wrote {out.with_suffix('.jsonl')}")
    if "graph6" in formats:
        export_graph6(catalog, out.with_suffix(".g6"))
        print(f"wrote {out.with_suffix('.g6')}")
    if "dot" in formats:
        export_dot(catalog, out)
        print(f"wrote {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .oracle import MAX_FACETS, oracle_levels

    if args.dim != 3:
        raise UsageError(f"oracle unavailable for d={args.dim}; only d=3 is supported")
    if args.max_facets > MAX_FACETS:
        raise UsageError(f"oracle unavailable beyond n={MAX_FACETS}")
    if args.max_facets <= args.dim:
        raise UsageError(f"--max-facets must exceed --dim (got {args.max_facets} <= {args.dim})")
    config = EnumerationConfig(enforce_face_condition=not args.no_footnote_condition)
    t0 = time.perf_counter()
    catalog = enumerate_all(3, args.max_facets, config)
    t1 = time.perf_counter()
    oracle = oracle_levels(args.max_facets)
    t2 = time.perf_counter()
    status = EXIT_OK
    for n in range(4, args.max_facets + 1):
        ours = catalog.keys(n)
        theirs = {canonical_key(g) for g in oracle[n]}
        ok = ours == theirs and len(theirs) == len(oracle[n])
        print(f"n={n}: catalog {len(ours)}, oracle {len(oracle[n])}, {'ok' if ok else 'MISMATCH'}")
        if not ok:
            status = EXIT_MISMATCH
            for k in sorted(theirs - ours):
                print(f"  missing {k}")
            for k in sorted(ours - theirs):
                print(f"  extra {k}")
    print(f"[time] enumerate {t1 - t0:.2f}s, oracle {t2 - t1:.2f}s")
    return status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polycut", description="Enumerate and analyse simple polytopes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="generate the catalog up to a facet count")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-facets", type=int, required=True)
    p.add_argument("--output", default="catalog.jsonl")
    p.add_argument("--format", action="append", help="jsonl, graph6, dot (comma separated or repeated)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $POLYCUT_WORKERS or 1)")
    p.add_argument("--no-footnote-condition", action="store_true",
                   help="do not require faces to stay connected after the cut")
    p.add_argument("--max-cutset-size", type=int, default=None)
    p.add_argument("--resume", action="store_true", help="continue from an existing catalog file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("analyze", help="diameters, Dantzig figures and expansion")
    p.add_argument("catalog")
    p.add_argument("--output", default=None)
    p.add_argument("--expansion-cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="write graph6 or DOT files from a catalog")
    p.add_argument("catalog")
    p.add_argument("--format", action="append")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="compare d=3 levels against the independent oracle")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--max-facets", type=int, required=True)
    p.add_argument("--no-footnote-condition", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"polycut: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogFormatError as exc:
        print(f"polycut: error: corrupt catalog: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"polycut: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
