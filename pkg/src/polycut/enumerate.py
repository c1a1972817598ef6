"""Level-by-level enumeration of simple polytopes from the d-simplex.

Level n holds one entry per distinct graph reachable from the simplex by
``n - d - 1`` valid cuts.  Levels are expanded breadth-first; parents are
visited in key order and their cutsets in enumeration order, and the first
(parent, cutset) to produce a key becomes its recorded lineage.  Parent
expansions are independent and may run in worker processes; results are
merged in that same order, so the catalog does not depend on worker count.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import graph6
from .canon import CanonicalKey, canonical_labeling
from .cutsets import CapExceeded, Cutset, enumerate_cutsets
from .cutter import CutResult, cut_polytope
from .lattice import FaceLattice, PolytopeGraph, graph_of, make_simplex, validate

log = logging.getLogger(__name__)

FIELDS = ("d", "n", "key", "adjacency", "f_vector", "parent_key", "cutset_size", "flags")


class ConfigError(ValueError):
    pass


class CatalogFormatError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class EnumerationConfig:
    enforce_face_condition: bool = True
    max_cutset_size: int | None = None
    max_level_entries: int | None = None
    workers: int = 1
    retain_lattices: bool = False

    def to_json(self) -> dict:
        cfg = asdict(self)
        cfg.pop("workers")
        cfg.pop("retain_lattices")
        return cfg


@dataclass(frozen=True)
class CatalogEntry:
    d: int
    n: int
    key: CanonicalKey
    adjacency: tuple[tuple[int, ...], ...]
    f_vector: tuple[int, ...]
    parent_key: CanonicalKey | None
    cutset_size: int | None
    flags: tuple[str, ...]

    @property
    def graph(self) -> PolytopeGraph:
        return PolytopeGraph(self.adjacency)

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["adjacency"] = [list(r) for r in self.adjacency]
        rec["f_vector"] = list(self.f_vector)
        rec["flags"] = list(self.flags)
        return {k: rec[k] for k in FIELDS}

    def to_line(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_record(cls, rec: dict) -> CatalogEntry:
        return cls(rec["d"], rec["n"], rec["key"],
                   tuple(tuple(r) for r in rec["adjacency"]), tuple(rec["f_vector"]),
                   rec["parent_key"], rec["cutset_size"], tuple(rec["flags"]))


def entry_flags(d: int) -> tuple[str, ...]:
    return ("d3-exact", "superset-member") if d == 3 else ("superset-member",)


@dataclass
class Catalog:
    d: int
    entries: dict[tuple[int, int, CanonicalKey], CatalogEntry] = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    lattices: dict[CanonicalKey, FaceLattice] = field(default_factory=dict, repr=False)

    def add(self, entry: CatalogEntry) -> bool:
        k = (entry.d, entry.n, entry.key)
        if k in self.entries:
            return False
        self.entries[k] = entry
        return True

    def level(self, n: int) -> list[CatalogEntry]:
        return sorted((e for e in self.entries.values() if e.n == n), key=lambda e: e.key)

    def keys(self, n: int) -> set[CanonicalKey]:
        return {e.key for e in self.entries.values() if e.n == n}

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for e in self.entries.values():
            out[e.n] = out.get(e.n, 0) + 1
        return dict(sorted(out.items()))

    @property
    def max_n(self) -> int | None:
        return max((e.n for e in self.entries.values()), default=None)

    def get(self, n: int, key: CanonicalKey) -> CatalogEntry | None:
        return self.entries.get((self.d, n, key))

    def sorted_entries(self) -> list[CatalogEntry]:
        return sorted(self.entries.values(), key=lambda e: (e.n, e.key))

    def lines(self) -> list[str]:
        return [e.to_line() for e in self.sorted_entries()]

    def dumps(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def _entry_for(lattice: FaceLattice, parent_key, cutset_size) -> tuple[CatalogEntry, PolytopeGraph]:
    g = graph_of(lattice)
    lab = canonical_labeling(g)
    canon = g.relabeled(lab.perm)
    f = lattice.f_vector().counts
    entry = CatalogEntry(lattice.d, len(lattice.facets), lab.key, canon.adjacency, f,
                         parent_key, cutset_size, entry_flags(lattice.d))
    return entry, canon


def _children(lattice: FaceLattice, config: EnumerationConfig,
              observer: Callable[[FaceLattice, Cutset, CutResult], None] | None = None):
    """Distinct children of one parent, in cutset order."""
    out = []
    seen = set()
    for cs in enumerate_cutsets(lattice, enforce_face_condition=config.enforce_face_condition,
                                max_size=config.max_cutset_size):
        res = cut_polytope(lattice, cs, enforce_face_condition=config.enforce_face_condition,
                           check=False)
        if observer is not None:
            observer(lattice, cs, res)
        if validate(res.child).violations:
            # combinatorially consistent but not a sphere; cannot be a polytope
            continue
        key = canonical_labeling(graph_of(res.child)).key
        if key in seen:
            continue
        seen.add(key)
        out.append((key, len(cs), res.child))
    return out


def _expand_job(args):
    lattice, config = args
    return _children(lattice, config)


def _check_range(d: int, n_max: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise ConfigError(f"dimension must be >= 2, got {d}")
    if n_max <= d:
        raise ConfigError(f"max facets must exceed the dimension (got n={n_max}, d={d})")


def _expand_levels(catalog: Catalog, frontier: list[tuple[CatalogEntry, FaceLattice]],
                   n_max: int, config: EnumerationConfig, observer=None,
                   on_level: Callable[[int, list[CatalogEntry]], None] | None = None) -> Catalog:
    if observer is not None and config.workers > 1:
        raise ConfigError("cut observers require a single worker")
    while frontier and frontier[0][0].n < n_max:
        n = frontier[0][0].n + 1
        jobs = [(lat, config) for _, lat in frontier]
        if config.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(_expand_job, jobs))
        else:
            results = [_children(lat, config, observer) for lat, _ in jobs]
        level: dict[CanonicalKey, tuple[CatalogEntry, FaceLattice]] = {}
        for (parent, _), kids in zip(frontier, results):
            for key, size, child in kids:
                if key in level:
                    continue
                entry, _ = _entry_for(child, parent.key, size)
                level[key] = (entry, child)
                if config.max_level_entries is not None and len(level) > config.max_level_entries:
                    raise CapExceeded(
                        f"level n={n} exceeds {config.max_level_entries} entries")
        frontier = sorted(level.values(), key=lambda t: t[0].key)
        for entry, lat in frontier:
            catalog.add(entry)
            if config.retain_lattices:
                catalog.lattices[entry.key] = lat
        log.info("n=%d: %d types", n, len(frontier))
        if on_level is not None:
            on_level(n, [e for e, _ in frontier])
    return catalog


def enumerate_all(d: int, n_max: int, config: EnumerationConfig | None = None, *,
                  observer: Callable[[FaceLattice, Cutset, CutResult], None] | None = None,
                  on_level: Callable[[int, list[CatalogEntry]], None] | None = None) -> Catalog:
    """Catalog of every type reachable from the d-simplex, for n = d+1..n_max.

    ``observer(parent, cutset, result)`` sees every cut performed (single
    worker only).  ``on_level(n, entries)`` fires after each level.
    """
    _check_range(d, n_max)
    config = config or EnumerationConfig()
    catalog = Catalog(d, config=config.to_json())
    simplex = make_simplex(d)
    root, _ = _entry_for(simplex, None, None)
    catalog.add(root)
    if config.retain_lattices:
        catalog.lattices[root.key] = simplex
    if on_level is not None:
        on_level(d + 1, [root])
    return _expand_levels(catalog, [(root, simplex)], n_max, config, observer, on_level)


# persistence

def meta_path(path: str | os.PathLike) -> Path:
    p = Path(path)
    return p.with_name(p.name + ".meta.json")


def write_catalog(catalog: Catalog, path: str | os.PathLike) -> None:
    """Write sorted JSON Lines plus a sidecar with config and level counts."""
    p = Path(path)
    p.write_text(catalog.dumps(), encoding="utf-8")
    meta = {"d": catalog.d, "config": catalog.config,
            "counts": {str(k): v for k, v in catalog.counts().items()}}
    meta_path(p).write_text(json.dumps(meta, sort_keys=True, indent=1) + "\n", encoding="utf-8")


def append_level(path: str | os.PathLike, entries: Iterable[CatalogEntry]) -> None:
    with Path(path).open("a", encoding="utf-8") as fh:
        fh.write("".join(e.to_line() + "\n" for e in entries))
        fh.flush()


def _check_record(rec, lineno: int) -> CatalogEntry:
    if not isinstance(rec, dict):
        raise CatalogFormatError(lineno, "record is not an object")
    if tuple(rec) != FIELDS:
        raise CatalogFormatError(lineno, f"fields {list(rec)} differ from {list(FIELDS)}")
    try:
        entry = CatalogEntry.from_record(rec)
    except (TypeError, ValueError) as exc:
        raise CatalogFormatError(lineno, f"malformed record: {exc}") from None
    g = entry.graph
    try:
        if graph6.encode(g) != entry.key:
            raise CatalogFormatError(lineno, "key does not encode the stored adjacency")
    except (IndexError, TypeError):
        raise CatalogFormatError(lineno, "adjacency is not a valid graph") from None
    if len(entry.f_vector) != entry.d or entry.f_vector[-1] != entry.n:
        raise CatalogFormatError(lineno, "f-vector inconsistent with d and n")
    if entry.f_vector[0] != g.vertex_count:
        raise CatalogFormatError(lineno, "f-vector vertex count differs from adjacency")
    if any(len(r) != entry.d for r in entry.adjacency):
        raise CatalogFormatError(lineno, "graph is not d-regular")
    return entry


def iter_catalog(path: str | os.PathLike) -> Iterator[CatalogEntry]:
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            if not raw.endswith("\n"):
                raise CatalogFormatError(lineno, "truncated record (no line terminator)")
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CatalogFormatError(lineno, f"invalid JSON ({exc.msg})") from None
            yield _check_record(rec, lineno)


def read_catalog(path: str | os.PathLike) -> Catalog:
    entries = list(iter_catalog(path))
    dims = {e.d for e in entries}
    if len(dims) > 1:
        raise CatalogFormatError(0, f"mixed dimensions {sorted(dims)}")
    mp = meta_path(path)
    meta = json.loads(mp.read_text(encoding="utf-8")) if mp.exists() else {}
    d = dims.pop() if dims else meta.get("d", 0)
    catalog = Catalog(d, config=meta.get("config", {}))
    for e in entries:
        if not catalog.add(e):
            raise CatalogFormatError(0, f"duplicate entry n={e.n} key={e.key}")
    return catalog


def rebuild_lattice(catalog: Catalog, entry: CatalogEntry, config: EnumerationConfig | None = None,
                    _memo: dict | None = None) -> FaceLattice:
    """Recover an entry's lattice by replaying its recorded lineage from the simplex."""
    config = config or EnumerationConfig(**{k: v for k, v in catalog.config.items()
                                            if k in ("enforce_face_condition", "max_cutset_size",
                                                     "max_level_entries")})
    memo = catalog.lattices if _memo is None else _memo
    if entry.key in memo:
        return memo[entry.key]
    if entry.parent_key is None:
        lat = make_simplex(entry.d)
    else:
        parent = catalog.get(entry.n - 1, entry.parent_key)
        if parent is None:
            raise CatalogFormatError(0, f"missing parent {entry.parent_key} of {entry.key}")
        plat = rebuild_lattice(catalog, parent, config, memo)
        lat = None
        for cs in enumerate_cutsets(plat, enforce_face_condition=config.enforce_face_condition):
            if len(cs) != entry.cutset_size:
                continue
            res = cut_polytope(plat, cs, enforce_face_condition=config.enforce_face_condition,
                               check=False)
            if validate(res.child).violations:
                continue
            if canonical_labeling(graph_of(res.child)).key == entry.key:
                lat = res.child
                break
        if lat is None:
            raise CatalogFormatError(0, f"lineage of {entry.key} does not replay")
    memo[entry.key] = lat
    return lat


def enumerate_to_file(path: str | os.PathLike, d: int, n_max: int,
                      config: EnumerationConfig | None = None) -> Catalog:
    """Run :func:`enumerate_all`, appending each finished level to ``path``.

    Levels arrive in (n, key) order, so an interrupted file is a valid
    prefix that :func:`resume` can continue.
    """
    p = Path(path)
    p.write_text("", encoding="utf-8")
    catalog = enumerate_all(d, n_max, config, on_level=lambda n, es: append_level(p, es))
    write_catalog(catalog, p)
    return catalog


def resume(path: str | os.PathLike, d: int, n_max: int,
           config: EnumerationConfig | None = None) -> Catalog:
    """Continue a persisted run up to ``n_max``, rewriting the file when done.

    An empty or missing file starts from the simplex.
    """
    _check_range(d, n_max)
    config = config or EnumerationConfig()
    p = Path(path)
    if not p.exists() or p.stat().st_size == 0:
        return enumerate_to_file(p, d, n_max, config)
    catalog = read_catalog(p)
    if catalog.d != d:
        raise ConfigError(f"config mismatch: catalog has d={catalog.d}, requested d={d}")
    stored = catalog.config
    if stored and stored != config.to_json():
        raise ConfigError(f"config mismatch: catalog was generated with {stored}")
    catalog.config = config.to_json()
    top = catalog.max_n
    if top < n_max:
        memo: dict = {}
        frontier = [(e, rebuild_lattice(catalog, e, config, memo)) for e in catalog.level(top)]
        _expand_levels(catalog, frontier, n_max, config,
                       on_level=lambda n, es: append_level(p, es))
        if config.retain_lattices:
            catalog.lattices.update(memo)
    write_catalog(catalog, p)
    return catalog
