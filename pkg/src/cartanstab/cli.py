"""Command line front end.

    cartanstab <classify|stabilizer|verify|table> --algebra <sl|sp|so-odd|so-even|g2>
               --rank N [--max-rank N] [--format text|json] [--cache PATH]

Exit status: 0 on success (MATCH or SUPERSET), 1 on MISMATCH or a failed
check, 2 on bad arguments or a rank beyond the guards.
"""

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .admissible import classify
from .liealg import CartanError, LiftError, verification_report
from .roots import AlgebraKind, Family, GuardError, kind
from .stabilizer import NotCatalogued, check_against_paper, report_json, stabilizer

log = logging.getLogger("cartanstab")

CACHE_VERSION = 1
COMMANDS = ("classify", "stabilizer", "verify", "table")


@dataclass(frozen=True)
class RunConfig:
    command: str
    algebra: str
    rank: int | None
    format: str = "text"
    cache_path: str | None = None
    max_rank: int | None = None

    def cache_key(self) -> str:
        fields = {"command": self.command, "algebra": self.algebra, "rank": self.rank,
                  "format": self.format, "max_rank": self.max_rank}
        blob = json.dumps(fields, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


class Cache:
    """JSON-lines result cache; one entry per config hash, tagged with the engine version."""

    def __init__(self, path, engine_version: str = __version__):
        self.path = Path(path)
        self.engine_version = engine_version
        self.entries: dict[str, dict] = {}
        self._load()

    def _load(self) -> None:
        try:
            text = self.path.read_text()
        except FileNotFoundError:
            return
        except OSError as exc:
            log.warning("cannot read cache %s: %s", self.path, exc)
            return
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
                key = entry["key"]
                entry["payload"], entry["engine"], entry["exit_code"]
            except (ValueError, KeyError, TypeError):
                log.warning("ignoring corrupted cache line %d in %s", lineno, self.path)
                continue
            if entry.get("version") != CACHE_VERSION:
                continue
            self.entries[key] = entry

    def lookup(self, key: str) -> tuple[str, int] | None:
        entry = self.entries.get(key)
        if entry is None or entry["engine"] != self.engine_version:
            return None
        return entry["payload"], entry["exit_code"]

    def store(self, key: str, payload: str, exit_code: int = 0, config: dict | None = None) -> None:
        self.entries[key] = {"version": CACHE_VERSION, "key": key, "engine": self.engine_version,
                             "config": config, "exit_code": exit_code, "payload": payload}
        lines = [json.dumps(self.entries[k], sort_keys=True) for k in sorted(self.entries)]
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text("\n".join(lines) + "\n")
        except OSError as exc:
            log.warning("cannot write cache %s: %s", self.path, exc)


def _kind(cfg: RunConfig, rank: int | None = None) -> AlgebraKind:
    return kind(cfg.algebra, cfg.rank if rank is None else rank)


def _classify(cfg: RunConfig) -> tuple[str, int]:
    report = classify(_kind(cfg))
    if cfg.format == "json":
        return _dump(report.to_json()), 0
    lines = [f"{report.kind}: {len(report)} classes of Cartan subalgebras",
             f"{'id':>3}  {'vec':>3}  {'orbit':>5}  roots"]
    for c in report.classes:
        lines.append(f"{c.class_id:>3}  {c.vector_part_dim:>3}  {c.orbit_size_spans:>5}  {c.representative}")
    return "\n".join(lines), 0


def _stabilizer(cfg: RunConfig) -> tuple[str, int]:
    k = _kind(cfg)
    try:
        cmp = check_against_paper(k)
    except NotCatalogued:
        rep = stabilizer(k)
        data = {"algebra": k.family.value, "rank": k.rank, "order": rep.order,
                "elements": [w.to_json() for w in rep.elements],
                "family_used": list(rep.family_ids), "verdict": "UNCATALOGUED"}
        if cfg.format == "json":
            return _dump(data), 0
        return f"{k}: stabilizer order {rep.order} (no published claim)\n" + "\n".join(
            f"  {w}" for w in rep.elements), 0
    code = 0 if cmp.ok else 1
    if cfg.format == "json":
        return _dump(report_json(cmp)), code
    lines = [f"{k}: stabilizer order {cmp.computed.order}, verdict {cmp.verdict}",
             f"family classes: {list(cmp.computed.family_ids)}"]
    lines += [f"  {w}" for w in cmp.computed.elements]
    if cmp.missing:
        lines.append("claimed but not found: " + "; ".join(map(str, cmp.missing)))
    if cmp.extra:
        lines.append("found but not listed: " + "; ".join(map(str, cmp.extra)))
    return "\n".join(lines), code


def _verify(cfg: RunConfig) -> tuple[str, int]:
    k = _kind(cfg)
    if k.family is Family.G2:
        raise ValueError("verify needs a matrix model; g2 is checked at the Weyl-group level only")
    rep = verification_report(k)
    code = 0 if rep["ok"] else 1
    if cfg.format == "json":
        return _dump(rep), code
    lines = [f"{k}: {len(rep['cartans'])} Cartan subalgebras, {len(rep['k_elements'])} K-elements"]
    for c in rep["cartans"]:
        lines.append(f"  class {c['class_id']}: dim {c['dim']} (toroidal {c['toroidal_dim']}), "
                     f"is_cartan={c['is_cartan']}")
    for e in rep["k_elements"]:
        lines.append(f"  k for {json.dumps(e['weyl'])}: fixes_all={e['fixes_all']}")
    lines.append("OK" if rep["ok"] else "FAILED")
    return "\n".join(lines), code


def _table(cfg: RunConfig) -> tuple[str, int]:
    fam = Family(cfg.algebra)
    if fam is Family.G2:
        ranks = [2]
    else:
        lo = {Family.SL: 2, Family.SO_EVEN: 2}.get(fam, 1)
        start = cfg.rank if cfg.rank is not None else lo
        if cfg.max_rank is None:
            raise ValueError("table needs --max-rank")
        ranks = range(start, cfg.max_rank + 1)
    rows, code = [], 0
    for n in ranks:
        k = kind(fam, n)
        report = classify(k)
        try:
            cmp = check_against_paper(k)
            order, verdict = cmp.computed.order, cmp.verdict
            code = max(code, 0 if cmp.ok else 1)
        except NotCatalogued:
            order, verdict = stabilizer(k).order, "n/a"
        rows.append({"rank": n, "classes": len(report), "stabilizer_order": order, "verdict": verdict})
    if cfg.format == "json":
        return _dump({"algebra": fam.value, "rows": rows}), code
    lines = [f"{fam.value}", f"{'rank':>4}  {'classes':>7}  {'|stab|':>6}  verdict"]
    lines += [f"{r['rank']:>4}  {r['classes']:>7}  {r['stabilizer_order']:>6}  {r['verdict']}" for r in rows]
    return "\n".join(lines), code


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


HANDLERS = {"classify": _classify, "stabilizer": _stabilizer, "verify": _verify, "table": _table}


def thread_cap() -> int:
    """CARTANSTAB_THREADS (0 = auto).  The engine runs single-threaded, so any cap is met."""
    raw = os.environ.get("CARTANSTAB_THREADS", "0")
    value = int(raw)
    if value < 0:
        raise ValueError("CARTANSTAB_THREADS must be >= 0")
    return value


def run(cfg: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    cache = Cache(cfg.cache_path) if cfg.cache_path else None
    key = cfg.cache_key()
    if cache is not None:
        hit = cache.lookup(key)
        if hit is not None:
            out.write(hit[0] + "\n")
            return hit[1]
    try:
        payload, code = HANDLERS[cfg.command](cfg)
    except (GuardError, NotCatalogued, ValueError) as exc:
        print(f"cartanstab: error: {exc}", file=sys.stderr)
        return 2
    except (CartanError, LiftError, AssertionError) as exc:
        print(f"cartanstab: check failed: {exc}", file=sys.stderr)
        return 1
    out.write(payload + "\n")
    if cache is not None:
        cache.store(key, payload, code, asdict(cfg) | {"cache_path": None})
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cartanstab",
        description="Classify Cartan subalgebras of split real Lie algebras and the Weyl elements fixing them.",
    )
    p.add_argument("command", choices=COMMANDS,
                   help="classify: classes of admissible systems; stabilizer: fixing subgroup of W; "
                        "verify: build Cartans and check lifted K-elements; table: summary per rank")
    p.add_argument("--algebra", required=True, choices=[f.value for f in Family])
    p.add_argument("--rank", type=int, help="rank n (not needed for g2 or table)")
    p.add_argument("--max-rank", type=int, help="last rank shown by table")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache", metavar="PATH", help="JSON-lines result cache")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        thread_cap()
    except ValueError as exc:
        parser.error(str(exc))
    if args.rank is None and args.algebra != "g2" and args.command != "table":
        parser.error("--rank is required")
    cfg = RunConfig(args.command, args.algebra, args.rank, args.format, args.cache, args.max_rank)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
