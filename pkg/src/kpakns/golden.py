"""Golden values for the Lax flow tables and low-weight KP residues.

The files are plain JSON in the NCPoly AST format.  They are compared on
every test run and rewritten only through :func:`write_golden` (the CLI
exposes this as ``--golden-regen``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List

from .ncpoly import from_json_obj, to_json_obj
from .psido import LaxContext, needed_depth, phi_kp
from .qshuffle import compositions_up_to, format_composition

GOLDEN_DIR = Path(__file__).with_name("golden")
SCHEMA = "kpakns.golden/1"


def golden_path(depth: int = 6, flows: int = 3) -> Path:
    return GOLDEN_DIR / f"lax_K{depth}_N{flows}.json"


def build_golden(depth: int = 6, flows: int = 3) -> dict:
    ctx = LaxContext(depth, flows)
    tables = {
        str(n): {name: to_json_obj(p) for name, p in sorted(entries.items())}
        for n, entries in sorted(ctx.tables.flows.items())
    }
    residues = {}
    max_weight = depth - 1
    for w in compositions_up_to(max_weight):
        if needed_depth(sum(w)) <= depth:
            residues[format_composition(w)] = to_json_obj(phi_kp(w, ctx))
    return {"schema": SCHEMA, "depth": depth, "flows": flows, "tables": tables, "residues": residues}


def write_golden(depth: int = 6, flows: int = 3) -> Path:
    path = golden_path(depth, flows)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(build_golden(depth, flows), indent=1, sort_keys=True) + "\n")
    return path


def load_golden(depth: int = 6, flows: int = 3) -> dict:
    return json.loads(golden_path(depth, flows).read_text())


def compare_golden(depth: int = 6, flows: int = 3) -> List[str]:
    """Keys whose recomputed value differs from the stored one (empty means match)."""
    stored = load_golden(depth, flows)
    fresh = build_golden(depth, flows)
    diffs = []
    for section in ("tables", "residues"):
        a: Dict = stored.get(section, {})
        b: Dict = fresh[section]
        for key in sorted(set(a) | set(b)):
            if section == "tables":
                names = set(a.get(key, {})) | set(b.get(key, {}))
                for name in sorted(names):
                    x, y = a.get(key, {}).get(name), b.get(key, {}).get(name)
                    if x is None or y is None or from_json_obj(x) != from_json_obj(y):
                        diffs.append(f"tables.t{key}.{name}")
            else:
                x, y = a.get(key), b.get(key)
                if x is None or y is None or from_json_obj(x) != from_json_obj(y):
                    diffs.append(f"residues.{key}")
    return diffs
