"""Matroid generators and the .mtd file format.

Families: uniform(r, n); pg(n, q) with one column per point of the
rank-n projective geometry; linear_random(rank, cols, q) with seeded
nonzero columns; pg_plus_noise(n, q, q2, extra) embedding the geometry's
points over GF(q2) = GF(q^2) plus random extension-field columns; fano;
u24_tower(h).  Generators are deterministic given (params, seed); the
seeded generator is Python's mt19937.

File format (UTF-8, line oriented, '#' comments), multiple named blocks
per file, later blocks may reference earlier names:

    matroid <name>
    kind linear|uniform|minor|direct_sum
    field <q>            # linear
    rank <rows>
    col <e1> ... <erows> # one line per element
    params <r> <n>       # uniform
    of <name>            # minor
    contract <i> <i> ...
    delete <i> <i> ...
    parts <name> <name>  # direct_sum
    end
"""

from __future__ import annotations

import json
import random
from typing import Sequence

from . import gf
from .bits import mask_of
from .core import (DirectSumMatroid, LinearMatroid, Matroid, MinorMatroid,
                   UniformMatroid, direct_sum)

RNG_ALGORITHM = "mt19937"


def _linear(q: int, columns: Sequence[Sequence[int]], rows: int) -> LinearMatroid:
    f = gf.field(q)
    return LinearMatroid(gf.Matrix.from_columns(f, [tuple(c) for c in columns], rows))


def pg_columns(n: int, q: int) -> list[tuple[int, ...]]:
    return gf.normalized_vectors(gf.field(q), n)


def gen(name: str, params: Sequence = (), seed: int = 0) -> Matroid:
    """Build a named family member; see the module docstring for the list."""
    if name == "uniform":
        r, n = params
        return UniformMatroid(r, n)
    if name == "pg":
        n, q = params
        return _linear(q, pg_columns(n, q), n)
    if name == "fano":
        return gen("pg", (3, 2))
    if name == "linear_random":
        rank, cols, q = params
        rng = random.Random(seed)
        f = gf.field(q)
        columns = []
        for _ in range(cols):
            while True:
                col = tuple(rng.randrange(q) for _ in range(rank))
                if any(col):
                    break
            columns.append(col)
        return _linear(q, columns, rank)
    if name == "pg_plus_noise":
        n, q, q2, extra = params
        f2 = gf.field(q2)
        if f2.p != q or f2.k != 2:
            raise ValueError("pg_plus_noise needs q prime and q2 = q^2")
        columns = list(pg_columns(n, q))  # GF(q) digits are GF(q^2) constants
        rng = random.Random(seed)
        for _ in range(extra):
            while True:
                col = tuple(rng.randrange(q2) for _ in range(n))
                if any(col):
                    break
            columns.append(col)
        return _linear(q2, columns, n)
    if name == "u24_tower":
        (h,) = params
        return direct_sum([UniformMatroid(2, 4) for _ in range(h)])
    if name == "direct_sum":
        return direct_sum(list(params))
    raise ValueError(f"unknown matroid family {name!r}")


# -- file format ------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, path: str, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")


def _emit(m: Matroid, name: str, blocks: list[str], counter: list[int]) -> str:
    if isinstance(m, LinearMatroid):
        lines = [f"matroid {name}", "kind linear", f"field {m.field.q}",
                 f"rank {m.matrix.rows}"]
        for col in m.matrix.columns():
            lines.append("col " + " ".join(str(v) for v in col))
        lines.append("end")
        blocks.append("\n".join(lines))
        return name
    if isinstance(m, UniformMatroid):
        blocks.append("\n".join([f"matroid {name}", "kind uniform",
                                 f"params {m.r} {m.n}", "end"]))
        return name
    if isinstance(m, MinorMatroid):
        counter[0] += 1
        base_name = _emit(m.base, f"{name}.base{counter[0]}", blocks, counter)
        lines = [f"matroid {name}", "kind minor", f"of {base_name}"]
        lines.append("contract" + "".join(f" {e}" for e in _mask_indices(m.contracted)))
        lines.append("delete" + "".join(f" {e}" for e in _mask_indices(m.deleted)))
        lines.append("end")
        blocks.append("\n".join(lines))
        return name
    if isinstance(m, DirectSumMatroid):
        part_names = []
        for i, part in enumerate(m.parts):
            counter[0] += 1
            part_names.append(_emit(part, f"{name}.p{counter[0]}", blocks, counter))
        blocks.append("\n".join([f"matroid {name}", "kind direct_sum",
                                 "parts " + " ".join(part_names), "end"]))
        return name
    raise ValueError(f"matroid kind {m.kind!r} has no file representation")


def _mask_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def write_matroid(m: Matroid, path: str, name: str = "m",
                  header: str | None = None) -> None:
    blocks: list[str] = []
    _emit(m, name, blocks, [0])
    text = "\n\n".join(blocks) + "\n"
    if header:
        text = "".join(f"# {ln}\n" for ln in header.splitlines()) + text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def read_matroid(path: str) -> Matroid:
    """Parse a .mtd file; the matroid of the last block is returned."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()
    named: dict[str, Matroid] = {}
    last: Matroid | None = None
    block: dict | None = None

    def fail(lineno, msg):
        raise ParseError(path, lineno, msg)

    for lineno, line in enumerate(raw, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = text.split()
        key = tokens[0]
        if key == "matroid":
            if block is not None:
                fail(lineno, "block started before the previous one ended")
            if len(tokens) != 2:
                fail(lineno, "matroid line needs exactly one name")
            block = {"name": tokens[1], "cols": [], "line": lineno}
        elif block is None:
            fail(lineno, f"directive {key!r} outside a matroid block")
        elif key == "kind":
            block["kind"] = tokens[1] if len(tokens) == 2 else fail(lineno, "bad kind line")
        elif key == "field":
            try:
                block["field"] = gf.field(int(tokens[1]))
            except (ValueError, IndexError) as exc:
                fail(lineno, f"bad field order: {exc}")
        elif key == "rank":
            block["rank"] = int(tokens[1])
        elif key == "col":
            block["cols"].append((lineno, [int(t) for t in tokens[1:]]))
        elif key == "params":
            block["params"] = [int(t) for t in tokens[1:]]
        elif key == "of":
            block["of"] = tokens[1]
        elif key == "contract":
            block["contract"] = [int(t) for t in tokens[1:]]
        elif key == "delete":
            block["delete"] = [int(t) for t in tokens[1:]]
        elif key == "parts":
            block["parts"] = tokens[1:]
        elif key == "end":
            m = _build_block(path, block, named)
            named[block["name"]] = m
            last = m
            block = None
        else:
            fail(lineno, f"unknown directive {key!r}")
    if block is not None:
        fail(len(raw), f"block {block['name']!r} never ended")
    if last is None:
        raise ParseError(path, len(raw), "file defines no matroid")
    return last


def _build_block(path: str, block: dict, named: dict[str, Matroid]) -> Matroid:
    kind = block.get("kind")
    lineno = block["line"]
    if kind == "linear":
        if "field" not in block or "rank" not in block:
            raise ParseError(path, lineno, "linear block needs field and rank lines")
        f = block["field"]
        rows = block["rank"]
        columns = []
        for colno, col in block["cols"]:
            if len(col) != rows:
                raise ParseError(path, colno, f"column needs {rows} entries")
            for v in col:
                if not 0 <= v < f.q:
                    raise ParseError(path, colno, f"entry {v} outside GF({f.q})")
            columns.append(tuple(col))
        return LinearMatroid(gf.Matrix.from_columns(f, columns, rows))
    if kind == "uniform":
        params = block.get("params")
        if not params or len(params) != 2:
            raise ParseError(path, lineno, "uniform block needs 'params r n'")
        return UniformMatroid(params[0], params[1])
    if kind == "minor":
        base = named.get(block.get("of"))
        if base is None:
            raise ParseError(path, lineno,
                             f"minor references unknown base {block.get('of')!r}")
        c = mask_of(block.get("contract", []))
        d = mask_of(block.get("delete", []))
        try:
            return base.minor(c, d)
        except (ValueError, IndexError) as exc:
            raise ParseError(path, lineno, str(exc))
    if kind == "direct_sum":
        names = block.get("parts", [])
        parts = []
        for nm in names:
            if nm not in named:
                raise ParseError(path, lineno, f"direct_sum references unknown part {nm!r}")
            parts.append(named[nm])
        if not parts:
            raise ParseError(path, lineno, "direct_sum needs at least one part")
        return direct_sum(parts)
    raise ParseError(path, lineno, f"unknown kind {kind!r}")


# -- corpus manifests -------------------------------------------------


def write_manifest(entries: list[dict], path: str) -> None:
    """Manifest: list of {file, family, params, seed} records as JSON."""
    for e in entries:
        missing = {"file", "family", "params", "seed"} - set(e)
        if missing:
            raise ValueError(f"manifest entry missing fields {sorted(missing)}")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"rng": RNG_ALGORITHM, "entries": entries}, fh, indent=1)
        fh.write("\n")


def read_manifest(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return data["entries"]
