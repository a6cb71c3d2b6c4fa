"""Text formats: capacity files, interval files, dataset CSV and rendered tables.

Capacity file::

    scale godel 5 1,2,3,4,5        (optional)
    capacity A B C D
    {} -> 1
    {A} -> 2
    ...

Every subset must be listed exactly once. An interval file holds two
capacity blocks introduced by the tag lines ``lower`` and ``upper``.

Dataset CSV: an optional ``scale ...`` line, a header of criterion names
followed by ``alpha``, then one row per datum. Empty cells and ``*`` are
the unknown value.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import STAR, DValue, ResiduatedSystem, format_scale_spec, parse_scale_spec
from .capacity import Capacity, Universe, format_capacity
from .errors import DomainError, ParseError
from .identification import CapacityInterval, Datum

ALPHA_COLUMN = "alpha"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_vector(system: ResiduatedSystem, text: str, n: int | None = None) -> tuple[DValue, ...]:
    """``"2,*,3,1"`` -> values; an empty cell is the unknown value."""
    cells = [c.strip() for c in text.split(",")]
    try:
        values = tuple(STAR if c in ("", "*") else system.parse_value(c) for c in cells)
    except DomainError as exc:
        raise ParseError(f"bad vector {text!r}: {exc}") from exc
    if n is not None and len(values) != n:
        raise ParseError(f"vector {text!r} has {len(values)} entries, expected {n}")
    return values


def format_vector(system: ResiduatedSystem, f: Sequence[DValue]) -> str:
    return ",".join(system.format_value(v) for v in f)


# capacities and intervals


def parse_capacities(text: str, system: ResiduatedSystem | None = None,
                     source: str | None = None) -> tuple[ResiduatedSystem, dict[str | None, Capacity]]:
    """Parse one untagged capacity or several tagged blocks.

    A ``scale`` line in the text is used when ``system`` is not given.
    Returns the system and ``{tag: capacity}`` (tag ``None`` when untagged).
    """
    blocks: dict[str | None, Capacity] = {}
    tag: str | None = None
    universe: Universe | None = None
    entries: dict[int, DValue] = {}
    header_line = 0

    def close(lineno):
        nonlocal universe, entries
        if universe is None:
            return
        missing = [m for m in universe.masks() if m not in entries]
        if missing:
            raise ParseError(f"subset {universe.format_subset(missing[0])} is missing "
                             f"(capacity starting at line {header_line})", source, lineno)
        if tag in blocks:
            raise ParseError(f"duplicate block {tag!r}", source, header_line)
        blocks[tag] = Capacity.from_mapping(universe, entries)
        universe, entries = None, {}

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = _strip_comment(raw)
        if not line:
            continue
        head = line.split()[0].lower()
        if head == "scale":
            if universe is not None or blocks:
                raise ParseError("scale line must precede all capacities", source, lineno)
            spec = parse_scale_spec(line)
            if system is None:
                system = spec
            elif spec != system:
                raise ParseError(f"file scale '{line}' conflicts with '{format_scale_spec(system)}'",
                                 source, lineno)
        elif head == "capacity":
            close(lineno)
            names = line.split()[1:]
            if not names:
                raise ParseError("capacity header needs criterion names", source, lineno)
            try:
                universe = Universe.named(names)
            except DomainError as exc:
                raise ParseError(str(exc), source, lineno) from exc
            header_line = lineno
        elif "->" in line:
            if universe is None:
                raise ParseError("subset entry before a 'capacity' header", source, lineno)
            if system is None:
                raise ParseError("no scale given (add a 'scale ...' line or pass one)", source, lineno)
            left, right = (part.strip() for part in line.split("->", 1))
            try:
                mask = universe.parse_subset(left)
                value = system.parse_value(right)
            except DomainError as exc:
                raise ParseError(str(exc), source, lineno) from exc
            if mask in entries:
                raise ParseError(f"subset {left} listed twice", source, lineno)
            entries[mask] = value
        elif len(line.split()) == 1:
            close(lineno)
            tag = line
        else:
            raise ParseError(f"unrecognized line {raw.strip()!r}", source, lineno)
    close(len(lines))
    if not blocks:
        raise ParseError("no capacity found", source)
    if system is None:
        raise ParseError("no scale given", source)
    return system, blocks


def parse_capacity(text: str, system: ResiduatedSystem | None = None, block: str | None = None,
                   source: str | None = None) -> tuple[ResiduatedSystem, Capacity]:
    system, blocks = parse_capacities(text, system, source)
    if block is None:
        if len(blocks) != 1:
            raise ParseError(f"file holds blocks {sorted(map(str, blocks))}; choose one", source)
        return system, next(iter(blocks.values()))
    if block not in blocks:
        raise ParseError(f"no block {block!r} (have {sorted(map(str, blocks))})", source)
    return system, blocks[block]


def format_interval(system: ResiduatedSystem, interval: CapacityInterval) -> str:
    return ("lower\n" + format_capacity(system, interval.lower)
            + "upper\n" + format_capacity(system, interval.upper))


def parse_interval(text: str, system: ResiduatedSystem | None = None,
                   source: str | None = None) -> tuple[ResiduatedSystem, CapacityInterval]:
    system, blocks = parse_capacities(text, system, source)
    if set(blocks) != {"lower", "upper"}:
        raise ParseError("an interval needs exactly the blocks 'lower' and 'upper'", source)
    if blocks["lower"].universe != blocks["upper"].universe:
        raise ParseError("lower and upper blocks use different criteria", source)
    return system, CapacityInterval(blocks["lower"], blocks["upper"])


# datasets


@dataclass(frozen=True)
class Dataset:
    system: ResiduatedSystem
    universe: Universe
    data: tuple[Datum, ...]

    def complete_only(self) -> Dataset:
        return Dataset(self.system, self.universe, tuple(d for d in self.data if d.complete))

    def with_rows(self, rows: Sequence[Datum]) -> Dataset:
        return Dataset(self.system, self.universe, self.data + tuple(rows))


def parse_dataset(text: str, system: ResiduatedSystem | None = None,
                  source: str | None = None) -> Dataset:
    lines = text.splitlines()
    start = 0
    while start < len(lines) and not _strip_comment(lines[start]):
        start += 1
    if start < len(lines) and lines[start].split()[0].lower() == "scale":
        spec = parse_scale_spec(lines[start])
        if system is None:
            system = spec
        start += 1
    if system is None:
        raise ParseError("no scale given (add a 'scale ...' line or pass one)", source)
    body = [(i + 1, ln) for i, ln in enumerate(lines) if i >= start and _strip_comment(ln)]
    if not body:
        raise ParseError("dataset has no header row", source)
    rows = list(csv.reader([ln for _, ln in body]))
    header = [h.strip() for h in rows[0]]
    header_lineno = body[0][0]
    if len(header) < 2 or header[-1].lower() != ALPHA_COLUMN:
        raise ParseError(f"header must list criteria then '{ALPHA_COLUMN}'", source, header_lineno)
    try:
        universe = Universe.named(header[:-1])
    except DomainError as exc:
        raise ParseError(str(exc), source, header_lineno) from exc
    data = []
    for (lineno, _), cells in zip(body[1:], rows[1:]):
        if len(cells) != len(header):
            raise ParseError(f"expected {len(header)} cells, got {len(cells)}", source, lineno)
        try:
            values = [STAR if c.strip() in ("", "*") else system.parse_value(c) for c in cells]
        except DomainError as exc:
            raise ParseError(str(exc), source, lineno) from exc
        data.append(Datum(tuple(values[:-1]), values[-1]))
    return Dataset(system, universe, tuple(data))


def format_dataset(dataset: Dataset, include_scale: bool = True) -> str:
    system = dataset.system
    out = io.StringIO()
    if include_scale:
        out.write(format_scale_spec(system) + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(dataset.universe.names) + [ALPHA_COLUMN])
    for d in dataset.data:
        writer.writerow([system.format_value(v) for v in d.f] + [system.format_value(d.alpha)])
    return out.getvalue()


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


# human-readable tables


def render_interval_table(system: ResiduatedSystem, interval: CapacityInterval) -> str:
    u = interval.universe
    rows = [(u.format_subset(m), system.format_value(interval.lower[m]),
             system.format_value(interval.upper[m])) for m in u.display_order() if m]
    width = max(len("criteria"), *(len(r[0]) for r in rows))
    lines = [f"{'criteria':<{width}}  lower  upper"]
    lines += [f"{s:<{width}}  {lo:>5}  {hi:>5}" for s, lo, hi in rows]
    return "\n".join(lines) + "\n"


def render_operation_tables(system: ResiduatedSystem) -> str:
    """The four Dragonfly operation tables over ``L*`` in ``≤_ℓ`` order."""
    vals = system.dvalues()
    ops = [("⊗_D", system.d_tnorm), ("∨_D", system.d_join),
           ("∧_D", system.d_meet), ("→_D", system.d_residuum)]
    labels = [system.format_value(v) for v in vals]
    width = max(3, *(len(s) for s in labels))
    blocks = []
    for name, op in ops:
        lines = [f"{name:<{width}} | " + " ".join(f"{s:>{width}}" for s in labels)]
        lines.append("-" * len(lines[0]))
        for a, la in zip(vals, labels):
            lines.append(f"{la:<{width}} | "
                         + " ".join(f"{system.format_value(op(a, b)):>{width}}" for b in vals))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
