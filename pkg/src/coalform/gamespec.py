"""JSON game-spec documents.

Format (``format_version`` 1)::

    {
      "format_version": 1,
      "name": "dinner",
      "notes": "...",
      "players": ["A", "B", "C1", "C2"],
      "actions": [["B", "O"], ["B", "O"]],          # optional
      "payoffs": [
        {"partition": "A,B|C1|C2", "payoff": [10, 10, 3, 3], "note": "..."},
        {"partition": "1,2", "actions": ["B", "*"], "payoff": ["21/10", 1]},
        {"partition": "*", "payoff": [1, 1, 1, 1]}
      ],
      "default_payoff": [0, 0, 0, 0]                # optional
    }

Numbers are JSON integers or ``"p/q"`` strings; floats are rejected so that
every payoff stays exact.  ``"*"`` as a partition means "every partition not
listed explicitly"; ``"*"`` inside an action pattern matches any action.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .game import DUMMY_ACTION, GameSpec, GameSpecError, PayoffEntry
from .partitions import PartitionError, PlayerSet, canonical_string, parse_partition

FORMAT_VERSION = 1
WILDCARD = "*"

_TOP_KEYS = {"format_version", "name", "notes", "players", "actions", "payoffs", "default_payoff"}
_ENTRY_KEYS = {"partition", "actions", "payoff", "note"}


class SpecSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, column: int):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {msg}")


@dataclass(frozen=True)
class GameSpecDocument:
    spec: GameSpec
    name: str = ""
    notes: str = ""
    format_version: int = FORMAT_VERSION


def format_number(x: Fraction) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _read_number(x, where: str, errors: list[str]) -> Fraction | None:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        errors.append(f"{where}: expected an integer or 'p/q' string, got {x!r}")
        return None
    try:
        return Fraction(x.strip() if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError):
        errors.append(f"{where}: not a rational number: {x!r}")
        return None


def _read_vector(v, n: int, where: str, errors: list[str]):
    if not isinstance(v, list):
        errors.append(f"{where}: expected a list")
        return None
    if len(v) != n:
        errors.append(f"{where}: payoff vector has length {len(v)}, expected {n}")
        return None
    vals = [_read_number(x, f"{where}[{i}]", errors) for i, x in enumerate(v)]
    return None if any(x is None for x in vals) else tuple(vals)


def document_from_data(data) -> GameSpecDocument:
    """Validate decoded JSON into a document; every problem is collected before raising."""
    errors: list[str] = []
    if not isinstance(data, dict):
        raise GameSpecError(["$: top level must be an object"])
    for key in sorted(set(data) - _TOP_KEYS):
        errors.append(f"$.{key}: unknown key")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        errors.append(f"$.format_version: expected {FORMAT_VERSION}, got {version!r}")
    name = data.get("name", "")
    notes = data.get("notes", "")
    if not isinstance(name, str):
        errors.append("$.name: expected a string")
    if not isinstance(notes, str):
        errors.append("$.notes: expected a string")

    raw_players = data.get("players")
    try:
        if not isinstance(raw_players, list):
            raise PartitionError("expected a list of labels")
        players = PlayerSet(tuple(raw_players))
    except PartitionError as exc:
        raise GameSpecError(errors + [f"$.players: {exc}"]) from None
    n = players.n

    actions = None
    if "actions" in data:
        raw = data["actions"]
        if not isinstance(raw, list) or len(raw) != n or not all(
            isinstance(a, list) and a and all(isinstance(x, str) and x for x in a) for a in raw
        ):
            errors.append(f"$.actions: expected {n} nonempty lists of action labels")
        else:
            actions = tuple(tuple(a) for a in raw)

    entries = []
    raw_entries = data.get("payoffs")
    if not isinstance(raw_entries, list):
        errors.append("$.payoffs: expected a list")
        raw_entries = []
    for j, e in enumerate(raw_entries):
        where = f"$.payoffs[{j}]"
        if not isinstance(e, dict):
            errors.append(f"{where}: expected an object")
            continue
        for key in sorted(set(e) - _ENTRY_KEYS):
            errors.append(f"{where}.{key}: unknown key")
        part_text = e.get("partition")
        partition = None
        if not isinstance(part_text, str):
            errors.append(f"{where}.partition: expected a string")
            continue
        if part_text.strip() != WILDCARD:
            try:
                partition = parse_partition(part_text, players)
            except PartitionError as exc:
                errors.append(f"{where}.partition: {exc}")
                continue
        pattern = None
        if "actions" in e:
            raw = e["actions"]
            if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
                errors.append(f"{where}.actions: expected a list of action labels")
                continue
            pattern = tuple(None if x == WILDCARD else x for x in raw)
        payoff = _read_vector(e.get("payoff"), n, f"{where}.payoff", errors)
        note = e.get("note", "")
        if not isinstance(note, str):
            errors.append(f"{where}.note: expected a string")
        if payoff is not None:
            entries.append(PayoffEntry(partition, payoff, pattern, note if isinstance(note, str) else ""))

    default = None
    if "default_payoff" in data:
        default = _read_vector(data["default_payoff"], n, "$.default_payoff", errors)
    if errors:
        raise GameSpecError(errors)
    spec = GameSpec(players, tuple(entries), actions, default)
    errs = spec.validation_errors()
    if errs:
        raise GameSpecError(errs)
    return GameSpecDocument(spec, name, notes, version)


def parse_gamespec(text: str) -> GameSpecDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return document_from_data(data)


def document_to_data(doc: GameSpecDocument) -> dict:
    spec = doc.spec
    out: dict = {"format_version": doc.format_version}
    if doc.name:
        out["name"] = doc.name
    if doc.notes:
        out["notes"] = doc.notes
    out["players"] = list(spec.players.labels)
    if spec.has_actions:
        out["actions"] = [list(a) for a in spec.actions]
    rows = []
    for e in spec.entries:
        row: dict = {
            "partition": WILDCARD if e.partition is None else canonical_string(e.partition, spec.players)
        }
        if e.actions is not None:
            row["actions"] = [WILDCARD if a is None else a for a in e.actions]
        row["payoff"] = [format_number(x) for x in e.payoff]
        if e.note:
            row["note"] = e.note
        rows.append(row)
    out["payoffs"] = rows
    if any(x != 0 for x in spec.default_payoff):
        out["default_payoff"] = [format_number(x) for x in spec.default_payoff]
    return out


def serialize_gamespec(doc: GameSpecDocument) -> str:
    return json.dumps(document_to_data(doc), indent=2, ensure_ascii=False) + "\n"


def load_gamespec(path) -> GameSpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_gamespec(fh.read())


__all__ = [
    "DUMMY_ACTION",
    "FORMAT_VERSION",
    "GameSpecDocument",
    "SpecSyntaxError",
    "document_from_data",
    "document_to_data",
    "format_number",
    "load_gamespec",
    "parse_gamespec",
    "serialize_gamespec",
]
