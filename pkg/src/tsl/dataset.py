"""The shipped classification dataset: 207 table entries.

File format (tables207.jsonl): one JSON object per line, UTF-8, with keys
form (6 integers, [a,b,c,d,e,f] order), table (1|2), block (string tag),
class_number (1|2|3), mark (string|null) and an optional note.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .forms import TernaryForm

BLOCK_TAGS_TABLE1 = ("3∤dL", "3|dL,5∤dL", "15|dL,7∤dL")
BLOCK_TAGS_TABLE2 = ("3∤dL", "3|dL,5∤dL", "15|dL,7∤dL", "105|dL,11∤dL")

_ASCII_BLOCK_ALIASES = {
    "3!|dL": "3∤dL",
    "3|dL,5!|dL": "3|dL,5∤dL",
    "15|dL,7!|dL": "15|dL,7∤dL",
    "105|dL,11!|dL": "105|dL,11∤dL",
}


@dataclass(frozen=True)
class TableEntry:
    form: TernaryForm
    table: int
    block: str
    class_number: int
    mark: str | None
    note: str | None = None


def normalize_block_tag(tag: str) -> str:
    return _ASCII_BLOCK_ALIASES.get(tag, tag)


def block_tag_for(D: int) -> str | None:
    """Block tag from the discriminant (odd n divides dL iff n divides D=4dL)."""
    if D % 3:
        return "3∤dL"
    if D % 5:
        return "3|dL,5∤dL"
    if D % 7:
        return "15|dL,7∤dL"
    if D % 11:
        return "105|dL,11∤dL"
    return None


def load_tables(path: str | Path | None = None) -> list[TableEntry]:
    if path is None:
        text = resources.files("tsl").joinpath("data/tables207.jsonl").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    entries = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        entries.append(TableEntry(
            form=TernaryForm(*rec["form"]),
            table=int(rec["table"]),
            block=rec["block"],
            class_number=int(rec["class_number"]),
            mark=rec.get("mark"),
            note=rec.get("note"),
        ))
    return entries
