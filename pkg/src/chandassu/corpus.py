"""Poem storage and the lexical retrieval baseline.

Lookup by line (first/any/last position), by summary, and by meter label.
Similarity is character-trigram Jaccard: whitespace tokens are unreliable
for an agglutinative language, character n-grams are not.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import CorpusParseError, DuplicateId, UnknownMeter
from .meter import MeterSpec, builtin_meters, identify

NGRAM = 3

FIRST = "First"
ANY = "Any"
LAST = "Last"


@dataclass(frozen=True)
class PoemRecord:
    id: str
    title: str
    lines: tuple[str, ...]
    meter_label: str = ""
    summary: str = ""
    source: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "title": self.title, "lines": list(self.lines),
                "meter": self.meter_label, "summary": self.summary,
                "source": self.source}


def _norm(text: str) -> str:
    nfc = unicodedata.normalize("NFC", text)
    return " ".join(nfc.split())


def _ngrams(text: str, n: int = NGRAM) -> frozenset[str]:
    squeezed = _norm(text).replace(" ", "")
    if len(squeezed) < n:
        return frozenset([squeezed]) if squeezed else frozenset()
    return frozenset(squeezed[i:i + n] for i in range(len(squeezed) - n + 1))


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


@dataclass
class Match:
    poem: PoemRecord
    score: float
    line_index: int = -1


class Corpus:
    """In-memory corpus with deterministic, rebuildable indexes."""

    def __init__(self, poems: Sequence[PoemRecord] = ()):
        self.poems: dict[str, PoemRecord] = {}
        self._line_index: dict[str, list[tuple[str, int]]] = {}
        self._line_grams: list[tuple[str, int, frozenset]] = []
        self._summary_grams: list[tuple[str, frozenset]] = []
        for p in poems:
            self.add(p)

    def add(self, poem: PoemRecord) -> None:
        if poem.id in self.poems:
            raise DuplicateId(poem.id)
        self.poems[poem.id] = poem
        for i, line in enumerate(poem.lines):
            key = _norm(line)
            self._line_index.setdefault(key, []).append((poem.id, i))
            self._line_grams.append((poem.id, i, _ngrams(line)))
        if poem.summary:
            self._summary_grams.append((poem.id, _ngrams(poem.summary)))

    def __len__(self) -> int:
        return len(self.poems)

    def _position_ok(self, poem: PoemRecord, line_index: int, position: str) -> bool:
        if position == FIRST:
            return line_index == 0
        if position == LAST:
            return line_index == len(poem.lines) - 1
        return True

    def find_by_line(self, query: str, position: str = ANY, k: int = 5) -> list[Match]:
        """Exact normalized match scores 1.0 and ranks first; otherwise
        trigram Jaccard, descending, ties broken by poem id then line."""
        results: list[Match] = []
        seen: set[str] = set()
        for pid, i in self._line_index.get(_norm(query), []):
            poem = self.poems[pid]
            if self._position_ok(poem, i, position) and pid not in seen:
                results.append(Match(poem, 1.0, i))
                seen.add(pid)
        q = _ngrams(query)
        fuzzy: dict[str, Match] = {}
        for pid, i, grams in self._line_grams:
            if pid in seen:
                continue
            poem = self.poems[pid]
            if not self._position_ok(poem, i, position):
                continue
            score = _jaccard(q, grams)
            if score <= 0:
                continue
            cur = fuzzy.get(pid)
            if cur is None or score > cur.score:
                fuzzy[pid] = Match(poem, score, i)
        results.extend(sorted(fuzzy.values(), key=lambda m: (-m.score, m.poem.id)))
        return results[:k]

    def find_by_summary(self, query: str, k: int = 5) -> list[Match]:
        if not query.strip():
            return []
        q = _ngrams(query)
        scored = [Match(self.poems[pid], _jaccard(q, grams))
                  for pid, grams in self._summary_grams]
        scored = [m for m in scored if m.score > 0]
        scored.sort(key=lambda m: (-m.score, m.poem.id))
        return scored[:k]

    def find_by_meter(self, meter_name: str, k: int = 0,
                      meters: Sequence[MeterSpec] | None = None) -> list[PoemRecord]:
        """All poems labeled with the meter, in id order."""
        specs = meters if meters is not None else builtin_meters()
        spec = None
        for s in specs:
            if s.matches_name(meter_name):
                spec = s
                break
        if spec is None:
            raise UnknownMeter(meter_name)
        names = {spec.name, *spec.aliases}
        hits = [p for p in sorted(self.poems.values(), key=lambda p: p.id)
                if p.meter_label in names]
        return hits[:k] if k else hits

    def save(self, path) -> None:
        with Path(path).open("w", encoding="utf-8") as fh:
            for p in sorted(self.poems.values(), key=lambda p: p.id):
                fh.write(json.dumps(p.to_json(), ensure_ascii=False) + "\n")


def _record_from_obj(obj: dict, line_number: int, auto_label: bool) -> PoemRecord:
    try:
        lines = tuple(obj["lines"])
        rec = PoemRecord(
            id=str(obj["id"]),
            title=obj.get("title", ""),
            lines=lines,
            meter_label=obj.get("meter") or "",
            summary=obj.get("summary") or "",
            source=obj.get("source", ""),
        )
    except (KeyError, TypeError) as exc:
        raise CorpusParseError(f"bad record: {exc}", line_number) from exc
    if not rec.lines or not any(l.strip() for l in rec.lines):
        raise CorpusParseError("record has no lines", line_number)
    if not rec.meter_label and auto_label:
        matches = identify(list(rec.lines))
        if matches and matches[0].score == 1.0:
            rec = PoemRecord(rec.id, rec.title, rec.lines,
                             matches[0].spec.name, rec.summary, rec.source)
    return rec


def ingest(path, format: str = "JSONL", auto_label: bool = True) -> Corpus:
    """Load a corpus file. JSONL: one poem object per line; PlainTextBlocks:
    blank-line-separated poems headed by '# id | title | meter?'."""
    path = Path(path)
    corpus = Corpus()
    if format == "JSONL":
        for ln, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except ValueError as exc:
                raise CorpusParseError(str(exc), ln) from exc
            corpus.add(_record_from_obj(obj, ln, auto_label))
        return corpus
    if format == "PlainTextBlocks":
        block: list[tuple[int, str]] = []
        for ln, raw in enumerate(path.read_text(encoding="utf-8").splitlines() + [""], 1):
            if raw.strip():
                block.append((ln, raw))
                continue
            if block:
                corpus.add(_record_from_block(block, auto_label))
                block = []
        return corpus
    raise CorpusParseError(f"unknown corpus format {format!r}")


def _record_from_block(block: list[tuple[int, str]], auto_label: bool) -> PoemRecord:
    ln, header = block[0]
    if not header.startswith("#"):
        raise CorpusParseError("block must start with '# id | title | meter?'", ln)
    parts = [p.strip() for p in header.lstrip("#").split("|")]
    if not parts or not parts[0]:
        raise CorpusParseError("block header missing id", ln)
    obj = {
        "id": parts[0],
        "title": parts[1] if len(parts) > 1 else "",
        "meter": parts[2] if len(parts) > 2 else "",
        "lines": [text for _, text in block[1:]],
    }
    return _record_from_obj(obj, ln, auto_label)


def golden_corpus() -> Corpus:
    """The shipped verse corpus (see data/golden_corpus.jsonl)."""
    return ingest(Path(__file__).parent / "data" / "golden_corpus.jsonl")
