"""Task dataset and run-journal schema for the evaluation harness."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional, Sequence

from ..errors import CorpusParseError, MissingSlot, TableLoadError

ANALYSIS = "Analysis"
RETRIEVAL = "Retrieval"
GENERATION = "Generation"
SUPPORT = "Support"

CATEGORY_OF = {
    "SC": ANALYSIS, "MA": ANALYSIS, "MD": ANALYSIS,
    "FV": RETRIEVAL, "MRV": RETRIEVAL, "LV": RETRIEVAL,
    "MM": RETRIEVAL, "PFS": RETRIEVAL,
    "PS": GENERATION, "RPFW": GENERATION, "PFP": GENERATION, "ST": GENERATION,
    "EDC": SUPPORT, "VS": SUPPORT,
}
CODES = tuple(CATEGORY_OF)
CATEGORIES = (ANALYSIS, RETRIEVAL, GENERATION, SUPPORT)

REQUIRED_SLOTS = {
    "ST": ("CURRENT_POEM_STYLE", "NEW_POEM_STYLE"),
    "VS": ("MASKED_WORDS", "INTENDED_POEM_STYLE"),
}

CORRECT = "Correct"
INCORRECT = "Incorrect"
UNSCORED = "Unscored"


@dataclass(frozen=True)
class TaskItem:
    id: str
    code: str
    input: str                       # the question text
    slots: dict = field(default_factory=dict)
    gold: Optional[str] = None
    meta: dict = field(default_factory=dict)

    @property
    def category(self) -> str:
        return CATEGORY_OF[self.code]

    def to_json(self) -> dict:
        return {"id": self.id, "category": self.category, "code": self.code,
                "input": self.input, "slots": self.slots, "gold": self.gold,
                "meta": self.meta}


def load_dataset(path) -> list[TaskItem]:
    items = []
    seen = set()
    for ln, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            item = TaskItem(
                id=str(obj["id"]), code=obj["code"], input=obj["input"],
                slots=obj.get("slots") or {}, gold=obj.get("gold"),
                meta=obj.get("meta") or {},
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise CorpusParseError(f"bad task item: {exc}", ln) from exc
        if item.code not in CATEGORY_OF:
            raise CorpusParseError(f"unknown task code {item.code!r}", ln)
        if "category" in obj and obj["category"] != item.category:
            raise CorpusParseError(
                f"code {item.code} belongs to {item.category}, not {obj['category']}", ln)
        for slot in REQUIRED_SLOTS.get(item.code, ()):
            if slot not in item.slots:
                raise CorpusParseError(f"{item.code} item missing slot {slot}", ln)
        if item.id in seen:
            raise CorpusParseError(f"duplicate item id {item.id}", ln)
        seen.add(item.id)
        items.append(item)
    return items


@dataclass
class EvalRecord:
    item_id: str
    model: str
    prompt: str
    response: str = ""
    verdict: str = ""                # Correct | Incorrect | Unscored | "" pre-verdict
    scorer: str = ""                 # Exact | Rule | Judge | Human
    judge_rationale: str = ""
    error: str = ""
    timestamp: str = ""

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "EvalRecord":
        return cls(**{k: obj.get(k, "") for k in (
            "item_id", "model", "prompt", "response", "verdict", "scorer",
            "judge_rationale", "error", "timestamp")})


def load_journal(path) -> list[EvalRecord]:
    records = []
    for ln, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not raw.strip():
            continue
        try:
            records.append(EvalRecord.from_json(json.loads(raw)))
        except (ValueError, TypeError) as exc:
            raise CorpusParseError(f"bad journal record: {exc}", ln) from exc
    return records


def save_journal(records: Sequence[EvalRecord], path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")


@dataclass
class EndpointConfig:
    base_url: str = ""
    model: str = ""
    auth_env: str = ""               # NAME of the env var, token never stored
    path: str = "/chat/completions"
    request_template: Optional[dict] = None
    response_path: str = "choices.0.message.content"
    headers: dict = field(default_factory=dict)
    timeout: float = 120.0

    def auth_token(self) -> Optional[str]:
        if not self.auth_env:
            return None
        token = os.environ.get(self.auth_env)
        if token is None:
            raise TableLoadError(
                f"auth environment variable {self.auth_env} is not set")
        return token


@dataclass
class RunConfig:
    model: EndpointConfig
    judge: Optional[EndpointConfig] = None
    temperature: float = 0.0
    allow_nonstandard_temperature: bool = False
    max_parallel: int = 4
    retries: int = 3
    backoff_seconds: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.temperature != 0.0 and not self.allow_nonstandard_temperature:
            raise TableLoadError(
                "temperature is fixed at 0; set allow_nonstandard_temperature "
                "to deviate from the standard protocol")

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        try:
            cfg = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise TableLoadError(f"cannot load run config: {exc}") from exc
        def endpoint(obj):
            return EndpointConfig(**obj) if obj else None
        return cls(
            model=endpoint(cfg.get("model")) or EndpointConfig(),
            judge=endpoint(cfg.get("judge")),
            temperature=cfg.get("temperature", 0.0),
            allow_nonstandard_temperature=cfg.get("allow_nonstandard_temperature", False),
            max_parallel=cfg.get("max_parallel", 4),
            retries=cfg.get("retries", 3),
            backoff_seconds=cfg.get("backoff_seconds", 1.0),
            seed=cfg.get("seed", 0),
        )
