"""Verdict assignment: deterministic rule scorers where the engine can
decide, judge-model grading everywhere else."""

from __future__ import annotations

import re
from typing import Callable, Optional
import unicodedata

from ..meter import builtin_meters, identify
from ..prosody import ProsodyOptions, weight_string
from .schema import CORRECT, INCORRECT, UNSCORED, EvalRecord, TaskItem
from .templates import render_judge_prompt

RULE_SCORED_CODES = ("SC", "MD")

# A weight answer is a run of |/U marks, possibly written per akshara
# ("అ: U, మ్మ: |"): marks may be separated by whitespace, commas, and
# Telugu akshara labels ending in a colon.
_WEIGHT_SEP = r"(?:[\s,]|[ఀ-౿]+\s*:)*"
_WEIGHT_RUN_RE = re.compile(r"[|U](?:" + _WEIGHT_SEP + r"[|U])*")
_GRADE_RE = re.compile(r"grade\s*:\s*\$?([ci])", re.IGNORECASE)


def _norm_text(text: str) -> str:
    return " ".join(unicodedata.normalize("NFC", text).split())


def extract_weight_pattern(response: str) -> str:
    """The longest laghu/guru mark sequence in the response. Whitespace,
    commas, and per-akshara labels inside the run are dropped."""
    best = ""
    for m in _WEIGHT_RUN_RE.finditer(response):
        run = re.sub(r"[^|U]", "", m.group(0))
        if len(run) > len(best):
            best = run
    return best


def extract_meter_name(response: str, specs=None) -> str:
    """The canonical name of the first built-in meter whose name or alias
    appears in the response; earliest occurrence wins."""
    specs = specs if specs is not None else builtin_meters()
    text = _norm_text(response)
    hits = []
    for spec in specs:
        for name in (spec.name, *spec.aliases):
            pos = text.find(name)
            if pos >= 0:
                hits.append((pos, -len(name), spec.name))
    if not hits:
        return ""
    hits.sort()
    return hits[0][2]


def _score_sc(record: EvalRecord, item: TaskItem,
              options: Optional[ProsodyOptions]) -> EvalRecord:
    expected = item.gold or weight_string(item.input, options or ProsodyOptions()).pattern
    got = extract_weight_pattern(record.response)
    if not got:
        record.verdict = INCORRECT
        record.judge_rationale = "no weight marks found in response"
    else:
        record.verdict = CORRECT if got == expected else INCORRECT
        record.judge_rationale = f"expected {expected}, response gave {got}"
    return record


def _score_md(record: EvalRecord, item: TaskItem) -> EvalRecord:
    specs = builtin_meters()
    expected = ""
    if item.gold:
        expected = extract_meter_name(item.gold, specs) or _norm_text(item.gold)
    if not expected:
        lines = [l for l in item.input.splitlines() if l.strip()]
        matches = identify(lines, specs)
        if matches:
            expected = matches[0].spec.name
    got = extract_meter_name(record.response, specs)
    if not got:
        record.verdict = INCORRECT
        record.judge_rationale = "no known meter named in response"
    else:
        record.verdict = CORRECT if got == expected else INCORRECT
        record.judge_rationale = f"expected {expected}, response named {got}"
    return record


def score_rule(record: EvalRecord, item: TaskItem,
               options: Optional[ProsodyOptions] = None) -> EvalRecord:
    """Grade mechanically. SC and MD go through the prosody engine; other
    codes need an exact gold string, else the record stays Unscored."""
    record.scorer = "Rule"
    if record.error and not record.response:
        record.verdict = UNSCORED
        return record
    if item.code == "SC":
        return _score_sc(record, item, options)
    if item.code == "MD":
        return _score_md(record, item)
    if item.gold is None:
        record.verdict = UNSCORED
        record.judge_rationale = "no gold answer for exact comparison"
        return record
    record.scorer = "Exact"
    record.verdict = (CORRECT if _norm_text(record.response) == _norm_text(item.gold)
                      else INCORRECT)
    return record


def parse_grade(transcript: str) -> str:
    """The LAST 'GRADE: C' / 'GRADE: I' marker decides; none means Unscored."""
    letters = _GRADE_RE.findall(transcript)
    if not letters:
        return UNSCORED
    return CORRECT if letters[-1].lower() == "c" else INCORRECT


def score_judge(record: EvalRecord, item: TaskItem,
                transport: Callable[[str], str]) -> EvalRecord:
    """Grade with a judge model; the judge sees the task prompt, the model
    output, and the gold answer as criterion when one exists."""
    record.scorer = "Judge"
    if record.error and not record.response:
        record.verdict = UNSCORED
        return record
    prompt = render_judge_prompt(record.prompt, record.response, item.gold)
    transcript = transport(prompt)
    record.judge_rationale = transcript
    record.verdict = parse_grade(transcript)
    return record
