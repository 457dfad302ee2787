"""Accuracy aggregation and the judge-versus-human comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP
from typing import Mapping, Optional, Sequence

from ..errors import EmptyCell, KeyMismatch
from .schema import (CATEGORIES, CATEGORY_OF, CODES, CORRECT, INCORRECT,
                     UNSCORED, EvalRecord, TaskItem)


def accuracy(correct: int, total: int) -> Decimal:
    """Fraction correct, rounded half-up to two decimal places."""
    if total == 0:
        raise EmptyCell("accuracy over zero items")
    return (Decimal(correct) / Decimal(total)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP)


@dataclass
class Cell:
    questions: int = 0
    correct: int = 0
    incorrect: int = 0
    unscored: int = 0

    @property
    def accuracy(self) -> Decimal:
        return accuracy(self.correct, self.questions)


@dataclass
class AccuracyTable:
    """Per-task accuracy for every model, grouped by task category."""

    cells: dict = field(default_factory=dict)   # (code, model) -> Cell
    models: tuple = ()

    def cell(self, code: str, model: str) -> Cell:
        try:
            return self.cells[(code, model)]
        except KeyError:
            raise EmptyCell(f"no records for task {code}, model {model}") from None

    def to_text(self) -> str:
        """Aligned-column table; cells with unparseable records show the
        Unscored count after the accuracy, e.g. '0.60 u3'."""
        codes = [c for c in CODES if any(k[0] == c for k in self.cells)]
        any_unscored = any(c.unscored for c in self.cells.values())
        width = max([9 if any_unscored else 6] + [len(m) for m in self.models])
        header = f"{'Category':<12} {'Task':<6} {'#Q':>4}"
        for m in self.models:
            header += f" {m:>{width}}"
        lines = [header, "-" * len(header)]
        for category in CATEGORIES:
            for code in codes:
                if CATEGORY_OF[code] != category:
                    continue
                counts = {self.cells[(code, m)].questions
                          for m in self.models if (code, m) in self.cells}
                nq = counts.pop() if len(counts) == 1 else max(counts, default=0)
                row = f"{category:<12} {code:<6} {nq:>4}"
                for m in self.models:
                    cell = self.cells.get((code, m))
                    if cell is None:
                        text = "-"
                    elif cell.unscored:
                        text = f"{cell.accuracy} u{cell.unscored}"
                    else:
                        text = str(cell.accuracy)
                    row += f" {text:>{width}}"
                lines.append(row)
        return "\n".join(lines)


def aggregate(records: Sequence[EvalRecord], items: Sequence[TaskItem]) -> AccuracyTable:
    """Count verdicts per (task code, model). Unscored records count toward
    the question total but never toward correct."""
    by_id = {item.id: item for item in items}
    missing = sorted({r.item_id for r in records} - set(by_id))
    if missing:
        raise KeyMismatch(missing_left=[], missing_right=missing)
    table = AccuracyTable()
    models: list[str] = []
    for rec in records:
        item = by_id[rec.item_id]
        key = (item.code, rec.model)
        cell = table.cells.setdefault(key, Cell())
        cell.questions += 1
        if rec.verdict == CORRECT:
            cell.correct += 1
        elif rec.verdict == INCORRECT:
            cell.incorrect += 1
        else:
            cell.unscored += 1
        if rec.model not in models:
            models.append(rec.model)
    table.models = tuple(models)
    return table


def tag_behaviors(record: EvalRecord, item: TaskItem) -> tuple[str, ...]:
    """Reporting-only response flags: asked a question back, or echoed a
    line of the task verbatim."""
    tags = []
    text = record.response.strip()
    if text.endswith("?"):
        tags.append("asks-question")
    for line in item.input.splitlines():
        if line.strip() and line.strip() in text:
            tags.append("echoes-input")
            break
    return tuple(tags)


@dataclass
class ComparisonRow:
    code: str
    model: str
    questions: int
    judge_accuracy: Decimal
    annotator_accuracy: tuple          # one Decimal per annotator
    agreement: tuple                   # judge-vs-annotator agreement rates
    annotator_agreement: tuple = ()    # pairwise (i, j, rate) for annotators


def _verdict_accuracy(verdicts: Mapping[str, str], ids: Sequence[str]) -> Decimal:
    return accuracy(sum(1 for i in ids if verdicts.get(i) == CORRECT), len(ids))


def human_eval_compare(judge_records: Sequence[EvalRecord],
                       annotators: Sequence[Mapping[str, str]],
                       items: Sequence[TaskItem]) -> list[ComparisonRow]:
    """Judge accuracy next to each human annotator's accuracy on the same
    items, plus raw judge-human agreement. Every annotator must cover
    exactly the judged item ids."""
    by_id = {item.id: item for item in items}
    judged_ids = [r.item_id for r in judge_records]
    judge_verdicts = {r.item_id: r.verdict for r in judge_records}
    judged_set = set(judged_ids)
    for verdicts in annotators:
        left = sorted(judged_set - set(verdicts))
        right = sorted(set(verdicts) - judged_set)
        if left or right:
            raise KeyMismatch(missing_left=left, missing_right=right)
    rows: list[ComparisonRow] = []
    keys: list[tuple[str, str]] = []
    grouping: dict[tuple[str, str], list[str]] = {}
    for rec in judge_records:
        key = (by_id[rec.item_id].code, rec.model)
        if key not in grouping:
            grouping[key] = []
            keys.append(key)
        grouping[key].append(rec.item_id)
    for code, model in keys:
        ids = grouping[(code, model)]
        ann_acc = tuple(_verdict_accuracy(v, ids) for v in annotators)
        agree = tuple(
            accuracy(sum(1 for i in ids if v.get(i) == judge_verdicts[i]), len(ids))
            for v in annotators)
        pairwise = tuple(
            (i, j, accuracy(sum(1 for x in ids
                                if annotators[i].get(x) == annotators[j].get(x)),
                            len(ids)))
            for i in range(len(annotators)) for j in range(i + 1, len(annotators)))
        rows.append(ComparisonRow(
            code=code, model=model, questions=len(ids),
            judge_accuracy=_verdict_accuracy(judge_verdicts, ids),
            annotator_accuracy=ann_acc, agreement=agree,
            annotator_agreement=pairwise))
    return rows


def comparison_text(rows: Sequence[ComparisonRow]) -> str:
    n_ann = max((len(r.annotator_accuracy) for r in rows), default=0)
    header = f"{'Task':<6} {'Model':<20} {'#Q':>4} {'Judge':>6}"
    for i in range(n_ann):
        header += f" {'A' + str(i + 1):>6}"
    for i in range(n_ann):
        header += f" {'Agr' + str(i + 1):>6}"
    lines = [header, "-" * len(header)]
    for r in rows:
        row = f"{r.code:<6} {r.model:<20} {r.questions:>4} {str(r.judge_accuracy):>6}"
        for a in r.annotator_accuracy:
            row += f" {str(a):>6}"
        for a in r.agreement:
            row += f" {str(a):>6}"
        lines.append(row)
    return "\n".join(lines)
