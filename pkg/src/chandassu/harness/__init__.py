from .schema import (  # noqa: F401
    CATEGORY_OF, CODES, EvalRecord, RunConfig, TaskItem,
    load_dataset, load_journal, save_journal,
)
from .templates import render_judge_prompt, render_prompt  # noqa: F401
from .runner import run  # noqa: F401
from .scoring import score_judge, score_rule  # noqa: F401
from .report import AccuracyTable, aggregate, human_eval_compare  # noqa: F401
