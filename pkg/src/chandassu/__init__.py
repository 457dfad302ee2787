"""Telugu metrical prosody engine and evaluation harness."""

__version__ = "0.1.0"

from .prosody import ProsodyOptions, WeightString, weight_string  # noqa: F401
from .script import Akshara, normalize, segment_aksharas  # noqa: F401
from .meter import (  # noqa: F401
    MeterMatch, MeterSpec, ScanReport, Violation,
    builtin_meters, check_poem, identify, lookup,
)
from .corpus import Corpus, PoemRecord, golden_corpus, ingest  # noqa: F401
from .support import (  # noqa: F401
    SlotConstraint, Suggestion, detect_errors, explain,
    slot_constraints, suggest_words,
)
