"""Command-line surface for scansion, meter checks, corpus lookup, and the
evaluation harness.

Exit status: 0 success; 1 domain failure (verse not metrical, no match);
2 usage or configuration error; 3 transport error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import ANY, Corpus, golden_corpus, ingest
from .errors import (ChandassuError, CorpusParseError, TableLoadError,
                     TransportError, UnknownMeter)
from .meter import builtin_meters, check_poem, identify, lookup
from .prosody import ProsodyOptions, weight_string
from .support import (DEFAULT_MASK, explain, load_lexicon, slot_constraints,
                      suggest_words)

OK = 0
DOMAIN_FAILURE = 1
USAGE_ERROR = 2
TRANSPORT_FAILURE = 3

_LOCALES = {"te": "Telugu", "en": "English"}


def _read_text(arg: str) -> str:
    """Treat the argument as a path when one exists, else as literal text;
    '-' reads stdin."""
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    return arg


def _lines(text: str) -> list[str]:
    return [line for line in text.splitlines() if line.strip()]


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2))


def cmd_scan(args) -> int:
    text = _read_text(args.text)
    lines = _lines(text) or [""]
    if args.meter:
        spec = lookup(args.meter)
        report = check_poem(lines[: spec.line_count], spec)
        if args.json:
            _emit(report.to_json())
        else:
            print(report.to_text())
            print(explain(report, _LOCALES[args.locale]))
        return OK if report.metrical else DOMAIN_FAILURE
    opts = ProsodyOptions()
    out = []
    for line in lines:
        ws = weight_string(line, opts)
        if args.json:
            out.append({"text": line, "pattern": ws.pattern,
                        "aksharas": [{"akshara": a.surface, "weight": m}
                                     for a, m in zip(ws.aksharas, ws.marks)]})
        else:
            print(" ".join(f"{a.surface}:{m}"
                           for a, m in zip(ws.aksharas, ws.marks)))
    if args.json:
        _emit(out)
    return OK


def cmd_identify(args) -> int:
    lines = _lines(_read_text(args.text))
    matches = identify(lines)
    if args.json:
        _emit([{"meter": m.spec.name, "score": m.score, "exact": m.exact}
               for m in matches])
    else:
        for m in matches:
            print(f"{m.spec.name}\t{m.score:.2f}")
    return OK if matches and matches[0].exact else DOMAIN_FAILURE


def cmd_check(args) -> int:
    spec = lookup(args.meter)
    report = check_poem(_lines(_read_text(args.text)), spec)
    if args.json:
        _emit(report.to_json())
    else:
        print(explain(report, _LOCALES[args.locale]))
    return OK if report.metrical else DOMAIN_FAILURE


def cmd_suggest(args) -> int:
    spec = lookup(args.meter)
    lines = _lines(_read_text(args.text))
    constraint = slot_constraints(lines, spec, args.mask)
    lexicon = load_lexicon(args.lexicon)
    suggestions = suggest_words(constraint, lexicon, limit=args.limit,
                                allow_partial=args.partial)
    if args.json:
        _emit({"line": constraint.line_index,
               "akshara_start": constraint.akshara_start,
               "required": list(constraint.required),
               "suggestions": [{"word": s.word, "match": s.weight_match,
                                "notes": s.notes} for s in suggestions]})
    else:
        for s in suggestions:
            print(f"{s.word}\t{s.weight_match}" + (f"\t{s.notes}" if s.notes else ""))
    return OK if suggestions else DOMAIN_FAILURE


def cmd_index(args) -> int:
    corpus = ingest(args.source, format=args.format, auto_label=not args.no_label)
    corpus.save(args.out)
    print(f"{len(corpus)} poems indexed to {args.out}")
    return OK


def _open_corpus(path: str | None) -> Corpus:
    return ingest(path) if path else golden_corpus()


def cmd_search(args) -> int:
    corpus = _open_corpus(args.corpus)
    if args.meter:
        poems = corpus.find_by_meter(args.meter)
        if args.json:
            _emit([p.to_json() for p in poems])
        else:
            for p in poems:
                print(f"{p.id}\t{p.meter_label}\t{p.title}")
        return OK if poems else DOMAIN_FAILURE
    if args.summary:
        matches = corpus.find_by_summary(args.summary, k=args.k)
    else:
        matches = corpus.find_by_line(args.line or "", position=args.position, k=args.k)
    if args.json:
        _emit([{"id": m.poem.id, "score": m.score, "line": m.line_index,
                "title": m.poem.title} for m in matches])
    else:
        for m in matches:
            print(f"{m.poem.id}\t{m.score:.2f}\t{m.poem.title}")
    return OK if matches else DOMAIN_FAILURE


def cmd_eval_run(args) -> int:
    from .harness import load_dataset, run
    from .harness.schema import RunConfig
    items = load_dataset(args.dataset)
    config = RunConfig.from_file(args.config)
    config.model.auth_token()          # fail fast, naming the variable
    records = run(items, config, journal_path=args.journal)
    failed = sum(1 for r in records if r.error)
    print(f"{len(records)} items run, {failed} transport failures "
          f"-> {args.journal}")
    return OK if failed == 0 else TRANSPORT_FAILURE


def cmd_eval_score(args) -> int:
    from .harness import load_dataset, load_journal, save_journal, score_rule, score_judge
    from .harness.runner import make_transport
    from .harness.schema import RunConfig
    from .harness.scoring import RULE_SCORED_CODES
    items = {i.id: i for i in load_dataset(args.dataset)}
    records = load_journal(args.journal)
    judge_transport = None
    if args.judge_config:
        config = RunConfig.from_file(args.judge_config)
        endpoint = config.judge or config.model
        endpoint.auth_token()
        judge_transport = make_transport(endpoint, config.temperature)
    for rec in records:
        item = items.get(rec.item_id)
        if item is None:
            raise CorpusParseError(f"journal item {rec.item_id} not in dataset")
        if item.code in RULE_SCORED_CODES or (judge_transport is None and item.gold):
            score_rule(rec, item)
        elif judge_transport is not None:
            score_judge(rec, item, judge_transport)
        else:
            rec.verdict = "Unscored"
            rec.scorer = "Rule"
    out = args.out or args.journal
    save_journal(records, out)
    print(f"{len(records)} records scored -> {out}")
    return OK


def cmd_eval_report(args) -> int:
    from .harness import aggregate, load_dataset, load_journal
    from .harness.report import comparison_text, human_eval_compare
    items = load_dataset(args.dataset)
    records = load_journal(args.journal)
    table = aggregate(records, items)
    print(table.to_text())
    if args.human:
        annotators = []
        for path in args.human:
            verdicts = {}
            for raw in Path(path).read_text(encoding="utf-8").splitlines():
                if raw.strip():
                    obj = json.loads(raw)
                    verdicts[str(obj["item_id"])] = obj["verdict"]
            annotators.append(verdicts)
        rows = human_eval_compare(records, annotators, items)
        print()
        print(comparison_text(rows))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chandassu",
        description="Telugu metrical analysis, retrieval, and evaluation tools")
    parser.add_argument("--locale", choices=("te", "en"), default="te",
                        help="language for diagnostics (default Telugu)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="per-akshara laghu/guru weights")
    p.add_argument("text", help="text, file path, or - for stdin")
    p.add_argument("--meter", help="also check against this meter")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("identify", help="rank meters by constraint satisfaction")
    p.add_argument("text")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("check", help="full violation report against one meter")
    p.add_argument("text")
    p.add_argument("--meter", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suggest", help="words that fit a masked slot")
    p.add_argument("text", help="poem with one mask token")
    p.add_argument("--meter", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--mask", default=DEFAULT_MASK)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--partial", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("index", help="build a corpus file")
    p.add_argument("source")
    p.add_argument("--format", choices=("JSONL", "PlainTextBlocks"), default="JSONL")
    p.add_argument("--out", required=True)
    p.add_argument("--no-label", action="store_true",
                   help="skip meter auto-labeling")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="look up poems by line, summary, or meter")
    p.add_argument("--corpus", help="corpus JSONL (default: shipped verses)")
    p.add_argument("--line")
    p.add_argument("--summary")
    p.add_argument("--meter")
    p.add_argument("--position", choices=("First", "Any", "Last"), default=ANY)
    p.add_argument("-k", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval-run", help="query a model over a task dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--journal", required=True)
    p.set_defaults(func=cmd_eval_run)

    p = sub.add_parser("eval-score", help="assign verdicts to a run journal")
    p.add_argument("--dataset", required=True)
    p.add_argument("--journal", required=True)
    p.add_argument("--judge-config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval_score)

    p = sub.add_parser("eval-report", help="accuracy tables from a scored journal")
    p.add_argument("--dataset", required=True)
    p.add_argument("--journal", required=True)
    p.add_argument("--human", nargs="+",
                   help="annotator verdict JSONL files for comparison")
    p.set_defaults(func=cmd_eval_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TransportError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return TRANSPORT_FAILURE
    except (UnknownMeter, TableLoadError, CorpusParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ChandassuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_FAILURE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
