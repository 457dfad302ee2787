import json
from pathlib import Path

import pytest

from chandassu.cli import main

CORPUS_PATH = Path(__file__).parent.parent / "src" / "chandassu" / "data" / "golden_corpus.jsonl"


def load_corpus():
    return [json.loads(l) for l in CORPUS_PATH.read_text(encoding="utf-8").splitlines() if l.strip()]


@pytest.fixture()
def verse_file(tmp_path):
    record = load_corpus()[0]
    f = tmp_path / "verse.txt"
    f.write_text("\n".join(record["lines"]), encoding="utf-8")
    return f, record


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_scan_word(capsys):
    code, out, _ = run_cli(capsys, "scan", "అమ్మ")
    assert code == 0
    assert out.strip() == "అ:U మ్మ:|"


def test_scan_json_schema(capsys):
    code, out, _ = run_cli(capsys, "scan", "అమ్మ", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj[0]["pattern"] == "U|"
    assert obj[0]["aksharas"][0] == {"akshara": "అ", "weight": "U"}


def test_scan_with_meter(capsys, verse_file):
    f, record = verse_file
    code, out, _ = run_cli(capsys, "scan", str(f), "--meter", record["meter"], "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["metrical"] is True and obj["score"] == 1.0


def test_scan_unknown_meter_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "scan", "అమ్మ", "--meter", "sonnet")
    assert code == 2
    assert "sonnet" in err


def test_identify(capsys, verse_file):
    f, record = verse_file
    code, out, _ = run_cli(capsys, "identify", str(f))
    assert code == 0
    assert out.splitlines()[0].startswith(record["meter"])


def test_identify_nonverse_fails(capsys):
    code, _, _ = run_cli(capsys, "identify", "అమ్మ నాన్న")
    assert code == 1


def test_check_flags_broken_verse(capsys, verse_file):
    f, record = verse_file
    broken = f.parent / "broken.txt"
    lines = record["lines"]
    broken.write_text("\n".join([lines[0] + " కాకా"] + lines[1:]), encoding="utf-8")
    code, out, _ = run_cli(capsys, "check", str(broken), "--meter", record["meter"])
    assert code == 1
    code, out, _ = run_cli(capsys, "check", str(f), "--meter", record["meter"])
    assert code == 0


def test_check_locale(capsys, verse_file):
    f, record = verse_file
    _, te_out, _ = run_cli(capsys, "check", str(f), "--meter", record["meter"])
    _, en_out, _ = run_cli(capsys, "--locale", "en", "check", str(f),
                           "--meter", record["meter"])
    assert te_out != en_out


def test_suggest(capsys, tmp_path):
    record = next(r for r in load_corpus() if r["meter"] == "ఉత్పలమాల")
    lines = list(record["lines"])
    words = lines[0].split()
    removed = words[1]
    words[1] = "____"
    lines[0] = " ".join(words)
    poem = tmp_path / "masked.txt"
    poem.write_text("\n".join(lines), encoding="utf-8")
    lex = tmp_path / "lex.txt"
    lex.write_text(f"{removed}\nఅఆఅఆఅఆ\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "suggest", str(poem),
                           "--meter", record["meter"], "--lexicon", str(lex))
    assert code == 0
    assert removed in out


def test_index_and_search(capsys, tmp_path):
    out_path = tmp_path / "c.jsonl"
    code, out, _ = run_cli(capsys, "index", str(CORPUS_PATH), "--out", str(out_path))
    assert code == 0 and out_path.exists()
    record = load_corpus()[0]
    code, out, _ = run_cli(capsys, "search", "--corpus", str(out_path),
                           "--line", record["lines"][0], "--position", "First")
    assert code == 0
    assert out.splitlines()[0].startswith(record["id"])
    code, out, _ = run_cli(capsys, "search", "--corpus", str(out_path),
                           "--meter", "kanda")
    assert code == 0 and "kanda" in out or "కందము" in out


def test_eval_pipeline(capsys, tmp_path):
    dataset = tmp_path / "tasks.jsonl"
    rows = [
        {"id": "q1", "code": "SC", "input": "అమ్మ", "gold": "U|"},
        {"id": "q2", "code": "MA", "input": "పద్యం", "gold": "భావం"},
    ]
    dataset.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows),
                       encoding="utf-8")
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps(
        {"model": {"base_url": "mock:echo-gold", "model": "mock"}}), encoding="utf-8")
    journal = tmp_path / "run.jsonl"

    code, out, _ = run_cli(capsys, "eval-run", "--dataset", str(dataset),
                           "--config", str(config), "--journal", str(journal))
    assert code == 0 and "2 items" in out
    code, out, _ = run_cli(capsys, "eval-score", "--dataset", str(dataset),
                           "--journal", str(journal))
    assert code == 0
    code, out, _ = run_cli(capsys, "eval-report", "--dataset", str(dataset),
                           "--journal", str(journal))
    assert code == 0
    assert "SC" in out and "1.00" in out


def test_eval_run_missing_auth_env(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("CLI_TEST_TOKEN", raising=False)
    dataset = tmp_path / "tasks.jsonl"
    dataset.write_text(json.dumps({"id": "q", "code": "SC", "input": "అ"}) + "\n",
                       encoding="utf-8")
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"model": {
        "base_url": "https://example.invalid", "model": "m",
        "auth_env": "CLI_TEST_TOKEN"}}), encoding="utf-8")
    code, _, err = run_cli(capsys, "eval-run", "--dataset", str(dataset),
                           "--config", str(config),
                           "--journal", str(tmp_path / "j.jsonl"))
    assert code == 2
    assert "CLI_TEST_TOKEN" in err


def test_eval_report_with_human_files(capsys, tmp_path):
    dataset = tmp_path / "tasks.jsonl"
    dataset.write_text(json.dumps({"id": "q1", "code": "PS", "input": "x"}) + "\n",
                       encoding="utf-8")
    journal = tmp_path / "run.jsonl"
    journal.write_text(json.dumps({
        "item_id": "q1", "model": "m", "prompt": "p", "response": "r",
        "verdict": "Correct", "scorer": "Judge"}) + "\n", encoding="utf-8")
    human = tmp_path / "a1.jsonl"
    human.write_text(json.dumps({"item_id": "q1", "verdict": "Incorrect"}) + "\n",
                     encoding="utf-8")
    code, out, _ = run_cli(capsys, "eval-report", "--dataset", str(dataset),
                           "--journal", str(journal), "--human", str(human))
    assert code == 0
    assert "Judge" in out and "A1" in out
