import sys

import pytest

from nl2formal.datasets import DatasetRecord
from nl2formal.errors import LineCountMismatchError, MissingPredictionError, ProcessError
from nl2formal.evaluation import (
    EQUIV_TIMEOUT,
    PARSE_FAIL,
    SEM_OK,
    SYN_OK,
    WRONG,
    EvalOptions,
    EvalReport,
    canonical,
    evaluate,
    format_prompt,
    prompt_payload,
    read_predictions,
    run_external_model,
    score_one,
    semantic_accuracy,
    syntactic_accuracy,
    write_predictions,
)

VOWELS_A = "((..*[AEIOUaeiou].*){7,})(.*)"
VOWELS_B = "((..*[AEIOUaeiou].*)(.*)){7,}"


def regex_records():
    return [DatasetRecord.make("regex", "lines with 'dog'", ".*dog.*"),
            DatasetRecord.make("regex", "seven or more words with a vowel", VOWELS_B),
            DatasetRecord.make("regex", "lines with a number or 'truck'", "([0-9])|(truck)")]


def test_prompts():
    assert format_prompt("ltl", "a holds") == "translate natural language to LTL: a holds"
    assert format_prompt("regex", "x") == "translate natural language to a regular expression: x"
    assert format_prompt("fol", "") == "translate natural language to FOL: "
    assert prompt_payload(format_prompt("fol", "choose: a port")) == "choose: a port"


def test_canonical_whitespace():
    assert canonical("  G ( a   ->  b ) ") == "G ( a -> b )"


def test_score_verdicts():
    assert score_one("regex", VOWELS_A, VOWELS_B) == SEM_OK
    assert score_one("regex", " .*dog.* ", ".*dog.*") == SYN_OK
    assert score_one("regex", "((dog", ".*dog.*") == PARSE_FAIL
    assert score_one("regex", "dog", ".*dog.*") == WRONG
    assert score_one("ltl", "true U a", "F a") == SEM_OK
    assert score_one("ltl", "G a", "F a") == WRONG
    assert score_one("ltl", "G (", "F a") == PARSE_FAIL
    assert score_one("fol", "fol(1,p(a)).", "fol(1, p(a)).") == SYN_OK
    assert score_one("fol", "fol(1,q(a)).", "fol(1,p(a)).") == WRONG


def test_timeout_verdict():
    hard = "(.*)(a)(.)(.)(.)(.)(.)(.)(.)(.)(.)(.)(.)"
    verdict = score_one("regex", "~(" + hard + ")", hard, EvalOptions(timeout=1e-6))
    assert verdict == EQUIV_TIMEOUT


def test_accuracy_functions():
    rs = regex_records()
    copy = {r.id: r.target for r in rs}
    assert syntactic_accuracy(rs, copy) == 1.0
    assert syntactic_accuracy(rs, {r.id: "a" for r in rs}) == 0.0
    half = {rs[0].id: rs[0].target, rs[1].id: "b"}
    assert syntactic_accuracy(rs[:2], half) == 0.5
    para = dict(copy)
    para[rs[1].id] = VOWELS_A
    para[rs[2].id] = "(truck)|([0-9])"
    assert semantic_accuracy(rs, para) == 1.0
    with pytest.raises(MissingPredictionError):
        syntactic_accuracy(rs, {})


def test_report():
    rs = regex_records()
    preds = {rs[0].id: rs[0].target, rs[1].id: VOWELS_A, rs[2].id: "(((("}
    rep = evaluate(rs, preds, EvalOptions(tag="ood"))
    assert rep.verdicts == [(rs[0].id, SYN_OK), (rs[1].id, SEM_OK), (rs[2].id, PARSE_FAIL)]
    assert (rep.syntactic_correct, rep.semantic_correct) == (1, 2)
    assert rep.semantic_accuracy >= rep.syntactic_accuracy
    assert "syntactic accuracy" in rep.table() and "ood" in rep.table()
    assert EvalReport.from_json(rep.to_json()) == rep


def test_fol_report_has_no_semantic_metric():
    r = DatasetRecord.make("fol", "show start page", "fol(1,n1page(A)).")
    rep = evaluate([r], {r.id: "fol(1,n1page(A))."})
    assert rep.semantic_correct is None and rep.syntactic_accuracy == 1.0


def test_predictions_file(tmp_path):
    path = tmp_path / "p.jsonl"
    write_predictions({"a": "x", "b": "y z"}, path)
    assert read_predictions(path) == {"a": "x", "b": "y z"}


# external models

ECHO = [sys.executable, "-c",
        "import sys\nfor l in sys.stdin: print(l.split(': ', 1)[1].rstrip('\\n'), flush=True)"]


def test_echo_model():
    rs = regex_records()
    out = run_external_model(ECHO, rs)
    assert list(out) == [r.id for r in rs]
    assert list(out.values()) == [r.nl for r in rs]


def test_model_exits_early():
    rs = regex_records()
    with pytest.raises(LineCountMismatchError):
        run_external_model([sys.executable, "-c", "import sys; print(sys.stdin.readline().strip())"], rs)


def test_model_errors():
    with pytest.raises(ProcessError):
        run_external_model(["/nonexistent/model"], regex_records())
    with pytest.raises(TimeoutError):
        run_external_model([sys.executable, "-c", "import time; time.sleep(5)"], regex_records(), timeout=0.3)
