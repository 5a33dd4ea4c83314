import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nl2formal.datasets import (
    DatasetRecord,
    SplitSpec,
    dedupe,
    make_split,
    noun_pool,
    parse_target,
    read_jsonl,
    read_tsv_pairs,
    record_id,
    split_sizes,
    substitute_nouns,
    write_jsonl,
)
from nl2formal.errors import AlignmentError, FormulaSyntaxError, SchemaError
from nl2formal.regex import parse_regex, regex_equivalent


def regex_record(nl, target):
    return DatasetRecord.make("regex", nl, target, {"source": "fixture"})


def fixture_records(n):
    return [DatasetRecord.make("ltl", f"Globally p{i} holds", f"G p{i}") for i in range(n)]


# records

def test_record_id_is_content_hash():
    r = DatasetRecord.make("ltl", "Globally a holds", "G a")
    assert r.id == record_id("ltl", "Globally a holds", "G a")
    assert len(r.id) == 16
    assert r.replace(target="G b").id != r.id


def test_record_invariants():
    with pytest.raises(ValueError):
        DatasetRecord.make("sql", "x", "y")
    with pytest.raises(ValueError):
        DatasetRecord.make("ltl", "", "a")


def test_parse_target_by_domain():
    assert parse_target("regex", "(dog)|(truck)") == parse_regex("(dog)|(truck)")
    with pytest.raises(FormulaSyntaxError):
        parse_target("ltl", "G (")


def test_dedupe_keeps_first():
    a = DatasetRecord.make("ltl", "a holds", "a", {"k": 1})
    b = DatasetRecord.make("ltl", "a holds", "a", {"k": 2})
    assert dedupe([a, b]) == [a]


# splits

def test_split_sizes():
    assert split_sizes(1000, (0.9, 0.05, 0.05)) == (900, 50, 50)
    assert split_sizes(1, (0.9, 0.05, 0.05)) == (1, 0, 0)
    assert split_sizes(200_000, (0.9, 0.05, 0.05)) == (180_000, 10_000, 10_000)


def test_split_spec_validation():
    with pytest.raises(ValueError):
        SplitSpec((0.5, 0.5, 0.5))
    with pytest.raises(ValueError):
        SplitSpec((1.1, -0.05, -0.05))
    with pytest.raises(ValueError):
        make_split([], SplitSpec())


def test_split_deterministic():
    rs = fixture_records(1000)
    x = make_split(rs, SplitSpec(seed=4))
    assert [len(p) for p in x] == [900, 50, 50]
    assert x == make_split(rs, SplitSpec(seed=4))
    assert x != make_split(rs, SplitSpec(seed=5))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 400), st.integers(0, 2**32), st.sampled_from([(0.9, 0.05, 0.05), (0.8, 0.1, 0.1), (1.0, 0.0, 0.0)]))
def test_split_partitions(n, seed, ratios):
    rs = fixture_records(n)
    train, val, test = make_split(rs, SplitSpec(ratios, seed))
    ids = [r.id for r in train + val + test]
    assert sorted(ids) == sorted(r.id for r in rs)
    for part, ratio in zip((val, test), ratios[1:]):
        assert abs(len(part) - n * ratio) < 1
    assert abs(len(train) - n * ratios[0]) <= 2


# nouns

def test_noun_pool():
    pool = noun_pool()
    assert pool[:4] == ["dog", "truck", "ring", "time"]
    assert len(pool) == 25 == len(set(pool))


def test_substitute_noun():
    r = regex_record("lines with the string 'dog' or a number", "(dog)|([0-9])")
    out = substitute_nouns(r, {"dog": "time"})
    assert out.nl == "lines with the string 'time' or a number"
    assert out.target == "(time)|([0-9])"
    assert regex_equivalent(parse_regex(out.target), parse_regex("(time)|([0-9])"))
    assert out.meta["noun_map"] == {"dog": "time"}


def test_substitute_backtick_quotes():
    r = regex_record("lines containing ``dog'' before ``truck''", ".*(dog).*(truck).*")
    out = substitute_nouns(r, {"dog": "eye", "truck": "time"})
    assert out.nl == "lines containing ``eye'' before ``time''"
    assert parse_regex(out.target) == parse_regex(".*(eye).*(time).*")


def test_identity_map_is_noop():
    r = regex_record("lines with 'dog'", ".*dog.*")
    assert substitute_nouns(r, {"dog": "dog"}) is r


def test_alignment_errors():
    with pytest.raises(AlignmentError):
        substitute_nouns(regex_record("lines with 'dog'", "(truck)*"), {"dog": "time"})
    with pytest.raises(AlignmentError):
        substitute_nouns(regex_record("lines with a dog", "(dog)*"), {"dog": "time"})
    with pytest.raises(AlignmentError):
        substitute_nouns(regex_record("'dog' then 'time'", "(dog)(time)"), {"dog": "time"})


@settings(max_examples=50, deadline=None)
@given(st.permutations(noun_pool()[3:]))
def test_inverse_map_restores(perm):
    r = regex_record("lines with 'dog' followed by 'truck' and 'ring'", "((dog).*(truck))&(.*ring.*)")
    m = dict(zip(["dog", "truck", "ring"], perm[:3]))
    out = substitute_nouns(r, m)
    back = substitute_nouns(out, {v: k for k, v in m.items()})
    assert (back.nl, back.target) == (r.nl, r.target)


# files

def test_jsonl_round_trip(tmp_path):
    rs = [DatasetRecord.make("ltl", "Globally a holds", "G a", {"seed": 1, "patterns": ["universality"]}),
          regex_record("lines with 'dog'", ".*dog.*"),
          DatasetRecord.make("fol", "show start page", "fol(1,n1page(C)).", {"note": "é"})]
    path = tmp_path / "d.jsonl"
    write_jsonl(rs, path)
    assert read_jsonl(path) == rs
    assert len(path.read_text(encoding="utf-8").splitlines()) == 3


def test_jsonl_schema_errors(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = json.dumps({"id": "x", "domain": "ltl", "nl": "a holds", "target": "a", "meta": {}})
    path.write_text(good + "\n" + json.dumps({"id": "y", "domain": "ltl", "nl": "b holds", "meta": {}}) + "\n")
    with pytest.raises(SchemaError) as info:
        read_jsonl(path)
    assert info.value.line == 2
    path.write_text("{not json\n")
    with pytest.raises(SchemaError):
        read_jsonl(path)


def test_tsv_pairs(tmp_path):
    path = tmp_path / "pairs.tsv"
    path.write_text("lines with the string 'dog'\t.*dog.*\nlines that start with a vowel\t([AEIOUaeiou])(.*)\n")
    rs = read_tsv_pairs(path, "regex")
    assert [r.target for r in rs] == [".*dog.*", "([AEIOUaeiou])(.*)"]
    assert all(r.domain == "regex" for r in rs)
    empty = tmp_path / "empty.tsv"
    empty.write_text("")
    assert read_tsv_pairs(empty, "regex") == []
    path.write_text("one\ttwo\tthree\n")
    with pytest.raises(SchemaError):
        read_tsv_pairs(path, "regex")
