import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qoerep.errors import ParseError, ValidationError
from qoerep.ingest import (
    CorpusSpec,
    ReviewRecord,
    dedup_exact,
    filter_invalid,
    generate_synthetic_corpus,
    invalid_reason,
    load_reviews,
    split_dataset,
    write_reviews,
)


def _rec(i, text="fine service", label="positive", provider="p"):
    return ReviewRecord(f"r{i}", provider, text, label)


@pytest.mark.parametrize(
    "text, reason",
    [
        ("@bob @alice thanks", "mostly_usernames"),
        ("@bob thanks", None),  # exactly half is kept
        ("", "empty"),
        ("   ", "empty"),
        ("http://a.io www.b.com see", "mostly_urls"),
        ("https://a.io great", None),
        ("fast and cheap", None),
    ],
)
def test_invalid_reason(text, reason):
    assert invalid_reason(text) == reason


def test_filter_invalid_keeps_order_and_reasons():
    recs = [_rec(0), _rec(1, "@bob @alice thanks"), _rec(2, "ok then")]
    valid, rejected = filter_invalid(recs)
    assert [r.id for r in valid] == ["r0", "r2"]
    assert [(r.id, why) for r, why in rejected] == [("r1", "mostly_usernames")]


def test_dedup_exact_keeps_first():
    recs = [_rec(0, "a b"), _rec(1, "a b"), _rec(2, "a c")]
    assert [r.id for r in dedup_exact(recs)] == ["r0", "r2"]


def test_split_sizes_ten():
    split = split_dataset([_rec(i) for i in range(10)], 0.8, 0.1, seed=3)
    assert (len(split.train), len(split.validation), len(split.test)) == (8, 1, 1)


def test_split_sizes_scale():
    split = split_dataset([_rec(i) for i in range(10676)], 0.8, 0.1, seed=0)
    assert abs(len(split.train) - 8541) <= 1
    assert abs(len(split.validation) - 1068) <= 1
    assert len(split.train) + len(split.validation) + len(split.test) == 10676


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 300), seed=st.integers(0, 2**32 - 1))
def test_split_is_partition(n, seed):
    recs = [_rec(i) for i in range(n)]
    split = split_dataset(recs, seed=seed)
    ids = [r.id for part in (split.train, split.validation, split.test) for r in part]
    assert sorted(ids) == sorted(r.id for r in recs)
    again = split_dataset(recs, seed=seed)
    assert [r.id for r in again.train] == [r.id for r in split.train]


def test_split_rejects_unlabeled():
    with pytest.raises(ValidationError):
        split_dataset([_rec(0), ReviewRecord("x", "p", "t")])


@pytest.mark.parametrize("train, val", [(0.0, 0.1), (0.9, 0.1), (1.2, 0.0), (0.5, -0.1)])
def test_split_bad_ratios(train, val):
    with pytest.raises(ValueError):
        split_dataset([_rec(0)], train, val)


def test_record_rejects_unknown_label():
    with pytest.raises(ValidationError):
        ReviewRecord("a", "p", "t", "neutral")


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
def test_reviews_roundtrip(tmp_path, fmt):
    recs = [_rec(0, 'says "hi",\nthen leaves'), ReviewRecord("u", "q", "no label")]
    path = tmp_path / f"r.{fmt}"
    write_reviews(recs, path)
    back = load_reviews(path)
    assert [(r.id, r.provider, r.text, r.label) for r in back] == [
        (r.id, r.provider, r.text, r.label) for r in recs
    ]


def test_load_jsonl_reports_line(tmp_path):
    path = tmp_path / "r.jsonl"
    good = json.dumps({"id": "a", "provider": "p", "text": "t", "label": "positive"})
    path.write_text(good + "\n" + '{"id": "b", "provider": "p"}\n')
    with pytest.raises(ParseError) as err:
        load_reviews(path)
    assert err.value.line == 2


def test_load_jsonl_bad_json(tmp_path):
    path = tmp_path / "r.jsonl"
    path.write_text("{not json\n")
    with pytest.raises(ParseError):
        load_reviews(path)


def test_load_unknown_label(tmp_path):
    path = tmp_path / "r.jsonl"
    path.write_text(json.dumps({"id": "a", "provider": "p", "text": "t", "label": "meh"}) + "\n")
    with pytest.raises(ValidationError):
        load_reviews(path)


def test_load_csv_missing_column(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("id,text\na,b\n")
    with pytest.raises(ParseError):
        load_reviews(path)


def test_corpus_class_counts():
    spec = CorpusSpec(n_reviews=2000, positive_ratio=0.95)
    assert spec.class_counts() == (1900, 100)
    recs = generate_synthetic_corpus(spec)
    assert sum(r.label == "positive" for r in recs) == 1900
    assert sum(r.label == "negative" for r in recs) == 100


def test_corpus_deterministic_and_seeded():
    a = generate_synthetic_corpus(CorpusSpec(n_reviews=50, seed=4))
    b = generate_synthetic_corpus(CorpusSpec(n_reviews=50, seed=4))
    c = generate_synthetic_corpus(CorpusSpec(n_reviews=50, seed=5))
    assert [r.text for r in a] == [r.text for r in b]
    assert [r.text for r in a] != [r.text for r in c]


def test_corpus_lengths_and_validity():
    spec = CorpusSpec(n_reviews=200, min_tokens=12, max_tokens=40)
    recs = generate_synthetic_corpus(spec)
    assert all(12 <= len(r.text.split()) <= 40 for r in recs)
    assert filter_invalid(recs)[1] == []
    assert len({r.id for r in recs}) == 200


@pytest.mark.parametrize(
    "kwargs",
    [{"n_reviews": 0}, {"positive_ratio": 1.5}, {"min_tokens": 10, "max_tokens": 5}],
)
def test_corpus_spec_validation(kwargs):
    with pytest.raises(ValueError):
        CorpusSpec(**kwargs).validate()
