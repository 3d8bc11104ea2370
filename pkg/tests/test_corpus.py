"""Vocabulary building, lemmatization and stream encoding."""
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multisense.corpus import (
    CorpusError,
    Inventory,
    LabelledSentence,
    Lemmatizer,
    SenseSpec,
    Vocabulary,
    build_vocab,
    dummy_key,
    encode_plain,
    encode_stream,
    key_parts,
    load_inventory,
    parse_labelled,
    parse_pretrain,
    split_docs,
)


def small_inventory() -> Inventory:
    return Inventory(
        senses_by_word={
            "sit": (SenseSpec("sit.v.01", definitions=("rest on the buttocks",)),),
            "bank": (
                SenseSpec("bank.n.01", definitions=("a financial institution",)),
                SenseSpec("bank.n.02", definitions=("sloping land beside water",)),
            ),
            "be": (SenseSpec("be.v.01", definitions=("exist",)),),
            "say": (SenseSpec("say.v.01", definitions=("utter words",)),),
            "cat": (SenseSpec("cat.n.01", definitions=("a small feline",)),),
            "fly": (SenseSpec("fly.v.01", definitions=("move through the air",)),),
        },
        lemma_exceptions={"is": "be", "was": "be", "said": "say", "sat": "sit"},
    )


def small_vocab():
    pretrain = [
        ["john", "sat", "on", "the", "bank"],
        ["the", "cat", "sat", "for", "hours"],
        ["john", "said", "the", "bank", "is", "closed"],
    ]
    labelled = [
        LabelledSentence(("John", "sat"), (None, "sit.v.01")),
        LabelledSentence(("the", "bank", "is", "closed"), (None, "bank.n.01", None, None)),
    ]
    inv = small_inventory()
    vocab = build_vocab(pretrain, labelled, inv, min_freq=2)
    return vocab, Lemmatizer.from_inventory(inv)


# -- lemmatizer -------------------------------------------------------------


def test_lemmatizer_exceptions_and_rules():
    lem = Lemmatizer.from_inventory(small_inventory())
    assert lem.lemmatize("said") == "say"
    assert lem.lemmatize("is") == "be"
    assert lem.lemmatize("cat") == "cat"
    assert lem.lemmatize("cats") == "cat"
    assert lem.lemmatize("flies") == "fly"
    # unknown forms come back unchanged
    assert lem.lemmatize("zyzzx") == "zyzzx"


def test_lemmatizer_resolves_exception_chains():
    lem = Lemmatizer(known_lemmas=["go"], exceptions={"went": "goed", "goed": "go"})
    assert lem.lemmatize("went") == "go"
    assert lem.lemmatize("goed") == "go"


def test_lemmatizer_pos_hint_changes_rule_order():
    lem = Lemmatizer(known_lemmas=["bus", "buse"])
    # noun rules strip the plural back to 'bus'; a verb hint prefers 'buse'
    assert lem.lemmatize("buses", pos_hint="n") == "bus"
    assert lem.lemmatize("buses", pos_hint="v") == "buse"


@given(st.text(alphabet=st.characters(min_codepoint=97, max_codepoint=122), max_size=12))
def test_lemmatizer_is_idempotent(word):
    lem = Lemmatizer.from_inventory(small_inventory())
    once = lem.lemmatize(word)
    assert lem.lemmatize(once) == once


# -- vocabulary construction --------------------------------------------------


def test_reserved_entries_occupy_first_ids():
    vocab, _ = small_vocab()
    assert vocab.word_form(0) == "<unk>"
    assert vocab.word_form(1) == "<eos>"
    assert vocab.lookup_word("never-seen") == vocab.unk_id


def test_rare_labelled_only_word_maps_to_unk():
    pretrain = [["the", "cat"], ["the", "cat"]]
    labelled = [
        LabelledSentence(("gruffalo",), (None,)),
        LabelledSentence(("the", "cat"), (None, "cat.n.01")),
    ]
    vocab = build_vocab(pretrain, labelled, small_inventory(), min_freq=2)
    assert "gruffalo" not in vocab.word_index
    stream = encode_stream(labelled[:1], vocab, Lemmatizer.from_inventory(small_inventory()))
    assert stream.word_ids[0] == vocab.unk_id


def test_pretrain_occurrence_keeps_word_despite_min_freq():
    pretrain = [["gruffalo", "the"], ["the", "cat"]]
    labelled = [LabelledSentence(("the", "cat"), (None, "cat.n.01"))]
    vocab = build_vocab(pretrain, labelled, small_inventory(), min_freq=2)
    assert "gruffalo" in vocab.word_index


def test_unlabelled_stopword_gains_dummy_sense():
    vocab, _ = small_vocab()
    assert "for.dummySense.01" in vocab.sense_index
    wid = vocab.lookup_word("for")
    assert vocab.senses_of(wid) == [vocab.sense_index["for.dummySense.01"]]


def test_every_word_has_at_least_one_sense():
    vocab, _ = small_vocab()
    for wid in range(vocab.n_words):
        senses = vocab.senses_of(wid)
        assert senses, vocab.word_form(wid)
        assert vocab.dummy_sense_id(wid) in senses


def test_inflected_form_links_to_parent():
    vocab, _ = small_vocab()
    sat = vocab.word_index["sat"]
    assert vocab.words[sat].lemma_id == vocab.word_index["sit"]
    assert vocab.words[vocab.word_index["sit"]].lemma_id is None


def test_polysemy_counts_exclude_dummies():
    vocab, _ = small_vocab()
    assert vocab.nondummy_sense_count(vocab.word_index["bank"]) == 2
    assert vocab.nondummy_sense_count(vocab.word_index["for"]) == 0


def test_empty_corpus_rejected():
    with pytest.raises(CorpusError, match="empty"):
        build_vocab([], [LabelledSentence(("a",), (None,))], small_inventory())
    with pytest.raises(CorpusError, match="empty"):
        build_vocab([["a"]], [], small_inventory())


# -- encoding -----------------------------------------------------------------


def test_labelled_encoding_hand_trace():
    vocab, lem = small_vocab()
    stream = encode_stream(
        [LabelledSentence(("John", "sat"), (None, "sit.v.01"))], vocab, lem
    )
    assert len(stream) == 3  # two tokens + end of sentence
    assert [vocab.word_form(w) for w in stream.word_ids] == ["john", "sit", "<eos>"]
    assert [vocab.sense_key(s) for s in stream.sense_ids] == [
        "john.dummySense.01",
        "sit.v.01",
        "<eos>.dummySense.01",
    ]


def test_empty_input_gives_empty_stream():
    vocab, lem = small_vocab()
    stream = encode_stream([], vocab, lem)
    assert len(stream) == 0


def test_unknown_sense_label_on_known_word_rejected():
    vocab, lem = small_vocab()
    with pytest.raises(CorpusError, match="sit.v.99"):
        encode_stream([LabelledSentence(("sat",), ("sit.v.99",))], vocab, lem)


def test_label_on_oov_word_degrades_to_unk_dummy():
    vocab, lem = small_vocab()
    stream = encode_stream([LabelledSentence(("gruffalo",), ("gruffalo.n.01",))], vocab, lem)
    assert stream.word_ids[0] == vocab.unk_id
    assert stream.sense_ids[0] == vocab.dummy_sense_id(vocab.unk_id)


def test_streams_stay_aligned_and_covered():
    vocab, lem = small_vocab()
    docs = [
        LabelledSentence(("the", "bank", "is", "closed"), (None, "bank.n.02", None, None)),
        LabelledSentence(("john", "said", "hello"), (None, "say.v.01", None)),
    ]
    stream = encode_stream(docs, vocab, lem)
    assert len(stream.word_ids) == len(stream.sense_ids)
    for wid, sid in zip(stream.word_ids, stream.sense_ids):
        assert 0 <= sid < vocab.n_senses
        assert vocab.parent_word(sid) == wid


def test_plain_encoding_appends_eos_per_line():
    vocab, lem = small_vocab()
    ids = encode_plain([["the", "cat"], ["john"]], vocab, lem)
    assert ids.tolist().count(vocab.eos_id) == 2
    assert len(ids) == 5


# -- parsing and splitting ------------------------------------------------------


def test_parse_pretrain_skips_blank_lines(tmp_path):
    f = tmp_path / "pre.txt"
    f.write_text("the cat sat\n\n  \njohn ran\n")
    assert parse_pretrain(f) == [["the", "cat", "sat"], ["john", "ran"]]


def test_parse_labelled_reports_line_numbers(tmp_path):
    f = tmp_path / "lab.jsonl"
    f.write_text('{"tokens": ["a"], "senses": [null]}\n{"tokens": ["a"], "senses": []}\n')
    with pytest.raises(CorpusError, match=r"lab\.jsonl:2"):
        parse_labelled(f)
    f.write_text('not json\n')
    with pytest.raises(CorpusError, match=r"lab\.jsonl:1"):
        parse_labelled(f)


def test_parse_labelled_rejects_malformed_keys(tmp_path):
    f = tmp_path / "lab.jsonl"
    f.write_text('{"tokens": ["a"], "senses": ["nodots"]}\n')
    with pytest.raises(CorpusError, match="nodots"):
        parse_labelled(f)


def test_split_docs_is_contiguous_rotation():
    docs = list(range(20))
    train, valid, test = split_docs(docs, seed=3)
    assert (len(train), len(valid), len(test)) == (16, 2, 2)
    joined = train + valid + test
    # the concatenation is a rotation of the original order
    start = docs.index(joined[0])
    assert joined == docs[start:] + docs[:start]


def test_split_docs_deterministic_per_seed():
    docs = list(range(50))
    assert split_docs(docs, seed=7) == split_docs(docs, seed=7)
    assert split_docs(docs, seed=7) != split_docs(docs, seed=8)


def test_split_docs_rejects_bad_fractions():
    with pytest.raises(ValueError):
        split_docs([1, 2], seed=0, fractions=(0.5, 0.2, 0.2))


# -- persistence ----------------------------------------------------------------


def test_vocab_round_trip(tmp_path):
    vocab, _ = small_vocab()
    path = tmp_path / "vocab.json"
    vocab.save(path)
    loaded = Vocabulary.load(path)
    assert loaded.word_index == vocab.word_index
    assert loaded.sense_index == vocab.sense_index
    assert [e.lemma_id for e in loaded.words] == [e.lemma_id for e in vocab.words]


def test_inventory_loader_validates(tmp_path):
    good = tmp_path / "inv.json"
    good.write_text(json.dumps({
        "words": {"cat": {"senses": [{"key": "cat.n.01", "definitions": ["a feline"]}]}},
        "lemma_exceptions": {"felines": "cat"},
    }))
    inv = load_inventory(good)
    assert inv.senses_by_word["cat"][0].definitions == ("a feline",)

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"words": {"cat": {"senses": [{"key": "dog.n.01"}]}}}))
    with pytest.raises(CorpusError, match="does not belong"):
        load_inventory(bad)


def test_key_parts_rejects_short_keys():
    assert key_parts("bank.n.01") == ("bank", "n", "01")
    with pytest.raises(CorpusError):
        key_parts("bank")
