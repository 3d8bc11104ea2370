"""Corpus preparation: vocabularies, lemmatization and aligned token streams.

Two corpora feed the toolkit: a plain pretraining corpus (one sentence per
line, whitespace tokens, end-of-sentence implied at line end) and a labelled
corpus in JSON-lines form where each line carries parallel ``tokens`` and
``senses`` arrays.  Everything downstream works on lemma-level ids: inflected
surface forms fold onto their parent form, every word owns a dummy sense so
unlabelled positions still carry a sense id, and encoded streams keep the word
and sense sequences aligned position by position with no gaps.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path

import numpy as np

UNK = "<unk>"
EOS = "<eos>"
DUMMY_TAG = "dummySense"

VOCAB_FORMAT = "multisense-vocab"
VOCAB_VERSION = 1


class CorpusError(ValueError):
    """Raised for malformed corpora, inventories or vocabulary files."""


def dummy_key(word_form: str) -> str:
    return f"{word_form}.{DUMMY_TAG}.01"


def key_parts(key: str) -> tuple[str, str, str]:
    """Split a sense key into (lemma, pos, number); keys look like 'bank.n.01'."""
    parts = key.rsplit(".", 2)
    if len(parts) != 3 or not all(parts):
        raise CorpusError(f"malformed sense key {key!r} (expected lemma.pos.nn)")
    return parts[0], parts[1], parts[2]


# ---------------------------------------------------------------------------
# Sense inventory


@dataclass(frozen=True)
class SenseSpec:
    key: str
    definitions: tuple[str, ...] = ()
    examples: tuple[str, ...] = ()
    synonyms: tuple[str, ...] = ()
    antonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class Inventory:
    """Dictionary contents: senses per word plus the lemma exceptions table."""

    senses_by_word: dict[str, tuple[SenseSpec, ...]]
    lemma_exceptions: dict[str, str]

    @property
    def words(self):
        return self.senses_by_word.keys()


def _string_list(raw, where: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise CorpusError(f"{where}: expected a list of strings")
    return tuple(raw)


def load_inventory(path) -> Inventory:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("words"), dict):
        raise CorpusError(f"{path}: expected an object with a 'words' table")
    senses_by_word: dict[str, tuple[SenseSpec, ...]] = {}
    for word, entry in payload["words"].items():
        if not isinstance(entry, dict) or not isinstance(entry.get("senses"), list):
            raise CorpusError(f"{path}: word {word!r}: expected an object with a 'senses' list")
        specs = []
        for raw in entry["senses"]:
            if not isinstance(raw, dict) or not isinstance(raw.get("key"), str):
                raise CorpusError(f"{path}: word {word!r}: every sense needs a string 'key'")
            lemma, _, _ = key_parts(raw["key"])
            if lemma.lower() != word.lower():
                raise CorpusError(
                    f"{path}: sense key {raw['key']!r} does not belong to word {word!r}"
                )
            specs.append(
                SenseSpec(
                    key=raw["key"],
                    definitions=_string_list(raw.get("definitions", []), f"{word}/definitions"),
                    examples=_string_list(raw.get("examples", []), f"{word}/examples"),
                    synonyms=_string_list(raw.get("synonyms", []), f"{word}/synonyms"),
                    antonyms=_string_list(raw.get("antonyms", []), f"{word}/antonyms"),
                )
            )
        senses_by_word[word.lower()] = tuple(specs)
    exceptions = payload.get("lemma_exceptions", {})
    if not isinstance(exceptions, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in exceptions.items()
    ):
        raise CorpusError(f"{path}: 'lemma_exceptions' must map strings to strings")
    return Inventory(senses_by_word, dict(exceptions))


# ---------------------------------------------------------------------------
# Lemmatizer

_SUFFIX_RULES: dict[str, tuple[tuple[str, str], ...]] = {
    "n": (
        ("ses", "s"),
        ("xes", "x"),
        ("zes", "z"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("ies", "y"),
        ("men", "man"),
        ("s", ""),
    ),
    "v": (
        ("ies", "y"),
        ("es", "e"),
        ("es", ""),
        ("ed", "e"),
        ("ed", ""),
        ("ing", "e"),
        ("ing", ""),
        ("s", ""),
    ),
    "a": (("er", ""), ("est", ""), ("er", "e"), ("est", "e")),
}


class Lemmatizer:
    """Deterministic lemmatizer: exception lookup, then suffix rules.

    The exceptions table (shipped with the sense inventory) is chain-resolved
    once at construction and its targets join the known-form set; suffix-rule
    candidates are accepted only when they land on a known form.  Together
    that makes the mapping total and idempotent.
    """

    def __init__(self, known_lemmas, exceptions: dict[str, str] | None = None):
        raw = {k.lower(): v.lower() for k, v in (exceptions or {}).items()}
        resolved: dict[str, str] = {}
        for key in raw:
            seen = {key}
            target = raw[key]
            while target in raw and target not in seen:
                seen.add(target)
                target = raw[target]
            resolved[key] = target
        self.exceptions = resolved
        self.known = {w.lower() for w in known_lemmas} | set(resolved.values())

    @classmethod
    def from_inventory(cls, inventory: Inventory) -> "Lemmatizer":
        return cls(inventory.words, inventory.lemma_exceptions)

    def lemmatize(self, word_form: str, pos_hint: str | None = None) -> str:
        w = word_form.lower()
        if w in self.exceptions:
            return self.exceptions[w]
        if w in self.known:
            return w
        pos_order = [p for p in (pos_hint,) if p in _SUFFIX_RULES]
        pos_order += [p for p in _SUFFIX_RULES if p not in pos_order]
        for pos in pos_order:
            for suffix, repl in _SUFFIX_RULES[pos]:
                if w.endswith(suffix) and len(w) > len(suffix):
                    cand = w[: len(w) - len(suffix)] + repl
                    if cand in self.known:
                        return self.exceptions.get(cand, cand)
        return w


# ---------------------------------------------------------------------------
# Corpus files


@dataclass(frozen=True)
class LabelledSentence:
    tokens: tuple[str, ...]
    senses: tuple[str | None, ...]


def parse_pretrain(path) -> list[list[str]]:
    """Plain text, one sentence per line; blank lines are skipped."""
    docs = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        tokens = line.split()
        if tokens:
            docs.append(tokens)
    return docs


def parse_labelled(path) -> list[LabelledSentence]:
    """JSON lines with parallel 'tokens' and 'senses' arrays."""
    sentences = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise CorpusError(f"{path}:{lineno}: expected a JSON object")
        tokens = obj.get("tokens")
        senses = obj.get("senses")
        if not isinstance(tokens, list) or not all(isinstance(t, str) and t for t in tokens):
            raise CorpusError(f"{path}:{lineno}: 'tokens' must be a list of non-empty strings")
        if not isinstance(senses, list) or len(senses) != len(tokens):
            raise CorpusError(f"{path}:{lineno}: 'senses' must match 'tokens' in length")
        for label in senses:
            if label is None:
                continue
            if not isinstance(label, str):
                raise CorpusError(f"{path}:{lineno}: sense labels must be strings or null")
            try:
                key_parts(label)
            except CorpusError as exc:
                raise CorpusError(f"{path}:{lineno}: {exc}") from exc
        sentences.append(LabelledSentence(tuple(tokens), tuple(senses)))
    return sentences


def split_docs(docs, seed: int, fractions=(0.8, 0.1, 0.1)):
    """Contiguous train/valid/test spans over a seeded rotation of the docs."""
    if abs(sum(fractions) - 1.0) > 1e-9 or any(f < 0 for f in fractions):
        raise ValueError(f"fractions must be non-negative and sum to 1, got {fractions}")
    docs = list(docs)
    n = len(docs)
    offset = int(np.random.default_rng(seed).integers(n)) if n else 0
    rotated = docs[offset:] + docs[:offset]
    n_train = int(fractions[0] * n)
    n_valid = int(fractions[1] * n)
    return (
        rotated[:n_train],
        rotated[n_train : n_train + n_valid],
        rotated[n_train + n_valid :],
    )


# ---------------------------------------------------------------------------
# Vocabulary


@dataclass(frozen=True)
class VocabEntry:
    word_form: str
    id: int
    frequency: int
    lemma_id: int | None = None


@dataclass(frozen=True)
class SenseEntry:
    sense_key: str
    id: int
    parent_word_id: int
    is_dummy: bool


@dataclass(frozen=True)
class TokenStream:
    """Aligned word/sense id sequences; one sense per position, no gaps."""

    word_ids: np.ndarray
    sense_ids: np.ndarray

    def __post_init__(self):
        if len(self.word_ids) != len(self.sense_ids):
            raise CorpusError("word and sense sequences must have equal length")

    def __len__(self) -> int:
        return len(self.word_ids)


class Vocabulary:
    """Word and sense tables with dense ids and derived lookup indexes."""

    unk_id = 0
    eos_id = 1

    def __init__(self, words: list[VocabEntry], senses: list[SenseEntry]):
        if len(words) < 2 or words[0].word_form != UNK or words[1].word_form != EOS:
            raise CorpusError(f"reserved entries {UNK} and {EOS} must occupy ids 0 and 1")
        for i, entry in enumerate(words):
            if entry.id != i:
                raise CorpusError(f"word ids must be dense, got {entry.id} at position {i}")
            if entry.lemma_id is not None and not (0 <= entry.lemma_id < len(words)):
                raise CorpusError(f"word {entry.word_form!r}: lemma id {entry.lemma_id} out of range")
        self.words = list(words)
        self.word_index = {e.word_form: e.id for e in words}
        if len(self.word_index) != len(words):
            raise CorpusError("duplicate word forms in vocabulary")

        self.senses = list(senses)
        self.sense_index: dict[str, int] = {}
        self._senses_of: list[list[int]] = [[] for _ in words]
        self._dummy_of: list[int | None] = [None] * len(words)
        for i, s in enumerate(senses):
            if s.id != i:
                raise CorpusError(f"sense ids must be dense, got {s.id} at position {i}")
            if s.sense_key in self.sense_index:
                raise CorpusError(f"duplicate sense key {s.sense_key!r}")
            if not (0 <= s.parent_word_id < len(words)):
                raise CorpusError(f"sense {s.sense_key!r}: parent word {s.parent_word_id} unknown")
            self.sense_index[s.sense_key] = i
            self._senses_of[s.parent_word_id].append(i)
            if s.is_dummy and self._dummy_of[s.parent_word_id] is None:
                self._dummy_of[s.parent_word_id] = i
        for wid, had in enumerate(self._dummy_of):
            if had is None:
                raise CorpusError(f"word {words[wid].word_form!r} has no dummy sense")

    # -- sizes ------------------------------------------------------------
    @property
    def n_words(self) -> int:
        return len(self.words)

    @property
    def n_senses(self) -> int:
        return len(self.senses)

    # -- lookups ----------------------------------------------------------
    def lookup_word(self, form: str) -> int:
        return self.word_index.get(form, self.unk_id)

    def word_form(self, word_id: int) -> str:
        return self.words[word_id].word_form

    def sense_key(self, sense_id: int) -> str:
        return self.senses[sense_id].sense_key

    def sense_id(self, key: str) -> int:
        try:
            return self.sense_index[key]
        except KeyError:
            raise CorpusError(f"unknown sense label {key!r}") from None

    def senses_of(self, word_id: int) -> list[int]:
        """All sense ids of a word (dummy included), ascending."""
        return self._senses_of[word_id]

    def dummy_sense_id(self, word_id: int) -> int:
        return self._dummy_of[word_id]

    def parent_word(self, sense_id: int) -> int:
        return self.senses[sense_id].parent_word_id

    def is_dummy_sense(self, sense_id: int) -> bool:
        return self.senses[sense_id].is_dummy

    def nondummy_sense_count(self, word_id: int) -> int:
        return sum(1 for s in self._senses_of[word_id] if not self.senses[s].is_dummy)

    # -- persistence --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "format": VOCAB_FORMAT,
            "version": VOCAB_VERSION,
            "words": [
                {"form": e.word_form, "id": e.id, "freq": e.frequency, "lemma_id": e.lemma_id}
                for e in self.words
            ],
            "senses": [
                {"key": s.sense_key, "id": s.id, "word_id": s.parent_word_id, "dummy": s.is_dummy}
                for s in self.senses
            ],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Vocabulary":
        if payload.get("format") != VOCAB_FORMAT:
            raise CorpusError(f"not a {VOCAB_FORMAT} payload")
        if payload.get("version") != VOCAB_VERSION:
            raise CorpusError(f"unsupported vocabulary version {payload.get('version')}")
        words = [
            VocabEntry(w["form"], w["id"], w["freq"], w.get("lemma_id"))
            for w in payload["words"]
        ]
        senses = [
            SenseEntry(s["key"], s["id"], s["word_id"], bool(s["dummy"]))
            for s in payload["senses"]
        ]
        return cls(words, senses)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def build_vocab(
    pretrain_docs,
    labelled_docs,
    inventory: Inventory,
    min_freq: int = 2,
) -> Vocabulary:
    """Derive word and sense vocabularies from the two corpora.

    A lemma is kept when it occurs in the pretrain corpus at all, or at least
    ``min_freq`` times in the labelled corpus; everything else maps to <unk>.
    Surface forms that lemmatize onto a kept lemma get their own entry linked
    via ``lemma_id``.  The sense table carries one dummy sense per word plus,
    for parent forms, the inventory senses and any labels seen in the corpus.
    """
    if not pretrain_docs:
        raise CorpusError("empty pretrain corpus")
    if not labelled_docs:
        raise CorpusError("empty labelled corpus")

    lem = Lemmatizer.from_inventory(inventory)
    pre_counts: Counter = Counter()
    lab_counts: Counter = Counter()
    form_counts: Counter = Counter()
    labels_by_lemma: dict[str, set] = defaultdict(set)

    for tokens in pretrain_docs:
        for tok in tokens:
            form = tok.lower()
            form_counts[form] += 1
            pre_counts[lem.lemmatize(form)] += 1
    for sent in labelled_docs:
        for tok, label in zip(sent.tokens, sent.senses):
            form = tok.lower()
            form_counts[form] += 1
            if label is None:
                lab_counts[lem.lemmatize(form)] += 1
            else:
                lemma = key_parts(label)[0].lower()
                lab_counts[lemma] += 1
                labels_by_lemma[lemma].add(label)

    all_lemmas = set(pre_counts) | set(lab_counts)
    kept = sorted(
        l
        for l in all_lemmas
        if l not in (UNK, EOS) and (pre_counts[l] > 0 or lab_counts[l] >= min_freq)
    )
    dropped_occurrences = sum(
        pre_counts[l] + lab_counts[l] for l in all_lemmas if l not in kept and l not in (UNK, EOS)
    )

    words = [
        VocabEntry(UNK, 0, dropped_occurrences),
        VocabEntry(EOS, 1, len(pretrain_docs) + len(labelled_docs)),
    ]
    for lemma in kept:
        words.append(VocabEntry(lemma, len(words), pre_counts[lemma] + lab_counts[lemma]))
    word_index = {e.word_form: e.id for e in words}
    for form in sorted(form_counts):
        if form in word_index:
            continue
        lemma = lem.lemmatize(form)
        if lemma != form and lemma in word_index:
            words.append(VocabEntry(form, len(words), form_counts[form], word_index[lemma]))

    senses: list[SenseEntry] = []
    for entry in words:
        dummy = dummy_key(entry.word_form)
        extra: set[str] = set()
        if entry.lemma_id is None:
            for spec in inventory.senses_by_word.get(entry.word_form, ()):
                extra.add(spec.key)
            extra.update(labels_by_lemma.get(entry.word_form, ()))
        extra.discard(dummy)
        for key in [dummy, *sorted(extra)]:
            senses.append(SenseEntry(key, len(senses), entry.id, key == dummy))
    return Vocabulary(words, senses)


# ---------------------------------------------------------------------------
# Encoding


def encode_stream(docs, vocab: Vocabulary, lemmatizer: Lemmatizer) -> TokenStream:
    """Encode labelled sentences into one uninterrupted aligned stream.

    Labelled positions resolve the word through the label's lemma; unlabelled
    positions go through the lemmatizer and receive the word's dummy sense.
    Out-of-vocabulary words become <unk> with its dummy sense regardless of
    any label; a label naming an unknown sense of a kept word is an error.
    """
    word_ids: list[int] = []
    sense_ids: list[int] = []
    for sent in docs:
        for tok, label in zip(sent.tokens, sent.senses):
            form = tok.lower()
            if label is None:
                wid = vocab.lookup_word(lemmatizer.lemmatize(form))
                sid = vocab.dummy_sense_id(wid)
            else:
                lemma = key_parts(label)[0].lower()
                wid = vocab.lookup_word(lemma)
                sid = vocab.dummy_sense_id(wid) if wid == vocab.unk_id else vocab.sense_id(label)
            word_ids.append(wid)
            sense_ids.append(sid)
        word_ids.append(vocab.eos_id)
        sense_ids.append(vocab.dummy_sense_id(vocab.eos_id))
    return TokenStream(
        np.asarray(word_ids, dtype=np.int64), np.asarray(sense_ids, dtype=np.int64)
    )


def encode_plain(docs, vocab: Vocabulary, lemmatizer: Lemmatizer) -> np.ndarray:
    """Encode plain sentences to word ids only (for language-model pretraining)."""
    ids: list[int] = []
    for tokens in docs:
        for tok in tokens:
            ids.append(vocab.lookup_word(lemmatizer.lemmatize(tok.lower())))
        ids.append(vocab.eos_id)
    return np.asarray(ids, dtype=np.int64)
