"""Next-sense prediction over the sense vocabulary.

Two families live here. Dense models (a stacked GRU and a causal
transformer over the sense token stream) score every sense with a full
softmax. Localized predictors instead restrict the choice to the senses
of the K most likely next words reported by a word-level language model:

* :class:`MostFrequentSense` — the training-dominant sense of the top-1 word;
* :class:`SelectKPredictor` — softmax over candidate logits from a
  dedicated recurrent sense head;
* :class:`SenseContextPredictor` — cosine similarity between the local
  context and each candidate's average training context;
* :class:`SelfAttentionPredictor` — attention scores between the local
  context (query) and the candidates' average contexts (keys).

Every localized step assigns probability exactly ``EPSILON`` to each
non-candidate sense, with no renormalization afterwards; the candidate
probabilities alone sum to one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator

from . import autodiff as ad
from .autodiff import Tensor
from .corpus import TokenStream, Vocabulary
from .layers import Embedding, GruStack, Linear
from .optim import Adam
from .wordlm import (
    PredictionStep,
    TransformerLanguageModel,
    _require_fitted,
    check_ids,
    stable_softmax,
    topk_words,
)

EPSILON = 1e-8

STATS_FORMAT = "multisense-sense-stats"
STATS_VERSION = 1


@dataclass(frozen=True)
class SenseStep:
    """Distribution over the sense vocabulary for one stream position.

    ``candidates`` is the sense-id set the probability mass was
    restricted to, in ascending order; dense models leave it empty.
    """

    sense_probs: np.ndarray
    candidates: tuple[int, ...] = ()


def predicted_sense(step: SenseStep) -> int:
    """Argmax sense id; ties resolve to the lowest id."""
    return int(np.argmax(step.sense_probs))


def localized_step(n_senses: int, candidates, scores) -> SenseStep:
    """Softmax the candidate scores; every other sense holds EPSILON."""
    candidates = tuple(candidates)
    if not candidates:
        raise ValueError("localized prediction needs at least one candidate sense")
    probs = np.full(n_senses, EPSILON)
    probs[list(candidates)] = stable_softmax(np.asarray(scores, dtype=np.float64))
    return SenseStep(probs, candidates)


def candidate_senses(vocab: Vocabulary, step: PredictionStep, k: int) -> tuple[int, ...]:
    """Union of the sense ids of the K most likely words, ascending."""
    ids: set[int] = set()
    for word_id, _ in topk_words(step, k):
        ids.update(vocab.senses_of(word_id))
    return tuple(sorted(ids))


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(a @ b / (na * nb))


# -- local context encoders --------------------------------------------------

class MeanContext:
    """Local context as the mean of the preceding word embeddings."""

    kind = "average"

    def __init__(self, dim: int):
        self.dim = dim
        self.seed = 0

    def encode(self, rows: np.ndarray) -> np.ndarray:
        if len(rows) == 0:
            return np.zeros(self.dim)
        return np.asarray(rows, dtype=np.float64).mean(axis=0)


class GruContext:
    """Local context as the final state of a seeded 3-layer recurrent encoder."""

    kind = "gru"

    def __init__(self, dim: int, seed: int = 0, num_layers: int = 3):
        self.dim = dim
        self.seed = seed
        self._gru = GruStack(dim, dim, num_layers, np.random.default_rng(seed))

    def encode(self, rows: np.ndarray) -> np.ndarray:
        if len(rows) == 0:
            return np.zeros(self.dim)
        with ad.no_grad():
            state = self._gru.init_state(1)
            for row in np.asarray(rows, dtype=np.float64):
                h, state = self._gru.step(Tensor(row.reshape(1, -1)), state)
        return h.data[0].copy()


def _make_context(kind: str, dim: int, seed: int):
    if kind == MeanContext.kind:
        return MeanContext(dim)
    if kind == GruContext.kind:
        return GruContext(dim, seed)
    raise ValueError(f"unknown context encoder kind: {kind!r}")


# -- training-set sense statistics -------------------------------------------

class SenseStatistics:
    """Per-sense training frequencies and average contexts.

    ``frequency[s]`` counts occurrences of sense ``s`` in the training
    stream; ``sc[s]`` is the mean of that sense's occurrence contexts
    (zero row when unseen); ``mfs[w]`` is the most frequent training
    sense of word ``w``, falling back to its dummy sense when no sense
    of the word was observed.
    """

    def __init__(
        self,
        frequency: np.ndarray,
        sc: np.ndarray,
        mfs: np.ndarray,
        context_window: int,
        context_kind: str = MeanContext.kind,
        context_seed: int = 0,
    ):
        self.frequency = np.asarray(frequency, dtype=np.int64)
        self.sc = np.asarray(sc, dtype=np.float64)
        self.mfs = np.asarray(mfs, dtype=np.int64)
        if self.sc.shape[0] != self.frequency.shape[0]:
            raise ValueError("frequency and context tables disagree on sense count")
        self.context_window = int(context_window)
        self.context_kind = context_kind
        self.context_seed = int(context_seed)

    @property
    def n_senses(self) -> int:
        return len(self.frequency)

    @property
    def dim(self) -> int:
        return self.sc.shape[1]

    def seen(self, sense_id: int) -> bool:
        return bool(self.frequency[sense_id] > 0)

    def sense_context(self, sense_id: int) -> np.ndarray | None:
        return self.sc[sense_id] if self.seen(sense_id) else None

    def most_frequent(self, word_id: int) -> int:
        return int(self.mfs[word_id])

    def make_context_encoder(self):
        return _make_context(self.context_kind, self.dim, self.context_seed)

    # -- persistence: JSON header + binary vector blob ----------------------
    def save(self, path) -> None:
        path = Path(path)
        blob = path.with_name(path.stem + ".vectors.npy")
        np.save(blob, self.sc)
        payload = {
            "format": STATS_FORMAT,
            "version": STATS_VERSION,
            "dim": self.dim,
            "context_window": self.context_window,
            "context_kind": self.context_kind,
            "context_seed": self.context_seed,
            "vectors_file": blob.name,
            "frequency": self.frequency.tolist(),
            "most_frequent": self.mfs.tolist(),
        }
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "SenseStatistics":
        path = Path(path)
        payload = json.loads(path.read_text())
        if payload.get("format") != STATS_FORMAT:
            raise ValueError(f"{path}: not a {STATS_FORMAT} file")
        sc = np.load(path.with_name(payload["vectors_file"]))
        return cls(
            np.asarray(payload["frequency"]),
            sc,
            np.asarray(payload["most_frequent"]),
            payload["context_window"],
            payload.get("context_kind", MeanContext.kind),
            payload.get("context_seed", 0),
        )


def build_sense_stats(
    streams,
    vocab: Vocabulary,
    embeddings: np.ndarray,
    c: int = 20,
    context=None,
) -> SenseStatistics:
    """Fold the training stream(s) into per-sense statistics.

    Each occurrence context is encoded from the embeddings of the (at
    most ``c``) strictly preceding tokens of its stream; a position with
    no predecessors contributes a zero vector. ``streams`` may be one
    TokenStream or a sequence of them, each treated as a contiguous
    document.
    """
    if isinstance(streams, TokenStream):
        streams = [streams]
    embeddings = np.asarray(embeddings, dtype=np.float64)
    if context is None:
        context = MeanContext(embeddings.shape[1])
    if c < 1:
        raise ValueError("context window c must be >= 1")
    frequency = np.zeros(vocab.n_senses, dtype=np.int64)
    sums = np.zeros((vocab.n_senses, embeddings.shape[1]))
    for stream in streams:
        word_ids = check_ids(stream.word_ids, vocab.n_words)
        sense_ids = check_ids(stream.sense_ids, vocab.n_senses, what="sense")
        for t, sense in enumerate(sense_ids):
            window = embeddings[word_ids[max(0, t - c) : t]]
            frequency[sense] += 1
            sums[sense] += context.encode(window)
    sc = np.zeros_like(sums)
    observed = frequency > 0
    sc[observed] = sums[observed] / frequency[observed, None]

    mfs = np.zeros(vocab.n_words, dtype=np.int64)
    for word_id in range(vocab.n_words):
        senses = vocab.senses_of(word_id)
        best = min(senses, key=lambda s: (-frequency[s], s))
        mfs[word_id] = best if frequency[best] > 0 else vocab.dummy_sense_id(word_id)
    return SenseStatistics(
        frequency, sc, mfs, c, context_kind=context.kind, context_seed=context.seed
    )


# -- localized predictors -----------------------------------------------------

def _check_alignment(vocab: Vocabulary, word_ids, word_steps) -> tuple[np.ndarray, list]:
    word_ids = check_ids(word_ids, vocab.n_words)
    steps = list(word_steps)
    if len(steps) != len(word_ids) - 1:
        raise ValueError(
            f"expected one word distribution per predicted position "
            f"({len(word_ids) - 1}), got {len(steps)}"
        )
    return word_ids, steps


class MostFrequentSense:
    """Most frequent training sense of the top-1 predicted word.

    The selection carries probability 1 − ε·(M − 1) and every other
    sense ε, so the step sums to one exactly. Words never observed in
    training fall back to their dummy sense.
    """

    def __init__(self, vocab: Vocabulary, stats: SenseStatistics):
        self.vocab = vocab
        self.stats = stats

    def predict_steps(self, word_ids, word_steps, sense_ids=None) -> list[SenseStep]:
        _, steps = _check_alignment(self.vocab, word_ids, word_steps)
        M = self.vocab.n_senses
        out = []
        for step in steps:
            top_word = topk_words(step, 1)[0][0]
            chosen = self.stats.most_frequent(top_word)
            probs = np.full(M, EPSILON)
            probs[chosen] = 1.0 - EPSILON * (M - 1)
            out.append(SenseStep(probs, tuple(self.vocab.senses_of(top_word))))
        return out


class SelectKPredictor:
    """Candidate senses scored by a dedicated recurrent sense head.

    At evaluation time the head consumes its own argmax picks: the true
    sense stream only seeds the first input token.
    """

    def __init__(self, vocab: Vocabulary, head: "GruSenseModel", k: int = 1):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.vocab = vocab
        self.head = head
        self.k = k

    def predict_steps(self, word_ids, word_steps, sense_ids) -> list[SenseStep]:
        _, steps = _check_alignment(self.vocab, word_ids, word_steps)
        sense_ids = check_ids(sense_ids, self.vocab.n_senses, what="sense")
        if len(sense_ids) == 0:
            raise ValueError("sense_ids must provide the initial sense token")
        out = []
        state = self.head.init_state()
        previous = int(sense_ids[0])
        for step in steps:
            logits, state = self.head.step_logits(previous, state)
            cands = candidate_senses(self.vocab, step, self.k)
            sense_step = localized_step(self.vocab.n_senses, cands, logits[list(cands)])
            out.append(sense_step)
            previous = predicted_sense(sense_step)
        return out


class _LocalContextMixin:
    """Shared machinery: candidate sets plus a preceding-token context."""

    def __init__(
        self,
        vocab: Vocabulary,
        stats: SenseStatistics,
        embeddings: np.ndarray,
        k: int = 1,
        context=None,
        context_window: int | None = None,
    ):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.vocab = vocab
        self.stats = stats
        self.embeddings = np.asarray(embeddings, dtype=np.float64)
        self.k = k
        self.context = context if context is not None else stats.make_context_encoder()
        self.context_window = (
            int(context_window) if context_window is not None else stats.context_window
        )

    def _score(self, local_context: np.ndarray, cands: tuple[int, ...]) -> np.ndarray:
        raise NotImplementedError

    def predict_steps(self, word_ids, word_steps, sense_ids=None) -> list[SenseStep]:
        word_ids, steps = _check_alignment(self.vocab, word_ids, word_steps)
        c = self.context_window
        out = []
        for t in range(1, len(word_ids)):
            window = self.embeddings[word_ids[max(0, t - c) : t]]
            local = self.context.encode(window)
            cands = candidate_senses(self.vocab, steps[t - 1], self.k)
            out.append(localized_step(self.vocab.n_senses, cands, self._score(local, cands)))
        return out


class SenseContextPredictor(_LocalContextMixin):
    """Cosine similarity against each candidate's average training context.

    Candidates unseen in training score −1 (below any attainable
    cosine); the scores are softmaxed over the candidate set.
    """

    def _score(self, local_context, cands):
        scores = np.empty(len(cands))
        for i, sense in enumerate(cands):
            sc = self.stats.sense_context(sense)
            scores[i] = -1.0 if sc is None else cosine(local_context, sc)
        return scores


class SelfAttentionPredictor(_LocalContextMixin):
    """Attention between the local context and candidate sense contexts.

    The query rows are all copies of the local context and the keys are
    the candidates' average contexts, so the attention row reduces to
    softmax(C · q / sqrt(d)). Candidates unseen in training contribute a
    zero key row.
    """

    def _score(self, local_context, cands):
        keys = np.zeros((len(cands), self.stats.dim))
        for i, sense in enumerate(cands):
            sc = self.stats.sense_context(sense)
            if sc is not None:
                keys[i] = sc
        return keys @ local_context / np.sqrt(self.stats.dim)


# -- dense models ---------------------------------------------------------------

class GruSenseModel(BaseEstimator):
    """Stacked GRU over learned sense embeddings with a full-softmax output.

    Doubles as the dedicated sense head of :class:`SelectKPredictor`:
    training is teacher-forced on the true sense stream, while
    ``step_logits`` advances one token at a time for decoding.
    """

    def __init__(
        self,
        n_senses=None,
        embed_dim=64,
        hidden_dim=256,
        num_layers=3,
        lr=1e-3,
        epochs=10,
        window=32,
        seed=0,
    ):
        self.n_senses = n_senses
        self.embed_dim = embed_dim
        self.hidden_dim = hidden_dim
        self.num_layers = num_layers
        self.lr = lr
        self.epochs = epochs
        self.window = window
        self.seed = seed

    def _build(self):
        if not self.n_senses or self.n_senses < 1:
            raise ValueError("n_senses must be a positive integer")
        self.n_senses_ = int(self.n_senses)
        rng = np.random.default_rng(self.seed)
        self._embed = Embedding.random(rng, self.n_senses_, self.embed_dim)
        self._gru = GruStack(self.embed_dim, self.hidden_dim, self.num_layers, rng)
        self._out = Linear(self.hidden_dim, self.n_senses_, rng, zero_init=True)
        self.params_ = {}
        for prefix, module in (
            ("sense.embed", self._embed),
            ("sense.gru", self._gru),
            ("sense.out", self._out),
        ):
            for name, p in module.parameters().items():
                self.params_[f"{prefix}.{name}"] = p
        self._opt = Adam(self.params_, lr=self.lr)
        self.loss_history_ = []

    def _window_logits(self, ids: np.ndarray, state) -> tuple[Tensor, list]:
        outs = []
        for sid in ids:
            h, state = self._gru.step(self._embed([int(sid)]), state)
            outs.append(self._out(h))
        return ad.concat(outs, axis=0), state

    def fit(self, ids, y=None):
        self._build()
        return self.partial_fit(ids, epochs=self.epochs)

    def partial_fit(self, ids, y=None, epochs=1):
        if not hasattr(self, "params_"):
            self._build()
        ids = check_ids(ids, self.n_senses_, what="sense")
        if len(ids) < 2:
            raise ValueError("need at least two tokens to train a next-sense model")
        for _ in range(epochs):
            state = self._gru.init_state(1)
            losses = []
            for start in range(0, len(ids) - 1, self.window):
                chunk = ids[start : min(start + self.window, len(ids) - 1)]
                targets = ids[start + 1 : start + 1 + len(chunk)]
                state = [Tensor(h.data.copy()) for h in state]  # truncate backprop
                logits, state = self._window_logits(chunk, state)
                loss = ad.cross_entropy(logits, targets, reduction="mean")
                losses.append(loss.item())
                self._opt.zero_grad()
                ad.backward(loss)
                self._opt.step()
            self.loss_history_.append(float(np.mean(losses)))
        return self

    # -- incremental decoding (SelectK) -------------------------------------
    def init_state(self) -> list[Tensor]:
        _require_fitted(self, "params_")
        return self._gru.init_state(1)

    def step_logits(self, sense_id: int, state) -> tuple[np.ndarray, list]:
        """Consume one sense token; return logits for the next position."""
        with ad.no_grad():
            h, state = self._gru.step(self._embed([int(sense_id)]), state)
            return self._out(h).data[0].copy(), state

    # -- teacher-forced inference --------------------------------------------
    def predict_steps(self, ids):
        _require_fitted(self, "params_")
        ids = check_ids(ids, self.n_senses_, what="sense")
        state = self.init_state()
        for t in range(len(ids) - 1):
            logits, state = self.step_logits(int(ids[t]), state)
            yield SenseStep(stable_softmax(logits))

    def predict(self, ids):
        return np.array([predicted_sense(s) for s in self.predict_steps(ids)])


class TransformerSenseModel(BaseEstimator):
    """Causal transformer over the sense stream with a full-softmax output."""

    def __init__(
        self,
        n_senses=None,
        hidden_dim=128,
        num_layers=8,
        num_heads=4,
        ff_mult=4,
        context_len=128,
        lr=1e-3,
        epochs=10,
        seed=0,
    ):
        self.n_senses = n_senses
        self.hidden_dim = hidden_dim
        self.num_layers = num_layers
        self.num_heads = num_heads
        self.ff_mult = ff_mult
        self.context_len = context_len
        self.lr = lr
        self.epochs = epochs
        self.seed = seed

    def _build(self):
        self._lm = TransformerLanguageModel(
            n_words=self.n_senses,
            hidden_dim=self.hidden_dim,
            num_layers=self.num_layers,
            num_heads=self.num_heads,
            ff_mult=self.ff_mult,
            context_len=self.context_len,
            lr=self.lr,
            epochs=self.epochs,
            seed=self.seed,
        )

    def fit(self, ids, y=None):
        self._build()
        self._lm.fit(ids)
        self.n_senses_ = self._lm.n_words_
        self.params_ = self._lm.params_
        return self

    def partial_fit(self, ids, y=None, epochs=1):
        if not hasattr(self, "_lm"):
            self._build()
        self._lm.partial_fit(ids, epochs=epochs)
        self.n_senses_ = self._lm.n_words_
        self.params_ = self._lm.params_
        return self

    @property
    def loss_history_(self):
        return self._lm.loss_history_

    def predict_steps(self, ids):
        _require_fitted(self, "params_")
        for step in self._lm.predict_steps(ids):
            yield SenseStep(step.word_probs)

    def predict(self, ids):
        return np.array([predicted_sense(s) for s in self.predict_steps(ids)])
