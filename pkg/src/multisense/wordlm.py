"""Next-word language models over encoded id streams.

Three interchangeable predictors, all exposing the same estimator API
(``fit`` / ``partial_fit`` / ``predict_steps`` / ``predict``):

* :class:`GoldLanguageModel` — an oracle that puts probability one on the true
  next word; the upper bound for everything built on top of word predictions.
* :class:`GruLanguageModel` — a stacked GRU over frozen pretrained word
  vectors, followed by a linear output layer.
* :class:`TransformerLanguageModel` — a causal fixed-context transformer with
  learned token and position embeddings.

Both trainable models can concatenate a graph signal onto each input token:
the word's global node updated by a graph attention layer over its graph
area, trained jointly with the language-model loss.  Output layers start at
zero, so an untrained model predicts the uniform distribution.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import autodiff as ad
from .autodiff import Tensor
from .gat import GatLayer, area_adjacency
from .graph import DictGraph, graph_area
from .layers import (
    Embedding,
    GruStack,
    LayerNorm,
    Linear,
    TransformerBlock,
    causal_mask,
)
from .optim import Adam


@dataclass(frozen=True)
class PredictionStep:
    """Distribution over the word vocabulary for one stream position."""

    word_logits: np.ndarray
    word_probs: np.ndarray


def stable_softmax(x: np.ndarray) -> np.ndarray:
    e = np.exp(x - x.max())
    return e / e.sum()


def topk_words(step: PredictionStep, k: int) -> list[tuple[int, float]]:
    """The K most probable word ids, descending; ties broken by ascending id."""
    probs = step.word_probs
    if not 1 <= k <= len(probs):
        raise ValueError(f"k must be in [1, {len(probs)}], got {k}")
    order = np.lexsort((np.arange(len(probs)), -probs))
    return [(int(i), float(probs[i])) for i in order[:k]]


def check_ids(ids, n: int, what: str = "word") -> np.ndarray:
    ids = np.asarray(ids)
    if ids.ndim != 1 or not np.issubdtype(ids.dtype, np.integer):
        raise ValueError(f"expected a 1-D integer array of {what} ids")
    if len(ids) and (ids.min() < 0 or ids.max() >= n):
        raise ValueError(f"{what} id out of vocabulary range [0, {n})")
    return ids.astype(np.int64)


def _require_fitted(estimator, attr: str):
    if not hasattr(estimator, attr):
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )


class GoldLanguageModel(BaseEstimator):
    """Oracle word predictor: probability one on the true next word."""

    def __init__(self, n_words=None):
        self.n_words = n_words

    def fit(self, ids=None, y=None):
        if not self.n_words or self.n_words < 1:
            raise ValueError("n_words must be a positive integer")
        self.n_words_ = int(self.n_words)
        return self

    def partial_fit(self, ids=None, y=None):
        return self.fit(ids)

    def predict_steps(self, ids):
        _require_fitted(self, "n_words_")
        ids = check_ids(ids, self.n_words_)
        for t in range(len(ids) - 1):
            probs = np.zeros(self.n_words_)
            probs[ids[t + 1]] = 1.0
            logits = np.where(probs > 0, 0.0, -1e30)
            yield PredictionStep(logits, probs)

    def predict(self, ids):
        _require_fitted(self, "n_words_")
        ids = check_ids(ids, self.n_words_)
        return ids[1:].copy()


class _GraphInput:
    """Per-word graph signal: the GAT-updated global node of the word."""

    def __init__(self, graph: DictGraph, layer: GatLayer, max_nodes: int):
        self.graph = graph
        self.layer = layer
        self.max_nodes = max_nodes

    def signal(self, word_id: int, cache: dict) -> Tensor:
        if word_id not in cache:
            area = graph_area(self.graph, word_id, self.max_nodes)
            states = Tensor(np.stack([self.graph.nodes[i].vector for i in area.node_ids]))
            updated = self.layer(states, area_adjacency(area))
            center_pos = area.node_ids.index(area.center)
            cache[word_id] = ad.gather_rows(updated, [center_pos])
        return cache[word_id]


class GruLanguageModel(BaseEstimator):
    """Stacked GRU over frozen word vectors with a linear output layer."""

    def __init__(
        self,
        embeddings=None,
        hidden_dim=512,
        num_layers=3,
        lr=1e-3,
        epochs=10,
        window=32,
        seed=0,
        graph=None,
        use_graph=False,
        max_area_nodes=32,
    ):
        self.embeddings = embeddings
        self.hidden_dim = hidden_dim
        self.num_layers = num_layers
        self.lr = lr
        self.epochs = epochs
        self.window = window
        self.seed = seed
        self.graph = graph
        self.use_graph = use_graph
        self.max_area_nodes = max_area_nodes

    # -- construction -----------------------------------------------------
    def _build(self):
        if self.embeddings is None:
            raise ValueError("embeddings (vocab-aligned word vectors) are required")
        table = np.asarray(self.embeddings, dtype=np.float64)
        self.n_words_ = table.shape[0]
        d = table.shape[1]
        rng = np.random.default_rng(self.seed)
        self._embed = Embedding(table, trainable=False)
        self._graph_input = None
        in_dim = d
        if self.use_graph:
            if self.graph is None:
                raise ValueError("use_graph=True requires a dictionary graph")
            graph_dim = self.graph.nodes[0].vector.shape[0]
            self._gat = GatLayer(graph_dim, rng)
            self._graph_input = _GraphInput(self.graph, self._gat, self.max_area_nodes)
            in_dim = d + graph_dim
        self._gru = GruStack(in_dim, self.hidden_dim, self.num_layers, rng)
        self._out = Linear(self.hidden_dim, self.n_words_, rng, zero_init=True)
        self.params_ = {}
        for prefix, module in (("lm.gru", self._gru), ("lm.out", self._out)):
            for name, p in module.parameters().items():
                self.params_[f"{prefix}.{name}"] = p
        if self.use_graph:
            for name, p in self._gat.parameters().items():
                self.params_[f"gat.{name}"] = p
        self._opt = Adam(self.params_, lr=self.lr)
        self.loss_history_ = []

    def _inputs(self, ids: np.ndarray, cache: dict) -> list[Tensor]:
        rows = []
        for wid in ids:
            x = self._embed([int(wid)])  # (1, d)
            if self._graph_input is not None:
                x = ad.concat([x, self._graph_input.signal(int(wid), cache)], axis=1)
            rows.append(x)
        return rows

    def _window_logits(self, ids: np.ndarray, state, cache) -> tuple[Tensor, list]:
        outs = []
        for x in self._inputs(ids, cache):
            h, state = self._gru.step(x, state)
            outs.append(self._out(h))
        return ad.concat(outs, axis=0), state

    # -- training -----------------------------------------------------------
    def fit(self, ids, y=None):
        self._build()
        return self.partial_fit(ids, epochs=self.epochs)

    def partial_fit(self, ids, y=None, epochs=1):
        if not hasattr(self, "params_"):
            self._build()
        ids = check_ids(ids, self.n_words_)
        if len(ids) < 2:
            raise ValueError("need at least two tokens to train a next-word model")
        for _ in range(epochs):
            state = self._gru.init_state(1)
            losses = []
            for start in range(0, len(ids) - 1, self.window):
                chunk = ids[start : min(start + self.window, len(ids) - 1)]
                targets = ids[start + 1 : start + 1 + len(chunk)]
                state = [Tensor(h.data.copy()) for h in state]  # truncate backprop
                logits, state = self._window_logits(chunk, state, cache={})
                loss = ad.cross_entropy(logits, targets, reduction="mean")
                losses.append(loss.item())
                self._opt.zero_grad()
                ad.backward(loss)
                self._opt.step()
            self.loss_history_.append(float(np.mean(losses)))
        return self

    # -- inference ------------------------------------------------------------
    def predict_steps(self, ids):
        _require_fitted(self, "params_")
        ids = check_ids(ids, self.n_words_)
        with ad.no_grad():
            state = self._gru.init_state(1)
            cache: dict = {}
            for t in range(len(ids) - 1):
                x = self._inputs(ids[t : t + 1], cache)[0]
                h, state = self._gru.step(x, state)
                logits = self._out(h).data[0]
                yield PredictionStep(logits, stable_softmax(logits))

    def predict(self, ids):
        return np.array([topk_words(s, 1)[0][0] for s in self.predict_steps(ids)])


class TransformerLanguageModel(BaseEstimator):
    """Causal transformer over a fixed context window."""

    def __init__(
        self,
        n_words=None,
        hidden_dim=128,
        num_layers=8,
        num_heads=4,
        ff_mult=4,
        context_len=128,
        lr=1e-3,
        epochs=10,
        seed=0,
        graph=None,
        use_graph=False,
        max_area_nodes=32,
    ):
        self.n_words = n_words
        self.hidden_dim = hidden_dim
        self.num_layers = num_layers
        self.num_heads = num_heads
        self.ff_mult = ff_mult
        self.context_len = context_len
        self.lr = lr
        self.epochs = epochs
        self.seed = seed
        self.graph = graph
        self.use_graph = use_graph
        self.max_area_nodes = max_area_nodes

    def _build(self):
        if not self.n_words or self.n_words < 1:
            raise ValueError("n_words must be a positive integer")
        self.n_words_ = int(self.n_words)
        rng = np.random.default_rng(self.seed)
        self._graph_input = None
        embed_dim = self.hidden_dim
        if self.use_graph:
            if self.graph is None:
                raise ValueError("use_graph=True requires a dictionary graph")
            graph_dim = self.graph.nodes[0].vector.shape[0]
            if graph_dim >= self.hidden_dim:
                raise ValueError(
                    f"hidden_dim ({self.hidden_dim}) must exceed the graph width ({graph_dim})"
                )
            # token embedding narrows so [embedding; global node] fills the model width
            embed_dim = self.hidden_dim - graph_dim
            self._gat = GatLayer(graph_dim, rng)
            self._graph_input = _GraphInput(self.graph, self._gat, self.max_area_nodes)
        self._embed = Embedding.random(rng, self.n_words_, embed_dim)
        self._pos = Embedding.random(rng, self.context_len, self.hidden_dim)
        self._blocks = [
            TransformerBlock(self.hidden_dim, self.num_heads, self.ff_mult, rng)
            for _ in range(self.num_layers)
        ]
        self._ln = LayerNorm(self.hidden_dim)
        self._out = Linear(self.hidden_dim, self.n_words_, rng, zero_init=True)
        self.params_ = {}
        named = [
            ("lm.embed", self._embed),
            ("lm.pos", self._pos),
            *((f"lm.block{i}", b) for i, b in enumerate(self._blocks)),
            ("lm.ln", self._ln),
            ("lm.out", self._out),
        ]
        for prefix, module in named:
            for name, p in module.parameters().items():
                self.params_[f"{prefix}.{name}"] = p
        if self.use_graph:
            for name, p in self._gat.parameters().items():
                self.params_[f"gat.{name}"] = p
        self._opt = Adam(self.params_, lr=self.lr)
        self.loss_history_ = []

    def _forward(self, ids: np.ndarray, cache: dict) -> Tensor:
        if len(ids) > self.context_len:
            raise ValueError(
                f"window of {len(ids)} tokens exceeds the context length {self.context_len}"
            )
        x = self._embed(list(ids))
        if self._graph_input is not None:
            rows = [self._graph_input.signal(int(w), cache) for w in ids]
            x = ad.concat([x, ad.concat(rows, axis=0)], axis=1)
        x = x + self._pos(list(range(len(ids))))
        mask = causal_mask(len(ids))
        for block in self._blocks:
            x = block(x, mask)
        return self._out(self._ln(x))

    def fit(self, ids, y=None):
        self._build()
        return self.partial_fit(ids, epochs=self.epochs)

    def partial_fit(self, ids, y=None, epochs=1):
        if not hasattr(self, "params_"):
            self._build()
        ids = check_ids(ids, self.n_words_)
        if len(ids) < 2:
            raise ValueError("need at least two tokens to train a next-word model")
        for _ in range(epochs):
            losses = []
            for start in range(0, len(ids) - 1, self.context_len):
                chunk = ids[start : min(start + self.context_len, len(ids) - 1)]
                targets = ids[start + 1 : start + 1 + len(chunk)]
                logits = self._forward(chunk, cache={})
                loss = ad.cross_entropy(logits, targets, reduction="mean")
                losses.append(loss.item())
                self._opt.zero_grad()
                ad.backward(loss)
                self._opt.step()
            self.loss_history_.append(float(np.mean(losses)))
        return self

    def predict_steps(self, ids):
        """Sliding-window next-word distributions for positions 0..T-2."""
        _require_fitted(self, "params_")
        ids = check_ids(ids, self.n_words_)
        with ad.no_grad():
            cache: dict = {}
            for t in range(len(ids) - 1):
                lo = max(0, t + 1 - self.context_len)
                logits = self._forward(ids[lo : t + 1], cache).data[-1]
                yield PredictionStep(logits, stable_softmax(logits))

    def predict(self, ids):
        return np.array([topk_words(s, 1)[0][0] for s in self.predict_steps(ids)])
