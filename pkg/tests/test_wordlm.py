"""Word-level language models: oracle behaviour, uniform start, training."""
import numpy as np
import pytest
from sklearn.exceptions import NotFittedError

from multisense.corpus import (
    Lemmatizer,
    build_vocab,
    encode_plain,
    encode_stream,
    load_inventory,
    parse_labelled,
    parse_pretrain,
)
from multisense.data import toy_paths
from multisense.graph import WordVectorStore, build_graph, embedding_matrix
from multisense.wordlm import (
    GoldLanguageModel,
    GruLanguageModel,
    PredictionStep,
    TransformerLanguageModel,
    check_ids,
    topk_words,
)


@pytest.fixture(scope="module")
def toy():
    paths = toy_paths()
    inv = load_inventory(paths["inventory"])
    pre = parse_pretrain(paths["pretrain"])
    lab = parse_labelled(paths["labelled"])
    vocab = build_vocab(pre, lab, inv, min_freq=2)
    lem = Lemmatizer.from_inventory(inv)
    store = WordVectorStore.load(paths["vectors"], seed=0)
    table = embedding_matrix(vocab, store)
    stream = encode_stream(lab, vocab, lem)
    plain = encode_plain(pre, vocab, lem)
    return vocab, store, table, stream, plain, inv


def perplexity_of(model, ids):
    logp = [
        np.log(step.word_probs[ids[t + 1]])
        for t, step in enumerate(model.predict_steps(ids))
    ]
    return float(np.exp(-np.mean(logp)))


# -- topk -----------------------------------------------------------------------


def test_topk_orders_by_probability():
    probs = np.array([0.1, 0.5, 0.4])
    step = PredictionStep(np.log(probs), probs)
    assert [w for w, _ in topk_words(step, 3)] == [1, 2, 0]


def test_topk_breaks_ties_by_ascending_id():
    probs = np.array([0.25, 0.25, 0.25, 0.25])
    step = PredictionStep(np.zeros(4), probs)
    assert [w for w, _ in topk_words(step, 4)] == [0, 1, 2, 3]
    # oracle: exhaustive stable sort on (-p, id)
    rng = np.random.default_rng(0)
    for _ in range(25):
        p = rng.choice([0.1, 0.2, 0.3], size=6)
        p = p / p.sum()
        step = PredictionStep(np.log(p), p)
        expected = sorted(range(6), key=lambda i: (-p[i], i))
        assert [w for w, _ in topk_words(step, 6)] == expected


def test_topk_validates_k():
    step = PredictionStep(np.zeros(3), np.full(3, 1 / 3))
    with pytest.raises(ValueError):
        topk_words(step, 0)
    with pytest.raises(ValueError):
        topk_words(step, 4)


def test_check_ids_rejects_out_of_range():
    with pytest.raises(ValueError, match="range"):
        check_ids(np.array([0, 5]), 5)
    with pytest.raises(ValueError, match="integer"):
        check_ids(np.array([0.5]), 5)


# -- gold oracle -------------------------------------------------------------------


def test_gold_is_one_hot_on_truth(toy):
    vocab, _, _, stream, _, _ = toy
    gold = GoldLanguageModel(n_words=vocab.n_words).fit()
    ids = stream.word_ids[:50]
    for t, step in enumerate(gold.predict_steps(ids)):
        assert step.word_probs[ids[t + 1]] == 1.0
        assert step.word_probs.sum() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_array_equal(gold.predict(ids), ids[1:])


def test_gold_perplexity_is_one(toy):
    vocab, _, _, stream, _, _ = toy
    gold = GoldLanguageModel(n_words=vocab.n_words).fit()
    assert perplexity_of(gold, stream.word_ids) == pytest.approx(1.0, abs=1e-12)


def test_unfitted_models_refuse_to_predict(toy):
    _, _, table, stream, _, _ = toy
    with pytest.raises(NotFittedError):
        list(GoldLanguageModel(n_words=4).predict_steps(np.array([0, 1])))
    with pytest.raises(NotFittedError):
        list(GruLanguageModel(embeddings=table).predict_steps(stream.word_ids[:5]))


# -- uniform start ---------------------------------------------------------------


def test_untrained_gru_is_uniform(toy):
    vocab, _, table, stream, _, _ = toy
    model = GruLanguageModel(embeddings=table, hidden_dim=32, epochs=0)
    model.fit(stream.word_ids)
    step = next(model.predict_steps(stream.word_ids[:2]))
    np.testing.assert_allclose(step.word_probs, 1.0 / vocab.n_words, atol=1e-12)
    assert perplexity_of(model, stream.word_ids[:80]) == pytest.approx(
        vocab.n_words, abs=1e-9
    )


def test_untrained_transformer_is_uniform(toy):
    vocab, _, _, stream, _, _ = toy
    model = TransformerLanguageModel(
        n_words=vocab.n_words, hidden_dim=16, num_layers=1, num_heads=2,
        context_len=16, epochs=0,
    )
    model.fit(stream.word_ids)
    assert perplexity_of(model, stream.word_ids[:60]) == pytest.approx(
        vocab.n_words, abs=1e-9
    )


# -- training ------------------------------------------------------------------


def test_gru_loss_decreases_over_first_epochs(toy):
    _, _, table, stream, _, _ = toy
    model = GruLanguageModel(
        embeddings=table, hidden_dim=48, num_layers=2, lr=5e-3, epochs=5, seed=0
    )
    model.fit(stream.word_ids)
    hist = model.loss_history_
    assert len(hist) == 5
    assert all(b < a for a, b in zip(hist, hist[1:])), hist


def test_transformer_loss_decreases(toy):
    vocab, _, _, stream, _, _ = toy
    model = TransformerLanguageModel(
        n_words=vocab.n_words, hidden_dim=16, num_layers=1, num_heads=2,
        context_len=16, lr=3e-3, epochs=5, seed=0,
    )
    model.fit(stream.word_ids[:200])
    hist = model.loss_history_
    assert all(b < a for a, b in zip(hist, hist[1:])), hist


def test_gru_fit_is_deterministic(toy):
    _, _, table, stream, _, _ = toy

    def run():
        m = GruLanguageModel(embeddings=table, hidden_dim=24, epochs=2, seed=3, lr=2e-3)
        m.fit(stream.word_ids[:120])
        return np.concatenate([p.data.reshape(-1) for p in m.params_.values()])

    np.testing.assert_array_equal(run(), run())


def test_pretrain_then_finetune_stages(toy):
    _, _, table, stream, plain, _ = toy
    model = GruLanguageModel(embeddings=table, hidden_dim=24, epochs=1, seed=0, lr=2e-3)
    model.fit(plain[:200])
    before = len(model.loss_history_)
    model.partial_fit(stream.word_ids[:120], epochs=2)
    assert len(model.loss_history_) == before + 2


def test_graph_signal_changes_predictions(toy):
    vocab, store, table, stream, _, inv = toy
    g = build_graph(inv, store, vocab)
    ids = stream.word_ids[:80]
    plain = GruLanguageModel(embeddings=table, hidden_dim=24, epochs=1, seed=1, lr=2e-3)
    plain.fit(ids)
    graphy = GruLanguageModel(
        embeddings=table, hidden_dim=24, epochs=1, seed=1, lr=2e-3,
        graph=g, use_graph=True,
    )
    graphy.fit(ids)
    assert any(n.startswith("gat.") for n in graphy.params_)
    p1 = next(plain.predict_steps(ids[:10])).word_probs
    p2 = next(graphy.predict_steps(ids[:10])).word_probs
    assert not np.allclose(p1, p2)


def test_transformer_rejects_long_windows(toy):
    vocab, _, _, stream, _, _ = toy
    model = TransformerLanguageModel(
        n_words=vocab.n_words, hidden_dim=16, num_layers=1, num_heads=2,
        context_len=8, epochs=0,
    )
    model.fit(stream.word_ids)
    with pytest.raises(ValueError, match="context"):
        model._forward(stream.word_ids[:9], cache={})


def test_estimator_params_round_trip(toy):
    _, _, table, _, _, _ = toy
    model = GruLanguageModel(embeddings=table, hidden_dim=24, epochs=3)
    params = model.get_params()
    assert params["hidden_dim"] == 24
    clone = GruLanguageModel(**params)
    assert clone.get_params()["epochs"] == 3
