"""Command line front end: corpora in, artifacts out.

Every subcommand reads the same flat run configuration (file plus flag
overrides) and writes its products into ``--out-dir`` together with a
``run-config.json`` provenance echo, so a finished directory documents
how it was made.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .checkpoint import assign_params, load_checkpoint, save_checkpoint
from .config import CONTEXT_KINDS, MODEL_KINDS, VARIANTS, ConfigError, RunConfig
from .corpus import (
    CorpusError,
    Lemmatizer,
    build_vocab,
    encode_plain,
    encode_stream,
    load_inventory,
    parse_labelled,
    parse_pretrain,
    split_docs,
)
from .evaluation import evaluate, format_report_table
from .graph import WordVectorStore, build_graph, embedding_matrix
from .senselm import (
    GruContext,
    GruSenseModel,
    MostFrequentSense,
    SelectKPredictor,
    SelfAttentionPredictor,
    SenseContextPredictor,
    SenseStatistics,
    TransformerSenseModel,
    build_sense_stats,
)
from .wordlm import (
    GoldLanguageModel,
    GruLanguageModel,
    TransformerLanguageModel,
    stable_softmax,
    topk_words,
)

DEFAULT_PROMPT = "John sat on the bank of the river and watched the"

WORD_LM_FILE = "word-lm.json"
SENSE_LM_FILE = "sense-lm.json"
SENSE_STATS_FILE = "sense-stats.json"

_STATS_VARIANTS = ("mfs", "sensecontext", "selfattn")
_GRU_HEAD_VARIANTS = ("selectk", "dense-gru")


# ---------------------------------------------------------------------------
# Shared world: everything rebuilt deterministically from the corpora


class World:
    """Corpora, vocabulary and vectors resolved from one configuration."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        paths = cfg.resolved_paths()
        self.inventory = load_inventory(paths["inventory"])
        self.pretrain_docs = parse_pretrain(paths["pretrain"])
        self.labelled_docs = parse_labelled(paths["labelled"])
        self.vocab = build_vocab(
            self.pretrain_docs, self.labelled_docs, self.inventory, min_freq=cfg.min_freq
        )
        self.lemmatizer = Lemmatizer.from_inventory(self.inventory)
        self.store = WordVectorStore.load(paths["vectors"], seed=cfg.seed)
        self.embeddings = embedding_matrix(self.vocab, self.store)
        self._graph = None

    @property
    def graph(self):
        if self._graph is None:
            self._graph = build_graph(self.inventory, self.store, self.vocab)
        return self._graph

    def split_streams(self):
        train, valid, test = split_docs(self.labelled_docs, seed=self.cfg.seed)
        encode = lambda docs: encode_stream(docs, self.vocab, self.lemmatizer)
        return encode(train), encode(valid), encode(test)


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg.save(out / "run-config.json")
    return out


def _context_encoder(cfg: RunConfig, dim: int):
    if cfg.context == "gru":
        return GruContext(dim, seed=cfg.seed)
    return None  # average is the statistics default


# ---------------------------------------------------------------------------
# Model construction and checkpoint plumbing


def _fresh_word_model(cfg: RunConfig, world: World):
    if cfg.lm == "gold":
        return GoldLanguageModel(n_words=world.vocab.n_words).fit()
    graph = world.graph if cfg.use_graph else None
    if cfg.lm == "gru":
        return GruLanguageModel(
            embeddings=world.embeddings,
            hidden_dim=cfg.hidden_dim,
            num_layers=cfg.num_layers,
            lr=cfg.lr,
            epochs=cfg.epochs,
            window=cfg.window,
            seed=cfg.seed,
            graph=graph,
            use_graph=cfg.use_graph,
            max_area_nodes=cfg.max_area_nodes,
        )
    return TransformerLanguageModel(
        n_words=world.vocab.n_words,
        hidden_dim=cfg.hidden_dim,
        num_layers=cfg.num_layers,
        num_heads=cfg.num_heads,
        ff_mult=cfg.ff_mult,
        context_len=cfg.context_len,
        lr=cfg.lr,
        epochs=cfg.epochs,
        seed=cfg.seed,
        graph=graph,
        use_graph=cfg.use_graph,
        max_area_nodes=cfg.max_area_nodes,
    )


def _fresh_sense_head(cfg: RunConfig, world: World):
    if cfg.variant == "dense-transformer":
        return TransformerSenseModel(
            n_senses=world.vocab.n_senses,
            hidden_dim=cfg.hidden_dim,
            num_layers=cfg.num_layers,
            num_heads=cfg.num_heads,
            ff_mult=cfg.ff_mult,
            context_len=cfg.context_len,
            lr=cfg.lr,
            epochs=cfg.epochs,
            seed=cfg.seed,
        )
    return GruSenseModel(
        n_senses=world.vocab.n_senses,
        embed_dim=cfg.embed_dim,
        hidden_dim=cfg.hidden_dim,
        num_layers=cfg.num_layers,
        lr=cfg.lr,
        epochs=cfg.epochs,
        window=cfg.window,
        seed=cfg.seed,
    )


def _restore(model, path: Path, expected_kind: str, use_graph: bool | None = None):
    """Build the estimator's parameters, then overwrite them from a checkpoint."""
    arrays, meta = load_checkpoint(path)
    kind = meta.get("kind")
    if kind != expected_kind:
        raise ConfigError(
            f"{path} holds a {kind!r} checkpoint but the configuration asks for {expected_kind!r}"
        )
    if use_graph is not None and meta.get("use_graph") not in (None, use_graph):
        raise ConfigError(
            f"{path} was trained with use_graph={meta['use_graph']}; "
            f"the configuration asks for use_graph={use_graph}"
        )
    model.partial_fit(np.array([0, 1], dtype=np.int64), epochs=0)
    assign_params(model.params_, arrays)
    return model


def _load_word_model(cfg: RunConfig, world: World, out: Path):
    if cfg.lm == "gold":
        return GoldLanguageModel(n_words=world.vocab.n_words).fit()
    path = out / WORD_LM_FILE
    if not path.exists():
        raise FileNotFoundError(f"word model checkpoint does not exist: {path} (run pretrain first)")
    return _restore(_fresh_word_model(cfg, world), path, cfg.lm, use_graph=cfg.use_graph)


def _load_sense_stats(cfg: RunConfig, out: Path) -> SenseStatistics:
    path = out / SENSE_STATS_FILE
    if not path.exists():
        raise FileNotFoundError(f"sense statistics do not exist: {path} (run train first)")
    return SenseStatistics.load(path)


def _load_sense_head(cfg: RunConfig, world: World, out: Path):
    path = out / SENSE_LM_FILE
    if not path.exists():
        raise FileNotFoundError(f"sense model checkpoint does not exist: {path} (run train first)")
    return _restore(_fresh_sense_head(cfg, world), path, cfg.variant)


def _load_sense_model(cfg: RunConfig, world: World, out: Path):
    if cfg.variant == "mfs":
        return MostFrequentSense(world.vocab, _load_sense_stats(cfg, out))
    if cfg.variant == "selectk":
        return SelectKPredictor(world.vocab, _load_sense_head(cfg, world, out), k=cfg.k)
    if cfg.variant in ("sensecontext", "selfattn"):
        stats = _load_sense_stats(cfg, out)
        cls = SenseContextPredictor if cfg.variant == "sensecontext" else SelfAttentionPredictor
        return cls(world.vocab, stats, world.embeddings, k=cfg.k)
    return _load_sense_head(cfg, world, out)  # dense-gru / dense-transformer


# ---------------------------------------------------------------------------
# Subcommands


def cmd_build_vocab(cfg: RunConfig, args) -> None:
    world = World(cfg)
    out = _out_dir(cfg)
    path = out / "vocab.json"
    world.vocab.save(path)
    print(f"vocabulary: {world.vocab.n_words} words, {world.vocab.n_senses} senses -> {path}")


def cmd_build_graph(cfg: RunConfig, args) -> None:
    world = World(cfg)
    out = _out_dir(cfg)
    path = out / "graph.json"
    graph = world.graph
    graph.save(path)
    glossless = len(graph.report.get("glossless_senses", []))
    print(
        f"graph: {graph.n_nodes} nodes, {graph.n_edges} edges "
        f"({glossless} glossless senses) -> {path}"
    )


def cmd_pretrain(cfg: RunConfig, args) -> None:
    if cfg.lm == "gold":
        raise ConfigError("the gold language model has no parameters to pretrain")
    world = World(cfg)
    ids = encode_plain(world.pretrain_docs, world.vocab, world.lemmatizer)
    model = _fresh_word_model(cfg, world)
    model.fit(ids)
    out = _out_dir(cfg)
    path = out / WORD_LM_FILE
    meta = {"kind": cfg.lm, "seed": cfg.seed, "epochs": cfg.epochs, "use_graph": cfg.use_graph,
            "final_loss": model.loss_history_[-1] if model.loss_history_ else None}
    save_checkpoint(path, model.params_, meta=meta)
    loss = meta["final_loss"]
    tail = f", final loss {loss:.4f}" if loss is not None else ""
    print(f"pretrained {cfg.lm} word model on {len(ids)} tokens{tail} -> {path}")


def cmd_train(cfg: RunConfig, args) -> None:
    world = World(cfg)
    train_stream, _, _ = world.split_streams()
    out = _out_dir(cfg)
    if cfg.variant in _STATS_VARIANTS:
        stats = build_sense_stats(
            train_stream,
            world.vocab,
            world.embeddings,
            c=cfg.context_window,
            context=_context_encoder(cfg, world.embeddings.shape[1]),
        )
        path = out / SENSE_STATS_FILE
        stats.save(path)
        seen = int(np.count_nonzero(stats.frequency))
        print(f"sense statistics: {seen}/{stats.n_senses} senses observed -> {path}")
    else:
        head = _fresh_sense_head(cfg, world)
        head.fit(train_stream.sense_ids)
        path = out / SENSE_LM_FILE
        meta = {"kind": cfg.variant, "seed": cfg.seed, "epochs": cfg.epochs,
                "final_loss": head.loss_history_[-1] if head.loss_history_ else None}
        save_checkpoint(path, head.params_, meta=meta)
        loss = meta["final_loss"]
        tail = f", final loss {loss:.4f}" if loss is not None else ""
        print(f"trained {cfg.variant} sense model on "
              f"{len(train_stream.sense_ids)} tokens{tail} -> {path}")


def cmd_evaluate(cfg: RunConfig, args) -> None:
    world = World(cfg)
    _, _, test_stream = world.split_streams()
    out = _out_dir(cfg)
    word_model = _load_word_model(cfg, world, out)
    sense_model = _load_sense_model(cfg, world, out)
    echo = {
        "variant": cfg.variant,
        "lm": cfg.lm,
        "k": cfg.k,
        "context": cfg.context,
        "use-graph": cfg.use_graph,
        "seed": cfg.seed,
    }
    report = evaluate(word_model, sense_model, test_stream, world.vocab, config=echo)
    path = out / "report.json"
    report.save(path)
    print(format_report_table([report]), end="")
    print(f"report -> {path}")


def cmd_predict(cfg: RunConfig, args) -> None:
    if cfg.lm == "gold":
        raise ConfigError("the gold language model cannot score unseen text; use lm=gru or transformer")
    world = World(cfg)
    out = _out_dir(cfg)
    word_model = _load_word_model(cfg, world, out)

    tokens = args.text.split()
    if not tokens:
        raise ConfigError("prediction needs a non-empty --text prompt")
    ids = encode_plain([tokens], world.vocab, world.lemmatizer)[:-1]  # drop sentence end
    # one extra position so the final step carries the continuation distribution
    probe = np.concatenate([ids, [world.vocab.eos_id]])
    step = None
    for step in word_model.predict_steps(probe):
        pass

    scorer = _sense_scorer(cfg, world, out, ids)
    print(f"prompt: {args.text}")
    for wid, prob in topk_words(step, cfg.k):
        form = world.vocab.word_form(wid)
        print(f"{form:>16}  p={prob:.4f}")
        for sid, score in scorer(wid):
            print(f"{'':>16}  {world.vocab.sense_key(sid):<28} {score:.4f}")


def _sense_scorer(cfg: RunConfig, world: World, out: Path, prompt_ids: np.ndarray):
    """Per-word sense scores for the continuation position, variant-specific."""
    vocab = world.vocab

    def from_scores(wid, scores):
        senses = vocab.senses_of(wid)
        probs = stable_softmax(np.asarray(scores, dtype=np.float64))
        return list(zip(senses, probs))

    if cfg.variant in ("sensecontext", "selfattn"):
        stats = _load_sense_stats(cfg, out)
        cls = SenseContextPredictor if cfg.variant == "sensecontext" else SelfAttentionPredictor
        predictor = cls(vocab, stats, world.embeddings, k=cfg.k)
        window = world.embeddings[prompt_ids[-predictor.context_window:]]
        local = predictor.context.encode(window)

        def score(wid):
            return from_scores(wid, predictor._score(local, vocab.senses_of(wid)))

        return score

    if cfg.variant in ("selectk", "dense-gru", "dense-transformer"):
        head = _load_sense_head(cfg, world, out)
        seed_sense = vocab.dummy_sense_id(int(prompt_ids[0]))
        dist = None
        if cfg.variant == "dense-transformer":
            sense_ids = [vocab.dummy_sense_id(int(w)) for w in prompt_ids]
            probe = np.array(sense_ids + [seed_sense], dtype=np.int64)
            for sense_step in head.predict_steps(probe):
                pass
            dist = sense_step.sense_probs
        else:
            state = head.init_state()
            prev = seed_sense
            for _ in range(len(prompt_ids)):
                logits, state = head.step_logits(prev, state)
                prev = int(np.argmax(logits))
            dist = stable_softmax(logits)

        def score(wid):
            senses = vocab.senses_of(wid)
            mass = np.array([dist[s] for s in senses], dtype=np.float64)
            total = mass.sum()
            probs = mass / total if total > 0 else np.full(len(senses), 1.0 / len(senses))
            return list(zip(senses, probs))

        return score

    stats = _load_sense_stats(cfg, out)  # mfs

    def score(wid):
        senses = vocab.senses_of(wid)
        counts = np.array([stats.frequency[s] for s in senses], dtype=np.float64)
        total = counts.sum()
        probs = counts / total if total > 0 else np.full(len(senses), 1.0 / len(senses))
        return list(zip(senses, probs))

    return score


# ---------------------------------------------------------------------------
# Argument parsing


_COMMANDS = (
    ("build-vocab", cmd_build_vocab, "derive the word/sense vocabulary and save it"),
    ("build-graph", cmd_build_graph, "assemble the dictionary graph and save it"),
    ("pretrain", cmd_pretrain, "train the word language model on the pretrain corpus"),
    ("train", cmd_train, "train or tabulate the sense component on the labelled train split"),
    ("evaluate", cmd_evaluate, "score word and sense models on the held-out test split"),
    ("predict", cmd_predict, "show next-word candidates with their senses for a prompt"),
)

_OVERRIDE_KEYS = (
    "seed", "out_dir", "variant", "k", "lm", "context",
    "context_len", "context_window", "epochs", "use_graph",
)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=Path, default=None,
                     help="JSON or TOML run configuration file")
    sub.add_argument("--seed", type=int, default=None, help="seed for every random choice")
    sub.add_argument("--out-dir", dest="out_dir", default=None,
                     help="directory for checkpoints, statistics and reports")
    sub.add_argument("--variant", choices=VARIANTS, default=None,
                     help="sense prediction strategy")
    sub.add_argument("--k", type=int, default=None,
                     help="number of top words whose senses form the candidate set")
    sub.add_argument("--lm", choices=MODEL_KINDS, default=None, help="word language model kind")
    sub.add_argument("--context", choices=CONTEXT_KINDS, default=None,
                     help="occurrence context encoder")
    sub.add_argument("--context-len", dest="context_len", type=int, default=None,
                     help="transformer attention window")
    sub.add_argument("--context-window", dest="context_window", type=int, default=None,
                     help="preceding tokens folded into each occurrence context")
    sub.add_argument("--epochs", type=int, default=None, help="training epochs")
    graph = sub.add_mutually_exclusive_group()
    graph.add_argument("--use-graph", dest="use_graph", action="store_true", default=None,
                       help="feed graph-attention summaries to the language model")
    graph.add_argument("--no-use-graph", dest="use_graph", action="store_false",
                       help="disable the graph signal even if the config enables it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multisense",
        description="joint next-word / next-sense language modelling",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, fn, help_text in _COMMANDS:
        sub = commands.add_parser(name, help=help_text)
        _add_common(sub)
        if name == "predict":
            sub.add_argument("--text", default=DEFAULT_PROMPT,
                             help="prompt whose continuation should be scored")
        sub.set_defaults(func=fn)
    return parser


def _configure(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config is not None else RunConfig()
    overrides = {
        key: getattr(args, key)
        for key in _OVERRIDE_KEYS
        if getattr(args, key, None) is not None
    }
    return cfg.apply_overrides(overrides).validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _configure(args)
        args.func(cfg, args)
    except (ConfigError, CorpusError, FileNotFoundError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except KeyError as err:
        print(f"error: {err.args[0] if err.args else err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
