"""Perplexity and accuracy scoring for paired word/sense predictions.

A run pairs a word-level language model with one sense variant and
walks a labelled token stream; every position from the second token on
is predicted. The report carries three accuracies:

* senses — argmax sense over all predicted positions (dummy senses count);
* polysem — restricted to positions whose true word has more than one
  non-dummy sense;
* globals — argmax word over all predicted positions.

Sense perplexity is always computed but flagged ``non-significant`` for
the localized variants: their fixed ε floor on non-candidate senses
dominates the product whenever the truth falls outside the candidates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import TokenStream, Vocabulary
from .senselm import (
    MostFrequentSense,
    SelectKPredictor,
    SelfAttentionPredictor,
    SenseContextPredictor,
    predicted_sense,
)

REPORT_FORMAT = "multisense-eval-report"
REPORT_VERSION = 1

NON_SIGNIFICANT = "non-significant"

LOCALIZED_VARIANTS = (
    MostFrequentSense,
    SelectKPredictor,
    SenseContextPredictor,
    SelfAttentionPredictor,
)


def perplexity(probabilities) -> float:
    """exp of the mean negative natural log of the true-token probabilities."""
    probs = np.asarray(probabilities, dtype=np.float64)
    if probs.ndim != 1 or len(probs) == 0:
        raise ValueError("perplexity needs a non-empty 1-D probability sequence")
    if np.any(probs <= 0):
        where = int(np.argmax(probs <= 0))
        raise ValueError(f"zero probability assigned to the true token at position {where}")
    return float(np.exp(-np.mean(np.log(probs))))


@dataclass(frozen=True)
class AccuracySuite:
    senses_acc: float
    polysem_acc: float
    globals_acc: float


def accuracy_suite(word_steps, sense_steps, stream: TokenStream, vocab: Vocabulary) -> AccuracySuite:
    """Exact-match argmax accuracies against the stream's targets."""
    word_steps = list(word_steps)
    sense_steps = list(sense_steps)
    word_truth = stream.word_ids[1:]
    sense_truth = stream.sense_ids[1:]
    if len(word_steps) != len(word_truth) or len(sense_steps) != len(sense_truth):
        raise ValueError(
            f"predictions misaligned with the stream: expected {len(word_truth)} "
            f"positions, got {len(word_steps)} word and {len(sense_steps)} sense steps"
        )
    words_right = senses_right = 0
    poly_total = poly_right = 0
    for t in range(len(word_truth)):
        word_hit = int(np.argmax(word_steps[t].word_probs)) == word_truth[t]
        sense_hit = predicted_sense(sense_steps[t]) == sense_truth[t]
        words_right += word_hit
        senses_right += sense_hit
        if vocab.nondummy_sense_count(int(word_truth[t])) > 1:
            poly_total += 1
            poly_right += sense_hit
    n = len(word_truth)
    return AccuracySuite(
        senses_acc=senses_right / n,
        polysem_acc=poly_right / poly_total if poly_total else 1.0,
        globals_acc=words_right / n,
    )


@dataclass
class EvalReport:
    """One evaluation row: perplexities, accuracies and the run configuration."""

    word_ppl: float
    sense_ppl: float
    sense_ppl_flag: str | None
    senses_acc: float
    polysem_acc: float
    globals_acc: float
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "version": REPORT_VERSION,
            "word-ppl": self.word_ppl,
            "sense-ppl": self.sense_ppl,
            "sense-ppl-flag": self.sense_ppl_flag,
            "senses-acc": self.senses_acc,
            "polysem-acc": self.polysem_acc,
            "globals-acc": self.globals_acc,
            "config": self.config,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "EvalReport":
        if payload.get("format") != REPORT_FORMAT:
            raise ValueError(f"not a {REPORT_FORMAT} document")
        return cls(
            word_ppl=payload["word-ppl"],
            sense_ppl=payload["sense-ppl"],
            sense_ppl_flag=payload["sense-ppl-flag"],
            senses_acc=payload["senses-acc"],
            polysem_acc=payload["polysem-acc"],
            globals_acc=payload["globals-acc"],
            config=dict(payload.get("config", {})),
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "EvalReport":
        return cls.from_json(json.loads(Path(path).read_text()))


def evaluate(word_model, sense_model, stream: TokenStream, vocab: Vocabulary, config=None) -> EvalReport:
    """Score one (word model, sense variant) pairing over a labelled stream."""
    word_ids = stream.word_ids
    sense_ids = stream.sense_ids
    if len(word_ids) < 2:
        raise ValueError("evaluation needs a stream of at least two tokens")
    word_steps = list(word_model.predict_steps(word_ids))
    localized = isinstance(sense_model, LOCALIZED_VARIANTS)
    if localized:
        sense_steps = list(sense_model.predict_steps(word_ids, word_steps, sense_ids))
    else:
        sense_steps = list(sense_model.predict_steps(sense_ids))
    acc = accuracy_suite(word_steps, sense_steps, stream, vocab)
    word_ppl = perplexity(
        [word_steps[t].word_probs[word_ids[t + 1]] for t in range(len(word_steps))]
    )
    sense_ppl = perplexity(
        [sense_steps[t].sense_probs[sense_ids[t + 1]] for t in range(len(sense_steps))]
    )
    return EvalReport(
        word_ppl=word_ppl,
        sense_ppl=sense_ppl,
        sense_ppl_flag=NON_SIGNIFICANT if localized else None,
        senses_acc=acc.senses_acc,
        polysem_acc=acc.polysem_acc,
        globals_acc=acc.globals_acc,
        config=dict(config or {}),
    )


# -- plain-text rendering -------------------------------------------------------

_COLUMNS = (
    ("variant", "variant"),
    ("lm", "lm"),
    ("K", "k"),
    ("context", "context"),
)


def _ppl_cell(value: float, flag: str | None) -> str:
    cell = f"{value:.2f}" if value < 1e6 else f"{value:.3e}"
    return f"{cell} ({flag})" if flag else cell


def format_report_table(reports) -> str:
    """Aligned text table, one row per report."""
    header = [label for label, _ in _COLUMNS] + [
        "senses ACC", "polysem ACC", "globals ACC", "words PPL", "senses PPL",
    ]
    rows = []
    for r in reports:
        row = [str(r.config.get(key, "-")) for _, key in _COLUMNS]
        row += [
            f"{r.senses_acc:.4f}",
            f"{r.polysem_acc:.4f}",
            f"{r.globals_acc:.4f}",
            _ppl_cell(r.word_ppl, None),
            _ppl_cell(r.sense_ppl, r.sense_ppl_flag),
        ]
        rows.append(row)
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
              for i in range(len(header))]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"
