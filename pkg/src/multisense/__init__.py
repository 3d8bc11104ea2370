"""Joint next-word / next-sense language modelling with a dictionary graph."""

__version__ = "0.1.0"

from . import (  # noqa: F401
    autodiff,
    checkpoint,
    corpus,
    evaluation,
    gat,
    graph,
    layers,
    optim,
    senselm,
    wordlm,
)
