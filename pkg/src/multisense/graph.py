"""Heterogeneous dictionary graph over words, senses and glosses.

Nodes come in four kinds: one *global* node per vocabulary word, one *sense*
node per sense (dummy senses included), and one *definition*/*example* node
per gloss sentence.  Edges connect words to their senses, senses to their
glosses, synonym/antonym pairs (both at the sense level and between the parent
globals, so related words sit one hop apart), and inflected forms to their
parent form.  Node vectors are initialised from word embeddings: a gloss node
is the average of its tokens' vectors, a sense node the average of its gloss
nodes, a global or dummy-sense node the word's own vector.

Global node ids coincide with vocabulary word ids, so a word id addresses its
global node directly.  The graph is immutable after build; area extraction is
read-only.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import UNK, Inventory, Vocabulary

GLOBAL = "global"
SENSE = "sense"
DEFINITION = "definition"
EXAMPLE = "example"

HAS_SENSE = "has-sense"
HAS_DEFINITION = "has-definition"
HAS_EXAMPLE = "has-example"
SYNONYM = "synonym"
ANTONYM = "antonym"
LEMMA_OF = "lemma-of"

# Area truncation keeps prediction targets first, then related words, then
# gloss material; ties break on ascending node id.
KIND_PRIORITY = {SENSE: 0, GLOBAL: 1, DEFINITION: 2, EXAMPLE: 3}

DEFAULT_MAX_AREA_NODES = 32

GRAPH_FORMAT = "multisense-graph"


class WordVectorStore:
    """Word vectors from a text file, with deterministic fill-in for gaps.

    Words missing from the file get a vector drawn from normal(0, 0.1) seeded
    by a hash of the word and the store seed, so every run generates the same
    vector for the same word.  Generated vectors persist in the store (and in
    any file it is saved to) and their words are listed in ``generated``.
    """

    def __init__(self, vectors: dict[str, np.ndarray], dim: int, seed: int = 0):
        self.vectors = {w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}
        self.dim = int(dim)
        self.seed = int(seed)
        self.generated: set[str] = set()
        if UNK not in self.vectors:
            self.require(UNK)

    @classmethod
    def load(cls, path, seed: int = 0) -> "WordVectorStore":
        vectors: dict[str, np.ndarray] = {}
        dim = None
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            parts = line.split()
            if not parts:
                continue
            word, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise ValueError(f"{path}:{lineno}: no vector components")
            if len(values) != dim:
                raise ValueError(
                    f"{path}:{lineno}: expected {dim} components, got {len(values)}"
                )
            vectors[word] = np.array([float(v) for v in values], dtype=np.float64)
        if dim is None:
            raise ValueError(f"{path}: empty vector file")
        return cls(vectors, dim, seed)

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def lookup(self, word: str) -> np.ndarray:
        """The word's vector, or the <unk> vector for out-of-store words."""
        return self.vectors.get(word, self.vectors[UNK])

    def require(self, word: str) -> np.ndarray:
        """The word's vector, generating and persisting one if missing."""
        if word not in self.vectors:
            digest = hashlib.blake2b(word.encode("utf-8"), digest_size=8).digest()
            rng = np.random.default_rng([self.seed, int.from_bytes(digest, "little")])
            self.vectors[word] = rng.normal(0.0, 0.1, size=self.dim)
            self.generated.add(word)
        return self.vectors[word]

    def save(self, path) -> None:
        rows = [
            f"{w} " + " ".join(repr(float(x)) for x in self.vectors[w])
            for w in sorted(self.vectors)
        ]
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


def embedding_matrix(vocab: Vocabulary, store: WordVectorStore) -> np.ndarray:
    """Word vectors for every vocabulary entry, row index == word id."""
    return np.stack([store.require(e.word_form) for e in vocab.words])


def sentence_embed(tokens, store: WordVectorStore) -> np.ndarray:
    """Mean of the tokens' word vectors; unknown tokens contribute <unk>."""
    toks = list(tokens)
    if not toks:
        raise ValueError("cannot embed an empty token list")
    return np.mean([store.lookup(t) for t in toks], axis=0)


@dataclass(frozen=True)
class Node:
    id: int
    kind: str
    label: str
    vector: np.ndarray


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    relation: str


@dataclass(frozen=True)
class GraphArea:
    """A bounded 1-hop neighbourhood around a global node."""

    center: int
    node_ids: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.node_ids)


class DictGraph:
    def __init__(self, nodes: list[Node], edges: list[Edge], report: dict):
        self.nodes = nodes
        self.edges = edges
        self.report = report
        self.global_of: dict[str, int] = {
            n.label: n.id for n in nodes if n.kind == GLOBAL
        }
        self.sense_node_of: dict[str, int] = {
            n.label: n.id for n in nodes if n.kind == SENSE
        }
        self.adjacency: list[list[int]] = [[] for _ in nodes]
        self._incident: list[list[int]] = [[] for _ in nodes]
        seen = set()
        for i, e in enumerate(edges):
            if e.src == e.dst:
                raise ValueError(f"self edge on node {e.src}")
            pair = (min(e.src, e.dst), max(e.src, e.dst))
            if pair not in seen:
                seen.add(pair)
                self.adjacency[e.src].append(e.dst)
                self.adjacency[e.dst].append(e.src)
            self._incident[e.src].append(i)
            self._incident[e.dst].append(i)
        for lst in self.adjacency:
            lst.sort()

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def save(self, path) -> None:
        payload = {
            "format": GRAPH_FORMAT,
            "report": self.report,
            "nodes": [
                {"id": n.id, "kind": n.kind, "label": n.label, "vector": n.vector.tolist()}
                for n in self.nodes
            ],
            "edges": [[e.src, e.dst, e.relation] for e in self.edges],
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")


def build_graph(
    inventory: Inventory, store: WordVectorStore, vocab: Vocabulary
) -> DictGraph:
    """Assemble the dictionary graph for a vocabulary.

    Deterministic given inventory, vectors and vocabulary.  Senses with no
    glosses (beyond the dummies, which never have any) fall back to the parent
    word's vector and are listed in the build report.
    """
    nodes: list[Node] = []
    edges: list[Edge] = []
    glossless: list[str] = []

    # global nodes first: node id == vocabulary word id
    for entry in vocab.words:
        nodes.append(Node(len(nodes), GLOBAL, entry.word_form, store.require(entry.word_form)))
    for entry in vocab.words:
        if entry.lemma_id is not None:
            edges.append(Edge(entry.id, entry.lemma_id, LEMMA_OF))

    specs_by_key = {
        spec.key: (word, spec)
        for word, specs in inventory.senses_by_word.items()
        for spec in specs
    }

    # sense nodes in vocabulary sense order, glosses directly after their sense
    sense_node: dict[str, int] = {}
    pending_gloss: list[tuple[int, str, str, str]] = []  # (sense node, kind, relation, text)
    for sense in vocab.senses:
        word_form = vocab.word_form(sense.parent_word_id)
        sid = len(nodes)
        sense_node[sense.sense_key] = sid
        edges.append(Edge(sense.parent_word_id, sid, HAS_SENSE))
        if sense.is_dummy:
            nodes.append(Node(sid, SENSE, sense.sense_key, store.require(word_form)))
            continue
        spec = specs_by_key.get(sense.sense_key, (word_form, None))[1]
        glosses = []
        if spec is not None:
            glosses = [(DEFINITION, HAS_DEFINITION, g) for g in spec.definitions] + [
                (EXAMPLE, HAS_EXAMPLE, g) for g in spec.examples
            ]
        if glosses:
            embeds = [sentence_embed(g.lower().split(), store) for _, _, g in glosses]
            vector = np.mean(embeds, axis=0)
            pending_gloss.extend((sid, kind, rel, text) for kind, rel, text in glosses)
        else:
            vector = store.require(word_form)
            glossless.append(sense.sense_key)
        nodes.append(Node(sid, SENSE, sense.sense_key, vector))

    for sid, kind, rel, text in pending_gloss:
        gid = len(nodes)
        nodes.append(Node(gid, kind, text, sentence_embed(text.lower().split(), store)))
        edges.append(Edge(sid, gid, rel))

    # synonym / antonym edges: sense<->sense plus the parent globals
    related = set()
    for sense in vocab.senses:
        spec = specs_by_key.get(sense.sense_key, (None, None))[1]
        if spec is None:
            continue
        for relation, keys in ((SYNONYM, spec.synonyms), (ANTONYM, spec.antonyms)):
            for other_key in keys:
                other = sense_node.get(other_key)
                if other is None or other == sense_node[sense.sense_key]:
                    continue
                a, b = sense_node[sense.sense_key], other
                if (min(a, b), max(a, b), relation) not in related:
                    related.add((min(a, b), max(a, b), relation))
                    edges.append(Edge(a, b, relation))
                ga = sense.parent_word_id
                gb = vocab.parent_word(vocab.sense_id(other_key))
                if ga != gb and (min(ga, gb), max(ga, gb), relation) not in related:
                    related.add((min(ga, gb), max(ga, gb), relation))
                    edges.append(Edge(ga, gb, relation))

    kind_counts: dict[str, int] = {}
    for n in nodes:
        kind_counts[n.kind] = kind_counts.get(n.kind, 0) + 1
    relation_counts: dict[str, int] = {}
    for e in edges:
        relation_counts[e.relation] = relation_counts.get(e.relation, 0) + 1
    report = {
        "n_nodes": len(nodes),
        "n_edges": len(edges),
        "nodes_by_kind": kind_counts,
        "edges_by_relation": relation_counts,
        "senses_without_glosses": sorted(glossless),
        "generated_vectors": sorted(store.generated),
    }
    return DictGraph(nodes, edges, report)


def graph_area(
    g: DictGraph, word_id: int, max_nodes: int = DEFAULT_MAX_AREA_NODES
) -> GraphArea:
    """The 1-hop neighbourhood of a word's global node, capped at max_nodes.

    When the cap bites, neighbours are kept by kind priority (senses, then
    neighbouring globals, then definitions, then examples), ascending node id
    within a kind.  Unknown word ids fall back to the <unk> global node.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    n_globals = len(g.global_of)
    center = word_id if 0 <= word_id < n_globals else g.global_of[UNK]
    ranked = sorted(
        g.adjacency[center], key=lambda n: (KIND_PRIORITY[g.nodes[n].kind], n)
    )
    members = {center, *ranked[: max_nodes - 1]}
    edge_ids = sorted(
        {
            i
            for m in members
            for i in g._incident[m]
            if g.edges[i].src in members and g.edges[i].dst in members
        }
    )
    return GraphArea(
        center=center,
        node_ids=tuple(sorted(members)),
        edges=tuple(g.edges[i] for i in edge_ids),
    )
