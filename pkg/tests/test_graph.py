"""Dictionary graph construction and bounded area extraction."""
import numpy as np
import pytest

from multisense.corpus import (
    LabelledSentence,
    Lemmatizer,
    Vocabulary,
    build_vocab,
    load_inventory,
    parse_labelled,
    parse_pretrain,
)
from multisense.data import toy_paths
from multisense.graph import (
    DEFINITION,
    EXAMPLE,
    GLOBAL,
    HAS_SENSE,
    KIND_PRIORITY,
    LEMMA_OF,
    SENSE,
    SYNONYM,
    ANTONYM,
    DictGraph,
    Edge,
    Node,
    WordVectorStore,
    build_graph,
    graph_area,
    sentence_embed,
)


@pytest.fixture(scope="module")
def toy():
    paths = toy_paths()
    inv = load_inventory(paths["inventory"])
    pre = parse_pretrain(paths["pretrain"])
    lab = parse_labelled(paths["labelled"])
    vocab = build_vocab(pre, lab, inv, min_freq=2)
    store = WordVectorStore.load(paths["vectors"], seed=0)
    return inv, vocab, store, build_graph(inv, store, vocab)


# -- word vectors --------------------------------------------------------------


def test_store_reads_dim_from_file(toy):
    _, _, store, _ = toy
    assert store.dim == 16
    assert store.lookup("bank").shape == (16,)


def test_store_oov_lookup_falls_back_to_unk(toy):
    _, _, store, _ = toy
    np.testing.assert_array_equal(store.lookup("zyzzx"), store.lookup("<unk>"))


def test_store_generates_missing_vectors_deterministically():
    a = WordVectorStore({"<unk>": np.zeros(4)}, dim=4, seed=5)
    b = WordVectorStore({"<unk>": np.zeros(4)}, dim=5 - 1, seed=5)
    va, vb = a.require("coast"), b.require("coast")
    np.testing.assert_array_equal(va, vb)
    assert "coast" in a.generated
    # a different seed gives a different vector
    c = WordVectorStore({"<unk>": np.zeros(4)}, dim=4, seed=6)
    assert not np.allclose(c.require("coast"), va)


def test_store_round_trip(tmp_path):
    store = WordVectorStore({"<unk>": np.array([0.5, -1.25]), "cat": np.array([1.0, 2.0])}, dim=2)
    path = tmp_path / "vec.txt"
    store.save(path)
    again = WordVectorStore.load(path)
    np.testing.assert_array_equal(again.lookup("cat"), [1.0, 2.0])


def test_store_rejects_ragged_rows(tmp_path):
    path = tmp_path / "vec.txt"
    path.write_text("a 1.0 2.0\nb 1.0\n")
    with pytest.raises(ValueError, match=":2"):
        WordVectorStore.load(path)


# -- sentence embeddings ---------------------------------------------------------


def test_single_word_embeds_to_own_vector(toy):
    _, _, store, _ = toy
    np.testing.assert_array_equal(sentence_embed(["bank"], store), store.lookup("bank"))


def test_opposite_vectors_cancel():
    store = WordVectorStore(
        {"<unk>": np.zeros(3), "up": np.array([1.0, 2.0, 3.0]), "down": np.array([-1.0, -2.0, -3.0])},
        dim=3,
    )
    np.testing.assert_allclose(sentence_embed(["up", "down"], store), np.zeros(3))


def test_three_word_mean_matches_hand_sum(toy):
    _, _, store, _ = toy
    words = ["the", "old", "bank"]
    expected = (store.lookup("the") + store.lookup("old") + store.lookup("bank")) / 3.0
    np.testing.assert_allclose(sentence_embed(words, store), expected, atol=1e-15)


def test_empty_token_list_rejected(toy):
    _, _, store, _ = toy
    with pytest.raises(ValueError, match="empty"):
        sentence_embed([], store)


# -- graph construction -----------------------------------------------------------


def test_global_node_ids_match_word_ids(toy):
    _, vocab, _, g = toy
    for entry in vocab.words:
        node = g.nodes[entry.id]
        assert node.kind == GLOBAL
        assert node.label == entry.word_form


def test_dummy_sense_node_reuses_word_vector(toy):
    _, vocab, store, g = toy
    nid = g.sense_node_of["for.dummySense.01"]
    np.testing.assert_array_equal(g.nodes[nid].vector, store.lookup("for"))
    assert g.nodes[nid].kind == SENSE


def test_polysemous_word_has_multiple_sense_edges(toy):
    _, vocab, _, g = toy
    bank = vocab.word_index["bank"]
    sense_edges = [e for e in g.edges if e.relation == HAS_SENSE and e.src == bank]
    assert len(sense_edges) >= 2


def test_sense_vector_is_mean_of_gloss_embeddings(toy):
    inv, _, store, g = toy
    spec = next(s for s in inv.senses_by_word["bank"] if s.key == "bank.n.01")
    parts = [sentence_embed(t.lower().split(), store) for t in spec.definitions + spec.examples]
    expected = np.mean(parts, axis=0)
    nid = g.sense_node_of["bank.n.01"]
    np.testing.assert_allclose(g.nodes[nid].vector, expected, atol=1e-15)


def test_gloss_nodes_attach_to_their_sense(toy):
    _, _, _, g = toy
    for e in g.edges:
        if e.relation in ("has-definition", "has-example"):
            assert g.nodes[e.src].kind == SENSE
            assert g.nodes[e.dst].kind in (DEFINITION, EXAMPLE)


def test_synonyms_link_senses_and_globals(toy):
    _, vocab, _, g = toy
    river_s = g.sense_node_of["river.n.01"]
    stream_s = g.sense_node_of["stream.n.01"]
    pairs = {(min(e.src, e.dst), max(e.src, e.dst)) for e in g.edges if e.relation == SYNONYM}
    assert (min(river_s, stream_s), max(river_s, stream_s)) in pairs
    rg, sg = vocab.word_index["river"], vocab.word_index["stream"]
    assert (min(rg, sg), max(rg, sg)) in pairs
    anto = {(min(e.src, e.dst), max(e.src, e.dst)) for e in g.edges if e.relation == ANTONYM}
    bg, sm = vocab.word_index["big"], vocab.word_index["small"]
    assert (min(bg, sm), max(bg, sm)) in anto


def test_inflected_forms_point_at_parents(toy):
    _, vocab, _, g = toy
    banks, bank = vocab.word_index["banks"], vocab.word_index["bank"]
    assert Edge(banks, bank, LEMMA_OF) in g.edges


def test_label_only_sense_falls_back_to_word_vector():
    # a corpus label with no inventory entry: node uses the word vector and
    # the build report records it
    from multisense.corpus import Inventory, SenseSpec

    inv = Inventory(
        senses_by_word={"cat": (SenseSpec("cat.n.01", definitions=("a feline",)),)},
        lemma_exceptions={},
    )
    pre = [["the", "cat"], ["the", "cat"]]
    lab = [LabelledSentence(("cat",), ("cat.n.07",))] * 2
    vocab = build_vocab(pre, lab, inv, min_freq=2)
    store = WordVectorStore({"<unk>": np.zeros(4)}, dim=4)
    g = build_graph(inv, store, vocab)
    nid = g.sense_node_of["cat.n.07"]
    np.testing.assert_array_equal(g.nodes[nid].vector, store.lookup("cat"))
    assert "cat.n.07" in g.report["senses_without_glosses"]


def test_build_report_counts(toy):
    _, vocab, store, g = toy
    assert g.report["n_nodes"] == len(g.nodes)
    assert g.report["n_edges"] == len(g.edges)
    assert g.report["nodes_by_kind"][GLOBAL] == vocab.n_words
    assert g.report["nodes_by_kind"][SENSE] == vocab.n_senses
    assert "coast" in g.report["generated_vectors"]


def test_build_is_deterministic(toy):
    inv, vocab, _, g1 = toy
    store2 = WordVectorStore.load(toy_paths()["vectors"], seed=0)
    g2 = build_graph(inv, store2, vocab)
    assert [(n.kind, n.label) for n in g1.nodes] == [(n.kind, n.label) for n in g2.nodes]
    assert g1.edges == g2.edges
    for a, b in zip(g1.nodes, g2.nodes):
        np.testing.assert_array_equal(a.vector, b.vector)


def test_graph_dump(tmp_path, toy):
    import json

    _, _, _, g = toy
    path = tmp_path / "graph.json"
    g.save(path)
    payload = json.loads(path.read_text())
    assert payload["format"] == "multisense-graph"
    assert len(payload["nodes"]) == g.n_nodes
    assert len(payload["edges"]) == g.n_edges


# -- graph areas -------------------------------------------------------------------


def synthetic_graph(n_senses: int, n_examples: int, n_globals: int = 0) -> DictGraph:
    """One center global with a configurable 1-hop neighbourhood."""
    nodes = [Node(0, GLOBAL, "center", np.zeros(2))]
    edges = []
    for kind, count, rel in (
        (SENSE, n_senses, HAS_SENSE),
        (GLOBAL, n_globals, SYNONYM),
        (EXAMPLE, n_examples, "has-example"),
    ):
        for _ in range(count):
            nid = len(nodes)
            nodes.append(Node(nid, kind, f"{kind}{nid}", np.zeros(2)))
            edges.append(Edge(0, nid, rel))
    return DictGraph(nodes, edges, report={})


def test_isolated_node_area_is_just_center():
    g = DictGraph([Node(0, GLOBAL, "center", np.zeros(2))], [], report={})
    area = graph_area(g, 0)
    assert area.node_ids == (0,)
    assert area.edges == ()


def test_forty_neighbours_truncate_to_cap():
    g = synthetic_graph(n_senses=20, n_examples=20)
    area = graph_area(g, 0, max_nodes=32)
    assert len(area) == 32


def test_priority_keeps_senses_over_examples():
    g = synthetic_graph(n_senses=20, n_examples=20)
    area = graph_area(g, 0, max_nodes=32)
    # brute-force oracle: rank neighbours by (kind priority, id), keep 31
    expected = sorted(
        range(1, 41), key=lambda n: (KIND_PRIORITY[g.nodes[n].kind], n)
    )[:31]
    assert set(area.node_ids) == {0, *expected}
    kinds = [g.nodes[n].kind for n in area.node_ids if n != 0]
    assert kinds.count(SENSE) == 20
    assert kinds.count(EXAMPLE) == 11


def test_priority_order_is_sense_global_def_example():
    nodes = [Node(0, GLOBAL, "c", np.zeros(1))]
    for i, kind in enumerate([EXAMPLE, DEFINITION, GLOBAL, SENSE], start=1):
        nodes.append(Node(i, kind, kind, np.zeros(1)))
    edges = [Edge(0, i, "has-sense") for i in range(1, 5)]
    g = DictGraph(nodes, edges, report={})
    area = graph_area(g, 0, max_nodes=3)
    # keeps the sense (id 4) and the global (id 3) ahead of the glosses
    assert set(area.node_ids) == {0, 4, 3}


def test_area_edges_are_induced(toy):
    _, vocab, _, g = toy
    area = graph_area(g, vocab.word_index["bank"])
    members = set(area.node_ids)
    for e in area.edges:
        assert e.src in members and e.dst in members
    # every member is the center or adjacent to it
    for n in area.node_ids:
        assert n == area.center or n in g.adjacency[area.center]


def test_unknown_word_maps_to_unk_area(toy):
    _, vocab, _, g = toy
    area = graph_area(g, 10_000_000)
    assert area.center == vocab.unk_id


def test_every_toy_word_area_within_bounds(toy):
    _, vocab, _, g = toy
    for wid in range(vocab.n_words):
        area = graph_area(g, wid)
        assert len(area) <= 32
        assert area.center == wid
        for n in area.node_ids:
            assert n == wid or n in g.adjacency[wid]
