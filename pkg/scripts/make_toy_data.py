#!/usr/bin/env python3
"""Regenerate the bundled toy dataset under src/multisense/data/toy/.

The toy corpus is a small self-consistent world: ten polysemous nouns with two
senses each, a few dozen monosemous nouns/verbs/adjectives, irregular forms
routed through the lemma exceptions table, and a handful of words that only
ever appear once (so they fall below the frequency cut and exercise the <unk>
path).  Every occurrence of a sense-bearing word in the labelled corpus is
labelled; stopwords and names carry no senses and therefore only dummy ones.

Deterministic: word vectors are derived from a per-word hash, so rerunning the
script reproduces the committed files byte for byte.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "src" / "multisense" / "data" / "toy"

DIM = 16

# Words deliberately left out of vectors.txt (the graph builder must generate
# seeded vectors for them).
OMIT_VECTORS = {"jane", "gruffalo", "coast", "quietly"}

# Sentences: each token is either a plain string (no sense: stopword, name or
# rare word) or a (surface, sense-key) pair.  Sense keys always name the lemma.
SENTENCES = [
    # bank: n.01 institution (x4), n.02 river side (x2)
    ["john", ("kept", "keep.v.01"), "his", ("money", "money.n.01"), "in", "the", ("bank", "bank.n.01")],
    ["the", ("bank", "bank.n.01"), ("was", "be.v.01"), "closed", "in", "the", ("winter", "winter.n.01")],
    ["jane", ("sat", "sit.v.01"), "on", "the", ("bank", "bank.n.02"), "of", "the", ("river", "river.n.01")],
    ["the", ("bank", "bank.n.02"), "of", "the", ("stream", "stream.n.01"), ("was", "be.v.01"), ("deep", "deep.a.01")],
    ["john", ("went", "go.v.01"), "to", "the", ("bank", "bank.n.01"), "for", ("cash", "cash.n.01")],
    ["the", ("old", "old.a.01"), ("bank", "bank.n.01"), ("kept", "keep.v.01"), "the", ("money", "money.n.01"), "safe"],
    # bat: n.01 animal (x2), n.02 club (x4)
    ["the", ("bat", "bat.n.01"), ("flew", "fly.v.01"), "over", "the", ("old", "old.a.01"), ("tree", "tree.n.01")],
    ["a", ("small", "small.a.01"), ("bat", "bat.n.01"), ("slept", "sleep.v.01"), "in", "the", ("cave", "cave.n.01")],
    ["jane", ("bought", "buy.v.01"), "a", "new", ("bat", "bat.n.02"), "for", "the", ("game", "game.n.01")],
    ["john", ("swung", "swing.v.01"), "the", ("bat", "bat.n.02"), "at", "the", ("ball", "ball.n.01")],
    ["the", ("bat", "bat.n.02"), ("hit", "hit.v.01"), "the", ("ball", "ball.n.01"), "over", "the", ("field", "field.n.01")],
    ["the", ("big", "big.a.01"), ("bat", "bat.n.02"), ("was", "be.v.01"), ("made", "make.v.01"), "of", ("wood", "wood.n.01")],
    # spring: n.01 season (x3), n.02 water source (x2)
    ["the", ("garden", "garden.n.01"), ("grows", "grow.v.01"), "in", "the", ("spring", "spring.n.01")],
    ["jane", ("sang", "sing.v.01"), "in", "the", ("spring", "spring.n.01"), ("sun", "sun.n.01")],
    ["the", ("birds", "bird.n.01"), ("went", "go.v.01"), "south", "before", "the", ("spring", "spring.n.01")],
    [("cold", "cold.a.01"), ("water", "water.n.01"), ("ran", "run.v.01"), "from", "the", ("spring", "spring.n.02")],
    ["the", ("deep", "deep.a.01"), ("spring", "spring.n.02"), ("kept", "keep.v.01"), "the", ("field", "field.n.01"), "green"],
    # bass: n.01 fish (x4 incl. scale sentence), n.02 voice (x2)
    ["john", ("caught", "catch.v.01"), "a", ("big", "big.a.01"), ("bass", "bass.n.01"), "in", "the", ("river", "river.n.01")],
    ["the", ("bass", "bass.n.01"), ("swam", "swim.v.01"), "near", "the", ("deep", "deep.a.01"), ("water", "water.n.01")],
    ["a", ("small", "small.a.01"), ("bass", "bass.n.01"), ("was", "be.v.01"), "on", "the", ("scale", "scale.n.01")],
    ["john", ("sang", "sing.v.01"), "the", ("bass", "bass.n.02"), "part", "in", "the", ("song", "song.n.01")],
    ["his", ("deep", "deep.a.01"), ("voice", "voice.n.01"), ("was", "be.v.01"), "a", "fine", ("bass", "bass.n.02")],
    # seal: n.01 animal (x3), n.02 emblem (x2)
    ["the", ("seal", "seal.n.01"), ("swam", "swim.v.01"), "near", "the", ("cold", "cold.a.01"), ("coast", "coast.n.01")],
    ["a", ("seal", "seal.n.01"), ("caught", "catch.v.01"), "a", ("fish", "fish.n.01"), "in", "the", ("sea", "sea.n.01")],
    ["the", ("old", "old.a.01"), ("seal", "seal.n.01"), ("slept", "sleep.v.01"), "on", "the", ("coast", "coast.n.01")],
    ["the", ("king", "king.n.01"), ("put", "put.v.01"), "his", ("seal", "seal.n.02"), "on", "the", ("letter", "letter.n.01")],
    ["the", "royal", ("seal", "seal.n.02"), ("was", "be.v.01"), ("made", "make.v.01"), "of", "wax"],
    # crane: n.01 bird (x2), n.02 machine (x3)
    ["the", ("crane", "crane.n.01"), ("stood", "stand.v.01"), "in", "the", "shallow", ("water", "water.n.01")],
    ["a", "white", ("crane", "crane.n.01"), ("flew", "fly.v.01"), "over", "the", ("river", "river.n.01")],
    ["the", ("crane", "crane.n.02"), ("lifted", "lift.v.01"), "the", ("big", "big.a.01"), ("machine", "machine.n.01")],
    ["the", "tall", ("crane", "crane.n.02"), ("moved", "move.v.01"), "the", "heavy", "load"],
    ["jane", ("saw", "see.v.01"), "the", ("crane", "crane.n.02"), ("lift", "lift.v.01"), "the", ("boat", "boat.n.01")],
    # pitch: n.01 playing field (x3), n.02 sound (x2)
    ["the", ("players", "player.n.01"), ("ran", "run.v.01"), "onto", "the", ("pitch", "pitch.n.01")],
    ["the", ("game", "game.n.01"), ("began", "begin.v.01"), "on", "the", "wet", ("pitch", "pitch.n.01")],
    ["john", ("walked", "walk.v.01"), "across", "the", "green", ("pitch", "pitch.n.01")],
    ["her", ("voice", "voice.n.01"), ("rose", "rise.v.01"), "to", "a", "high", ("pitch", "pitch.n.02")],
    ["the", ("song", "song.n.01"), ("had", "have.v.01"), "a", "low", ("pitch", "pitch.n.02")],
    # scale: n.01 weighing device (x2), n.02 fish plate (x3)
    ["jane", ("weighed", "weigh.v.01"), "the", ("fish", "fish.n.01"), "on", "the", ("scale", "scale.n.01")],
    ["each", ("scale", "scale.n.02"), "on", "the", ("fish", "fish.n.01"), ("was", "be.v.01"), "silver"],
    ["the", ("fish", "fish.n.01"), ("lost", "lose.v.01"), "a", ("scale", "scale.n.02"), "in", "the", "fight"],
    ["a", "green", ("scale", "scale.n.02"), ("fell", "fall.v.01"), "from", "the", ("bass", "bass.n.01")],
    # fly: v.01 (x3 above) plus n.01 insect; play: v.01 and n.01
    ["the", ("small", "small.a.01"), ("bird", "bird.n.01"), ("caught", "catch.v.01"), "a", ("fly", "fly.n.01")],
    ["the", ("bird", "bird.n.01"), ("flew", "fly.v.01"), "over", "the", ("field", "field.n.01")],
    ["jane", ("saw", "see.v.01"), "a", ("play", "play.n.01"), "at", "the", ("market", "market.n.01")],
    ["the", ("cats", "cat.n.01"), ("played", "play.v.01"), "in", "the", ("garden", "garden.n.01")],
    # monosemous filler
    ["the", ("cat", "cat.n.01"), ("saw", "see.v.01"), "the", ("mouse", "mouse.n.01"), "in", "the", ("house", "house.n.01")],
    ["the", ("dog", "dog.n.01"), ("swam", "swim.v.01"), "across", "the", ("deep", "deep.a.01"), ("river", "river.n.01")],
    ["john", ("bought", "buy.v.01"), "a", ("small", "small.a.01"), ("house", "house.n.01"), "near", "the", ("market", "market.n.01")],
    ["the", ("old", "old.a.01"), ("man", "man.n.01"), ("walked", "walk.v.01"), "to", "the", ("market", "market.n.01")],
    ["the", ("woman", "woman.n.01"), ("sang", "sing.v.01"), "an", ("old", "old.a.01"), ("song", "song.n.01")],
    ["the", ("men", "man.n.01"), ("went", "go.v.01"), "to", "the", ("field", "field.n.01")],
    ["the", ("mice", "mouse.n.01"), ("ran", "run.v.01"), "from", "the", ("big", "big.a.01"), ("cat", "cat.n.01")],
    ["the", ("birds", "bird.n.01"), ("sang", "sing.v.01"), "in", "the", "tall", ("tree", "tree.n.01")],
    ["john", ("played", "play.v.01"), "a", ("game", "game.n.01"), "near", "the", ("water", "water.n.01")],
    ["the", ("boat", "boat.n.01"), ("was", "be.v.01"), "near", "the", ("old", "old.a.01"), ("coast", "coast.n.01")],
    ["the", "gruffalo", "watched", "quietly"],
    ["jane", ("grew", "grow.v.01"), "a", ("garden", "garden.n.01"), "by", "the", ("house", "house.n.01")],
    ["the", ("water", "water.n.01"), "in", "the", ("stream", "stream.n.01"), ("was", "be.v.01"), ("cold", "cold.a.01")],
    ["john", ("said", "say.v.01"), "the", ("song", "song.n.01"), ("was", "be.v.01"), "fine"],
    ["the", ("woman", "woman.n.01"), ("weighed", "weigh.v.01"), "the", ("cash", "cash.n.01"), "at", "the", ("market", "market.n.01")],
    ["the", ("dog", "dog.n.01"), ("saw", "see.v.01"), "the", ("bird", "bird.n.01"), "in", "the", ("tree", "tree.n.01")],
    ["the", ("man", "man.n.01"), ("sat", "sit.v.01"), "by", "the", ("river", "river.n.01"), "in", "the", ("sun", "sun.n.01")],
    ["jane", ("kept", "keep.v.01"), "the", ("letter", "letter.n.01"), "in", "the", ("house", "house.n.01")],
]

# Sentences that must stay out of the pretraining corpus so their words fall
# below the frequency cut (they contain the once-only <unk> probes).
PRETRAIN_EXCLUDE = {"the gruffalo watched quietly"}

EXTRA_PRETRAIN = [
    "the banks of the river were cold and wet",
    "a crane and a seal lived near the sea",
    "john and jane walked along the coast",
    "the market sold fish and bread",
    "winter came and the garden slept",
    "the gate swung in the wind",
    "the rain hit the roof of the house",
    "john put the boat in the water",
    "the cats sleep in the warm house",
    "a big dog ran across the field",
    "the king read the letter by the sea",
    "the old machine lifted the wood",
    "jane sang a song about the winter",
    "the fish swim in the deep stream",
    "money and cash sat in the old bank",
    "the player walked onto the pitch",
    "a mouse ran into the cave",
    "the trees grow by the spring",
    "john saw the play and sang the song",
    "the small boat rose on the water",
    "the cat and the dog sat in the garden",
    "a bird flew from the tree to the house",
    "the man had a scale for the fish",
    "the voice of the woman rose in song",
    "the bass and the seal swam in the sea",
]

# Sense inventory: definitions/examples in the same plain register as the
# corpus; a couple of synonym and antonym pairs for graph edges.
INVENTORY = {
    "bank": [
        ("bank.n.01", ["an institution that keeps and lends money"],
         ["john kept his money in the bank"], [], []),
        ("bank.n.02", ["the sloping land beside a river or stream"],
         ["jane sat on the bank of the river"], [], []),
    ],
    "bat": [
        ("bat.n.01", ["a small flying mammal active at night"],
         ["a bat flew out of the cave"], [], []),
        ("bat.n.02", ["a wooden club used to hit the ball in games"],
         ["john swung the bat at the ball"], [], []),
    ],
    "spring": [
        ("spring.n.01", ["the season after winter when plants grow"],
         ["the garden grows in the spring"], [], []),
        ("spring.n.02", ["a natural flow of ground water"],
         ["cold water ran from the spring"], [], []),
    ],
    "bass": [
        ("bass.n.01", ["a freshwater fish caught for sport"],
         ["john caught a big bass in the river"], [], []),
        ("bass.n.02", ["the lowest adult male singing voice"],
         ["john sang the bass part in the song"], [], []),
    ],
    "seal": [
        ("seal.n.01", ["a sea mammal with flippers that eats fish"],
         ["the seal swam near the coast"], [], []),
        ("seal.n.02", ["an emblem pressed into wax to close a letter"],
         ["the king put his seal on the letter"], [], []),
    ],
    "crane": [
        ("crane.n.01", ["a tall wading bird with long legs"],
         ["the crane stood in the shallow water"], [], []),
        ("crane.n.02", ["a machine that lifts heavy loads"],
         ["the crane lifted the machine onto the boat"], [], []),
    ],
    "pitch": [
        ("pitch.n.01", ["a marked field where a game is played"],
         ["the players ran onto the pitch"], [], []),
        ("pitch.n.02", ["the height of a sound or voice"],
         ["her voice rose to a high pitch"], [], []),
    ],
    "scale": [
        ("scale.n.01", ["a device used to weigh things"],
         ["jane weighed the fish on the scale"], [], []),
        ("scale.n.02", ["a small hard plate on the skin of a fish"],
         ["a green scale fell from the bass"], [], []),
    ],
    "fly": [
        ("fly.v.01", ["move through the air on wings"],
         ["the bird flew over the field"], [], []),
        ("fly.n.01", ["a small winged insect"],
         ["the small bird caught a fly"], [], []),
    ],
    "play": [
        ("play.v.01", ["take part in a game for enjoyment"],
         ["the cats played in the garden"], [], []),
        ("play.n.01", ["a story performed on a stage"],
         ["jane saw a play at the market"], [], []),
    ],
    # monosemous nouns
    "cat": [("cat.n.01", ["a small feline animal kept as a pet"], ["the cat saw the mouse"], [], [])],
    "dog": [("dog.n.01", ["a four legged animal kept as a pet"], ["the dog swam across the river"], [], [])],
    "mouse": [("mouse.n.01", ["a small rodent with a long tail"], ["the mice ran from the cat"], [], [])],
    "river": [("river.n.01", ["a large natural stream of water"], ["the river ran to the sea"], ["stream.n.01"], [])],
    "stream": [("stream.n.01", ["a small body of running water"], ["the water in the stream was cold"], ["river.n.01"], [])],
    "water": [("water.n.01", ["the clear liquid that falls as rain"], ["the fish swim in the water"], [], [])],
    "money": [("money.n.01", ["coins and notes used to buy things"], ["john kept his money in the bank"], ["cash.n.01"], [])],
    "cash": [("cash.n.01", ["money in coins or notes"], ["john went to the bank for cash"], ["money.n.01"], [])],
    "fish": [("fish.n.01", ["an animal that lives and swims in water"], ["the fish lost a scale"], [], [])],
    "tree": [("tree.n.01", ["a tall plant with a trunk and branches"], ["the birds sang in the tree"], [], [])],
    "bird": [("bird.n.01", ["a feathered animal with wings"], ["the bird flew over the field"], [], [])],
    "man": [("man.n.01", ["an adult male person"], ["the old man walked to the market"], [], [])],
    "woman": [("woman.n.01", ["an adult female person"], ["the woman sang an old song"], [], [])],
    "house": [("house.n.01", ["a building where people live"], ["john bought a small house"], [], [])],
    "boat": [("boat.n.01", ["a small vessel that travels on water"], ["the boat was near the coast"], [], [])],
    "song": [("song.n.01", ["a short piece of music with words"], ["the woman sang an old song"], [], [])],
    "winter": [("winter.n.01", ["the coldest season of the year"], ["the bank was closed in the winter"], [], [])],
    "garden": [("garden.n.01", ["a plot of ground where plants grow"], ["the cats played in the garden"], [], [])],
    "field": [("field.n.01", ["an open area of ground or grass"], ["the men went to the field"], [], [])],
    "voice": [("voice.n.01", ["the sound a person makes when speaking"], ["her voice rose to a high pitch"], [], [])],
    "machine": [("machine.n.01", ["a device with moving parts that does work"], ["the crane lifted the machine"], [], [])],
    "game": [("game.n.01", ["an activity played for fun with rules"], ["the game began on the pitch"], [], [])],
    "coast": [("coast.n.01", ["the land along the edge of the sea"], ["the seal slept on the coast"], [], [])],
    "market": [("market.n.01", ["a place where goods are bought and sold"], ["the man walked to the market"], [], [])],
    "sun": [("sun.n.01", ["the star that lights the day"], ["jane sang in the spring sun"], [], [])],
    "cave": [("cave.n.01", ["a hollow space inside a hill"], ["a bat slept in the cave"], [], [])],
    "ball": [("ball.n.01", ["a round object used in games"], ["john swung the bat at the ball"], [], [])],
    "wood": [("wood.n.01", ["the hard material of a tree"], ["the bat was made of wood"], [], [])],
    "king": [("king.n.01", ["the male ruler of a country"], ["the king put his seal on the letter"], [], [])],
    "letter": [("letter.n.01", ["a written message sent to a person"], ["jane kept the letter in the house"], [], [])],
    "sea": [("sea.n.01", ["the salt water that covers the earth"], ["a seal caught a fish in the sea"], [], [])],
    "player": [("player.n.01", ["a person taking part in a game"], ["the players ran onto the pitch"], [], [])],
    # verbs
    "be": [("be.v.01", ["exist or have a stated quality"], ["the bank was closed"], [], [])],
    "say": [("say.v.01", ["utter words to express a thought"], ["john said the song was fine"], [], [])],
    "sit": [("sit.v.01", ["rest with the body supported on a seat"], ["jane sat on the bank of the river"], [], [])],
    "go": [("go.v.01", ["move from one place to another"], ["the men went to the field"], [], [])],
    "see": [("see.v.01", ["notice with the eyes"], ["the cat saw the mouse"], [], [])],
    "swim": [("swim.v.01", ["move through water by moving the body"], ["the seal swam near the coast"], [], [])],
    "sing": [("sing.v.01", ["make music with the voice"], ["the birds sang in the tree"], [], [])],
    "walk": [("walk.v.01", ["move on foot at a steady pace"], ["john walked across the pitch"], [], [])],
    "catch": [("catch.v.01", ["take hold of something moving"], ["john caught a big bass"], [], [])],
    "buy": [("buy.v.01", ["get something by paying money"], ["jane bought a new bat"], [], [])],
    "keep": [("keep.v.01", ["continue to have or hold"], ["john kept his money in the bank"], [], [])],
    "lift": [("lift.v.01", ["raise something to a higher place"], ["the crane lifted the machine"], [], [])],
    "weigh": [("weigh.v.01", ["measure how heavy a thing is"], ["jane weighed the fish on the scale"], [], [])],
    "grow": [("grow.v.01", ["become larger over time"], ["the garden grows in the spring"], [], [])],
    "sleep": [("sleep.v.01", ["rest the mind and body with eyes closed"], ["a small bat slept in the cave"], [], [])],
    "run": [("run.v.01", ["move fast on foot"], ["the players ran onto the pitch"], [], [])],
    "make": [("make.v.01", ["build or create a thing"], ["the bat was made of wood"], [], [])],
    "stand": [("stand.v.01", ["be upright on the feet"], ["the crane stood in the shallow water"], [], [])],
    "move": [("move.v.01", ["change place or position"], ["the crane moved the heavy load"], [], [])],
    "begin": [("begin.v.01", ["start to happen or do"], ["the game began on the pitch"], [], [])],
    "rise": [("rise.v.01", ["move upward to a higher level"], ["her voice rose to a high pitch"], [], [])],
    "have": [("have.v.01", ["own or hold a thing"], ["the song had a low pitch"], [], [])],
    "hit": [("hit.v.01", ["strike a thing with force"], ["the bat hit the ball"], [], [])],
    "put": [("put.v.01", ["place a thing somewhere"], ["the king put his seal on the letter"], [], [])],
    "lose": [("lose.v.01", ["no longer have a thing"], ["the fish lost a scale"], [], [])],
    "fall": [("fall.v.01", ["drop down from a higher place"], ["a scale fell from the bass"], [], [])],
    "swing": [("swing.v.01", ["move back and forth through the air"], ["john swung the bat at the ball"], [], [])],
    # adjectives
    "big": [("big.a.01", ["of great size"], ["a big dog ran across the field"], [], ["small.a.01"])],
    "small": [("small.a.01", ["of little size"], ["john bought a small house"], [], ["big.a.01"])],
    "old": [("old.a.01", ["having lived for many years"], ["the old man walked to the market"], [], [])],
    "cold": [("cold.a.01", ["of low temperature"], ["the water in the stream was cold"], [], [])],
    "deep": [("deep.a.01", ["reaching far down from the top"], ["the bank of the stream was deep"], [], [])],
}

LEMMA_EXCEPTIONS = {
    "is": "be", "was": "be", "are": "be", "were": "be",
    "said": "say", "sat": "sit", "went": "go", "saw": "see",
    "swam": "swim", "sang": "sing", "caught": "catch", "bought": "buy",
    "kept": "keep", "grew": "grow", "slept": "sleep", "ran": "run",
    "made": "make", "stood": "stand", "began": "begin", "rose": "rise",
    "had": "have", "lost": "lose", "fell": "fall", "swung": "swing",
    "flew": "fly", "mice": "mouse", "men": "man", "women": "woman",
}


def word_vector(word: str, dim: int = DIM) -> np.ndarray:
    digest = hashlib.blake2b(word.encode("utf-8"), digest_size=8).digest()
    rng = np.random.default_rng(int.from_bytes(digest, "little"))
    return np.round(rng.normal(0.0, 0.5, size=dim), 6)


def surface(tok) -> str:
    return tok if isinstance(tok, str) else tok[0]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)

    lines = []
    for sent in SENTENCES:
        tokens = [surface(t) for t in sent]
        senses = [None if isinstance(t, str) else t[1] for t in sent]
        lines.append(json.dumps({"tokens": tokens, "senses": senses}))
    (OUT / "labelled.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")

    pretrain = [
        " ".join(surface(t) for t in sent)
        for sent in SENTENCES
        if " ".join(surface(t) for t in sent) not in PRETRAIN_EXCLUDE
    ] + EXTRA_PRETRAIN
    (OUT / "pretrain.txt").write_text("\n".join(pretrain) + "\n", encoding="utf-8")

    words = {
        w: {
            "senses": [
                {"key": k, "definitions": d, "examples": e, "synonyms": s, "antonyms": a}
                for k, d, e, s, a in entries
            ]
        }
        for w, entries in INVENTORY.items()
    }
    inventory = {"words": words, "lemma_exceptions": LEMMA_EXCEPTIONS}
    (OUT / "inventory.json").write_text(json.dumps(inventory, indent=1, sort_keys=True) + "\n", encoding="utf-8")

    vocab = {"<unk>", "<eos>"}
    for sent in SENTENCES:
        vocab.update(surface(t) for t in sent)
    for line in EXTRA_PRETRAIN:
        vocab.update(line.split())
    vocab.update(INVENTORY)
    vocab.update(LEMMA_EXCEPTIONS.values())
    for entries in INVENTORY.values():
        for _, defs, exs, _, _ in entries:
            for gloss in list(defs) + list(exs):
                vocab.update(gloss.split())
    kept = sorted(vocab - OMIT_VECTORS)
    rows = [f"{w} " + " ".join(f"{x:.6f}" for x in word_vector(w)) for w in kept]
    (OUT / "vectors.txt").write_text("\n".join(rows) + "\n", encoding="utf-8")

    print(f"wrote {len(lines)} labelled sentences, {len(pretrain)} pretrain lines,")
    print(f"{len(words)} inventory words, {len(kept)} word vectors -> {OUT}")


if __name__ == "__main__":
    main()
