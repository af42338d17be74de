"""Synthetic corpora with planted collocational signal, for tests and demos.

Each ambiguous key gets two patterns and two trigger words. Every sentence
contains one occurrence of a key, its chosen pattern decided by a fair coin,
and the matching trigger placed somewhere in the +-k window; with noise e
the trigger ends up swapped that often. So the majority-pattern baseline
sits near 50% while a context model can reach about 1-e.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

# Keys ending -ara/-ara-acute below double as members of a suffix ambiguity
# family, so pooled class lists have something to pool.
_FAMILY_STEMS = [
    "bat", "cant", "dart", "fals", "gan", "lam", "mir", "pas", "rald",
    "sant", "tard", "vol",
]
_STANDALONE = [
    ("rio", "río"), ("peso", "pesó"), ("mate", "maté"), ("canto", "cantó"),
    ("seria", "sería"), ("habia", "había"), ("papa", "papá"), ("esta", "está"),
    ("jugo", "jugó"), ("secretaria", "secretaría"),
]
# A deliberately small filler vocabulary: every filler feature then occurs
# often enough to show its true (balanced) distribution, so no sparse filler
# collocation can masquerade as clean evidence and outrank a real trigger.
# The accented members keep the unambiguous-restoration path exercised.
_FILLERS = ["mesa", "perro", "libro", "carbón", "débil", "fácil"]

_CONSONANTS = "bcdfglmnprst"
_VOWELS = "aeiou"


def _trigger(i: int) -> str:
    """Pronounceable unique word; the final 'z' keeps it off every other list."""
    syllables = []
    n = i
    for _ in range(3):
        n, r = divmod(n, len(_CONSONANTS) * len(_VOWELS))
        c, v = divmod(r, len(_VOWELS))
        syllables.append(_CONSONANTS[c] + _VOWELS[v])
    return "".join(syllables) + "z"


@dataclass(frozen=True)
class SynthConfig:
    keys: int = 8
    occurrences: int = 120      # sentences per key
    k: int = 4                  # fillers on each side of the target
    noise: float = 0.0          # probability of a swapped trigger
    family: bool = True         # draw half the keys from the -ara/-ará family
    sentences_per_doc: int = 1

    def __post_init__(self):
        if self.keys < 1 or self.occurrences < 1 or self.k < 1:
            raise ValueError("keys, occurrences and k must be positive")
        if not 0 <= self.noise <= 1:
            raise ValueError("noise must be within [0, 1]")


def planted_keys(cfg: SynthConfig) -> list[tuple[str, str]]:
    """The (plain pattern, accented pattern) pairs the corpus will contain."""
    pairs = []
    if cfg.family:
        n_family = min((cfg.keys + 1) // 2, len(_FAMILY_STEMS))
        pairs += [(stem + "ara", stem + "ará") for stem in _FAMILY_STEMS[:n_family]]
    while len(pairs) < cfg.keys:
        pairs.append(_STANDALONE[len(pairs) % len(_STANDALONE)])
    return pairs[: cfg.keys]


def planted_triggers(cfg: SynthConfig) -> list[tuple[str, str]]:
    """Per key: the trigger word for pattern 0 and for pattern 1."""
    return [(_trigger(2 * i), _trigger(2 * i + 1)) for i in range(cfg.keys)]


def generate(cfg: SynthConfig, rng: random.Random) -> str:
    """One corpus: blank-line-separated documents of single-line sentences."""
    pairs = planted_keys(cfg)
    triggers = planted_triggers(cfg)

    order = [i for i in range(cfg.keys) for _ in range(cfg.occurrences)]
    rng.shuffle(order)

    sentences = []
    for i in order:
        # A fair coin per occurrence keeps the majority baseline near 50%
        # without biasing it on held-out folds.
        label = int(rng.random() < 0.5)
        trigger_label = 1 - label if rng.random() < cfg.noise else label
        words = [rng.choice(_FILLERS) for _ in range(2 * cfg.k)]
        slot = rng.randrange(2 * cfg.k)
        words[slot] = triggers[i][trigger_label]
        words.insert(cfg.k, pairs[i][label])
        sentence = " ".join(words) + "."
        sentences.append(sentence[0].upper() + sentence[1:])

    docs = [
        "\n".join(sentences[i : i + cfg.sentences_per_doc])
        for i in range(0, len(sentences), cfg.sentences_per_doc)
    ]
    return "\n\n".join(docs) + "\n"
