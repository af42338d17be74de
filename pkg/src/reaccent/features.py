"""Collocational feature extraction from stripped context windows.

Feature kinds, with value arity:

    w:-1 / w:+1          adjacent word                      (1 value)
    pair:-2,-1 etc.      word pair at fixed offsets         (2 values)
    win                  word anywhere within the +-k window (1 value)
    cls:-1 / cls:+1      word class of an adjacent word     (1 value)
    clswin               word class within the window       (1 value)
    tag:-1 / tag:+1      union POS tag of an adjacent word  (1 value)
    tagpair:-2,-1 etc.   pair with one or both words replaced by tags
    lemwin               lemma within the window            (1 value)
    suf:-1 / suf:+1      suffix of an adjacent word         (1 value)

Word values are stripped lowercase keys; class and tag names are uppercase,
keeping the namespaces disjoint. A Feature is a pure value: equality and
hashing cover kind, position, and value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

PAIR_POSITIONS = ("-2,-1", "-1,+1", "+1,+2")
WINDOW_KINDS = frozenset({"win", "clswin", "lemwin"})
PAIR_KINDS = frozenset({"pair", "tagpair"})


class Feature(NamedTuple):
    kind: str
    pos: str  # "" for window-wide kinds
    value: tuple[str, ...]

    def __str__(self):
        head = f"{self.kind}:{self.pos}" if self.pos else self.kind
        return f"{head}={','.join(self.value)}"


@dataclass
class FeatureConfig:
    """Which evidence kinds to extract, and how far the window reaches."""

    k: int = 4
    word_at: bool = True
    pairs: bool = True
    window: bool = True
    classes: bool = True
    tags: bool = True
    lemmas: bool = True
    suffix: bool = False
    suffix_lengths: tuple[int, ...] = (2, 3, 4)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("window size k must be >= 1")
        if not any((self.word_at, self.pairs, self.window, self.classes,
                    self.tags, self.lemmas, self.suffix)):
            raise ValueError("at least one feature kind must be enabled")

    def with_k(self, k: int) -> "FeatureConfig":
        if k == self.k:
            return self
        out = FeatureConfig(**self.__dict__)
        out.k = k
        return out


class WordClassSet:
    """Named word classes (WEEKDAY = {domingo, lunes, ...}); may overlap."""

    def __init__(self, classes: dict[str, frozenset[str]] | None = None):
        self.classes = {name.upper(): frozenset(m) for name, m in (classes or {}).items()}
        self._by_word: dict[str, set[str]] = {}
        for name, members in self.classes.items():
            for w in members:
                self._by_word.setdefault(w, set()).add(name)

    @classmethod
    def parse(cls, lines) -> "WordClassSet":
        classes: dict[str, set[str]] = {}
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            name, _, members = line.partition("\t")
            classes.setdefault(name.upper(), set()).update(members.split())
        return cls({n: frozenset(m) for n, m in classes.items()})

    @classmethod
    def from_file(cls, path) -> "WordClassSet":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f)

    def lookup(self, word: str) -> set[str]:
        """All classes containing the word; empty set when none."""
        return self._by_word.get(word, set())

    def members(self, name: str) -> frozenset[str]:
        return self.classes.get(name, frozenset())

    def __bool__(self):
        return bool(self.classes)

    def __eq__(self, other):
        return isinstance(other, WordClassSet) and self.classes == other.classes


class TagLexicon:
    """Coarse POS tags per word; ambiguous words get a deterministic union tag."""

    def __init__(self, tags: dict[str, frozenset[str]] | None = None):
        self.tags = {w: frozenset(t.upper() for t in ts) for w, ts in (tags or {}).items()}

    @classmethod
    def parse(cls, lines) -> "TagLexicon":
        tags: dict[str, set[str]] = {}
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, names = line.partition("\t")
            tags.setdefault(word, set()).update(t for t in names.split(",") if t)
        return cls({w: frozenset(t) for w, t in tags.items()})

    @classmethod
    def from_file(cls, path) -> "TagLexicon":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f)

    def union_tag(self, word: str) -> str | None:
        """Single tag, hyphenated sorted union for ambiguous words, or None."""
        ts = self.tags.get(word)
        if not ts:
            return None
        return "-".join(sorted(ts))

    def __bool__(self):
        return bool(self.tags)

    def __eq__(self, other):
        return isinstance(other, TagLexicon) and self.tags == other.tags


class LemmaLexicon:
    """Word-to-lemma map; identity outside its domain."""

    def __init__(self, lemmas: dict[str, str] | None = None):
        self.lemmas = dict(lemmas or {})

    @classmethod
    def parse(cls, lines) -> "LemmaLexicon":
        lemmas = {}
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, lemma = line.partition("\t")
            if lemma:
                lemmas[word] = lemma
        return cls(lemmas)

    @classmethod
    def from_file(cls, path) -> "LemmaLexicon":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f)

    def lemma(self, word: str) -> str:
        return self.lemmas.get(word, word)

    def __contains__(self, word: str) -> bool:
        return word in self.lemmas

    def __bool__(self):
        return bool(self.lemmas)

    def __eq__(self, other):
        return isinstance(other, LemmaLexicon) and self.lemmas == other.lemmas


@dataclass
class Lexicons:
    """The optional language resources feature extraction can draw on."""

    classes: WordClassSet = field(default_factory=WordClassSet)
    tags: TagLexicon = field(default_factory=TagLexicon)
    lemmas: LemmaLexicon = field(default_factory=LemmaLexicon)


def extract_features(
    left: tuple[str, ...],
    right: tuple[str, ...],
    cfg: FeatureConfig,
    lex: Lexicons,
) -> set[Feature]:
    """The deduplicated evidence set for one context window.

    Missing neighbors simply omit the corresponding features. Nothing here
    ever looks at the target word itself, so no label leakage is possible.
    """
    left = left[len(left) - cfg.k :] if len(left) > cfg.k else left
    right = right[: cfg.k]
    l1 = left[-1] if left else None
    l2 = left[-2] if len(left) >= 2 else None
    r1 = right[0] if right else None
    r2 = right[1] if len(right) >= 2 else None

    feats: set[Feature] = set()

    if cfg.word_at:
        if l1 is not None:
            feats.add(Feature("w", "-1", (l1,)))
        if r1 is not None:
            feats.add(Feature("w", "+1", (r1,)))

    pairs = []
    if l2 is not None and l1 is not None:
        pairs.append(("-2,-1", l2, l1))
    if l1 is not None and r1 is not None:
        pairs.append(("-1,+1", l1, r1))
    if r1 is not None and r2 is not None:
        pairs.append(("+1,+2", r1, r2))
    if cfg.pairs:
        for pos, a, b in pairs:
            feats.add(Feature("pair", pos, (a, b)))

    window = set(left) | set(right)
    if cfg.window:
        for w in window:
            feats.add(Feature("win", "", (w,)))

    if cfg.classes and lex.classes:
        for pos, w in (("-1", l1), ("+1", r1)):
            if w is not None:
                for name in lex.classes.lookup(w):
                    feats.add(Feature("cls", pos, (name,)))
        for w in window:
            for name in lex.classes.lookup(w):
                feats.add(Feature("clswin", "", (name,)))

    if cfg.tags and lex.tags:
        t1 = lex.tags.union_tag(l1) if l1 is not None else None
        tr1 = lex.tags.union_tag(r1) if r1 is not None else None
        if t1 is not None:
            feats.add(Feature("tag", "-1", (t1,)))
        if tr1 is not None:
            feats.add(Feature("tag", "+1", (tr1,)))
        for pos, a, b in pairs:
            ta = lex.tags.union_tag(a)
            tb = lex.tags.union_tag(b)
            if ta is not None:
                feats.add(Feature("tagpair", pos, (ta, b)))
            if tb is not None:
                feats.add(Feature("tagpair", pos, (a, tb)))
            if ta is not None and tb is not None:
                feats.add(Feature("tagpair", pos, (ta, tb)))

    if cfg.lemmas and lex.lemmas:
        for w in window:
            if w in lex.lemmas:
                feats.add(Feature("lemwin", "", (lex.lemmas.lemma(w),)))

    if cfg.suffix:
        for pos, w in (("-1", l1), ("+1", r1)):
            if w is None or not w.isalpha():
                continue
            for n in cfg.suffix_lengths:
                if len(w) > n:
                    feats.add(Feature("suf", pos, (w[-n:],)))

    return feats
