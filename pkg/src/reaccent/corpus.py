"""Corpus ingestion, accent-pattern tables, and training-context collection.

A corpus is a list of documents; context windows never cross document
boundaries. Pattern tables are histograms over an accent-retaining corpus:
for each de-accented key, the observed accented variants with counts.
"""

from __future__ import annotations

import os
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass

from .text import NUM_KEY, NUMBER, WORD, DiacriticMap, Token, tokenize


class InsufficientDataError(ValueError):
    """Raised when a corpus or split is too small for the requested operation."""


@dataclass
class Document:
    name: str
    text: str  # NFC-normalized

    def tokens(self) -> list[Token]:
        if not hasattr(self, "_tokens"):
            self._tokens = tokenize(self.text)
        return self._tokens


def load_corpus(paths) -> list[Document]:
    """Read UTF-8 text files (or directories of them) into documents.

    Blank-line-separated blocks within a file become separate documents,
    so paragraph-shaped corpora keep their natural boundaries.
    """
    files = []
    for path in paths:
        if os.path.isdir(path):
            for entry in sorted(os.listdir(path)):
                full = os.path.join(path, entry)
                if os.path.isfile(full):
                    files.append(full)
        else:
            files.append(path)
    docs = []
    for path in files:
        with open(path, encoding="utf-8") as f:
            raw = f.read()
        for i, block in enumerate(_blank_line_blocks(raw)):
            docs.append(Document(f"{path}#{i}", unicodedata.normalize("NFC", block)))
    return docs


def _blank_line_blocks(raw: str):
    block: list[str] = []
    for line in raw.splitlines():
        if line.strip():
            block.append(line)
        elif block:
            yield "\n".join(block)
            block = []
    if block:
        yield "\n".join(block)


class PatternTable:
    """Per de-accented key: accented variants with counts, most frequent first."""

    def __init__(self, entries: dict[str, list[tuple[str, int]]]):
        self.entries = entries

    @classmethod
    def build(cls, docs: list[Document], dmap: DiacriticMap, min_count: int = 2) -> "PatternTable":
        counts: Counter = Counter()
        for doc in docs:
            for tok in doc.tokens():
                if tok.kind == WORD:
                    pattern = tok.surface.lower()
                    counts[(dmap.strip(pattern), pattern)] += 1
        by_key: dict[str, list[tuple[str, int]]] = defaultdict(list)
        for (key, pattern), n in counts.items():
            by_key[key].append((pattern, n))
        entries = {}
        for key, pats in by_key.items():
            if sum(n for _, n in pats) < min_count:
                continue
            pats.sort(key=lambda pn: (-pn[1], pn[0]))
            entries[key] = pats
        return cls(entries)

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def patterns(self, key: str) -> list[str]:
        return [p for p, _ in self.entries[key]]

    def counts(self, key: str) -> list[int]:
        return [n for _, n in self.entries[key]]

    def freqs(self, key: str) -> list[float]:
        ns = self.counts(key)
        total = sum(ns)
        return [n / total for n in ns]

    def is_ambiguous(self, key: str) -> bool:
        return key in self.entries and len(self.entries[key]) > 1

    def ambiguous_keys(self) -> list[str]:
        return sorted(k for k, pats in self.entries.items() if len(pats) > 1)

    def majority(self, key: str) -> str:
        return self.entries[key][0][0]

    def pattern_id(self, key: str, pattern: str) -> int | None:
        for i, (p, _) in enumerate(self.entries[key]):
            if p == pattern:
                return i
        return None

    def __eq__(self, other):
        return isinstance(other, PatternTable) and self.entries == other.entries


@dataclass(frozen=True)
class TrainingInstance:
    """One labeled occurrence: pattern id plus the stripped context window."""

    label: int
    left: tuple[str, ...]   # natural order; left[-1] is adjacent
    right: tuple[str, ...]
    target: str


def context_keys(tokens: list[Token], dmap: DiacriticMap) -> list[tuple[int, str]]:
    """(token index, context key) for the word-like tokens of a document.

    Punctuation never enters context windows; numbers collapse to NUM_KEY.
    """
    out = []
    for i, tok in enumerate(tokens):
        if tok.kind == WORD:
            out.append((i, dmap.strip(tok.surface)))
        elif tok.kind == NUMBER:
            out.append((i, NUM_KEY))
    return out


def collect_contexts(
    docs: list[Document],
    table: PatternTable,
    key: str,
    k: int,
    dmap: DiacriticMap,
) -> list[TrainingInstance]:
    """Training instances for every occurrence of one ambiguous key."""
    return collect_all_contexts(docs, table, {key}, k, dmap).get(key, [])


def collect_all_contexts(
    docs: list[Document],
    table: PatternTable,
    keys,
    k: int,
    dmap: DiacriticMap,
) -> dict[str, list[TrainingInstance]]:
    """One corpus pass collecting ±k-word contexts for many keys at once."""
    wanted = set(keys)
    out: dict[str, list[TrainingInstance]] = defaultdict(list)
    for doc in docs:
        tokens = doc.tokens()
        items = context_keys(tokens, dmap)
        words = [w for _, w in items]
        for pos, (ti, key) in enumerate(items):
            if key not in wanted:
                continue
            label = table.pattern_id(key, tokens[ti].surface.lower())
            if label is None:
                continue
            out[key].append(
                TrainingInstance(
                    label=label,
                    left=tuple(words[max(0, pos - k) : pos]),
                    right=tuple(words[pos + 1 : pos + 1 + k]),
                    target=key,
                )
            )
    return dict(out)
