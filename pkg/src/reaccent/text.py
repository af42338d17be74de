"""Unicode tokenization, diacritic stripping, and case-preserving accent application.

Everything here is pure and language-configurable: the set of accented
characters lives in a per-language map file (``accented<TAB>plain`` lines,
``#`` comments), with Spanish and French maps shipped as package data.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from importlib import resources

WORD = "word"
PUNCT = "punct"
NUMBER = "number"
OTHER = "other"

# Sentinel context key for number tokens (keeps them out of the word vocabulary).
NUM_KEY = "<NUM>"

# ASCII apostrophe and the typographic one both mark elision.
_APOSTROPHES = "'’"

_CHUNK_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    """One token: NFC surface, [start, end) offsets into the tokenized string, kind."""

    surface: str
    span: tuple[int, int]
    kind: str


def _kind_of(piece: str) -> str:
    if piece.isdigit():
        return NUMBER
    if any(c.isalpha() for c in piece):
        return WORD
    if all(not c.isalnum() for c in piece):
        return PUNCT
    return OTHER


def tokenize(text: str) -> list[Token]:
    """Split text into word, punctuation, and number tokens.

    Words split on whitespace; leading and trailing punctuation peels off
    into single-character punctuation tokens; an apostrophe ends a token
    and stays with its left piece (so "l'autre" yields "l'" and "autre").
    Hyphenated compounds stay single tokens.

    Token spans always reconstruct the input exactly; see detokenize().
    """
    tokens = []
    for chunk in _CHUNK_RE.finditer(text):
        for start, end in _split_chunk(chunk.group(), chunk.start()):
            piece = text[start:end]
            tokens.append(Token(piece, (start, end), _kind_of(piece)))
    return tokens


def _split_chunk(chunk: str, base: int):
    """Yield (start, end) spans of the sub-tokens of one whitespace-free chunk."""
    # Cut after every apostrophe; each piece is then peeled separately.
    pieces = []
    prev = 0
    for i, c in enumerate(chunk):
        if c in _APOSTROPHES:
            pieces.append((prev, i + 1))
            prev = i + 1
    if prev < len(chunk):
        pieces.append((prev, len(chunk)))

    for pstart, pend in pieces:
        lo, hi = pstart, pend
        # Leading punctuation, one token per character.
        while lo < hi and not chunk[lo].isalnum():
            yield base + lo, base + lo + 1
            lo += 1
        # Trailing punctuation, except an apostrophe following a letter.
        trail = []
        while hi > lo and not chunk[hi - 1].isalnum():
            if chunk[hi - 1] in _APOSTROPHES and chunk[hi - 2].isalnum():
                break
            trail.append((base + hi - 1, base + hi))
            hi -= 1
        if hi > lo:
            yield base + lo, base + hi
        yield from reversed(trail)


def detokenize(text: str, tokens: list[Token], surfaces: list[str] | None = None) -> str:
    """Rebuild a document from its tokens, optionally substituting new surfaces.

    With surfaces=None this reproduces ``text`` exactly; otherwise the i-th
    token's surface is replaced by surfaces[i] and all inter-token gaps are
    kept verbatim.
    """
    if surfaces is None:
        surfaces = [t.surface for t in tokens]
    out = []
    pos = 0
    for tok, new in zip(tokens, surfaces):
        start, end = tok.span
        out.append(text[pos:start])
        out.append(new)
        pos = end
    out.append(text[pos:])
    return "".join(out)


class DiacriticMap:
    """Fixed character map between accented and plain forms for one language."""

    def __init__(self, pairs: dict[str, str]):
        for accented, plain in pairs.items():
            if any(c in pairs for c in plain):
                raise ValueError(f"plain side of {accented!r} maps onto itself")
        self.pairs = dict(pairs)
        self._table = str.maketrans(self.pairs)

    @classmethod
    def parse(cls, lines) -> "DiacriticMap":
        pairs = {}
        for lineno, raw in enumerate(lines, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ValueError(f"line {lineno}: expected 'accented<TAB>plain', got {line!r}")
            accented = unicodedata.normalize("NFC", parts[0])
            if len(accented) != 1:
                raise ValueError(f"line {lineno}: accented side must be one character")
            pairs[accented] = parts[1]
        return cls(pairs)

    @classmethod
    def from_file(cls, path) -> "DiacriticMap":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f)

    @classmethod
    def builtin(cls, lang: str) -> "DiacriticMap":
        """Load a shipped map by language code ("es" or "fr")."""
        data = resources.files("reaccent.data").joinpath(f"{lang}.tsv")
        return cls.parse(data.read_text(encoding="utf-8").splitlines())

    def strip(self, word: str) -> str:
        """Lowercase, diacritic-free key of a word. Idempotent."""
        return word.translate(self._table).lower()

    def deaccent(self, text: str) -> str:
        """Remove accents from a whole text while preserving case."""
        return text.translate(self._table)

    def __eq__(self, other):
        return isinstance(other, DiacriticMap) and self.pairs == other.pairs

    def items(self):
        return self.pairs.items()


def apply_pattern(surface: str, pattern: str, dmap: DiacriticMap) -> str:
    """Transfer the casing of ``surface`` onto the accented ``pattern``.

    Raises ValueError when the pattern does not belong to the surface's
    de-accented key.
    """
    if dmap.strip(surface) != dmap.strip(pattern):
        raise ValueError(f"pattern {pattern!r} does not match key of {surface!r}")
    if len(surface) == len(pattern):
        return "".join(
            p.upper() if s.isupper() else p for s, p in zip(surface, pattern)
        )
    # Length can differ (ligature maps like oe); fall back to coarse casing.
    letters = [c for c in surface if c.isalpha()]
    if letters and all(c.isupper() for c in letters):
        return pattern.upper()
    if surface[:1].isupper():
        return pattern[:1].upper() + pattern[1:]
    return pattern
