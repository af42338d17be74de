"""Applying a trained model to text: per-token classification and restoration."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .corpus import PatternTable, context_keys
from .decision_list import (
    AmbiguityClassSpec,
    DecisionEntry,
    DecisionList,
    InterpolationConfig,
    SmoothingConfig,
    slot_map,
)
from .features import FeatureConfig, Lexicons, extract_features
from .text import WORD, DiacriticMap, apply_pattern, detokenize, tokenize


@dataclass
class Model:
    """Everything needed to restore text: the accent inventory, evidence
    lists, and the routing of words to pooled class lists. Smoothing and
    interpolation settings ride along as training provenance."""

    dmap: DiacriticMap
    table: PatternTable
    cfg: FeatureConfig
    lex: Lexicons
    lists: dict[str, DecisionList] = field(default_factory=dict)
    class_lists: dict[str, DecisionList] = field(default_factory=dict)
    class_specs: dict[str, AmbiguityClassSpec] = field(default_factory=dict)
    assignment: dict[str, str] = field(default_factory=dict)
    smoothing: SmoothingConfig = field(default_factory=SmoothingConfig)
    interpolation: InterpolationConfig = field(default_factory=InterpolationConfig)
    lang: str = ""

    def list_for(self, key: str) -> DecisionList | None:
        name = self.assignment.get(key)
        if name is not None and name in self.class_lists:
            return self.class_lists[name]
        return self.lists.get(key)


@dataclass
class TraceEvent:
    index: int
    surface: str
    key: str
    action: str  # unseen | trusted | majority | entry | default
    pattern: str | None = None
    target: str | None = None
    entry: DecisionEntry | None = None

    def __str__(self):
        bits = [f"{self.surface!r}", f"key={self.key}", self.action]
        if self.target:
            bits.append(f"list={self.target}")
        if self.entry:
            bits.append(f"{self.entry.feature} ({self.entry.ll:.2f})")
        if self.pattern is not None and self.pattern != self.surface:
            bits.append(f"-> {self.pattern}")
        return "  ".join(bits)


def _pattern_of(model: Model, key: str, dl: DecisionList, cls: int) -> str:
    if dl.list_kind == "class":
        spec = model.class_specs[dl.target]
        mapping = slot_map(key, model.table.patterns(key), spec)
        pid = next(p for p, s in mapping.items() if s == cls)
        return model.table.patterns(key)[pid]
    return dl.labels[cls]


def classify_detail(
    model: Model, key: str, left: tuple[str, ...], right: tuple[str, ...]
) -> tuple[str, DecisionList | None, DecisionEntry | None]:
    """Pattern plus the list and entry that produced it (None = fallback)."""
    dl = model.list_for(key)
    if dl is None:
        return model.table.majority(key), None, None
    feats = extract_features(left, right, model.cfg.with_k(dl.k), model.lex)
    entry = dl.first_match(feats)
    cls = entry.cls if entry is not None else dl.default
    return _pattern_of(model, key, dl, cls), dl, entry


def classify(model: Model, key: str, left, right) -> str:
    """Accent pattern for one occurrence, by the single best matching entry."""
    return classify_detail(model, key, left, right)[0]


def classify_combined(model: Model, key: str, left, right) -> str:
    """Variant that sums the evidence of every matching entry instead of
    trusting only the best one. Kept for head-to-head comparisons."""
    dl = model.list_for(key)
    if dl is None:
        return model.table.majority(key)
    feats = extract_features(left, right, model.cfg.with_k(dl.k), model.lex)
    scores = [0.0] * len(dl.labels)
    matched = False
    for e in dl.entries:
        if e.feature in feats:
            scores[e.cls] += e.ll
            matched = True
    cls = min(range(len(scores)), key=lambda i: (-scores[i], i)) if matched else dl.default
    return _pattern_of(model, key, dl, cls)


def _block_ids(tokens, text: str) -> list[int]:
    """Block number per token; blocks are separated by blank lines and
    context windows never reach across them."""
    ids = []
    block = 0
    for i, tok in enumerate(tokens):
        if i > 0:
            gap = text[tokens[i - 1].span[1] : tok.span[0]]
            if gap.count("\n") >= 2:
                block += 1
        ids.append(block)
    return ids


def restore(
    model: Model,
    text: str,
    *,
    trust_existing: bool = False,
    combined: bool = False,
    trace: list[TraceEvent] | None = None,
) -> str:
    """Re-accent every known word of ``text``, leaving all else byte-identical.

    Unknown words (keys absent from the pattern table) pass through
    untouched. With ``trust_existing``, tokens already carrying a diacritic
    are trusted and skipped.
    """
    tokens, surfaces = restore_tokens(
        model, text, trust_existing=trust_existing, combined=combined, trace=trace
    )
    return detokenize(text, tokens, surfaces)


def restore_tokens(
    model: Model,
    text: str,
    *,
    trust_existing: bool = False,
    combined: bool = False,
    trace: list[TraceEvent] | None = None,
):
    """Token-level restore: the tokens of ``text`` plus their new surfaces."""
    tokens = tokenize(text)
    blocks = _block_ids(tokens, text)
    ctx = context_keys(tokens, model.dmap)
    keys = [key for _, key in ctx]
    ctx_block = [blocks[idx] for idx, _ in ctx]
    surfaces = [t.surface for t in tokens]
    k = model.cfg.k

    def emit(event):
        if trace is not None:
            trace.append(event)

    for j, (idx, key) in enumerate(ctx):
        tok = tokens[idx]
        if tok.kind != WORD:
            continue
        if key not in model.table:
            emit(TraceEvent(idx, tok.surface, key, "unseen"))
            continue
        if trust_existing and tok.surface != model.dmap.deaccent(tok.surface):
            emit(TraceEvent(idx, tok.surface, key, "trusted"))
            continue
        lo = j
        while lo > 0 and j - lo < k and ctx_block[lo - 1] == ctx_block[j]:
            lo -= 1
        hi = j + 1
        while hi < len(ctx) and hi - j <= k and ctx_block[hi] == ctx_block[j]:
            hi += 1
        left, right = tuple(keys[lo:j]), tuple(keys[j + 1 : hi])
        if combined:
            pattern = classify_combined(model, key, left, right)
            dl = entry = None
        else:
            pattern, dl, entry = classify_detail(model, key, left, right)
        surfaces[idx] = apply_pattern(tok.surface, pattern, model.dmap)
        if dl is None and not combined:
            emit(TraceEvent(idx, tok.surface, key, "majority", pattern))
        elif entry is not None:
            emit(TraceEvent(idx, tok.surface, key, "entry", pattern, dl.target, entry))
        else:
            target = dl.target if dl is not None else None
            emit(TraceEvent(idx, tok.surface, key, "default", pattern, target))

    return tokens, surfaces
