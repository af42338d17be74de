"""Agreement scoring, baselines, cross-validation folds, and the
best-evidence vs summed-evidence comparison.

Scoring is always strip-then-restore: take accent-carrying text as truth,
remove the accents, let the model put them back, and count per-token
agreement with the original. Tokens whose key the model has never seen go
to a separate bucket and are excluded from both the model and baseline
aggregates.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Document, InsufficientDataError, PatternTable
from .restore import Model, restore_tokens
from .text import WORD


@dataclass
class EvalReport:
    """Mergeable per-key agreement counts; merging is plain count addition."""

    n: Counter = field(default_factory=Counter)        # key -> tokens scored
    correct: Counter = field(default_factory=Counter)  # key -> model agreements
    prior: Counter = field(default_factory=Counter)    # key -> majority-pattern agreements
    unseen: int = 0

    def merge(self, other: "EvalReport") -> "EvalReport":
        return EvalReport(
            self.n + other.n,
            self.correct + other.correct,
            self.prior + other.prior,
            self.unseen + other.unseen,
        )

    @property
    def total(self) -> int:
        return sum(self.n.values())

    @property
    def agreement(self) -> float:
        return sum(self.correct.values()) / self.total if self.total else 0.0

    @property
    def prior_agreement(self) -> float:
        return sum(self.prior.values()) / self.total if self.total else 0.0

    def filtered(self, keys) -> "EvalReport":
        wanted = set(keys)
        return EvalReport(
            Counter({k: v for k, v in self.n.items() if k in wanted}),
            Counter({k: v for k, v in self.correct.items() if k in wanted}),
            Counter({k: v for k, v in self.prior.items() if k in wanted}),
            0,
        )

    def cells(self) -> dict[str, float]:
        t = self.total
        if not t:
            return {"correct": 0.0, "incorrect": 0.0}
        c = sum(self.correct.values())
        return {"correct": c / t, "incorrect": (t - c) / t}

    def tsv(self, table: PatternTable | None = None) -> str:
        """Per-key table: key, occurrences, model agreement, prior agreement,
        and (when a pattern table is supplied) the key's patterns."""
        rows = ["key\tn\tagreement\tprior"]
        for key in sorted(self.n, key=lambda k: (-self.n[k], k)):
            n = self.n[key]
            row = f"{key}\t{n}\t{self.correct[key] / n:.4f}\t{self.prior[key] / n:.4f}"
            if table is not None and key in table:
                row += "\t" + " ".join(table.patterns(key))
            rows.append(row)
        return "\n".join(rows) + "\n"

    def summary(self, table: PatternTable | None = None) -> str:
        lines = [
            f"tokens scored      {self.total}",
            f"unseen (excluded)  {self.unseen}",
            f"agreement          {100 * self.agreement:.2f}%",
            f"prior baseline     {100 * self.prior_agreement:.2f}%",
        ]
        if table is not None:
            amb = self.filtered(table.ambiguous_keys())
            unamb = self.filtered(k for k in self.n if not table.is_ambiguous(k))
            lines.append(
                f"ambiguous          {100 * amb.agreement:.2f}% "
                f"(prior {100 * amb.prior_agreement:.2f}%, n={amb.total})"
            )
            lines.append(
                f"unambiguous        {100 * unamb.agreement:.2f}% (n={unamb.total})"
            )
        return "\n".join(lines)


def _aligned_word_tokens(model: Model, docs: list[Document], *, combined=False):
    """Yield (key, truth pattern, restored pattern) per word token.

    The stripped text tokenizes to the same token sequence as the truth
    (stripping never changes a character's alphabetic status), so tokens
    align positionally.
    """
    for doc in docs:
        truth_tokens = doc.tokens()
        stripped = model.dmap.deaccent(doc.text)
        _, surfaces = restore_tokens(model, stripped, combined=combined)
        for t_tok, got in zip(truth_tokens, surfaces):
            if t_tok.kind != WORD:
                continue
            key = model.dmap.strip(t_tok.surface)
            yield key, t_tok.surface.lower(), got.lower()


def evaluate_split(model: Model, docs: list[Document], *, combined=False) -> EvalReport:
    """Strip-and-restore agreement of a model over held-out documents."""
    if not docs:
        raise InsufficientDataError("empty test set")
    report = EvalReport()
    for key, truth, got in _aligned_word_tokens(model, docs, combined=combined):
        if key not in model.table:
            report.unseen += 1
            continue
        report.n[key] += 1
        report.correct[key] += got == truth
        report.prior[key] += model.table.majority(key) == truth
    return report


def prior_baseline(table: PatternTable, docs: list[Document], dmap) -> float:
    """Agreement of always choosing each key's most frequent pattern."""
    n = correct = 0
    for doc in docs:
        for tok in doc.tokens():
            if tok.kind != WORD:
                continue
            key = dmap.strip(tok.surface)
            if key not in table:
                continue
            n += 1
            correct += table.majority(key) == tok.surface.lower()
    return correct / n if n else 0.0


def fold_documents(docs: list[Document], folds: int) -> list[list[Document]]:
    """Split a corpus into contiguous folds.

    With at least one document per fold, boundaries stay on document edges.
    Otherwise each document is cut into contiguous line blocks, one per
    fold; either way no context window can span two folds.
    """
    if folds < 2:
        raise ValueError("need at least 2 folds")
    if not docs:
        raise InsufficientDataError("empty corpus")
    if len(docs) >= folds:
        out = []
        start = 0
        base, extra = divmod(len(docs), folds)
        for i in range(folds):
            size = base + (1 if i < extra else 0)
            out.append(docs[start : start + size])
            start += size
        return out
    groups: list[list[Document]] = [[] for _ in range(folds)]
    for doc in docs:
        lines = doc.text.splitlines()
        if len(lines) < folds:
            raise InsufficientDataError(
                f"{doc.name}: {len(lines)} lines cannot fill {folds} folds"
            )
        start = 0
        base, extra = divmod(len(lines), folds)
        for i in range(folds):
            size = base + (1 if i < extra else 0)
            part = "\n".join(lines[start : start + size])
            groups[i].append(Document(f"{doc.name}/fold{i}", part))
            start += size
    return groups


def kfold(docs: list[Document], folds: int, train_fn, *, combined=False) -> EvalReport:
    """Cross-validated agreement: train on all-but-one fold, score the rest,
    merge the per-fold counts (occurrence-weighted by construction)."""
    groups = fold_documents(docs, folds)
    report = EvalReport()
    for i, held in enumerate(groups):
        train_docs = [d for j, g in enumerate(groups) if j != i for d in g]
        model = train_fn(train_docs)
        report = report.merge(evaluate_split(model, held, combined=combined))
    return report


@dataclass
class ComparisonTable:
    """2x2 outcome counts for best-single-evidence vs summed-evidence."""

    both_correct: int = 0
    both_wrong: int = 0
    best_only: int = 0      # best correct, combined wrong
    combined_only: int = 0  # combined correct, best wrong

    @property
    def total(self) -> int:
        return self.both_correct + self.both_wrong + self.best_only + self.combined_only

    def cells(self) -> dict[str, float]:
        t = self.total
        return {
            "both_correct": self.both_correct / t,
            "both_wrong": self.both_wrong / t,
            "best_only": self.best_only / t,
            "combined_only": self.combined_only / t,
        }

    def sign_test(self) -> float:
        """Two-sided exact binomial p-value over the discordant tokens."""
        n = self.best_only + self.combined_only
        if n == 0:
            return 1.0
        m = min(self.best_only, self.combined_only)
        tail = sum(math.comb(n, i) for i in range(m + 1))
        return min(1.0, 2 * tail / 2**n)

    def summary(self) -> str:
        c = self.cells()
        lines = [f"tokens compared      {self.total}"]
        lines += [f"{name:20} {100 * c[name]:6.2f}%" for name in c]
        lines.append(f"sign test p          {self.sign_test():.4g}")
        return "\n".join(lines)


def compare_best_vs_combined(model: Model, docs: list[Document]) -> ComparisonTable:
    """Score the same held-out tokens under both classification rules."""
    table = ComparisonTable()
    best = [
        (k, t, g) for k, t, g in _aligned_word_tokens(model, docs) if k in model.table
    ]
    comb = [
        (k, t, g)
        for k, t, g in _aligned_word_tokens(model, docs, combined=True)
        if k in model.table
    ]
    for (key, truth, b), (_, _, c) in zip(best, comb):
        b_ok, c_ok = b == truth, c == truth
        if b_ok and c_ok:
            table.both_correct += 1
        elif b_ok:
            table.best_only += 1
        elif c_ok:
            table.combined_only += 1
        else:
            table.both_wrong += 1
    return table
