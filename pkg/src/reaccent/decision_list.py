"""Decision-list training: distribution counting, log-likelihood ranking,
interpolation, pruning, and pooled lists for whole ambiguity classes.

An entry's rank key is the absolute base-2 log of the ratio between the
best and strongest competing smoothed pattern counts for its feature; with
two patterns this is exactly |log2((c1 + a) / (c2 + a))|.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from statistics import median_low

from .corpus import InsufficientDataError, TrainingInstance
from .features import (
    PAIR_KINDS,
    WINDOW_KINDS,
    Feature,
    FeatureConfig,
    Lexicons,
    extract_features,
)


@dataclass(frozen=True)
class SmoothingConfig:
    """Additive constant applied to both sides of every count ratio."""

    alpha: float = 0.1

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")


@dataclass(frozen=True)
class InterpolationConfig:
    """Mixing weights between whole-corpus and residual probability estimates."""

    beta: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.beta < 0 or self.gamma < 0 or abs(self.beta + self.gamma - 1.0) > 1e-9:
            raise ValueError("beta and gamma must be nonnegative and sum to 1")


@dataclass
class DecisionEntry:
    feature: Feature
    ll: float
    cls: int
    counts: tuple[int, ...] | None = field(default=None, compare=False)


@dataclass
class DecisionList:
    """Evidence entries sorted by reliability, plus a fallback classification.

    ``labels`` are the human-readable classifications: accent patterns for a
    word list, slot suffixes for a class list. ``default`` indexes the
    globally most frequent one.
    """

    target: str
    list_kind: str  # "word" or "class"
    k: int
    labels: tuple[str, ...]
    entries: list[DecisionEntry]
    default: int
    _index: dict | None = field(default=None, init=False, repr=False, compare=False)

    def first_match(self, feats: set[Feature]) -> DecisionEntry | None:
        """Highest-ranked entry whose feature is present, or None."""
        if self._index is None:
            self._index = {}
            for i, e in enumerate(self.entries):
                self._index.setdefault(e.feature, (i, e))
        best = None
        for f in feats:
            hit = self._index.get(f)
            if hit is not None and (best is None or hit[0] < best[0]):
                best = hit
        return best[1] if best else None


def log_likelihood(counts, smoothing: SmoothingConfig) -> tuple[int, float]:
    """Classification and rank value for one count vector.

    The classification is the pattern with the largest count, ties going to
    the globally more frequent pattern (the lower id). The value compares it
    against the strongest competitor, which for two patterns reduces to the
    plain two-way smoothed ratio.
    """
    order = sorted(range(len(counts)), key=lambda i: (-counts[i], i))
    best, runner_up = order[0], order[1]
    a = smoothing.alpha
    return best, math.log2((counts[best] + a) / (counts[runner_up] + a))


def count_distributions(
    instances: list[TrainingInstance],
    n_patterns: int,
    cfg: FeatureConfig,
    lex: Lexicons,
    min_feature_count: int = 1,
    min_window_count: int = 2,
) -> dict[Feature, list[int]]:
    """Per-feature pattern counts over a training set.

    Window-wide features are the noisiest, so they get their own retention
    threshold. Pair features whose adjacent component is already unambiguous
    are dropped: the shorter collocation decides every context the longer
    one could, at equal or better rank.
    """
    if not instances:
        raise InsufficientDataError("no training instances")
    dist: dict[Feature, list[int]] = defaultdict(lambda: [0] * n_patterns)
    for inst in instances:
        for f in extract_features(inst.left, inst.right, cfg, lex):
            dist[f][inst.label] += 1

    def retained(f: Feature, counts) -> bool:
        floor = min_window_count if f.kind in WINDOW_KINDS else min_feature_count
        return sum(counts) >= floor

    dist = {f: c for f, c in dist.items() if retained(f, c)}

    def unambiguous(f: Feature | None) -> bool:
        c = dist.get(f) if f is not None else None
        return c is not None and sum(1 for x in c if x > 0) == 1

    def adjacent_single(value: str, pos: str) -> Feature | None:
        for kind in ("w", "tag"):
            f = Feature(kind, pos, (value,))
            if f in dist:
                return f
        return None

    suppressed = set()
    for f in dist:
        if f.kind not in PAIR_KINDS:
            continue
        if f.pos == "-2,-1":
            anchors = [adjacent_single(f.value[1], "-1")]
        elif f.pos == "+1,+2":
            anchors = [adjacent_single(f.value[0], "+1")]
        else:
            anchors = [adjacent_single(f.value[0], "-1"), adjacent_single(f.value[1], "+1")]
        if any(unambiguous(a) for a in anchors):
            suppressed.add(f)
    return {f: c for f, c in dist.items() if f not in suppressed}


def _sort_entries(entries: list[DecisionEntry]) -> list[DecisionEntry]:
    # Ties break toward larger total evidence, then a fixed feature order.
    return sorted(
        entries,
        key=lambda e: (-e.ll, -(sum(e.counts) if e.counts else 0), e.feature),
    )


def build_list(
    instances: list[TrainingInstance],
    labels: tuple[str, ...],
    cfg: FeatureConfig,
    lex: Lexicons,
    smoothing: SmoothingConfig,
    *,
    target: str,
    list_kind: str = "word",
    min_feature_count: int = 1,
    min_window_count: int = 2,
) -> DecisionList:
    """Rank all retained evidence by log-likelihood, most reliable first.

    Single-label data degenerates to a list holding only the fallback.
    """
    if not instances:
        raise InsufficientDataError(f"no training instances for {target!r}")
    label_counts = Counter(inst.label for inst in instances)
    default = min(label_counts, key=lambda i: (-label_counts[i], i))
    if len(label_counts) < 2:
        return DecisionList(target, list_kind, cfg.k, labels, [], default)

    dist = count_distributions(
        instances, len(labels), cfg, lex, min_feature_count, min_window_count
    )
    entries = []
    for feat, counts in dist.items():
        cls, ll = log_likelihood(counts, smoothing)
        entries.append(DecisionEntry(feat, ll, cls, tuple(counts)))
    return DecisionList(target, list_kind, cfg.k, labels, _sort_entries(entries), default)


def _feature_sets(instances, cfg, lex):
    return [
        (extract_features(inst.left, inst.right, cfg, lex), inst.label)
        for inst in instances
    ]


def interpolate_residual(
    dlist: DecisionList,
    instances: list[TrainingInstance],
    interp: InterpolationConfig,
    cfg: FeatureConfig,
    lex: Lexicons,
    smoothing: SmoothingConfig,
) -> DecisionList:
    """Re-estimate each entry as a mix of whole-corpus and residual evidence.

    Walking top-down, an entry's residual counts come only from instances no
    higher entry matched. With gamma=0 the input list is returned unchanged.
    """
    if interp.gamma == 0:
        return dlist
    n = len(dlist.labels)
    a = smoothing.alpha
    featsets = _feature_sets(instances, cfg.with_k(dlist.k), lex)
    alive = list(featsets)
    new_entries = []
    for e in dlist.entries:
        res = [0] * n
        for feats, label in alive:
            if e.feature in feats:
                res[label] += 1
        glob = e.counts if e.counts is not None else res
        gtot = sum(glob) + n * a
        rtot = sum(res) + n * a
        probs = [
            interp.beta * (glob[i] + a) / gtot + interp.gamma * (res[i] + a) / rtot
            for i in range(n)
        ]
        order = sorted(range(n), key=lambda i: (-probs[i], i))
        cls = order[0]
        ll = math.log2(probs[cls] / probs[order[1]])
        new_entries.append(DecisionEntry(e.feature, ll, cls, e.counts))
        alive = [(feats, label) for feats, label in alive if e.feature not in feats]
    return replace(dlist, entries=_sort_entries(new_entries))


def _covers(e1: DecisionEntry, e2: DecisionEntry, lex: Lexicons) -> bool:
    """True when e1's feature matches every context e2's feature matches."""
    f1, f2 = e1.feature, e2.feature
    if f1.pos != f2.pos:
        return False
    if f1.kind == "cls" and f2.kind == "w":
        return f2.value[0] in lex.classes.members(f1.value[0])
    if f1.kind == "clswin" and f2.kind == "win":
        return f2.value[0] in lex.classes.members(f1.value[0])
    if f1.kind == "tag" and f2.kind == "w":
        return lex.tags.union_tag(f2.value[0]) == f1.value[0]
    if f1.kind == "lemwin" and f2.kind == "win":
        return f2.value[0] in lex.lemmas and lex.lemmas.lemma(f2.value[0]) == f1.value[0]
    if f1.kind == "tagpair" and f2.kind in ("pair", "tagpair") and f1 != f2:
        return all(
            a == b or lex.tags.union_tag(b) == a
            for a, b in zip(f1.value, f2.value)
        )
    return False


def _potential_coverers(f: Feature, lex: Lexicons):
    """The feature keys whose presence above f would shadow it (inverse of
    _covers, enumerated from the covered side so pruning stays linear)."""
    if f.kind == "w":
        v = f.value[0]
        for name in lex.classes.lookup(v):
            yield Feature("cls", f.pos, (name,))
        t = lex.tags.union_tag(v)
        if t is not None:
            yield Feature("tag", f.pos, (t,))
    elif f.kind == "win":
        v = f.value[0]
        for name in lex.classes.lookup(v):
            yield Feature("clswin", "", (name,))
        if v in lex.lemmas:
            yield Feature("lemwin", "", (lex.lemmas.lemma(v),))
    elif f.kind in PAIR_KINDS:
        a, b = f.value
        for ca in {a, lex.tags.union_tag(a)} - {None}:
            for cb in {b, lex.tags.union_tag(b)} - {None}:
                cand = Feature("tagpair", f.pos, (ca, cb))
                if cand != f:
                    yield cand


def prune_subsumption(dlist: DecisionList, lex: Lexicons) -> DecisionList:
    """Drop entries shadowed by a higher class, tag, or lemma entry.

    A shadowed entry can never be the first match, so no classification
    changes.
    """
    kept: list[DecisionEntry] = []
    kept_feats: set[Feature] = set()
    for e in dlist.entries:
        if any(c in kept_feats for c in _potential_coverers(e.feature, lex)):
            continue
        kept.append(e)
        kept_feats.add(e.feature)
    return replace(dlist, entries=kept)


def _first_match_tallies(entries, featsets):
    rank = {}
    for i, e in enumerate(entries):
        rank.setdefault(e.feature, i)
    correct: Counter = Counter()
    wrong: Counter = Counter()
    for feats, label in featsets:
        idx = None
        for f in feats:
            r = rank.get(f)
            if r is not None and (idx is None or r < idx):
                idx = r
        if idx is None:
            continue
        if entries[idx].cls == label:
            correct[idx] += 1
        else:
            wrong[idx] += 1
    return correct, wrong


def prune_cross_validation(
    dlist: DecisionList,
    cv_instances: list[TrainingInstance],
    cfg: FeatureConfig,
    lex: Lexicons,
    max_passes: int = 10,
) -> DecisionList:
    """Remove entries that misclassify more held-out contexts than they get right.

    Removals re-route matches to lower entries, so the tally repeats until a
    fixpoint (bounded number of passes).
    """
    featsets = _feature_sets(cv_instances, cfg.with_k(dlist.k), lex)
    entries = list(dlist.entries)
    for _ in range(max_passes):
        correct, wrong = _first_match_tallies(entries, featsets)
        drop = {i for i in wrong if wrong[i] > correct[i]}
        if not drop:
            break
        entries = [e for i, e in enumerate(entries) if i not in drop]
    return replace(dlist, entries=entries)


def prune_unused(
    dlist: DecisionList,
    cv_instances: list[TrainingInstance],
    cfg: FeatureConfig,
    lex: Lexicons,
) -> DecisionList:
    """Space-saving pass: drop entries never consulted on the held-out data."""
    if not cv_instances:
        raise InsufficientDataError("no cross-validation instances")
    featsets = _feature_sets(cv_instances, cfg.with_k(dlist.k), lex)
    correct, wrong = _first_match_tallies(dlist.entries, featsets)
    used = set(correct) | set(wrong)
    return replace(dlist, entries=[e for i, e in enumerate(dlist.entries) if i in used])


@dataclass(frozen=True)
class AmbiguityClassSpec:
    """A family of words sharing one suffix-level accent ambiguity.

    Slot 0 is the plain suffix, slot 1 the accented one. Members may be
    listed explicitly; otherwise they are discovered from the pattern table.
    """

    name: str
    plain_suffix: str
    accented_suffix: str
    members: tuple[str, ...] = ()


def parse_class_specs(lines) -> list[AmbiguityClassSpec]:
    specs = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 3:
            raise ValueError(f"expected 'name<TAB>plain<TAB>accented[<TAB>members]': {line!r}")
        members = tuple(parts[3].split()) if len(parts) > 3 else ()
        specs.append(AmbiguityClassSpec(parts[0], parts[1], parts[2], members))
    return specs


def load_class_specs(path) -> list[AmbiguityClassSpec]:
    with open(path, encoding="utf-8") as f:
        return parse_class_specs(f)


def slot_of(pattern: str, spec: AmbiguityClassSpec) -> int | None:
    if pattern.endswith(spec.accented_suffix):
        return 1
    if pattern.endswith(spec.plain_suffix):
        return 0
    return None


def slot_map(key: str, patterns: list[str], spec: AmbiguityClassSpec) -> dict[int, int] | None:
    """pattern id -> slot, when the key's patterns align one-to-one with the slots."""
    if len(patterns) != 2:
        return None
    mapping = {}
    for pid, pattern in enumerate(patterns):
        slot = slot_of(pattern, spec)
        if slot is None or slot in mapping.values():
            return None
        mapping[pid] = slot
    return mapping


def find_members(spec: AmbiguityClassSpec, table) -> list[str]:
    """Keys whose accent patterns realize exactly this class's two slots."""
    if spec.members:
        candidates = list(spec.members)
    else:
        candidates = [k for k in table.ambiguous_keys() if k.endswith(spec.plain_suffix)]
    return [
        k for k in candidates
        if k in table and slot_map(k, table.patterns(k), spec) is not None
    ]


def pool_class_instances(
    spec: AmbiguityClassSpec,
    member_instances: dict[str, list[TrainingInstance]],
    table,
) -> list[TrainingInstance]:
    """Pooled, slot-labeled training data with roughly equal member representation.

    Each member is capped at the lower-median member count; capped members
    are stride-sampled so the kept occurrences spread over the corpus.
    """
    with_data = {m: insts for m, insts in member_instances.items() if insts}
    if len(with_data) < 2:
        raise InsufficientDataError(
            f"class {spec.name!r} needs two members with training data"
        )
    quota = median_low(len(v) for v in with_data.values())
    pooled = []
    for member in sorted(with_data):
        insts = with_data[member]
        mapping = slot_map(member, table.patterns(member), spec)
        if len(insts) > quota:
            step = -(-len(insts) // quota)
            insts = insts[::step][:quota]
        for inst in insts:
            pooled.append(replace(inst, label=mapping[inst.label], target=spec.name))
    return pooled


def build_class_list(
    spec: AmbiguityClassSpec,
    member_instances: dict[str, list[TrainingInstance]],
    table,
    cfg: FeatureConfig,
    lex: Lexicons,
    smoothing: SmoothingConfig,
    **kwargs,
) -> DecisionList:
    pooled = pool_class_instances(spec, member_instances, table)
    return build_list(
        pooled,
        (spec.plain_suffix, spec.accented_suffix),
        cfg,
        lex,
        smoothing,
        target=spec.name,
        list_kind="class",
        **kwargs,
    )


def select_list(word_acc: float, class_acc: float, delta: float = 0.01) -> str:
    """Pick the pooled class list unless the word's own list is clearly better."""
    return "class" if class_acc >= word_acc - delta else "word"
