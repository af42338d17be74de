"""End-to-end training: pattern table, per-word lists, pooled class lists,
pruning, and word-vs-class selection."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .corpus import (
    Document,
    InsufficientDataError,
    PatternTable,
    TrainingInstance,
    collect_all_contexts,
)
from .decision_list import (
    AmbiguityClassSpec,
    DecisionList,
    InterpolationConfig,
    SmoothingConfig,
    build_class_list,
    build_list,
    find_members,
    interpolate_residual,
    prune_cross_validation,
    prune_subsumption,
    prune_unused,
    select_list,
    slot_map,
)
from .features import FeatureConfig, Lexicons, extract_features
from .restore import Model
from .text import DiacriticMap


@dataclass
class TrainConfig:
    k: int = 4                   # window for per-word lists
    class_k: int = 20            # wider window for pooled class lists
    smoothing: SmoothingConfig = field(default_factory=SmoothingConfig)
    interpolation: InterpolationConfig = field(default_factory=InterpolationConfig)
    min_count: int = 2           # pattern-table floor per key
    min_feature_count: int = 1
    min_window_count: int = 2
    prune_cv: bool = True
    prune_unused: bool = False
    select_delta: float = 0.01
    holdout: float = 0.2         # share of each key's contexts held out for pruning/selection
    suffix: bool = False
    suffix_lengths: tuple[int, ...] = (2, 3, 4)
    seed: int = 0

    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(k=self.k, suffix=self.suffix, suffix_lengths=self.suffix_lengths)


def _split_holdout(instances, fraction: float, rng: random.Random):
    """Deterministic per-key split; the held-out part feeds pruning and selection."""
    if len(instances) < 5 or fraction <= 0:
        return list(instances), []
    idx = list(range(len(instances)))
    rng.shuffle(idx)
    n_cv = max(1, int(len(instances) * fraction))
    cv = frozenset(idx[:n_cv])
    fit = [inst for i, inst in enumerate(instances) if i not in cv]
    held = [inst for i, inst in enumerate(instances) if i in cv]
    return fit, held


def _accuracy(dl: DecisionList, featsets) -> float:
    correct = 0
    for feats, label in featsets:
        e = dl.first_match(feats)
        correct += (e.cls if e is not None else dl.default) == label
    return correct / len(featsets) if featsets else 0.0


def _featsets(instances, cfg: FeatureConfig, lex: Lexicons, k: int):
    sub = cfg.with_k(k)
    return [(extract_features(i.left, i.right, sub, lex), i.label) for i in instances]


def _finish_list(dl, cv, cfg, fcfg, lex, all_insts):
    dl = interpolate_residual(dl, all_insts, cfg.interpolation, fcfg, lex, cfg.smoothing)
    dl = prune_subsumption(dl, lex)
    if cfg.prune_cv and cv:
        dl = prune_cross_validation(dl, cv, fcfg, lex)
    if cfg.prune_unused and cv:
        dl = prune_unused(dl, cv, fcfg, lex)
    return dl


def train_model(
    docs: list[Document],
    dmap: DiacriticMap,
    cfg: TrainConfig | None = None,
    lex: Lexicons | None = None,
    class_specs: tuple[AmbiguityClassSpec, ...] = (),
    progress=None,
    lang: str = "",
) -> Model:
    """Train a complete restoration model from accent-carrying documents."""
    cfg = cfg or TrainConfig()
    lex = lex or Lexicons()
    rng = random.Random(cfg.seed)

    def note(msg):
        if progress is not None:
            progress(msg)

    table = PatternTable.build(docs, dmap, cfg.min_count)
    if not len(table):
        raise InsufficientDataError("corpus produced an empty pattern table")
    ambiguous = table.ambiguous_keys()
    note(f"pattern table: {len(table)} keys, {len(ambiguous)} ambiguous")

    fcfg = cfg.feature_config()
    widest = cfg.class_k if class_specs else cfg.k
    contexts = collect_all_contexts(docs, table, ambiguous, max(cfg.k, widest), dmap)

    model = Model(
        dmap=dmap, table=table, cfg=fcfg, lex=lex,
        smoothing=cfg.smoothing, interpolation=cfg.interpolation, lang=lang,
    )

    splits: dict[str, tuple[list, list]] = {}
    for key in ambiguous:
        insts = contexts.get(key, [])
        if not insts:
            continue
        fit, cv = _split_holdout(insts, cfg.holdout, rng)
        splits[key] = (fit, cv)
        labels = tuple(table.patterns(key))
        dl = build_list(
            fit, labels, fcfg, lex, cfg.smoothing,
            target=key,
            min_feature_count=cfg.min_feature_count,
            min_window_count=cfg.min_window_count,
        )
        model.lists[key] = _finish_list(dl, cv, cfg, fcfg, lex, fit)
    note(f"built {len(model.lists)} word lists")

    class_fcfg = fcfg.with_k(cfg.class_k)
    for spec in class_specs:
        members = [m for m in find_members(spec, table) if m in splits]
        member_fit = {m: splits[m][0] for m in members}
        try:
            dl = build_class_list(
                spec, member_fit, table, class_fcfg, lex, cfg.smoothing,
                min_feature_count=cfg.min_feature_count,
                min_window_count=cfg.min_window_count,
            )
        except InsufficientDataError:
            note(f"class {spec.name}: not enough member data, skipped")
            continue
        pooled_fit, pooled_cv = [], []
        for m in members:
            mapping = slot_map(m, table.patterns(m), spec)
            for part, out in ((splits[m][0], pooled_fit), (splits[m][1], pooled_cv)):
                out += [
                    TrainingInstance(mapping[i.label], i.left, i.right, spec.name)
                    for i in part
                ]
        dl = _finish_list(dl, pooled_cv, cfg, class_fcfg, lex, pooled_fit)
        model.class_lists[spec.name] = dl
        model.class_specs[spec.name] = spec

        for m in members:
            cv = splits[m][1]
            mapping = slot_map(m, table.patterns(m), spec)
            word_acc = _accuracy(model.lists[m], _featsets(cv, fcfg, lex, cfg.k))
            slot_cv = [
                (feats, mapping[label])
                for feats, label in _featsets(cv, fcfg, lex, cfg.class_k)
            ]
            class_acc = _accuracy(dl, slot_cv)
            if select_list(word_acc, class_acc, cfg.select_delta) == "class":
                model.assignment[m] = spec.name
        kept = sum(1 for m in members if model.assignment.get(m) == spec.name)
        note(f"class {spec.name}: {len(members)} members, {kept} assigned")

    return model
