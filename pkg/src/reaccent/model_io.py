"""Model persistence: a versioned, line-oriented UTF-8 text format.

Layout (all fields tab-separated; section headers carry entry counts):

    reaccent-model 1
    CONFIG  k=4  word_at=1 ...
    MAP 7        accented<TAB>plain
    PATTERNS n   key<TAB>pattern<TAB>count<TAB>pattern<TAB>count...
    CLASSES n    NAME<TAB>member member...
    TAGS n       word<TAB>TAG,TAG
    LEMMAS n     word<TAB>lemma
    CLASSSPEC n  name<TAB>plain<TAB>accented<TAB>member member...
    ASSIGN n     key<TAB>class-name
    LISTS n      one LIST block per decision list
    END

Each LIST block:

    LIST<TAB>word|class<TAB>target<TAB>k<TAB>default<TAB>n-entries
    labels<TAB>label<TAB>label...
    ll<TAB>cls<TAB>kind<TAB>pos<TAB>value...

Log-likelihoods are written to four decimal places; feature counts are
training scaffolding and are not persisted.
"""

from __future__ import annotations

from .corpus import PatternTable
from .decision_list import (
    DecisionEntry,
    DecisionList,
    InterpolationConfig,
    SmoothingConfig,
    parse_class_specs,
)
from .features import (
    Feature,
    FeatureConfig,
    LemmaLexicon,
    Lexicons,
    TagLexicon,
    WordClassSet,
)
from .restore import Model
from .text import DiacriticMap

FORMAT_NAME = "reaccent-model"
FORMAT_VERSION = 1

_CONFIG_FLAGS = ("word_at", "pairs", "window", "classes", "tags", "lemmas", "suffix")


class ModelFormatError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None):
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno


def serialize_model(model: Model) -> str:
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION}"]
    cfg = model.cfg
    config = [f"lang={model.lang}", f"k={cfg.k}"]
    config += [f"{name}={int(getattr(cfg, name))}" for name in _CONFIG_FLAGS]
    config.append("suffix_lengths=" + ",".join(str(n) for n in cfg.suffix_lengths))
    config.append(f"alpha={model.smoothing.alpha!r}")
    config.append(f"beta={model.interpolation.beta!r}")
    config.append(f"gamma={model.interpolation.gamma!r}")
    lines.append("CONFIG\t" + "\t".join(config))

    pairs = sorted(model.dmap.items())
    lines.append(f"MAP {len(pairs)}")
    lines += [f"{a}\t{p}" for a, p in pairs]

    keys = sorted(model.table.entries)
    lines.append(f"PATTERNS {len(keys)}")
    for key in keys:
        cells = [key]
        for pattern, n in model.table.entries[key]:
            cells += [pattern, str(n)]
        lines.append("\t".join(cells))

    classes = model.lex.classes.classes
    lines.append(f"CLASSES {len(classes)}")
    for name in sorted(classes):
        lines.append(f"{name}\t{' '.join(sorted(classes[name]))}")

    tags = model.lex.tags.tags
    lines.append(f"TAGS {len(tags)}")
    for word in sorted(tags):
        lines.append(f"{word}\t{','.join(sorted(tags[word]))}")

    lemmas = model.lex.lemmas.lemmas
    lines.append(f"LEMMAS {len(lemmas)}")
    for word in sorted(lemmas):
        lines.append(f"{word}\t{lemmas[word]}")

    specs = model.class_specs
    lines.append(f"CLASSSPEC {len(specs)}")
    for name in sorted(specs):
        s = specs[name]
        row = f"{s.name}\t{s.plain_suffix}\t{s.accented_suffix}"
        if s.members:
            row += "\t" + " ".join(s.members)
        lines.append(row)

    lines.append(f"ASSIGN {len(model.assignment)}")
    for key in sorted(model.assignment):
        lines.append(f"{key}\t{model.assignment[key]}")

    all_lists = [model.lists[t] for t in sorted(model.lists)]
    all_lists += [model.class_lists[t] for t in sorted(model.class_lists)]
    lines.append(f"LISTS {len(all_lists)}")
    for dl in all_lists:
        lines.append(
            f"LIST\t{dl.list_kind}\t{dl.target}\t{dl.k}\t{dl.default}\t{len(dl.entries)}"
        )
        lines.append("labels\t" + "\t".join(dl.labels))
        for e in dl.entries:
            cells = [f"{e.ll:.4f}", str(e.cls), e.feature.kind, e.feature.pos]
            cells += list(e.feature.value)
            lines.append("\t".join(cells))

    lines.append("END")
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    @property
    def lineno(self) -> int:
        return self.pos  # 1-based number of the line just read

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ModelFormatError("unexpected end of file", len(self.lines))
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def section(self, name: str) -> int:
        line = self.next()
        parts = line.split(" ")
        if len(parts) != 2 or parts[0] != name:
            raise ModelFormatError(f"expected '{name} <count>', got {line!r}", self.lineno)
        try:
            n = int(parts[1])
        except ValueError:
            raise ModelFormatError(f"bad count in {line!r}", self.lineno) from None
        if n < 0:
            raise ModelFormatError(f"negative count in {line!r}", self.lineno)
        return n

    def block(self, name: str) -> list[str]:
        return [self.next() for _ in range(self.section(name))]


def _parse_config(line: str, lineno: int):
    fields = {}
    parts = line.split("\t")
    if parts[0] != "CONFIG":
        raise ModelFormatError(f"expected CONFIG line, got {line!r}", lineno)
    for cell in parts[1:]:
        name, _, value = cell.partition("=")
        fields[name] = value
    try:
        kwargs = {"k": int(fields["k"])}
        for name in _CONFIG_FLAGS:
            kwargs[name] = fields[name] == "1"
        raw = fields["suffix_lengths"]
        kwargs["suffix_lengths"] = tuple(int(n) for n in raw.split(",")) if raw else ()
        return (
            FeatureConfig(**kwargs),
            SmoothingConfig(float(fields["alpha"])),
            InterpolationConfig(float(fields["beta"]), float(fields["gamma"])),
            fields.get("lang", ""),
        )
    except (KeyError, ValueError) as exc:
        raise ModelFormatError(f"bad CONFIG line: {exc}", lineno) from None


def parse_model(text: str) -> Model:
    r = _Reader(text)
    header = r.next().split(" ")
    if len(header) != 2 or header[0] != FORMAT_NAME:
        raise ModelFormatError("not a model file (bad header)", r.lineno)
    if header[1] != str(FORMAT_VERSION):
        raise ModelFormatError(f"unsupported format version {header[1]!r}", r.lineno)

    cfg, smoothing, interpolation, lang = _parse_config(r.next(), r.lineno)

    try:
        dmap = DiacriticMap.parse(r.block("MAP"))
    except ValueError as exc:
        raise ModelFormatError(str(exc), r.lineno) from None

    entries: dict[str, list[tuple[str, int]]] = {}
    for line in r.block("PATTERNS"):
        cells = line.split("\t")
        if len(cells) < 3 or len(cells) % 2 == 0:
            raise ModelFormatError(f"bad pattern row {line!r}", r.lineno)
        try:
            entries[cells[0]] = [
                (cells[i], int(cells[i + 1])) for i in range(1, len(cells), 2)
            ]
        except ValueError:
            raise ModelFormatError(f"bad pattern count in {line!r}", r.lineno) from None
    table = PatternTable(entries)

    lex = Lexicons(
        classes=WordClassSet.parse(r.block("CLASSES")),
        tags=TagLexicon.parse(r.block("TAGS")),
        lemmas=LemmaLexicon.parse(r.block("LEMMAS")),
    )

    try:
        specs = parse_class_specs(r.block("CLASSSPEC"))
    except ValueError as exc:
        raise ModelFormatError(str(exc), r.lineno) from None

    assignment = {}
    for line in r.block("ASSIGN"):
        key, sep, name = line.partition("\t")
        if not sep:
            raise ModelFormatError(f"bad assignment row {line!r}", r.lineno)
        assignment[key] = name

    model = Model(
        dmap=dmap,
        table=table,
        cfg=cfg,
        lex=lex,
        class_specs={s.name: s for s in specs},
        assignment=assignment,
        smoothing=smoothing,
        interpolation=interpolation,
        lang=lang,
    )

    for _ in range(r.section("LISTS")):
        head = r.next().split("\t")
        if len(head) != 6 or head[0] != "LIST":
            raise ModelFormatError(f"bad LIST header {head!r}", r.lineno)
        _, list_kind, target, k, default, n_entries = head
        if list_kind not in ("word", "class"):
            raise ModelFormatError(f"unknown list kind {list_kind!r}", r.lineno)
        labels_row = r.next().split("\t")
        if labels_row[0] != "labels" or len(labels_row) < 2:
            raise ModelFormatError("expected labels row", r.lineno)
        labels = tuple(labels_row[1:])
        try:
            k, default, n_entries = int(k), int(default), int(n_entries)
        except ValueError:
            raise ModelFormatError("bad LIST header numbers", r.lineno) from None
        if not 0 <= default < len(labels):
            raise ModelFormatError(f"default {default} out of range", r.lineno)
        dl_entries = []
        for _ in range(n_entries):
            cells = r.next().split("\t")
            if len(cells) < 5:
                raise ModelFormatError(f"bad entry row {cells!r}", r.lineno)
            try:
                ll, cls = float(cells[0]), int(cells[1])
            except ValueError:
                raise ModelFormatError("bad entry numbers", r.lineno) from None
            if not 0 <= cls < len(labels):
                raise ModelFormatError(f"entry class {cls} out of range", r.lineno)
            feature = Feature(cells[2], cells[3], tuple(cells[4:]))
            dl_entries.append(DecisionEntry(feature, ll, cls))
        dl = DecisionList(target, list_kind, k, labels, dl_entries, default)
        if list_kind == "word":
            model.lists[target] = dl
        else:
            model.class_lists[target] = dl

    if r.next() != "END":
        raise ModelFormatError("expected END", r.lineno)
    return model


def save_model(model: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_model(model))


def load_model(path) -> Model:
    with open(path, encoding="utf-8") as f:
        return parse_model(f.read())
