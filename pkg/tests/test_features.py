import random

from reaccent.features import (
    Feature,
    FeatureConfig,
    LemmaLexicon,
    Lexicons,
    TagLexicon,
    WordClassSet,
    extract_features,
)
import pytest

LEX = Lexicons(
    classes=WordClassSet({"WEEKDAY": {"domingo", "lunes"}}),
    tags=TagLexicon({"de": {"PREP"}, "que": {"CONJ", "PRON"}}),
    lemmas=LemmaLexicon({"dijo": "decir", "dice": "decir"}),
)


def feats(left, right, cfg=None, lex=None):
    return extract_features(tuple(left), tuple(right), cfg or FeatureConfig(), lex or Lexicons())


def test_adjacent_and_pair_features():
    fs = feats(["se", "la"], ["de", "hoy"])
    assert Feature("w", "-1", ("la",)) in fs
    assert Feature("w", "+1", ("de",)) in fs
    assert Feature("pair", "-2,-1", ("se", "la")) in fs
    assert Feature("pair", "-1,+1", ("la", "de")) in fs
    assert Feature("pair", "+1,+2", ("de", "hoy")) in fs


def test_window_features_cover_both_sides():
    fs = feats(["a", "b"], ["c"])
    wins = {f.value[0] for f in fs if f.kind == "win"}
    assert wins == {"a", "b", "c"}


def test_missing_neighbors_omit_features():
    fs = feats([], ["de"])
    kinds = {(f.kind, f.pos) for f in fs}
    assert ("w", "-1") not in kinds
    assert ("pair", "-2,-1") not in kinds
    assert ("pair", "-1,+1") not in kinds
    assert ("w", "+1") in kinds


def test_window_trimmed_to_k():
    fs = feats(["v1", "v2", "v3", "near"], ["r1", "r2", "r3"], cfg=FeatureConfig(k=2))
    wins = {f.value[0] for f in fs if f.kind == "win"}
    assert wins == {"v3", "near", "r1", "r2"}
    # adjacency is unaffected by trimming
    assert Feature("w", "-1", ("near",)) in fs


def test_class_features_use_lexicon():
    fs = feats(["domingo"], ["tarde"], lex=LEX)
    assert Feature("cls", "-1", ("WEEKDAY",)) in fs
    assert Feature("clswin", "", ("WEEKDAY",)) in fs
    assert not any(f.kind == "cls" and f.pos == "+1" for f in fs)


def test_tag_features_and_union_tag():
    fs = feats(["de"], ["que"], lex=LEX)
    assert Feature("tag", "-1", ("PREP",)) in fs
    assert Feature("tag", "+1", ("CONJ-PRON",)) in fs


def test_tagpair_variants():
    fs = feats(["de"], ["que"], lex=LEX)
    assert Feature("tagpair", "-1,+1", ("PREP", "que")) in fs
    assert Feature("tagpair", "-1,+1", ("de", "CONJ-PRON")) in fs
    assert Feature("tagpair", "-1,+1", ("PREP", "CONJ-PRON")) in fs


def test_lemma_features_only_inside_domain():
    fs = feats(["dijo"], ["mesa"], lex=LEX)
    lems = {f.value[0] for f in fs if f.kind == "lemwin"}
    assert lems == {"decir"}


def test_suffix_features_off_by_default():
    fs = feats(["terminara"], [])
    assert not any(f.kind == "suf" for f in fs)


def test_suffix_features_when_enabled():
    fs = feats(["terminara"], ["26"], cfg=FeatureConfig(suffix=True))
    sufs = {(f.pos, f.value[0]) for f in fs if f.kind == "suf"}
    assert sufs == {("-1", "ra"), ("-1", "ara"), ("-1", "nara")}  # nothing for the number


def test_word_and_class_namespaces_disjoint(planted_docs):
    # class/tag values are uppercase, word values lowercase: no collisions
    lex = Lexicons(classes=WordClassSet({"MESA": {"mesa"}}))
    fs = feats(["mesa"], [], lex=lex)
    assert Feature("w", "-1", ("mesa",)) in fs
    assert Feature("cls", "-1", ("MESA",)) in fs


def test_feature_string_form():
    assert str(Feature("w", "-1", ("la",))) == "w:-1=la"
    assert str(Feature("pair", "-2,-1", ("se", "la"))) == "pair:-2,-1=se,la"
    assert str(Feature("win", "", ("hoy",))) == "win=hoy"


def test_feature_count_bound():
    # without lexicons: <= 2 adjacent + 3 pairs + 2k window words
    rng = random.Random(4)
    vocab = [f"w{i}" for i in range(30)]
    cfg = FeatureConfig(k=4)
    for _ in range(200):
        left = tuple(rng.choice(vocab) for _ in range(rng.randrange(7)))
        right = tuple(rng.choice(vocab) for _ in range(rng.randrange(7)))
        fs = extract_features(left, right, cfg, Lexicons())
        assert len(fs) <= 2 + 3 + 2 * cfg.k


def test_extraction_is_deterministic():
    rng = random.Random(12)
    vocab = ["de", "que", "domingo", "mesa", "dijo"]
    for _ in range(100):
        left = tuple(rng.choice(vocab) for _ in range(rng.randrange(5)))
        right = tuple(rng.choice(vocab) for _ in range(rng.randrange(5)))
        assert feats(left, right, lex=LEX) == feats(left, right, lex=LEX)


def test_config_rejects_bad_window():
    with pytest.raises(ValueError):
        FeatureConfig(k=0)


def test_config_rejects_all_disabled():
    with pytest.raises(ValueError):
        FeatureConfig(word_at=False, pairs=False, window=False,
                      classes=False, tags=False, lemmas=False, suffix=False)


def test_class_set_parse():
    cs = WordClassSet.parse(["# comment", "weekday\tdomingo lunes", "", "MES\tenero"])
    assert cs.lookup("domingo") == {"WEEKDAY"}
    assert cs.members("MES") == frozenset({"enero"})


def test_tag_lexicon_parse():
    tl = TagLexicon.parse(["que\tCONJ,PRON", "de\tprep"])
    assert tl.union_tag("que") == "CONJ-PRON"
    assert tl.union_tag("de") == "PREP"
    assert tl.union_tag("mesa") is None


def test_lemma_lexicon_parse():
    ll = LemmaLexicon.parse(["dijo\tdecir"])
    assert ll.lemma("dijo") == "decir"
    assert ll.lemma("mesa") == "mesa"
    assert "dijo" in ll and "mesa" not in ll
