"""Trainable diacritic restoration using decision lists over collocational evidence."""

from .corpus import Document, InsufficientDataError, PatternTable, load_corpus
from .decision_list import (
    AmbiguityClassSpec,
    DecisionEntry,
    DecisionList,
    InterpolationConfig,
    SmoothingConfig,
    build_list,
    log_likelihood,
)
from .evaluate import EvalReport, evaluate_split, kfold, prior_baseline
from .features import FeatureConfig, Feature, Lexicons
from .model_io import ModelFormatError, load_model, save_model
from .restore import Model, classify, classify_combined, restore
from .text import DiacriticMap, Token, detokenize, tokenize
from .train import TrainConfig, train_model

__version__ = "0.1.0"

__all__ = [
    "AmbiguityClassSpec",
    "DecisionEntry",
    "DecisionList",
    "DiacriticMap",
    "Document",
    "EvalReport",
    "Feature",
    "FeatureConfig",
    "InsufficientDataError",
    "InterpolationConfig",
    "Lexicons",
    "Model",
    "ModelFormatError",
    "PatternTable",
    "SmoothingConfig",
    "Token",
    "TrainConfig",
    "build_list",
    "classify",
    "classify_combined",
    "detokenize",
    "evaluate_split",
    "kfold",
    "load_corpus",
    "load_model",
    "log_likelihood",
    "prior_baseline",
    "restore",
    "save_model",
    "tokenize",
    "train_model",
    "__version__",
]
