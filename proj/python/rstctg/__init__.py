"""Relation-controlled text generation: an LM's nucleus re-ranked by a discourse parser."""

import os
from pathlib import Path

_data = Path(__file__).parent / "data"
if _data.is_dir():
    os.environ.setdefault("RSTCTG_DATA_DIR", str(_data))

from ._core import (  # noqa: E402
    Backends,
    Error,
    GenerationConfig,
    GenerationResult,
    Relation,
    StepRecord,
    Taxonomy,
    default_data_dir,
    fuse_select,
    normalize_prompt,
    nucleus,
    perturbation_curve,
    temperature_softmax,
    train_ngram,
)

TESTED_RELATIONS = [
    "Cause_NS",
    "Condition_NS",
    "Contrast_NN",
    "Elaboration_NS",
    "Evaluation_NS",
    "Joint_NN",
    "Manner-Means_NS",
]

__all__ = [
    "Backends",
    "Error",
    "GenerationConfig",
    "GenerationResult",
    "Relation",
    "StepRecord",
    "Taxonomy",
    "TESTED_RELATIONS",
    "default_data_dir",
    "fuse_select",
    "normalize_prompt",
    "nucleus",
    "perturbation_curve",
    "temperature_softmax",
    "train_ngram",
]
