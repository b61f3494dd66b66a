"""Adapter configuration."""

from dataclasses import dataclass

NER_SOURCES = ("model", "rule_fallback", "merged")

DEFAULT_MODEL = "heuristic-v1"


class AdapterError(Exception):
    """Configuration or model problem that should stop the run."""


@dataclass(frozen=True)
class AdapterConfig:
    """Settings for one adapter run.

    model: parser identifier. "heuristic-v1" selects the built-in
        deterministic pipeline; any other name is looked up as a spaCy
        package and is an error when that package is unavailable.
    batch_size: number of sentences handed to a statistical model per
        call. The heuristic pipeline ignores it.
    ner_source: where DATA/ENTITY spans come from. "model" uses only
        the statistical model's entities, "rule_fallback" only the
        rule lexicon, "merged" takes model spans plus rule spans that
        do not overlap them (model spans win on overlap).
    """

    model: str = DEFAULT_MODEL
    batch_size: int = 32
    ner_source: str = "rule_fallback"

    def __post_init__(self):
        if self.ner_source not in NER_SOURCES:
            raise ValueError(
                f"ner_source must be one of {NER_SOURCES}, got {self.ner_source!r}"
            )
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
