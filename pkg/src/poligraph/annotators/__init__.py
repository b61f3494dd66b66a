"""Annotators that turn parsed sentences into a phrase graph."""

from .collection import (
    AFFIRMATIVE_ONLY,
    EXTENDED,
    annotate_collection,
    annotate_subject,
)
from .coreference import annotate_coreference
from .listing import annotate_list
from .phrase_graph import (
    COLLECT,
    COREF,
    DATA,
    ENTITY,
    GENERAL_USER,
    CHILD,
    NOT_COLLECT,
    PURPOSE,
    PURPOSE_PHRASE,
    SUBSUME,
    PhraseEdge,
    PhraseGraph,
    PhraseNode,
)
from .pipeline import MODES, run_annotators
from .purpose import annotate_purpose
from .rules import (
    MatchRule,
    Slot,
    classify_action,
    load_collection_rules,
    rules_version,
)
from .subsumption import annotate_subsumption

__all__ = [
    "AFFIRMATIVE_ONLY",
    "EXTENDED",
    "MODES",
    "COLLECT",
    "COREF",
    "DATA",
    "ENTITY",
    "GENERAL_USER",
    "CHILD",
    "NOT_COLLECT",
    "PURPOSE",
    "PURPOSE_PHRASE",
    "SUBSUME",
    "PhraseEdge",
    "PhraseGraph",
    "PhraseNode",
    "MatchRule",
    "Slot",
    "annotate_collection",
    "annotate_coreference",
    "annotate_list",
    "annotate_purpose",
    "annotate_subject",
    "annotate_subsumption",
    "classify_action",
    "load_collection_rules",
    "rules_version",
    "run_annotators",
]
