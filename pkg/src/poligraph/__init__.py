"""Knowledge graphs from privacy-policy text, and analyses over them.

The pipeline turns a parsed policy document (PPD file) into a typed graph of
data types and entities connected by collection and subsumption edges, then
answers questions about what the policy discloses: per-category summaries,
definition checks against a global data ontology, contradiction detection,
and consistency labels for observed data flows.
"""

from .analyses import (
    CLEAR,
    INCONSISTENT,
    VAGUE,
    ConflictingEdgePair,
    DataFlow,
    DefinitionDeviation,
    Disclosure,
    SummaryReport,
    check_definitions,
    check_flow,
    find_conflicts,
    summarize_corpus,
    worst_disclosure,
)
from .annotators import (
    AFFIRMATIVE_ONLY,
    COLLECT,
    DATA,
    ENTITY,
    EXTENDED,
    NOT_COLLECT,
    SUBSUME,
    run_annotators,
)
from .document import (
    DocumentTree,
    Segment,
    SegmentKind,
    TextVariant,
    build_document_tree,
    enumerate_text_variants,
)
from .errors import (
    ConfigError,
    FormatError,
    OntologyError,
    PoligraphError,
    UnknownSegmentError,
    UnmappedVerbError,
    ValidationError,
)
from .graph import (
    CollectEdge,
    PoliGraph,
    PurposePhrase,
    build_poligraph,
    classify_purpose,
    export_graph,
    graph_from_json_obj,
    graph_to_json_obj,
    load_graph,
)
from .normalize import Normalizer, Term, load_default_normalizer
from .ontology import Ontology, load_data_ontology, load_entity_ontology, load_ontology
from .ppd import (
    NerLabel,
    ParsedDocument,
    Sentence,
    Token,
    iter_parsed_documents,
    load_document_file,
    load_parsed_document,
    serialize_parsed_document,
)

__version__ = "0.1.0"

__all__ = [
    "AFFIRMATIVE_ONLY",
    "CLEAR",
    "COLLECT",
    "DATA",
    "ENTITY",
    "EXTENDED",
    "INCONSISTENT",
    "NOT_COLLECT",
    "SUBSUME",
    "VAGUE",
    "CollectEdge",
    "ConflictingEdgePair",
    "ConfigError",
    "DataFlow",
    "DefinitionDeviation",
    "Disclosure",
    "DocumentTree",
    "FormatError",
    "NerLabel",
    "Normalizer",
    "Ontology",
    "OntologyError",
    "ParsedDocument",
    "PoliGraph",
    "PoligraphError",
    "PurposePhrase",
    "Segment",
    "SegmentKind",
    "Sentence",
    "SummaryReport",
    "Term",
    "TextVariant",
    "Token",
    "UnknownSegmentError",
    "UnmappedVerbError",
    "ValidationError",
    "build_document_tree",
    "build_poligraph",
    "check_definitions",
    "check_flow",
    "classify_purpose",
    "enumerate_text_variants",
    "export_graph",
    "find_conflicts",
    "graph_from_json_obj",
    "graph_to_json_obj",
    "iter_parsed_documents",
    "load_data_ontology",
    "load_default_normalizer",
    "load_document_file",
    "load_entity_ontology",
    "load_graph",
    "load_ontology",
    "load_parsed_document",
    "run_annotators",
    "serialize_parsed_document",
    "worst_disclosure",
]
