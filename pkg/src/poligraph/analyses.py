"""Corpus analyses over built knowledge graphs.

Four analyses: corpus summarization by category, definition-correctness
checks against the global data ontology, contradiction detection between
positive and negative edges, and data-flow-to-policy consistency labeling
with per-app worst-case aggregation.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache

import yaml

from .annotators import COLLECT, DATA, ENTITY, EXTENDED, NOT_COLLECT
from .errors import ValidationError
from .graph import CollectEdge, PoliGraph, PurposePhrase, PURPOSE_OTHER, load_purpose_lexicon
from .ontology import Ontology
from .util import canonical_json_line, read_data_text

CLEAR = "clear"
VAGUE = "vague"
INCONSISTENT = "inconsistent"
_SEVERITY = {CLEAR: 0, VAGUE: 1, INCONSISTENT: 2}

MISLEADING_NONPERSONAL = "misleading_nonpersonal"
NONSTANDARD_TERM = "nonstandard_term"


# -- summarization -----------------------------------------------------------


@dataclass
class SummaryReport:
    corpus_size: int
    data_counts: dict[str, int] = field(default_factory=dict)
    data_entity_counts: dict[tuple[str, str], int] = field(default_factory=dict)
    data_purpose_counts: dict[tuple[str, str], int] = field(default_factory=dict)


def _entity_categories(graph: PoliGraph, entity: str, entity_ontology: Ontology) -> set[str]:
    """Global categorization first, then the graph's own subsumption edges."""
    cats: set[str] = set()
    if entity in entity_ontology:
        cats |= entity_ontology.categorize(entity)
    for category in entity_ontology.category_level:
        if category in graph.entity_nodes and graph.subsumes(category, entity, ENTITY):
            cats.add(category)
    return cats


def summarize_corpus(
    graphs: list[PoliGraph],
    data_ontology: Ontology,
    entity_ontology: Ontology,
    purpose_lexicon: dict | None = None,
) -> SummaryReport:
    """Count distinct policies per category and per category pair."""
    if not graphs:
        raise ValidationError("no graphs")
    if purpose_lexicon is None:
        purpose_lexicon = load_purpose_lexicon()

    report = SummaryReport(corpus_size=len(graphs))
    for graph in graphs:
        data_cats: set[str] = set()
        pair_entity: set[tuple[str, str]] = set()
        pair_purpose: set[tuple[str, str]] = set()
        for d in sorted(graph.data_nodes):
            if d not in data_ontology:
                continue
            d_cats = data_ontology.categorize(d)
            if not d_cats:
                continue
            for n in sorted(graph.entity_nodes):
                if not graph.collects(n, d):
                    continue
                data_cats |= d_cats
                n_cats = _entity_categories(graph, n, entity_ontology)
                purpose_cats: set[str] = set()
                for edge in graph.covering_edges(n, d):
                    for phrase in graph.edge_purposes(edge):
                        purpose_cats |= phrase.categories - {PURPOSE_OTHER}
                for dc in d_cats:
                    for nc in n_cats:
                        pair_entity.add((dc, nc))
                    for pc in purpose_cats:
                        pair_purpose.add((dc, pc))
        for dc in data_cats:
            report.data_counts[dc] = report.data_counts.get(dc, 0) + 1
        for key in pair_entity:
            report.data_entity_counts[key] = report.data_entity_counts.get(key, 0) + 1
        for key in pair_purpose:
            report.data_purpose_counts[key] = report.data_purpose_counts.get(key, 0) + 1
    return report


def summary_to_csv(
    report: SummaryReport,
    data_ontology: Ontology,
    entity_ontology: Ontology,
    purpose_lexicon: dict | None = None,
) -> str:
    if purpose_lexicon is None:
        purpose_lexicon = load_purpose_lexicon()
    data_cats = sorted(data_ontology.category_level)
    entity_cats = sorted(entity_ontology.category_level)
    purpose_cats = sorted(purpose_lexicon)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["data_category", "policies"]
        + [f"entity:{c}" for c in entity_cats]
        + [f"purpose:{c}" for c in purpose_cats]
    )
    for dc in data_cats:
        row = [dc, report.data_counts.get(dc, 0)]
        row += [report.data_entity_counts.get((dc, ec), 0) for ec in entity_cats]
        row += [report.data_purpose_counts.get((dc, pc), 0) for pc in purpose_cats]
        writer.writerow(row)
    return buf.getvalue()


# -- definition checks -------------------------------------------------------


@dataclass(frozen=True)
class DefinitionDeviation:
    hypernym: str
    hyponym: str | None
    kind: str
    provenance: tuple = ()

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "hypernym": self.hypernym,
            "hyponym": self.hyponym,
            "provenance": list(self.provenance),
        }


@lru_cache(maxsize=1)
def load_deviation_terms() -> tuple[tuple[str, ...], tuple[str, ...]]:
    obj = yaml.safe_load(read_data_text("deviation_terms.yaml"))
    return (
        tuple(obj["misleading_hypernyms"]),
        tuple(obj["nonstandard_terms"]),
    )


def check_definitions(
    graph: PoliGraph,
    data_ontology: Ontology,
    misleading_hypernyms=None,
    nonstandard_terms=None,
) -> list[DefinitionDeviation]:
    """Flag local definitions that clash with or sidestep the global ontology."""
    if misleading_hypernyms is None or nonstandard_terms is None:
        default_misleading, default_nonstandard = load_deviation_terms()
        if misleading_hypernyms is None:
            misleading_hypernyms = default_misleading
        if nonstandard_terms is None:
            nonstandard_terms = default_nonstandard
    misleading = set(misleading_hypernyms)
    nonstandard = set(nonstandard_terms)

    out: list[DefinitionDeviation] = []
    local_children: dict[str, list[str]] = {}
    for kind, parent, child in sorted(graph.subsume_edges):
        if kind != DATA:
            continue
        local_children.setdefault(parent, []).append(child)
        if parent in misleading and child in data_ontology:
            out.append(
                DefinitionDeviation(
                    hypernym=parent,
                    hyponym=child,
                    kind=MISLEADING_NONPERSONAL,
                    provenance=tuple(graph.provenance.get((kind, parent, child), [])),
                )
            )
    for term in sorted(nonstandard):
        if term not in graph.data_nodes:
            continue
        children = sorted(local_children.get(term, []))
        if not children:
            out.append(DefinitionDeviation(hypernym=term, hyponym=None, kind=NONSTANDARD_TERM))
        for child in children:
            out.append(
                DefinitionDeviation(
                    hypernym=term,
                    hyponym=child,
                    kind=NONSTANDARD_TERM,
                    provenance=tuple(graph.provenance.get((DATA, term, child), [])),
                )
            )
    out.sort(key=lambda d: (d.kind, d.hypernym, d.hyponym or ""))
    return out


def deviations_to_jsonl(deviations: list[DefinitionDeviation]) -> str:
    return "".join(canonical_json_line(d.to_json_obj()) + "\n" for d in deviations)


# -- contradictions ----------------------------------------------------------


@dataclass(frozen=True)
class ConflictingEdgePair:
    positive: CollectEdge
    negative: CollectEdge
    data_witness: str
    entity_witness: str
    purpose_witness: tuple[str, ...]

    def to_json_obj(self) -> dict:
        def edge_obj(e: CollectEdge) -> dict:
            return {
                "entity": e.entity,
                "data": e.data,
                "polarity": e.polarity,
                "action": e.action,
                "subject": e.subject,
            }

        return {
            "positive": edge_obj(self.positive),
            "negative": edge_obj(self.negative),
            "witness": {
                "data": self.data_witness,
                "entity": self.entity_witness,
                "purposes": list(self.purpose_witness),
            },
        }


def _edge_categories(graph: PoliGraph, edge: CollectEdge) -> set[str]:
    cats: set[str] = set()
    for phrase in graph.edge_purposes(edge):
        cats |= phrase.categories
    return cats


def _common_descendant(graph: PoliGraph, a: str, b: str, kind: str) -> str | None:
    if a == b:
        return a
    pool = graph.nodes_of(kind)
    common = [
        t
        for t in sorted(pool)
        if graph.subsumes(a, t, kind) and graph.subsumes(b, t, kind)
    ]
    return common[0] if common else None


def find_conflicts(graph: PoliGraph) -> list[ConflictingEdgePair]:
    """Positive/negative edge pairs where every parameter clashes."""
    if graph.mode != EXTENDED:
        raise ValidationError("graph not built in extended mode")
    positives = sorted(
        (e for e in graph.collect_edges if e.polarity == COLLECT), key=lambda e: e.key()
    )
    negatives = sorted(
        (e for e in graph.collect_edges if e.polarity == NOT_COLLECT),
        key=lambda e: e.key(),
    )
    out: list[ConflictingEdgePair] = []
    for pos in positives:
        for neg in negatives:
            data_w = _common_descendant(graph, pos.data, neg.data, DATA)
            if data_w is None:
                continue
            entity_w = _common_descendant(graph, pos.entity, neg.entity, ENTITY)
            if entity_w is None:
                continue
            neg_phrases = graph.edge_purposes(neg)
            if not neg_phrases:
                purpose_w: tuple[str, ...] = ()
            else:
                inter = _edge_categories(graph, pos) & _edge_categories(graph, neg)
                if not inter:
                    continue
                purpose_w = tuple(sorted(inter))
            if pos.subject != neg.subject:
                continue
            if pos.action != neg.action:
                continue
            out.append(
                ConflictingEdgePair(
                    positive=pos,
                    negative=neg,
                    data_witness=data_w,
                    entity_witness=entity_w,
                    purpose_witness=purpose_w,
                )
            )
    return out


def conflicts_to_jsonl(pairs: list[ConflictingEdgePair]) -> str:
    return "".join(canonical_json_line(p.to_json_obj()) + "\n" for p in pairs)


# -- flow consistency --------------------------------------------------------


@dataclass(frozen=True)
class DataFlow:
    entity: str
    data_type: str


@dataclass(frozen=True)
class Disclosure:
    kind: str
    witnesses: tuple[tuple[str, str], ...] = ()  # (data term, entity term)
    purposes: tuple[PurposePhrase, ...] = ()


def _flow_purposes(graph: PoliGraph, entity: str, data: str) -> set[PurposePhrase]:
    out: set[PurposePhrase] = set()
    for edge in graph.covering_edges(entity, data):
        out.update(graph.edge_purposes(edge))
    return out


def check_flow(
    graph: PoliGraph,
    flow: DataFlow,
    data_ontology: Ontology,
    entity_ontology: Ontology,
) -> Disclosure:
    """Label one observed flow as clear, vague, or inconsistent."""
    n, d = flow.entity, flow.data_type
    if (
        graph.has_node(n, ENTITY)
        and graph.has_node(d, DATA)
        and graph.collects(n, d)
    ):
        purposes = sorted(_flow_purposes(graph, n, d), key=lambda p: p.text)
        return Disclosure(kind=CLEAR, purposes=tuple(purposes))

    witnesses: list[tuple[str, str]] = []
    if d in data_ontology and n in entity_ontology:
        data_terms = [
            t
            for t in sorted(graph.data_nodes)
            if t in data_ontology and data_ontology.subsumes(t, d)
        ]
        entity_terms = [
            t
            for t in sorted(graph.entity_nodes)
            if t in entity_ontology and entity_ontology.subsumes(t, n)
        ]
        for dt in data_terms:
            for nt in entity_terms:
                if graph.collects(nt, dt):
                    witnesses.append((dt, nt))
    if not witnesses:
        return Disclosure(kind=INCONSISTENT)

    purposes: set[PurposePhrase] = set()
    for dt, nt in witnesses:
        purposes |= _flow_purposes(graph, nt, dt)

    def dominated(w: tuple[str, str]) -> bool:
        return any(
            o != w
            and data_ontology.subsumes(w[0], o[0])
            and entity_ontology.subsumes(w[1], o[1])
            for o in witnesses
        )

    minimal = tuple(w for w in witnesses if not dominated(w))
    return Disclosure(
        kind=VAGUE,
        witnesses=minimal,
        purposes=tuple(sorted(purposes, key=lambda p: p.text)),
    )


def worst_disclosure(kinds) -> str:
    """The most severe label among a group of flow results."""
    kinds = list(kinds)
    if not kinds:
        raise ValidationError("no flow results")
    return max(kinds, key=lambda k: _SEVERITY[k])


# -- flow file formats -------------------------------------------------------


def flows_from_csv(text: str) -> list[tuple[str, DataFlow]]:
    reader = csv.DictReader(io.StringIO(text))
    expected = ["app_id", "entity", "data_type"]
    if reader.fieldnames is None or list(reader.fieldnames) != expected:
        raise ValidationError(
            f"flow file header must be {','.join(expected)!r}"
        )
    out = []
    for row in reader:
        out.append((row["app_id"], DataFlow(entity=row["entity"], data_type=row["data_type"])))
    return out


def flow_results_to_csv(rows: list[tuple[str, DataFlow, Disclosure]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "app_id",
            "entity",
            "data_type",
            "disclosure",
            "witness_data",
            "witness_entity",
            "purposes",
        ]
    )
    for app_id, flow, disc in rows:
        writer.writerow(
            [
                app_id,
                flow.entity,
                flow.data_type,
                disc.kind,
                ";".join(w[0] for w in disc.witnesses),
                ";".join(w[1] for w in disc.witnesses),
                ";".join(p.text for p in disc.purposes),
            ]
        )
    return buf.getvalue()


def worst_to_csv(rows: list[tuple[str, DataFlow, Disclosure]]) -> str:
    per_app: dict[str, list[str]] = {}
    for app_id, _, disc in rows:
        per_app.setdefault(app_id, []).append(disc.kind)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["app_id", "disclosure"])
    for app_id in sorted(per_app):
        writer.writerow([app_id, worst_disclosure(per_app[app_id])])
    return buf.getvalue()
