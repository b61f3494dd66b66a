"""Phrase normalization: verbatim DATA/ENTITY phrases to canonical terms.

Order of attempts, first hit wins:

1. blanket terms - a data phrase that reduces to a bare generic word
   ("information", "data", "details") becomes "unspecified data"; an
   entity phrase reducing to "third party" or an equivalent becomes
   "unspecified third party";
2. synonym rules - regexes over the lowercase phrase, one per canonical
   term of the global ontologies, plus company-alias n-gram rules
   compiled from the alias dataset;
3. fallback - the stop-word-stripped form, singularized for data
   phrases ("your vehicle records" -> "vehicle record"). Entity phrases
   keep their surface plural: canonical entities are caught by rules in
   step 2, and hand-named ones ("travel partners") stay recognizable.

Normalization is idempotent: feeding a produced name back in returns
the same term.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache

import yaml

from .ppd import NerLabel
from .util import read_data_text

log = logging.getLogger(__name__)

UNSPECIFIED_DATA = "unspecified data"
UNSPECIFIED_THIRD_PARTY = "unspecified third party"
FIRST_PARTY = "we"


@dataclass(frozen=True)
class Term:
    name: str
    kind: NerLabel
    standard: bool = False


@dataclass(frozen=True)
class SynonymRule:
    pattern: re.Pattern
    target: str
    kind: NerLabel
    priority: int


_TOKEN_TRIM = re.compile(r"^[^\w]+|[^\w]+$")
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'"})


def tokenize(phrase: str) -> list[str]:
    """Lowercase word tokens; punctuation trimmed, hyphens/slashes kept."""
    out = []
    for raw in phrase.lower().translate(_APOSTROPHES).split():
        word = raw
        # keep internal hyphens and slashes; trim edge punctuation
        word = _TOKEN_TRIM.sub("", word) if word not in ("/",) else word
        if word:
            out.append(word)
    return out


class Lemmatizer:
    """Noun singularization: exception table plus default suffix rules."""

    def __init__(self, exceptions: dict[str, str]):
        self.exceptions = exceptions

    def lemma(self, word: str) -> str:
        if word in self.exceptions:
            return self.exceptions[word]
        if len(word) > 4 and word.endswith("ies"):
            return word[:-3] + "y"
        if word.endswith(("sses", "xes", "ches", "shes", "zes")):
            return word[:-2]
        if word.endswith(("ss", "us", "is")):
            return word
        # the char before "s" must be alphanumeric, else stripping would
        # leave edge punctuation that re-tokenization removes
        if len(word) > 3 and word.endswith("s") and word[-2].isalnum():
            return word[:-1]
        return word


def resolve_coref_chain(node_id, coref_map: dict):
    """Follow COREF links to the chain terminus; stop on a revisit."""
    seen = {node_id}
    cur = node_id
    while cur in coref_map:
        nxt = coref_map[cur]
        if nxt in seen:
            break
        seen.add(nxt)
        cur = nxt
    return cur


_GENERIC_ALIAS_TOKENS = frozenset({
    "inc", "llc", "ltd", "co", "corp", "corporation", "company", "gmbh",
    "pte", "sa", "ag", "technologies", "technology", "labs", "lab",
    "media", "mobile", "games", "software", "solutions", "group",
    "holdings", "international", "interactive", "networks", "network",
    "digital", "global", "systems", "system", "studio", "studios",
    "the", "analytics", "services", "service", "platform", "platforms",
    "store", "apps", "app", "ads", "audience", "web", "metrics",
})

COMPANY_RULE_PRIORITY_2GRAM = 40
COMPANY_RULE_PRIORITY_1GRAM = 50


def compile_company_rules(alias_dataset: list[dict]) -> list[SynonymRule]:
    """Word-boundary rules from 1-/2-grams unique to one company.

    alias_dataset rows: {"company": canonical name, "aliases": [...]}.
    Generic corporate tokens never become 1-gram rules on their own; an
    n-gram claimed by two companies is dropped with a log line.
    """
    gram_owners: dict[str, set[str]] = {}
    for row in alias_dataset:
        company = row["company"].lower()
        names = set(row.get("aliases", [])) | {row["company"]}
        for alias in names:
            words = tokenize(alias)
            grams = set()
            for w in words:
                if w not in _GENERIC_ALIAS_TOKENS and len(w) > 1:
                    grams.add(w)
            for a, b in zip(words, words[1:]):
                if a in _GENERIC_ALIAS_TOKENS and b in _GENERIC_ALIAS_TOKENS:
                    continue
                grams.add(f"{a} {b}")
            for gram in grams:
                gram_owners.setdefault(gram, set()).add(company)
    rules = []
    for gram, owners in sorted(gram_owners.items()):
        if len(owners) > 1:
            log.warning("alias n-gram %r shared by %s; dropped", gram, sorted(owners))
            continue
        (company,) = owners
        priority = (
            COMPANY_RULE_PRIORITY_2GRAM if " " in gram else COMPANY_RULE_PRIORITY_1GRAM
        )
        rules.append(
            SynonymRule(
                pattern=re.compile(r"\b" + re.escape(gram) + r"\b"),
                target=company,
                kind=NerLabel.ENTITY,
                priority=priority,
            )
        )
    return rules


class Normalizer:
    def __init__(
        self,
        rules: list[SynonymRule],
        stopwords: set[str],
        lemmatizer: Lemmatizer,
        blanket_data: set[str],
        blanket_entity: set[str],
        standard_names: set[str],
    ):
        self.rules = sorted(rules, key=lambda r: (r.priority, r.target, r.pattern.pattern))
        self.stopwords = stopwords
        self.lemmatizer = lemmatizer
        self.blanket_data = blanket_data
        self.blanket_entity = blanket_entity
        self.standard_names = standard_names

    def _term(self, name: str, kind: NerLabel) -> Term:
        return Term(name=name, kind=kind, standard=name in self.standard_names)

    def normalize(self, phrase: str, kind: NerLabel) -> Term:
        lower = re.sub(r"\s+", " ", phrase.lower().strip())
        content = [t for t in tokenize(lower) if t not in self.stopwords]
        if kind == NerLabel.DATA:
            candidate = " ".join(self.lemmatizer.lemma(t) for t in content)
        else:
            candidate = " ".join(content)
        if kind == NerLabel.DATA and (not candidate or candidate in self.blanket_data):
            return self._term(UNSPECIFIED_DATA, kind)
        if kind == NerLabel.ENTITY and (not candidate or candidate in self.blanket_entity):
            return self._term(UNSPECIFIED_THIRD_PARTY, kind)
        if kind == NerLabel.ENTITY and candidate in ("we", "us", "i"):
            return self._term(FIRST_PARTY, kind)
        for rule in self.rules:
            if rule.kind != kind:
                continue
            if rule.pattern.search(lower) or rule.pattern.search(candidate):
                return self._term(rule.target, kind)
        return self._term(candidate, kind)


def _load_lemma_exceptions(text: str) -> dict[str, str]:
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        word, lemma = line.split()
        table[word] = lemma
    return table


def load_normalizer(
    synonyms_text: str,
    stopwords_text: str,
    lemmas_text: str,
    aliases_text: str,
    standard_names: set[str] | None = None,
) -> Normalizer:
    syn_cfg = yaml.safe_load(synonyms_text)
    alias_cfg = yaml.safe_load(aliases_text)
    alias_rows = alias_cfg.get("companies", [])
    rules = [
        SynonymRule(
            pattern=re.compile(r["pattern"]),
            target=r["target"],
            kind=NerLabel(r["kind"]),
            priority=int(r["priority"]),
        )
        for r in syn_cfg.get("rules", [])
    ]
    rules.extend(compile_company_rules(alias_rows))
    stopwords = {
        line.strip()
        for line in stopwords_text.splitlines()
        if line.strip() and not line.startswith("#")
    }
    if standard_names is None:
        standard_names = set()
    standard_names = set(standard_names)
    standard_names.update(row["company"].lower() for row in alias_rows)
    return Normalizer(
        rules=rules,
        stopwords=stopwords,
        lemmatizer=Lemmatizer(_load_lemma_exceptions(lemmas_text)),
        blanket_data=set(syn_cfg.get("blanket", {}).get("data", [])),
        blanket_entity=set(syn_cfg.get("blanket", {}).get("entity", [])),
        standard_names=standard_names,
    )


def _ontology_term_names(text: str) -> set[str]:
    cfg = yaml.safe_load(text)
    return {row["term"] for row in cfg.get("terms", [])}


@lru_cache(maxsize=1)
def load_default_normalizer() -> Normalizer:
    """Normalizer over the data files shipped with the package.

    Cached: callers share one instance and must not mutate it.
    """
    standard = _ontology_term_names(read_data_text("data_ontology.yaml"))
    standard |= _ontology_term_names(read_data_text("entity_ontology.yaml"))
    return load_normalizer(
        read_data_text("synonyms.yaml"),
        read_data_text("stopwords.txt"),
        read_data_text("lemmas.txt"),
        read_data_text("entity_aliases.yaml"),
        standard_names=standard,
    )


def normalize_phrase(phrase: str, kind: NerLabel, normalizer: Normalizer) -> Term:
    """Functional form of Normalizer.normalize."""
    return normalizer.normalize(phrase, kind)
