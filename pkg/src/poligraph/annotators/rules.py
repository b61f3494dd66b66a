"""Collection rule loading and the verb-to-action mapping."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import yaml

from ..errors import ConfigError, UnmappedVerbError
from ..util import read_data_text

ACTIONS = ("collect", "be_shared", "be_sold", "use", "store")

_ACTION_OF_VERB = {}
for _verb in ("collect", "gather", "obtain", "receive", "get", "solicit",
              "acquire", "request"):
    _ACTION_OF_VERB[_verb] = "collect"
for _verb in ("share", "exchange", "provide", "disclose", "supply",
              "transmit", "release", "transfer", "submit", "give",
              "divulge", "pass"):
    _ACTION_OF_VERB[_verb] = "be_shared"
for _verb in ("sell", "rent", "lease", "trade"):
    _ACTION_OF_VERB[_verb] = "be_sold"
for _verb in ("use", "access", "process", "need", "utilize", "analyze"):
    _ACTION_OF_VERB[_verb] = "use"
for _verb in ("store", "retain", "keep", "preserve", "record", "save",
              "maintain", "log", "hold"):
    _ACTION_OF_VERB[_verb] = "store"

# Rule shapes whose action is fixed by the construction, not the verb.
_CONSTRUCTION_ACTIONS = {
    "access-to": "use",
    "have-access-to": "use",
    "make-use-of": "use",
}


def classify_action(verb_lemma: str, construction: str | None = None) -> str:
    """Map a collection verb (or construction) to its action subtype."""
    if construction is not None:
        action = _CONSTRUCTION_ACTIONS.get(construction)
        if action is not None:
            return action
    action = _ACTION_OF_VERB.get(verb_lemma)
    if action is None:
        raise UnmappedVerbError(f"unmapped verb: {verb_lemma!r}")
    return action


@dataclass(frozen=True)
class Slot:
    bind: str                 # subject | object | recipient
    role: str                 # ENTITY | DATA
    path: tuple[tuple[str, str | None], ...]
    required: bool = True


@dataclass(frozen=True)
class MatchRule:
    id: str
    voice: str                # active | passive | composite
    verbs: frozenset[str]
    slots: tuple[Slot, ...]
    dual: bool = False
    action: str | None = None
    inner_verbs: frozenset[str] = field(default_factory=frozenset)
    polarity_sensitive: bool = True

    def slot(self, bind: str) -> Slot | None:
        for s in self.slots:
            if s.bind == bind:
                return s
        return None


def _parse_step(step: str) -> tuple[str, str | None]:
    if "=" in step:
        dep, lemma = step.split("=", 1)
        return dep, lemma
    return step, None


def _parse_rule(obj: dict) -> MatchRule:
    slots = []
    for raw in obj.get("slots", ()):
        slots.append(Slot(
            bind=raw["bind"],
            role=raw["role"],
            path=tuple(_parse_step(s) for s in raw["path"]),
            required=bool(raw.get("required", True)),
        ))
    rule = MatchRule(
        id=obj["id"],
        voice=obj.get("voice", "active"),
        verbs=frozenset(obj["verbs"]),
        slots=tuple(slots),
        dual=bool(obj.get("dual", False)),
        action=obj.get("action"),
        inner_verbs=frozenset(obj.get("inner_verbs", ())),
        polarity_sensitive=bool(obj.get("polarity_sensitive", True)),
    )
    if not any(s.role == "DATA" for s in rule.slots):
        raise ConfigError(f"rule {rule.id!r} binds no DATA slot")
    if rule.voice not in ("active", "passive", "composite"):
        raise ConfigError(f"rule {rule.id!r} has unknown voice {rule.voice!r}")
    if rule.voice == "composite" and not rule.inner_verbs:
        raise ConfigError(f"composite rule {rule.id!r} needs inner_verbs")
    # every verb a rule can anchor on must have a defined action
    action_verbs = rule.inner_verbs if rule.voice == "composite" else rule.verbs
    if rule.action is None:
        for verb in sorted(action_verbs):
            classify_action(verb)
    return rule


def load_collection_rules(text: str | None = None) -> tuple[MatchRule, ...]:
    if text is None:
        return _default_collection_rules()
    obj = yaml.safe_load(text)
    if not isinstance(obj, dict) or "rules" not in obj:
        raise ConfigError("collection rule file must define 'rules'")
    rules = tuple(_parse_rule(entry) for entry in obj["rules"])
    seen: set[str] = set()
    for rule in rules:
        if rule.id in seen:
            raise ConfigError(f"duplicate rule id {rule.id!r}")
        seen.add(rule.id)
    return rules


@lru_cache(maxsize=1)
def _default_collection_rules() -> tuple[MatchRule, ...]:
    return load_collection_rules(read_data_text("collection_rules.yaml"))


def rules_version(text: str | None = None) -> int:
    if text is None:
        text = read_data_text("collection_rules.yaml")
    obj = yaml.safe_load(text)
    return int(obj.get("version", 0)) if isinstance(obj, dict) else 0
