"""Deterministic heuristic English pipeline: the "heuristic-v1" model.

Produces the token fields the PPD schema requires (text, lemma,
Universal POS, head, dependency label) without any trained model.
Tagging is lexicon plus suffix rules; the dependency pass builds a
shallow clause skeleton (subject, object, prepositional attachments,
coordination, to-infinitive purpose clauses) around one root per
sentence. Labels follow the common English scheme downstream rule
files are written against (nsubj, dobj, pobj, prep, neg, ...).

Every attachment rule points modifiers at a head chosen before them or
at the root, so head pointers always form a tree; a final check
reattaches anything that slipped to the root rather than emit a cycle.
"""

import re
from dataclasses import dataclass

PUNCT_CHARS = set(".,;:!?()[]{}\"'`“”‘’…/\\|&%")

_SENT_END = {".", "!", "?"}

ABBREVIATIONS = {
    "e.g.", "i.e.", "etc.", "inc.", "ltd.", "corp.", "co.", "llc.",
    "u.s.", "no.", "mr.", "ms.", "mrs.", "dr.", "vs.", "st.",
    "sec.", "art.", "para.", "approx.",
}

_CLITICS = ("n't", "'ll", "'re", "'ve", "'d", "'m", "'s")

DETS = {
    "the", "a", "an", "this", "that", "these", "those", "some", "any",
    "each", "every", "no", "all", "both", "another", "certain",
}

PRONOUNS = {
    "we", "us", "you", "they", "them", "i", "he", "she", "it", "me",
    "him", "who", "whom", "which", "what", "anyone", "someone",
    "ourselves", "yourself", "themselves",
}

POSS_PRONOUNS = {"your", "our", "their", "my", "his", "her", "its"}

MODALS = {"may", "might", "can", "could", "will", "would", "shall",
          "should", "must"}

BE_FORMS = {"be", "is", "are", "was", "were", "been", "being", "am"}
DO_FORMS = {"do", "does", "did"}
HAVE_FORMS = {"have", "has", "had", "having"}

ADPOSITIONS = {
    "in", "on", "at", "with", "from", "for", "of", "by", "about",
    "into", "through", "under", "over", "without", "within", "during",
    "between", "after", "before", "against", "per", "via", "across",
    "upon", "regarding", "concerning", "including", "among", "out",
}

CCONJ = {"and", "or", "but", "nor"}

SCONJ = {"if", "because", "while", "when", "whether", "unless",
         "although", "so", "since", "once"}

ADVERBS = {"also", "only", "always", "never", "further", "together",
           "however", "therefore", "otherwise", "directly", "here",
           "below", "above", "then", "there"}

# Base forms; inflections are recognized morphologically.
VERBS = {
    "access", "agree", "aggregate", "allow", "analyze", "apply", "ask",
    "authenticate", "buy", "collect", "combine", "comply", "contact",
    "continue", "create", "customize", "delete", "describe", "detect",
    "disclose", "display", "divulge", "enable", "ensure", "exchange",
    "gather", "get", "give", "help", "hold", "identify", "improve",
    "include", "infer", "keep", "know", "learn", "limit", "log",
    "maintain", "make", "manage", "measure", "monitor", "need",
    "obtain", "offer", "operate", "pass", "perform", "permit",
    "personalize", "prevent", "process", "protect", "provide",
    "receive", "record", "release", "rent", "request", "require",
    "respond", "retain", "review", "save", "see", "sell", "send",
    "serve", "share", "solicit", "store", "submit", "supply", "target",
    "track", "trade", "transfer", "transmit", "update", "use",
    "verify", "visit", "want",
}

IRREGULAR_VERB_LEMMAS = {
    "sold": "sell", "bought": "buy", "gave": "give", "given": "give",
    "made": "make", "kept": "keep", "held": "hold", "sent": "send",
    "knew": "know", "known": "know", "saw": "see", "seen": "see",
    "got": "get", "gotten": "get", "went": "go", "gone": "go",
    "took": "take", "taken": "take",
}

ADJECTIVES = {
    "personal", "following", "third", "first", "precise", "aggregate",
    "anonymous", "certain", "necessary", "various", "other", "such",
    "non-personal", "sensitive", "technical", "demographic", "mobile",
    "online", "similar", "new", "applicable", "legal", "limited",
    "e.g.", "i.e.",
}

_ADJ_SUFFIXES = ("al", "ive", "ous", "able", "ible", "ful", "less")

IRREGULAR_NOUN_LEMMAS = {
    "children": "child", "people": "person", "data": "data",
    "media": "media", "analytics": "analytics", "cookies": "cookie",
    "addresses": "address", "preferences": "preference",
    "services": "service", "devices": "device", "purposes": "purpose",
    "parties": "party", "activities": "activity", "uses": "use",
    "bases": "basis", "statuses": "status",
}


@dataclass
class Tok:
    i: int
    text: str
    lemma: str
    pos: str
    head: int
    dep: str


def _is_abbrev(word: str) -> bool:
    return word.lower() in ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    """Split on ./!/? followed by whitespace and an upper/digit start.

    Abbreviation periods and colons never split, so list lead-ins glued
    to their items stay one sentence.
    """
    out = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _SENT_END:
            j = i + 1
            while j < n and text[j] in ")\"'”’":
                j += 1
            if j < n and text[j].isspace():
                k = j
                while k < n and text[k].isspace():
                    k += 1
                if k < n and (text[k].isupper() or text[k].isdigit()):
                    word = text[:i + 1].rsplit(None, 1)[-1] if text[:i + 1].strip() else ""
                    if ch != "." or not _is_abbrev(word):
                        out.append(text[start:j].strip())
                        start = k
                        i = k
                        continue
            i = j
        else:
            i += 1
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out


def tokenize(sentence: str) -> list[str]:
    toks = []
    for raw in sentence.split():
        pieces = [raw]
        # leading punctuation
        out_lead = []
        w = raw
        while w and w[0] in PUNCT_CHARS and not _is_abbrev(w):
            out_lead.append(w[0])
            w = w[1:]
        # trailing punctuation
        out_trail = []
        while w and w[-1] in PUNCT_CHARS and not _is_abbrev(w):
            out_trail.append(w[-1])
            w = w[:-1]
        pieces = out_lead + ([w] if w else []) + list(reversed(out_trail))
        # clitics on the word piece
        final = []
        for p in pieces:
            low = p.lower()
            peeled = False
            for cl in _CLITICS:
                if low.endswith(cl) and len(p) > len(cl):
                    final.extend([p[: -len(cl)], p[-len(cl):]])
                    peeled = True
                    break
            if not peeled:
                final.append(p)
        toks.extend(t for t in final if t)
    return toks


def _verb_base(word: str) -> str | None:
    """Base form if the word inflects a known verb, else None."""
    w = word.lower()
    if w in IRREGULAR_VERB_LEMMAS:
        return IRREGULAR_VERB_LEMMAS[w]
    if w in VERBS:
        return w
    for suffix in ("ing", "ed", "es", "s"):
        if not w.endswith(suffix) or len(w) <= len(suffix) + 1:
            continue
        stem = w[: -len(suffix)]
        for cand in (stem, stem + "e", stem[:-1] if len(stem) > 1 and stem[-1] == stem[-2] else None):
            if cand and cand in VERBS:
                return cand
    return None


def _noun_lemma(word: str) -> str:
    w = word.lower()
    if w in IRREGULAR_NOUN_LEMMAS:
        return IRREGULAR_NOUN_LEMMAS[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("sses", "shes", "ches", "xes", "zes")):
        return w[:-2]
    if w.endswith("ss") or w.endswith("us") or w.endswith("is"):
        return w
    if w.endswith("s") and len(w) > 3:
        return w[:-1]
    return w


def _verb_lemma(word: str) -> str:
    base = _verb_base(word)
    return base if base is not None else word.lower()


def tag(tokens: list[str]) -> list[tuple[str, str]]:
    """(pos, lemma) per token; POS from the Universal set."""
    tags: list[tuple[str, str]] = []
    for idx, tok in enumerate(tokens):
        low = tok.lower()
        nxt = tokens[idx + 1].lower() if idx + 1 < len(tokens) else ""
        prev = tokens[idx - 1].lower() if idx > 0 else ""
        if all(c in PUNCT_CHARS for c in tok):
            tags.append(("PUNCT", tok))
        elif tok.replace(",", "").replace(".", "").isdigit():
            tags.append(("NUM", low))
        elif low in ("not", "n't"):
            tags.append(("PART", "not"))
        elif low == "to":
            verbish = _verb_base(nxt) is not None or nxt in BE_FORMS
            tags.append(("PART", "to") if verbish else ("ADP", "to"))
        elif low in MODALS:
            tags.append(("AUX", low))
        elif low in BE_FORMS:
            tags.append(("AUX", "be"))
        elif low in DO_FORMS:
            tags.append(("AUX", "do"))
        elif low in HAVE_FORMS:
            after = tokens[idx + 1:idx + 3]
            participle = any(
                _verb_base(a) is not None and a.lower().endswith(("ed", "en"))
                for a in after
            )
            tags.append(("AUX", "have") if participle else ("VERB", "have"))
        elif low in POSS_PRONOUNS:
            tags.append(("PRON", low))
        elif low in PRONOUNS:
            tags.append(("PRON", low))
        elif low in DETS:
            tags.append(("DET", low))
        elif low == "as":
            tags.append(("SCONJ", "as") if prev == "such" else ("ADP", "as"))
        elif low == "such":
            tags.append(("ADJ", "such"))
        elif low in CCONJ:
            tags.append(("CCONJ", low))
        elif low in SCONJ:
            tags.append(("SCONJ", low))
        elif low in ADPOSITIONS:
            tags.append(("ADP", low))
        elif low in ADVERBS or (low.endswith("ly") and len(low) > 3):
            tags.append(("ADV", low))
        elif low in ADJECTIVES or low.rstrip(".") in ADJECTIVES:
            tags.append(("ADJ", low))
        elif _verb_base(low) is not None and (
            prev in ("to", "not", "n't")
            or prev in MODALS
            or prev in DO_FORMS
            or prev in BE_FORMS
            or prev in HAVE_FORMS
            or prev in _SUBJ_PRONOUNS
            or nxt in DETS
            or nxt in POSS_PRONOUNS
            or low not in _NOUN_PREFERRED
        ):
            tags.append(("VERB", _verb_lemma(low)))
        elif tok[:1].isupper() and idx > 0:
            tags.append(("PROPN", low))
        elif low.endswith(_ADJ_SUFFIXES) and len(low) > 5:
            tags.append(("ADJ", low))
        else:
            tags.append(("NOUN", _noun_lemma(low)))
    return tags


# Plain subject pronouns; possessives never predict a following verb.
_SUBJ_PRONOUNS = {"i", "we", "you", "they", "it", "he", "she", "who"}

# (verb lemma, preposition) pairs where the preposition complements the
# verb instead of the nearest noun: "share X with Y", "disclose X to Y".
VERB_PREPS = {
    ("share", "with"), ("combine", "with"), ("exchange", "with"),
    ("disclose", "to"), ("provide", "to"), ("sell", "to"),
    ("transfer", "to"), ("send", "to"), ("give", "to"),
    ("collect", "from"), ("receive", "from"), ("obtain", "from"),
    ("use", "for"), ("process", "for"), ("store", "on"),
}

# Words that inflect known verbs but usually name things in this genre.
_NOUN_PREFERRED = {
    "use", "uses", "access", "log", "logs", "record", "records",
    "request", "requests", "contact", "contacts", "service",
    "services", "need", "needs", "offer", "offers",
}


def _chunks(tags: list[tuple[str, str]]) -> list[tuple[int, int, int]]:
    """Noun chunks as (start, end, head); head is the last noun-ish token."""
    nounish = {"NOUN", "PROPN", "NUM"}
    modifier = {"DET", "ADJ"}
    chunks = []
    i = 0
    n = len(tags)
    while i < n:
        pos, lemma = tags[i]
        if pos == "PRON" and lemma not in POSS_PRONOUNS:
            chunks.append((i, i + 1, i))
            i += 1
            continue
        starts_chunk = (
            pos in nounish
            or pos in modifier
            or (pos == "PRON" and lemma in POSS_PRONOUNS)
        )
        if not starts_chunk or (pos == "ADJ" and lemma == "such"):
            i += 1
            continue
        j = i
        last_noun = -1
        while j < n:
            p, l = tags[j]
            if p in nounish:
                last_noun = j
                j += 1
            elif p in modifier and l != "such":
                j += 1
            elif p == "PRON" and l in POSS_PRONOUNS:
                j += 1
            else:
                break
        if last_noun >= 0:
            chunks.append((i, last_noun + 1, last_noun))
            i = last_noun + 1
        else:
            i = j if j > i else i + 1
    return chunks


def parse(tokens: list[str]) -> list[Tok]:
    """Dependency skeleton over one tokenized sentence."""
    tags = tag(tokens)
    n = len(tokens)
    toks = [
        Tok(i=i, text=tokens[i], lemma=tags[i][1], pos=tags[i][0], head=i, dep="dep")
        for i in range(n)
    ]

    chunks = _chunks(tags)
    chunk_head = {}
    for start, end, head in chunks:
        for k in range(start, end):
            chunk_head[k] = head
        for k in range(start, end):
            if k == head:
                continue
            pos, lemma = tags[k]
            if pos == "DET":
                toks[k].dep = "det"
            elif pos == "PRON" and lemma in POSS_PRONOUNS:
                toks[k].dep = "poss"
            elif pos == "ADJ":
                toks[k].dep = "amod"
            elif pos == "NUM":
                toks[k].dep = "nummod"
            else:
                toks[k].dep = "compound"
            toks[k].head = head

    verbs = [i for i in range(n) if toks[i].pos == "VERB"]
    finite = [i for i in verbs if i == 0 or toks[i - 1].lemma != "to"]
    if finite:
        root = finite[0]
    elif verbs:
        root = verbs[0]
    elif chunks:
        root = chunks[0][2]
    else:
        root = 0
    toks[root].dep = "ROOT"
    toks[root].head = root

    passive = (
        toks[root].pos == "VERB"
        and toks[root].text.lower().endswith(("ed", "en"))
        and any(toks[i].lemma == "be" for i in range(root) if toks[i].pos == "AUX")
    )

    subj = None
    for _, _, h in chunks:
        if h < root:
            subj = h
    if subj is not None:
        toks[subj].dep = "nsubjpass" if passive else "nsubj"
        toks[subj].head = root

    # clause state, scanned left to right
    last_verb = root if toks[root].pos == "VERB" else None
    last_head = subj  # most recent attachable nominal or verb
    open_prep = None
    object_taken = toks[root].pos != "VERB"
    colon_anchor = None
    relative_pronouns = ("that", "which", "who")

    def attach(i, head, dep):
        if i != root and head != i:
            toks[i].head = head
            toks[i].dep = dep

    def cconj_between(a, b):
        return any(toks[k].pos == "CCONJ" for k in range(a + 1, b))

    for i in range(n):
        if i == root:
            last_head = root
            open_prep = None
            continue
        is_chunk_root = chunk_head.get(i) == i
        if toks[i].dep != "dep" and not is_chunk_root:
            continue
        pos, lemma = tags[i]
        if pos == "PUNCT":
            attach(i, root, "punct")
            if toks[i].text == ":":
                colon_anchor = last_head
            continue
        if pos == "AUX":
            target = next((v for v in verbs if v > i), root)
            is_passive_be = passive and toks[i].lemma == "be" and target == root
            attach(i, target, "auxpass" if is_passive_be else "aux")
            continue
        if pos == "PART" and lemma == "not":
            attach(i, next((v for v in verbs if v > i), root), "neg")
            continue
        if pos == "PART" and lemma == "to":
            target = next((v for v in verbs if v > i), root)
            attach(i, target, "aux")
            continue
        if pos == "VERB":
            prev_verb = max((v for v in verbs if v < i), default=None)
            prior = [toks[k].lemma for k in range(max(0, i - 2), i)]
            if prev_verb is not None and cconj_between(prev_verb, i):
                attach(i, prev_verb, "conj")
            elif any(p in relative_pronouns for p in prior) and last_head is not None:
                attach(i, last_head, "relcl")
            else:
                attach(i, root, "advcl")
            last_verb = i
            last_head = i
            object_taken = False
            open_prep = None
            continue
        if pos == "ADP" or (pos == "SCONJ" and lemma == "as"):
            anchor = last_head if last_head is not None else root
            dep = "prep"
            if pos == "ADP" and last_verb is not None:
                if passive and lemma == "by":
                    anchor, dep = last_verb, "agent"
                elif (toks[last_verb].lemma, lemma) in VERB_PREPS:
                    anchor = last_verb
            attach(i, anchor, dep)
            open_prep = i
            continue
        if pos == "SCONJ":
            attach(i, next((v for v in verbs if v > i), root), "mark")
            continue
        if pos == "CCONJ":
            anchor = last_head if last_head is not None else root
            attach(i, anchor, "cc")
            continue
        if pos == "ADV":
            attach(i, last_verb if last_verb is not None else root, "advmod")
            continue
        if pos == "ADJ" and lemma == "such":
            if i + 1 < n and toks[i + 1].lemma == "as":
                attach(i, i + 1, "amod")
            else:
                attach(i, last_head if last_head is not None else root, "amod")
            continue
        if is_chunk_root:
            if toks[i].dep in ("nsubj", "nsubjpass"):
                last_head = i
                continue
            conj_to = _conj_target(toks, chunks, i)
            if open_prep is not None:
                attach(i, open_prep, "pobj")
                open_prep = None
            elif colon_anchor is not None:
                attach(i, colon_anchor, "appos")
                colon_anchor = i
            elif conj_to is not None:
                attach(i, conj_to, "conj")
            elif last_verb is not None and not object_taken and i > last_verb:
                attach(i, last_verb, "dobj")
                object_taken = True
            elif last_head is not None and last_head != i:
                attach(i, last_head, "appos")
            else:
                attach(i, root, "dep")
            last_head = i
            continue
        if toks[i].dep == "dep":
            attach(i, root, "dep")

    _ensure_tree(toks, root)
    return toks


def _conj_target(toks, chunks, i):
    """Nearest earlier chunk head separated from i only by cc/punct/modifiers."""
    heads = [h for _, _, h in chunks if h < i]
    if not heads:
        return None
    cand = heads[-1]
    between = toks[cand + 1:i]
    ok = all(
        t.pos in ("CCONJ", "PUNCT") or t.head == i or t.dep in ("det", "amod", "compound", "poss", "nummod")
        for t in between
    )
    return cand if ok and cand != i else None


def _ensure_tree(toks: list[Tok], root: int):
    """Reattach to root anything whose head chain misses the root."""
    n = len(toks)
    for t in toks:
        if not 0 <= t.head < n:
            t.head = root
            if t.dep == "ROOT" and t.i != root:
                t.dep = "dep"
    for t in toks:
        if t.i != root and t.head == t.i:
            t.head = root
            t.dep = "dep"
        if t.i != root and t.dep == "ROOT":
            t.dep = "dep"
    for t in toks:
        seen = set()
        cur = t.i
        while cur != root:
            if cur in seen:
                toks[cur].head = root
                if toks[cur].dep == "ROOT":
                    toks[cur].dep = "dep"
                break
            seen.add(cur)
            cur = toks[cur].head
