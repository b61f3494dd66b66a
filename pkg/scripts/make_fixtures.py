#!/usr/bin/env python3
"""Regenerate the checked-in PPD fixtures under tests/fixtures/.

The parses are hand-authored with the compact token notation so every
dependency edge is exactly known; run this after changing the notation,
the validators, or the fixture content itself.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from poligraph.authoring import DocBuilder
from poligraph.ppd import serialize_parsed_document

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def kayak():
    b = DocBuilder("kayak")
    h = b.heading("Data Collection")
    intro = b.text("We collect the following personal information:", parent=h)
    li_device = b.listitem("Device information, such as IP address.", parent=intro)
    li_location = b.listitem("Location.", parent=intro)
    use1 = b.text("We use this information to provide features.", parent=h)
    use2 = b.text(
        "We use your personal information to provide services and to"
        " authenticate your account.",
        parent=h,
    )
    share = b.text(
        "We may share your personal information with travel partners and"
        " social networking services.",
        parent=h,
    )

    b.sent(
        intro,
        "We||PRON|nsubj|collect collect||VERB|ROOT|_ the||DET|det|information "
        "following|follow|ADJ|amod|information personal||ADJ|amod|information "
        "information||NOUN|dobj|collect :||PUNCT|punct|collect",
        ner=[("DATA", "the following personal information")],
    )
    b.sent(
        li_device,
        "Device|device|NOUN|compound|information information||NOUN|ROOT|_ "
        ",||PUNCT|punct|information such||ADJ|amod|as as||SCONJ|prep|information "
        "IP|ip|PROPN|compound|address address||NOUN|pobj|as .||PUNCT|punct|information",
        ner=[("DATA", "Device information"), ("DATA", "IP address")],
    )
    b.sent(
        li_device,
        "We||PRON|nsubj|collect collect||VERB|ROOT|_ the||DET|det|information "
        "following|follow|ADJ|amod|information personal||ADJ|amod|information "
        "information||NOUN|dobj|collect :||PUNCT|punct|collect "
        "Device|device|NOUN|compound|information#2 information||NOUN|appos|information "
        ",||PUNCT|punct|information#2 such||ADJ|amod|as as||SCONJ|prep|information#2 "
        "IP|ip|PROPN|compound|address address||NOUN|pobj|as .||PUNCT|punct|collect",
        ner=[
            ("DATA", "the following personal information"),
            ("DATA", "Device information"),
            ("DATA", "IP address"),
        ],
        depth=1,
    )
    b.sent(
        li_location,
        "Location||NOUN|ROOT|_ .||PUNCT|punct|Location",
        ner=[("DATA", "Location")],
    )
    b.sent(
        li_location,
        "We||PRON|nsubj|collect collect||VERB|ROOT|_ the||DET|det|information "
        "following|follow|ADJ|amod|information personal||ADJ|amod|information "
        "information||NOUN|dobj|collect :||PUNCT|punct|collect "
        "Location||NOUN|appos|information .||PUNCT|punct|collect",
        ner=[("DATA", "the following personal information"), ("DATA", "Location")],
        depth=1,
    )
    b.sent(
        use1,
        "We||PRON|nsubj|use use||VERB|ROOT|_ this||DET|det|information "
        "information||NOUN|dobj|use to||PART|aux|provide provide||VERB|advcl|use "
        "features|feature|NOUN|dobj|provide .||PUNCT|punct|use",
        ner=[("DATA", "this information")],
    )
    b.sent(
        use2,
        "We||PRON|nsubj|use use||VERB|ROOT|_ your||PRON|poss|information "
        "personal||ADJ|amod|information information||NOUN|dobj|use "
        "to||PART|aux|provide provide||VERB|advcl|use services|service|NOUN|dobj|provide "
        "and||CCONJ|cc|provide to||PART|aux|authenticate authenticate||VERB|conj|provide "
        "your||PRON|poss|account account||NOUN|dobj|authenticate .||PUNCT|punct|use",
        ner=[("DATA", "your personal information"), ("DATA", "your account")],
    )
    b.sent(
        share,
        "We||PRON|nsubj|share may||AUX|aux|share share||VERB|ROOT|_ "
        "your||PRON|poss|information personal||ADJ|amod|information "
        "information||NOUN|dobj|share with||ADP|prep|share "
        "travel||NOUN|compound|partners partners|partner|NOUN|pobj|with "
        "and||CCONJ|cc|partners social||ADJ|amod|services "
        "networking||NOUN|compound|services services|service|NOUN|conj|partners "
        ".||PUNCT|punct|share",
        ner=[
            ("DATA", "your personal information"),
            ("ENTITY", "travel partners"),
            ("ENTITY", "social networking services"),
        ],
    )
    return b.build()


def acme():
    b = DocBuilder("acme")
    s0 = b.text("We do not sell your personal information to advertisers.")
    s1 = b.text("We may share aggregate information with advertisers.")
    s2 = b.text("We collect the email address of children.")
    s3 = b.text("We store your IP address.")

    b.sent(
        s0,
        "We||PRON|nsubj|sell do||AUX|aux|sell not||PART|neg|sell sell||VERB|ROOT|_ "
        "your||PRON|poss|information personal||ADJ|amod|information "
        "information||NOUN|dobj|sell to||ADP|prep|sell "
        "advertisers|advertiser|NOUN|pobj|to .||PUNCT|punct|sell",
        ner=[("DATA", "your personal information"), ("ENTITY", "advertisers")],
    )
    b.sent(
        s1,
        "We||PRON|nsubj|share may||AUX|aux|share share||VERB|ROOT|_ "
        "aggregate||ADJ|amod|information information||NOUN|dobj|share "
        "with||ADP|prep|share advertisers|advertiser|NOUN|pobj|with .||PUNCT|punct|share",
        ner=[("DATA", "aggregate information"), ("ENTITY", "advertisers")],
    )
    b.sent(
        s2,
        "We||PRON|nsubj|collect collect||VERB|ROOT|_ the||DET|det|address "
        "email||NOUN|compound|address address||NOUN|dobj|collect of||ADP|prep|address "
        "children|child|NOUN|pobj|of .||PUNCT|punct|collect",
        ner=[("DATA", "the email address")],
    )
    b.sent(
        s3,
        "We||PRON|nsubj|store store||VERB|ROOT|_ your||PRON|poss|address "
        "IP|ip|PROPN|compound|address address||NOUN|dobj|store .||PUNCT|punct|store",
        ner=[("DATA", "your IP address")],
    )
    return b.build()


def globex():
    b = DocBuilder("globex")
    s0 = b.text("We collect personal information, such as your email address.")
    s1 = b.text("We do not collect your email address.")

    b.sent(
        s0,
        "We||PRON|nsubj|collect collect||VERB|ROOT|_ personal||ADJ|amod|information "
        "information||NOUN|dobj|collect ,||PUNCT|punct|information such||ADJ|amod|as "
        "as||SCONJ|prep|information your||PRON|poss|address "
        "email||NOUN|compound|address address||NOUN|pobj|as .||PUNCT|punct|collect",
        ner=[("DATA", "personal information"), ("DATA", "your email address")],
    )
    b.sent(
        s1,
        "We||PRON|nsubj|collect do||AUX|aux|collect not||PART|neg|collect "
        "collect||VERB|ROOT|_ your||PRON|poss|address email||NOUN|compound|address "
        "address||NOUN|dobj|collect .||PUNCT|punct|collect",
        ner=[("DATA", "your email address")],
    )
    return b.build()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=pathlib.Path, default=FIXTURES,
                        help="output directory (default: tests/fixtures)")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for build in (kayak, acme, globex):
        doc = build()
        path = args.out / f"{doc.source_id}.ppd"
        path.write_text(serialize_parsed_document(doc) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(doc.sentences)} sentences)")


if __name__ == "__main__":
    main()
