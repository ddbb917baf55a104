#!/usr/bin/env python3
"""Builds the hamster-disease repository in this directory.

Three link contexts decorate the same page:
  learner  every word -> its dictionary entry
  farmer   every <kw> span -> its glossary entry
  student  every <term> span -> its encyclopaedia article

Run `cellgraph import fixtures/hamster --repo fixtures/hamster` afterwards to
canonicalise; the test suite checks that export reproduces these bytes.
"""
import json
import pathlib
import re
import shutil
import unicodedata

HERE = pathlib.Path(__file__).resolve().parent

PAGES = {
    "intro": {
        "title": ("c-intro-title", "Galair nan hamstaran"),
        "cells": ["c-intro", "c-symptoms", "c-treatment"],
    },
    "care": {
        "title": ("c-care-title", "Cùram an hamstair"),
        "cells": ["c-symptoms", "c-care"],
    },
}

PARAGRAPHS = {
    "c-intro": "<p>Tha an duilleag seo a' toirt cunntas air na galair as cumanta am measg hamstaran. "
               "Ma chì thu <kw>comharran</kw> tinneis bu chòir dhut bruidhinn ri <kw>lighiche-sprèidh</kw> gun dàil.</p>",
    "c-symptoms": "<p>Tha <term>earball-fliuch</term> na ghalar cunnartach. Am measg nan <kw>comharran</kw> tha "
                  "<kw>buinneach</kw> agus <kw>teasach</kw> agus <em>cion</em> bìdh. Faodaidh <term>galar-analach</term> "
                  "cuideachd <kw>casad</kw> adhbhrachadh.</p>",
    "c-treatment": "<p>Mar as trice bheir an <kw>lighiche-sprèidh</kw> <kw>antibiotaic</kw> seachad airson "
                   "<term>earball-fliuch</term> agus <term>galar-analach</term> ach chan eil leigheas ann airson "
                   "<term>tumhair</term> an-còmhnaidh. Cùm an cèidse glan <cite ref=\"care-guide\"/> gach latha.</p>",
    "c-care": "<p>Cùm an hamstar blàth agus tioram. Thoir uisge glan dha gach latha agus cuir fios chun an "
              "<kw>lighiche-sprèidh</kw> ma dh'fhàsas e lag.</p>",
}

GLOSSARY = {
    "comharran": "symptoms",
    "lighiche-sprèidh": "veterinary surgeon",
    "buinneach": "diarrhoea",
    "teasach": "fever",
    "casad": "cough",
    "antibiotaic": "antibiotic",
}

ENCYCLOPAEDIA = {
    "earball-fliuch": "Wet tail is a bacterial enteritis of young hamsters that spreads quickly under stress.",
    "galar-analach": "Respiratory disease in hamsters usually follows a draught or a damp cage.",
    "tumhair": "Tumours are common in older hamsters and are often benign.",
}
OVERVIEW_ARTICLE = ("e-overview", "An overview of hamster illnesses for first-time owners.")


def fold(text):
    return "".join(c for c in unicodedata.normalize("NFD", text) if not unicodedata.combining(c))


def slugify(text):
    return re.sub(r"-+", "-", re.sub(r"[^a-z0-9]", "-", fold(text).lower())).strip("-")


def lemma(word):
    return word.lower().strip(".,;:!?")


def plain(markup):
    return re.sub(r"<[^>]*>", "", markup)


def elements(markup, tag):
    return re.findall(rf"<{tag}>([^<]*)</{tag}>", markup)


def dump(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


class Builder:
    def __init__(self):
        self.cells = {}
        self.components = {}
        self.relations = []
        self.anchors = []
        self.links = []

    def cell(self, cid, kind, content, **meta):
        self.cells[cid] = {"id": cid, "kind": kind, "content": content, "meta": meta}

    def component(self, cid, kind, **meta):
        self.components[cid] = {"id": cid, "kind": kind, "meta": meta}

    def relate(self, parent, name, child, hierarchical=False):
        position = 1 + sum(1 for r in self.relations if r["parent"] == parent)
        self.relations.append({
            "id": f"r{len(self.relations) + 1}", "parent": parent, "name": name, "child": child,
            "position": position, "hierarchical": hierarchical,
        })

    def anchor(self, aid, target, selector, **meta):
        self.anchors.append({"id": aid, "target": target, "selector": selector, "meta": meta})

    def link(self, lid, group, endpoints, **meta):
        self.links.append({"id": lid, "group": group, "endpoints": endpoints, "meta": meta})


def build():
    b = Builder()
    b.component("x-site", "site")
    b.component("x-course", "course")
    b.component("x-dictionary", "section")
    b.component("x-glossary", "section")
    b.component("x-encyclopaedia", "section")
    for name in ["course", "dictionary", "glossary", "encyclopaedia"]:
        b.relate("x-site", name, f"x-{name}", hierarchical=True)

    texts = dict(PARAGRAPHS)
    for page, spec in PAGES.items():
        b.component(f"x-{page}", "page")
        b.relate("x-course", page, f"x-{page}", hierarchical=True)
        tid, title = spec["title"]
        if tid not in b.cells:
            b.cell(tid, "title", title, lang="gd")
            texts[tid] = title
        b.relate(f"x-{page}", "title", tid)
        for cid in spec["cells"]:
            if cid not in b.cells:
                b.cell(cid, "paragraph", PARAGRAPHS[cid], lang="gd")
            b.relate(f"x-{page}", cid[2:], cid)

    # Dictionary: one entry per distinct word form on the course pages.
    slugs = {}
    for cid in sorted(texts):
        for word in plain(texts[cid]).split():
            lem = lemma(word)
            if lem in slugs:
                continue
            slug = slugify(lem) or "w"
            while slug in slugs.values():
                slug += "-x"
            slugs[lem] = slug
    for lem, slug in sorted(slugs.items(), key=lambda kv: kv[1]):
        b.cell(f"d-{slug}", "directory-entry", lem, lang="gd")
        b.relate("x-dictionary", slug, f"d-{slug}", hierarchical=True)
        b.anchor(f"dict-{slug}", {"cell": f"d-{slug}"}, "words(1..1)", role="dictionary")

    for lem, gloss in sorted(GLOSSARY.items(), key=lambda kv: slugify(kv[0])):
        slug = slugify(lem)
        b.cell(f"g-{slug}", "directory-entry", gloss, lang="en", lemma=lem)
        b.relate("x-glossary", slug, f"g-{slug}", hierarchical=True)
        b.anchor(f"gloss-{slug}", {"cell": f"g-{slug}"}, f"words(1..{len(gloss.split())})", role="glossary")

    for lem, text in sorted(ENCYCLOPAEDIA.items(), key=lambda kv: slugify(kv[0])):
        slug = slugify(lem)
        b.cell(f"e-{slug}", "paragraph", f"<p>{text}</p>", lang="en")
        b.relate("x-encyclopaedia", slug, f"e-{slug}", hierarchical=True)
        b.anchor(f"enc-{slug}", {"cell": f"e-{slug}"}, "words(1..3)", role="encyclopaedia", lemma=slug)
    oid, otext = OVERVIEW_ARTICLE
    b.cell(oid, "paragraph", f"<p>{otext}</p>", lang="en")
    b.relate("x-encyclopaedia", "overview", oid, hierarchical=True)
    b.anchor("enc-overview", {"cell": oid}, "words(1..2)", role="encyclopaedia", lemma="overview")

    # Per-occurrence anchors on the course text.
    for cid in sorted(texts):
        words = plain(texts[cid]).split()
        for k, word in enumerate(words, start=1):
            b.anchor(f"w-{cid}-{k}", {"cell": cid}, f"words({k}..{k})", layer="word")
            b.link(f"learn-{cid}-{k}", "dict", [
                {"anchor": f"w-{cid}-{k}", "role": "source"},
                {"anchor": f"dict-{slugs[lemma(word)]}", "role": "destination"},
            ])
        for i, kw in enumerate(elements(texts[cid], "kw"), start=1):
            b.anchor(f"k-{cid}-{i}", {"cell": cid}, f"node(/kw[{i}])", layer="kw", lemma=slugify(kw))
            b.link(f"farm-{cid}-{i}", "glossary", [
                {"anchor": f"k-{cid}-{i}", "role": "source"},
                {"anchor": f"gloss-{slugify(kw)}", "role": "destination"},
            ])
        for i, term in enumerate(elements(texts[cid], "term"), start=1):
            b.anchor(f"t-{cid}-{i}", {"cell": cid}, f"node(/term[{i}])", layer="term", lemma=slugify(term))

    # Student links are resolved dynamically: both endpoints are anchor queries.
    for lem in sorted(ENCYCLOPAEDIA, key=slugify):
        slug = slugify(lem)
        b.link(f"study-{slug}", "encyclopaedia", [
            {"query": [{"key": "meta.layer", "value": "term"}, {"key": "meta.lemma", "value": slug}], "role": "source"},
            {"query": [{"key": "meta.role", "value": "encyclopaedia"}, {"key": "meta.lemma", "value": slug}],
             "role": "destination"},
        ])
    # A novice-level link over every term in Gaelic paragraphs; the student context excludes it.
    b.anchor("terms-gd", {"query": [{"key": "kind", "value": "paragraph"}, {"key": "meta.lang", "value": "gd"}]},
             "all(term)", layer="term-any")
    b.link("study-overview", "encyclopaedia", [
        {"anchor": "terms-gd", "role": "source"},
        {"anchor": "enc-overview", "role": "destination"},
    ], level="novice")

    contexts = [
        {"id": "farmer", "name": "Farmer", "rules": [{"op": "include_group", "group": "glossary"}]},
        {"id": "learner", "name": "Language learner", "rules": [{"op": "include_group", "group": "dict"}]},
        {"id": "student", "name": "Veterinary student", "rules": [
            {"op": "include_group", "group": "encyclopaedia"},
            {"op": "exclude_where", "where": [{"key": "meta.level", "value": "novice"}]},
        ]},
    ]
    return b, contexts


def main():
    b, contexts = build()
    shutil.rmtree(HERE / "cells", ignore_errors=True)
    dump(HERE / "repo.json", {"v": 1, "root": "x-site", "name": "Galair nan hamstaran", "revision": 0})
    dump(HERE / "graph.json", {
        "v": 1,
        "components": sorted(b.components.values(), key=lambda c: c["id"]),
        "relations": b.relations,
        "next_relation": len(b.relations) + 1,
    })
    dump(HERE / "linkbase.json", {
        "v": 1,
        "anchors": sorted(b.anchors, key=lambda a: a["id"]),
        "links": sorted(b.links, key=lambda l: l["id"]),
    })
    dump(HERE / "contexts.json", {"v": 1, "contexts": contexts})
    for cid, cell in b.cells.items():
        dump(HERE / "cells" / f"{cid}.json", cell)


if __name__ == "__main__":
    main()
