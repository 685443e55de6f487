#!/usr/bin/env python3
"""Regenerates testdata/corpus65.txt, the synthetic tagged-field test corpus.

The corpus is engineered to exact counts so the test suites can assert on
them: 65 records, one focal author present in every record, 48 distinct
co-authors, 26 distinct journals, exactly 27 title words with document
frequency >= 3, years spanning 1975-2009 with one undated record, and one
marker word ("robotics") whose first dated appearance falls in 1990-1994
and which reappears in 2005-2009.

The script verifies every one of those properties with an independent
scan before writing the file; it fails loudly if any drift.
"""

import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "testdata" / "corpus65.txt"
STOPWORDS = set(
    (ROOT / "crates/core/data/stopwords_en.txt").read_text().split()
)

FOCAL = "Fournier, L"

COAUTHORS = [
    "Alvarez, R", "Becker, T", "Castaño, R", "Dubois, P", "Eriksson, M",
    "Fontaine, C", "Grigoriev, A", "Hoshino, Y", "Ivanova, E", "Jansen, W",
    "Kowalski, P", "Lindgren, S", "Müller, K", "Nakamura, H", "Okafor, C",
    "Petrov, D", "Quintana, F", "Rossi, G", "Schneider, B", "Takahashi, N",
    "Ueda, S", "Vasquez, J", "Weber, F", "Xian, L", "Yamamoto, T",
    "Zhao, Q", "Andersen, K", "Bianchi, L", "Cormier, D", "Delacroix, M",
    "Engström, P", "Ferreira, A", "Goldberg, S", "Huang, W", "Imai, R",
    "Johansson, E", "Kaminski, J", "Larsson, O", "Moretti, V", "Novak, Z",
    "Oliveira, B", "Pedersen, H", "Rahman, S", "Silva, M", "Tanaka, K",
    "Ulloa, E", "Varga, I", "Wagner, H",
]

JOURNALS = [
    "JOURNAL OF APPLIED PHOTONICS",
    "ACTA MATERIALIA SINICA",
    "ANNALS OF OPTICS, SERIES A",
    "MICROFLUIDICS AND NANOSCALE TRANSPORT",
    "JOURNAL OF MEMBRANE ENGINEERING",
    "PROGRESS IN CATALYSIS RESEARCH",
    "INTERNATIONAL JOURNAL OF PLASMA DYNAMICS",
    "COMPUTATIONAL MATERIALS LETTERS",
    "JOURNAL OF COASTAL ENGINEERING",
    "QUANTUM DEVICES & CIRCUITS",
    "NEURAL COMPUTATION REVIEW",
    "BIOSENSORS QUARTERLY",
    "JOURNAL OF CLIMATE MODELING",
    "ROBOTICS AND AUTONOMOUS MACHINES",
    "PROTEIN SCIENCE BULLETIN",
    "GENOME TECHNOLOGY TODAY",
    "SOLAR ENERGY MATERIALS JOURNAL",
    "ACOUSTICAL ENGINEERING REVIEW",
    "JOURNAL OF CRYSTAL GROWTH PROCESSES",
    "ENZYME AND MICROBIAL LETTERS",
    "TURBULENCE AND FLOW PHYSICS",
    "BATTERY SYSTEMS ENGINEERING",
    "SPECTROSCOPY METHODS REVIEW",
    "JOURNAL OF SYNTHETIC CHEMISTRY",
    "IMAGING SCIENCE QUARTERLY",
    "KINETICS AND THERMODYNAMICS LETTERS",
]

# 27 words engineered to document frequency >= 3.
STRONG = [
    "membrane", "catalysis", "polymer", "spectroscopy", "quantum",
    "photonics", "neural", "imaging", "protein", "genome", "sensor",
    "plasma", "robotics", "climate", "turbulence", "battery", "solar",
    "optical", "acoustic", "synthesis", "kinetics", "modeling",
    "simulation", "crystal", "enzyme", "microbial", "coastal",
]
SPECIAL = "robotics"  # first dated use in 1990-1994, reappears 2005-2009

# Filler vocabulary, each word used at most twice across the corpus.
WEAK = [
    "gradient", "descent", "lattice", "vortex", "strain", "thermal",
    "oxide", "alloy", "fatigue", "corrosion", "adhesion", "friction",
    "porous", "ceramic", "composite", "nanowire", "droplet", "aerosol",
    "combustion", "ignition", "flame", "reactor", "bifurcation", "soliton",
    "waveguide", "resonator", "interferometer", "magnetization",
    "superconductor", "dielectric", "piezoelectric", "ferroelectric",
    "photovoltaic", "electrolyte", "anode", "cathode", "dendrite",
    "nucleation", "sintering", "annealing", "doping", "epitaxy", "wafer",
    "résonance", "holography", "tomography", "lithography", "maser",
    "plasmon", "exciton",
]

CONNECTORS = ["of", "and", "the", "in", "for", "on"]

N_RECORDS = 65
UNDATED_INDEX = 40
PERIODS = [(1975, 1980), (1980, 1985), (1985, 1990), (1990, 1995),
           (1995, 2000), (2000, 2005), (2005, 2010)]
PER_PERIOD = [9, 9, 9, 9, 9, 9, 10]  # 64 dated records


def tokenize(title):
    """Mirror of the library tokenizer: split on non-alphabetic characters,
    lowercase, drop tokens shorter than 3 chars and stopwords, dedupe."""
    tokens, current = [], []
    for ch in title:
        if ch.isalpha():
            current.append(ch.lower())
        else:
            if current:
                tokens.append("".join(current))
                current = []
    if current:
        tokens.append("".join(current))
    out, seen = [], set()
    for t in tokens:
        if len(t) < 3 or t in STOPWORDS:
            continue
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def normalize_author(raw):
    cleaned = "".join(
        c.lower() if (c.isalnum() or c.isspace()) else " " if c in "" else ""
        for c in raw
    )
    # strip punctuation entirely, keep alnum and whitespace
    cleaned = "".join(c.lower() for c in raw if c.isalnum() or c.isspace())
    return " ".join(cleaned.split())


def main():
    rng = random.Random(42)

    for w in STRONG + WEAK:
        assert len(w) >= 3 and w not in STOPWORDS, w

    # --- year plan ------------------------------------------------------
    dated_years = []
    for (start, _end), count in zip(PERIODS, PER_PERIOD):
        for i in range(count):
            dated_years.append(start + i % 5)
    assert len(dated_years) == 64
    assert min(dated_years) == 1975 and max(dated_years) == 2009

    years = []
    it = iter(dated_years)
    for idx in range(N_RECORDS):
        years.append(None if idx == UNDATED_INDEX else next(it))

    # Deal attributes over records sorted by year so that occurrences of
    # one attribute cluster in time (gives the period frames structure).
    order = sorted(range(N_RECORDS), key=lambda i: (years[i] is None, years[i] or 0, i))

    def deal(slots, per_record_counts):
        """Assign a flat list of tokens to records in year order, at most
        one copy of a token per record."""
        assignment = {i: [] for i in range(N_RECORDS)}
        counts = (per_record_counts * (50 * N_RECORDS))[: 50 * N_RECORDS]
        pos = 0
        for rec, want in zip(order * 50, counts):
            if pos >= len(slots):
                break
            take = 0
            while take < want and pos < len(slots):
                tok = slots[pos]
                if tok in assignment[rec]:
                    break  # leave the duplicate for the next record
                assignment[rec].append(tok)
                pos += 1
                take += 1
        assert pos == len(slots), f"undealt tokens: {slots[pos:]}"
        return assignment

    # --- strong words ----------------------------------------------------
    strong_slots = []
    others = [w for w in STRONG if w != SPECIAL]
    for i, w in enumerate(others):
        strong_slots.extend([w] * (3 if i % 2 == 0 else 4))
    word_assign = deal(strong_slots, [1, 2])

    # special word: two records in 1990-1994, two in 2005-2009
    p4 = [i for i in order if years[i] is not None and 1990 <= years[i] < 1995]
    p7 = [i for i in order if years[i] is not None and 2005 <= years[i] < 2010]
    for rec in [p4[0], p4[3], p7[1], p7[4]]:
        word_assign[rec].append(SPECIAL)

    # --- weak words -------------------------------------------------------
    weak_slots = []
    for w in WEAK:
        weak_slots.extend([w] * 2)
    weak_assign = deal(weak_slots, [2, 1])

    # --- co-authors and journals -----------------------------------------
    author_slots = []
    for a in COAUTHORS:
        author_slots.extend([a] * 2)
    author_assign = deal(author_slots, [1, 2])

    journal_slots = []
    for i, j in enumerate(JOURNALS):
        journal_slots.extend([j] * (3 if i % 2 == 0 else 2))
    journal_assign = deal(journal_slots, [1])
    assert all(len(v) == 1 for v in journal_assign.values())

    # --- titles -----------------------------------------------------------
    def make_title(words):
        parts = []
        for k, w in enumerate(words):
            cap = w.capitalize()
            if k > 0:
                parts.append(rng.choice(CONNECTORS).capitalize()
                             if rng.random() < 0.15 else rng.choice(CONNECTORS))
            parts.append(cap)
        title = " ".join(parts)
        return title

    records = []
    for idx in range(N_RECORDS):
        content = word_assign[idx] + weak_assign[idx]
        rng.shuffle(content)
        if not content:
            content = [rng.choice(weak_slots)]
        # occasionally hyphenate the last two words to exercise splitting
        if len(content) >= 3 and idx % 9 == 4:
            content = content[:-2] + [content[-2] + "-" + content[-1]]
        records.append({
            "authors": [FOCAL] + author_assign[idx],
            "title": make_title(content),
            "journal": journal_assign[idx][0],
            "year": years[idx],
        })

    # --- independent verification ----------------------------------------
    assert len(records) == N_RECORDS

    df = {}
    for r in records:
        for t in tokenize(r["title"]):
            df[t] = df.get(t, 0) + 1
    strong_found = {w for w, c in df.items() if c >= 3}
    assert strong_found == set(STRONG), (
        sorted(strong_found ^ set(STRONG)),
        {w: df.get(w) for w in sorted(strong_found ^ set(STRONG))},
    )

    authors_norm = set()
    for r in records:
        for a in r["authors"]:
            authors_norm.add(normalize_author(a))
    assert len(authors_norm) == 49, len(authors_norm)
    assert normalize_author(FOCAL) in authors_norm

    journals_norm = {" ".join(r["journal"].lower().split()) for r in records}
    assert len(journals_norm) == 26

    seen_years = [r["year"] for r in records if r["year"] is not None]
    assert len(seen_years) == 64
    assert min(seen_years) == 1975 and max(seen_years) == 2009

    special_years = sorted(
        r["year"] for r in records
        if SPECIAL in tokenize(r["title"]) and r["year"] is not None
    )
    assert len(special_years) == 4, special_years
    assert all(1990 <= y < 1995 for y in special_years[:2]), special_years
    assert all(2005 <= y < 2010 for y in special_years[2:]), special_years
    assert records[UNDATED_INDEX]["year"] is None

    for start, end in PERIODS:
        n = sum(1 for r in records if r["year"] is not None and start <= r["year"] < end)
        assert n >= 9, (start, n)

    # --- render -----------------------------------------------------------
    lines = ["FN Synthetic Bibliographic Export", "VR 1.0"]
    for i, r in enumerate(records):
        lines.append("PT J")
        lines.append(f"AU {r['authors'][0]}")
        for a in r["authors"][1:]:
            lines.append(f"   {a}")
        title_words = r["title"].split()
        row = "TI"
        wrapped = []
        cur = []
        for w in title_words:
            if len(" ".join(cur + [w])) > 55 and cur:
                wrapped.append(" ".join(cur))
                cur = [w]
            else:
                cur.append(w)
        wrapped.append(" ".join(cur))
        lines.append(f"TI {wrapped[0]}")
        for cont in wrapped[1:]:
            lines.append(f"   {cont}")
        if i % 7 == 3:
            lines.append("DE apparatus; instrumentation")
            lines.append("   methods")
        lines.append(f"SO {r['journal']}")
        if i % 11 == 5:
            lines.append("AB This synthetic abstract line is ignored by the")
            lines.append("   tagged-field reader.")
        if r["year"] is not None:
            lines.append(f"PY {r['year']}")
        lines.append("ER")
        lines.append("")
    lines.append("EF")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(records)} records, "
          f"{len(authors_norm) - 1} co-authors, {len(journals_norm)} journals, "
          f"{len(strong_found)} frequent words)")


if __name__ == "__main__":
    main()
