"""Generate the bundled synthetic Earth-sciences corpus.

Committee sizes follow the HSB-profile column of the committee roster scaled
to ~200 researchers; co-authorship bin probabilities, WoS ratios and uncited
ratios follow the per-committee publication statistics.  Citations grow with
team size so that integer counting favours the high co-authorship committees.

Run from the repo root:

    python3 scripts/make_fixture.py src/researchscore/data/sample
"""
import csv
import json
import random
import sys
from pathlib import Path

SEED = 20210319

COMMITTEES = {
    # name: (profiles, bin percentages 1,2,3-5,6-10,11-20,21-50,51-100,101-500,501+,
    #        wos ratio %, uncited ratio %, citations per cited item)
    "geochemistry": (95, [5.90, 7.37, 40.22, 35.24, 9.13, 1.02, 1.02, 0.10, 0.00], 41.65, 51.99, 9.75),
    "geodesy": (45, [22.00, 19.50, 35.86, 16.27, 5.73, 0.37, 0.09, 0.18, 0.00], 15.43, 74.31, 5.80),
    "geology": (51, [6.20, 13.58, 44.76, 26.80, 6.70, 1.96, 0.00, 0.00, 0.00], 26.48, 66.64, 9.16),
    "geophysics": (65, [7.03, 13.78, 39.71, 25.11, 10.78, 3.10, 0.05, 0.33, 0.11], 30.07, 66.01, 6.91),
    "meteorology": (69, [9.29, 13.30, 52.95, 17.85, 4.51, 1.63, 0.43, 0.04, 0.00], 26.44, 65.36, 10.98),
    "mining": (40, [13.29, 25.27, 43.28, 16.12, 1.67, 0.29, 0.00, 0.07, 0.00], 7.77, 77.56, 6.21),
    "palaeontology": (37, [15.71, 16.64, 41.36, 19.05, 6.23, 0.84, 0.19, 0.00, 0.00], 41.26, 50.56, 9.54),
    "physical_geography": (110, [15.97, 15.81, 40.42, 24.71, 1.95, 1.05, 0.04, 0.04, 0.00], 16.26, 64.14, 6.89),
    "social_geography": (171, [35.65, 27.25, 29.04, 7.13, 0.70, 0.17, 0.06, 0.00, 0.00], 6.85, 59.69, 5.46),
}
BIN_RANGES = [(1, 1), (2, 2), (3, 5), (6, 10), (11, 20), (21, 50), (51, 100), (101, 500), (501, 800)]
N_RESEARCHERS = 200
PUBS_PER_RESEARCHER = 10
MAX_LISTED_AUTHORS = 30


def researcher_counts():
    total = sum(v[0] for v in COMMITTEES.values())
    raw = {c: v[0] * N_RESEARCHERS / total for c, v in COMMITTEES.items()}
    counts = {c: max(1, int(r)) for c, r in raw.items()}
    # largest remainders fill the gap
    order = sorted(raw, key=lambda c: (raw[c] - int(raw[c])), reverse=True)
    i = 0
    while sum(counts.values()) < N_RESEARCHERS:
        counts[order[i % len(order)]] += 1
        i += 1
    return counts


def main(out_dir):
    rng = random.Random(SEED)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    members = {}
    researchers = []
    serial = 0
    for committee, n in researcher_counts().items():
        members[committee] = []
        for _ in range(n):
            serial += 1
            rid = f"R{serial:04d}"
            degree = rng.choice([None, None] + list(range(1995, 2016)))
            researchers.append((rid, f"Researcher {serial}", committee, degree))
            members[committee].append(rid)
    all_ids = [r[0] for r in researchers]

    pubs = []
    pub_serial = 0
    for committee, (_, bins, wos_pct, uncited_pct, per_cited) in COMMITTEES.items():
        n_pubs = len(members[committee]) * PUBS_PER_RESEARCHER
        for _ in range(n_pubs):
            pub_serial += 1
            lo, hi = rng.choices(BIN_RANGES, weights=bins)[0]
            n_authors = rng.randint(lo, hi)
            n_members = min(n_authors, rng.choice([1, 1, 1, 2, 2, 3]))
            chosen = rng.sample(members[committee], min(n_members, len(members[committee])))
            if len(chosen) < n_authors and rng.random() < 0.05:
                guest = rng.choice(all_ids)
                if guest not in chosen:
                    chosen.append(guest)
            listed = min(n_authors, MAX_LISTED_AUTHORS)
            slots = list(range(listed))
            # mostly a member in first position; sometimes an external leads
            first_member = 0 if rng.random() < 0.8 or listed == len(chosen) else None
            positions = set()
            if first_member == 0:
                positions.add(0)
            while len(positions) < len(chosen):
                positions.add(rng.choice(slots))
            positions = sorted(positions)
            authors = [f"x:ext{pub_serial}-{k}" for k in range(listed)]
            for pos, rid in zip(positions, chosen):
                authors[pos] = f"m:{rid}"

            wos = rng.random() * 100 < wos_pct
            doc_type = "journal_article" if wos or rng.random() < 0.55 else rng.choice(
                ["book", "book_chapter", "conference", "other"])
            language = "foreign" if wos or rng.random() < 0.4 else "hungarian"
            team_boost = 1.0 + min(n_authors, 40) / 8.0
            if rng.random() * 100 < uncited_pct:
                cites = 0
            else:
                cites = 1 + int(rng.expovariate(1.0 / (per_cited * team_boost / 2.0)))
            wos_cites = int(cites * rng.uniform(0.6, 1.3)) if wos else 0
            impact = round(rng.uniform(0.3, 6.0), 3) if wos and doc_type == "journal_article" else None
            year = rng.randint(2011, 2020)
            pubs.append({
                "pub_id": f"P{pub_serial:05d}",
                "year": year,
                "authors": authors,
                "author_count": n_authors,
                "doc_type": doc_type,
                "language": language,
                "wos_indexed": wos,
                "scopus_indexed": wos or rng.random() < 0.1,
                "impact_factor": impact,
                "independent_citations": cites,
                "wos_citations": wos_cites,
            })

    # out-of-window records that loading must drop
    for k, year in enumerate([2008, 2009, 2010, 2021, 2022]):
        pub_serial += 1
        rid = rng.choice(all_ids)
        pubs.append({
            "pub_id": f"P{pub_serial:05d}", "year": year, "authors": [f"m:{rid}"],
            "author_count": 1, "doc_type": "journal_article", "language": "foreign",
            "wos_indexed": False, "scopus_indexed": False, "impact_factor": None,
            "independent_citations": 3 + k, "wos_citations": 0,
        })

    # shared publications re-listed by a co-author's profile with drifted counts
    multi = [p for p in pubs if sum(a.startswith("m:") for a in p["authors"]) > 1]
    for p in rng.sample(multi, 40):
        dup = dict(p)
        dup["authors"] = list(p["authors"])
        dup["independent_citations"] = max(0, p["independent_citations"] + rng.choice([-2, -1, 1, 3]))
        if p["wos_indexed"]:
            dup["wos_citations"] = max(0, p["wos_citations"] + rng.choice([-1, 2]))
        pubs.append(dup)

    rng.shuffle(pubs)

    with open(out / "researchers.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["researcher_id", "name", "committee", "degree_year"])
        for rid, name, committee, degree in researchers:
            w.writerow([rid, name, committee, "" if degree is None else degree])
    with open(out / "publications.jsonl", "w") as fh:
        for p in pubs:
            fh.write(json.dumps(p) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/researchscore/data/sample")
