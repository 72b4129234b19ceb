"""Regenerate the bundled data fixtures.

Every fixture is verified against the library before being written: the
labeled sentences must classify to their labels, and the synthetic
colexification matrix must exhibit the intended three-extremes geometry.
"""

import json
from pathlib import Path

import numpy as np

from someany.classifier import CoarseClass, classify_usage
from someany.corpus import Population, Pronoun, SentenceRecord, locate_ips, tokenize
from someany.typology import load_matrix_csv, mds_project, save_matrix_csv, to_distance, ColexMatrix
from someany.classifier import UsageClass

DATA = Path(__file__).resolve().parents[1] / "src" / "someany" / "data"
FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

# The eight usage-class illustration sentences with their fine class and
# the coarse label the classifier must produce.
TABLE1 = [
    ("I had to reevaluate things when someone pointed that out.", "SP", "MIXED"),
    ("Someone please make me a GIF of that Wade dunk.", "NS", "MIXED"),
    ("Anyone know what the issue might be?", "QU", "QU"),
    ("I would love it if someone could explain it in a more precise way.", "CD", "CD"),
    ("I don't understand how anyone can really hate on him.", "IN", "MIXED"),
    ("I don't have anything to add other than to say thanks for typing this out.", "DN", "DN"),
    ("If you work harder you deserve to earn more than someone who doesn't do so.", "CP", "CP"),
    ("they invite anyone on, including musicians sometimes.", "FC", "MIXED"),
]

REGRESSION = [
    # direct negation
    ("They didn't steal anything from the store.", "DN"),
    ("She doesn't want anything for her birthday.", "DN"),
    ("Nobody told anyone about the accident.", "DN"),
    ("He left without telling anyone.", "DN"),
    ("We never found anything useful in the attic.", "DN"),
    ("Hardly anyone showed up to the rehearsal.", "DN"),
    ("There was nothing left and nobody saw anything.", "DN"),
    ("I can't say anything nice about that film.", "DN"),
    ("If he comes, don't tell anyone.", "DN"),
    ("Neither of them brought anything to share.", "DN"),
    # question
    ("Anyone know how to fix this?", "QU"),
    ("Did you see anything strange last night?", "QU"),
    ("Has anyone tried the new update?", "QU"),
    ("Why would someone do that on purpose?", "QU"),
    ("Is there anything better to watch tonight?", "QU"),
    ("Can someone explain this rule to me?", "QU"),
    ("Did they ever find anything in the lake?", "QU"),
    ("Would anyone like more coffee?", "QU"),
    ("Are you hiding something from us?", "QU"),
    ("Do you know anyone in Lisbon?", "QU"),
    # conditional
    ("If you need anything, just call me.", "CD"),
    ("Call me if you need anything tomorrow.", "CD"),
    ("Unless someone objects, we start at noon.", "CD"),
    ("I wonder whether anyone noticed the change.", "CD"),
    ("In case anyone asks, tell them the truth.", "CD"),
    ("We will cancel the trip if someone gets sick.", "CD"),
    ("Let me know if anything changes.", "CD"),
    ("If someone calls while I'm out, take a message.", "CD"),
    ("They promised to help if anyone got lost.", "CD"),
    ("Tell the guard in case something happens.", "CD"),
    # comparison
    ("She sings better than anyone in the choir.", "CP"),
    ("You deserve more than something cheap.", "CP"),
    ("He works harder than anyone else on the team.", "CP"),
    ("That plan sounds worse than anything we tried before.", "CP"),
    ("Nothing hurts more than someone ignoring you.", "CP"),
    ("Right now I want that more than anything.", "CP"),
    ("They trust her more than anyone at the office.", "CP"),
    ("The repair cost more than something brand new.", "CP"),
    ("I'd rather walk than ask someone for a ride.", "CP"),
    ("Better to build than buy something ready-made.", "CP"),
    # mixed
    ("Someone left a package at the front desk.", "MIXED"),
    ("I met someone interesting on the train.", "MIXED"),
    ("Someone please water the plants this week.", "MIXED"),
    ("We should hire someone to fix the roof.", "MIXED"),
    ("They let anyone join the club these days.", "MIXED"),
    ("Anyone with a ticket can enter the hall.", "MIXED"),
    ("I don't understand how anyone enjoys this weather.", "MIXED"),
    ("She doubts that anyone will volunteer.", "MIXED"),
    ("He said that someone borrowed the ladder.", "MIXED"),
    ("It's rare to meet anyone who remembers that store.", "MIXED"),
]

POPULATIONS = [Population.NATIVE, Population.ADVANCED_L2, Population.LEARNER]


def record_for(text: str, rec_id: str, population: Population) -> SentenceRecord:
    tokens = tokenize(text)
    occurrences = locate_ips(tokens)
    assert len(occurrences) == 1, (text, occurrences)
    ip_index, pron = occurrences[0]
    return SentenceRecord(id=rec_id, tokens=tuple(tokens), ip_index=ip_index,
                          original=pron, population=population, raw_text=text)


def dump_labeled(rows, path: Path, extra_key: str):
    lines = []
    for i, row in enumerate(rows):
        if len(row) == 3:
            text, fine, coarse = row
        else:
            text, coarse = row
            fine = None
        rec = record_for(text, f"{path.stem}-{i:03d}", POPULATIONS[i % 3])
        got = classify_usage(rec)
        assert got is CoarseClass(coarse), (text, coarse, got)
        obj = {
            "id": rec.id,
            "text": rec.raw_text,
            "ip_index": rec.ip_index,
            "original": rec.original.lemma,
            "population": rec.population.value,
            extra_key: coarse,
        }
        if fine:
            obj["fine_class"] = fine
        lines.append(json.dumps(obj, ensure_ascii=False))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(lines)} records)")


def build_colex_matrix() -> None:
    # Planted 2D layout: SP, FC, DN sit at the corners of a wide triangle,
    # QU/CD/NS cluster near SP, IN near DN, CP in the middle.
    points = {
        UsageClass.SP: (0.00, 0.00),
        UsageClass.NS: (0.10, 0.06),
        UsageClass.QU: (0.22, 0.10),
        UsageClass.CD: (0.28, 0.16),
        UsageClass.IN: (0.48, 0.62),
        UsageClass.DN: (0.55, 0.95),
        UsageClass.CP: (0.52, 0.34),
        UsageClass.FC: (1.05, 0.05),
    }
    classes = list(UsageClass)
    n = len(classes)
    coords = np.array([points[c] for c in classes])
    d = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(-1))
    total = 40
    counts = np.rint(total * (1.0 - d / d.max())).astype(int)
    np.fill_diagonal(counts, total)
    counts = np.minimum(counts, counts.T)  # symmetry (rint is symmetric anyway)

    matrix = ColexMatrix(classes=tuple(classes), counts=counts, total_languages=total)
    emb = mds_project(to_distance(matrix), dims=2, classes=classes)
    ec = emb.coords
    dist = np.sqrt(((ec[:, None, :] - ec[None, :, :]) ** 2).sum(-1))
    pair_dists = dist[np.triu_indices(n, k=1)]
    median = float(np.median(pair_dists))
    idx = {c: i for i, c in enumerate(classes)}
    extremes = [UsageClass.SP, UsageClass.FC, UsageClass.DN]
    for a in range(3):
        for b in range(a + 1, 3):
            dd = dist[idx[extremes[a]], idx[extremes[b]]]
            assert dd > median, (extremes[a], extremes[b], dd, median)
            print(f"extreme pair {extremes[a].value}-{extremes[b].value}: "
                  f"{dd:.4f} > median {median:.4f}")

    names = [c.value for c in classes]
    for path in (DATA / "synthetic_colex.csv", FIXTURES / "synthetic_colex.csv"):
        save_matrix_csv(path, names, counts)
        print(f"wrote {path}")


def build_colex_records() -> None:
    # Ten synthetic languages; only lang01 has an English-like broad pair.
    lines = [
        "# synthetic colexification records (not real typological data)",
        "lang01,soma,SP|NS|QU|CD|IN|DN|CP",
        "lang01,ani,QU|CD|IN|DN|CP|FC",
        "lang02,irgend,SP|NS",
        "lang02,jemals,QU|CD",
        "lang02,nichts,IN|DN",
        "lang02,beliebig,CP|FC",
        "lang03,uno,SP|NS|QU",
        "lang03,alio,CD|IN|DN",
        "lang03,libero,CP|FC",
        "lang04,ktos,SP|NS|QU|CD",
        "lang04,nikt,IN|DN",
        "lang04,kazdy,FC|CP",
        "lang05,aliquis,SP|NS",
        "lang05,quisquam,QU|CD|IN|DN",
        "lang05,quivis,FC",
        "lang06,wala,SP|NS|QU|CD|IN",
        "lang06,bisan,DN|CP|FC",
        "lang07,dare,SP|NS",
        "lang07,nani,QU|CD",
        "lang07,demo,DN|CP|FC",
        "lang08,kuka,SP|QU|CD",
        "lang08,mikaan,IN|DN",
        "lang08,vapaa,NS|CP|FC",
        "lang09,neco,SP|NS|QU|CD|DN",
        "lang09,cokoli,IN|CP|FC",
        "lang10,alguien,SP|NS|QU",
        "lang10,nadie,CD|IN|DN",
        "lang10,cualquiera,CP|FC",
    ]
    for path in (FIXTURES / "colex_records.csv",):
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {path}")


def build_misc() -> None:
    rules = [
        "# Lexical cue lists for the usage classifier (defaults).",
        "# Underscores mark word breaks in multiword entries.",
        "negators = not n't never no none nothing nobody without neither nor hardly barely scarcely",
        "conditional_openers = if unless whether in_case",
        "clause_boundaries = . , ; : that who which how because but and than",
        "comparison_window = 2",
    ]
    (FIXTURES / "rules.cfg").write_text("\n".join(rules) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURES / 'rules.cfg'}")

    ann = [
        "# sentence_id,original,c1,c2,c3,c4,c5  (S=some- form, A=any- form, O=other)",
        "table1-000,someone,S,S,S,S,S",
        "table1-001,someone,S,S,S,S,A",
        "table1-002,anyone,A,A,A,S,S",
        "table1-003,someone,S,S,A,A,A",
        "table1-004,anyone,A,A,A,A,S",
        "table1-005,anything,A,A,A,A,A",
        "table1-006,someone,S,A,S,A,O",
        "table1-007,anyone,O,O,O,A,S",
    ]
    (FIXTURES / "annotations_sample.csv").write_text("\n".join(ann) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURES / 'annotations_sample.csv'}")

    idioms = [
        "# Stand-in idiom stoplist: token patterns spanning the marked pronoun.",
        "or something",
        "or anything",
        "anything but",
        "if anything",
        "something of a",
        "or someone",
        "or anyone",
    ]
    (DATA / "idioms.txt").write_text("\n".join(idioms) + "\n", encoding="utf-8")
    print(f"wrote {DATA / 'idioms.txt'}")


def main():
    DATA.mkdir(exist_ok=True)
    FIXTURES.mkdir(exist_ok=True)
    dump_labeled(TABLE1, DATA / "table1.jsonl", "coarse_class")
    dump_labeled(REGRESSION, DATA / "regression50.jsonl", "coarse_class")
    import shutil
    shutil.copy(DATA / "table1.jsonl", FIXTURES / "table1.jsonl")
    print(f"wrote {FIXTURES / 'table1.jsonl'}")
    build_colex_matrix()
    build_colex_records()
    build_misc()


if __name__ == "__main__":
    main()
