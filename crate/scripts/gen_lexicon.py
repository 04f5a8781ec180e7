#!/usr/bin/env python3
"""Build assets/lexicon.txt from CMUdict.

Usage: gen_lexicon.py path/to/cmudict.dict > assets/lexicon.txt

Vocabulary is every word in the bundled templates, QA pairs, news corpus,
gazetteers and dialog scripts, plus a list of everyday words. Stress marks
are stripped. Words whose pronunciation repeats a phoneme back to back are
skipped: the tone codec cannot separate two identical adjacent tones.
"""

import glob
import os
import re
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")

EXTRA = """
zero one two three four five six seven eight nine ten eleven twelve
monday tuesday wednesday thursday friday saturday sunday today tomorrow tonight
january february march april may june july august september october november december
yes no okay please sorry thanks hello hi hey bye good great fine bad nice
what who which where when why how is are was were be been am do does did
the a an and or but if then of in on at to for from with by about as into
i you he she we they it me my your our their this that these those here there
can could will would should shall must might have has had get got make made
go going come see look show tell give take find know think want need like love
help stay book room hotel night nights weather news city date day week year
turn switch lamp light fan heater radio speaker television door
who director actor singer author genre capital country movie film song music
rain snow sunny cloudy hot cold warm cool wind degrees temperature forecast
start over reset again stop wait more less much many some any all every
big small long short new old first last next other same different
red green blue yellow black white orange purple pink brown
home work school food water coffee tea time life world people friend family
happy sad funny tired bored hungry busy free ready sure right left
name age phone email address number price money
""".split()


def load_cmu(path):
    prons = {}
    for line in open(path, encoding="latin-1"):
        parts = line.split("#")[0].split()
        if len(parts) < 2:
            continue
        word = parts[0]
        if "(" in word:
            continue
        prons[word] = [re.sub(r"\d", "", p) for p in parts[1:]]
    return prons


def words_in(text):
    return re.findall(r"[a-z]+", text.lower())


def main():
    cmu = load_cmu(sys.argv[1])
    vocab = set(EXTRA)
    sources = [
        "assets/templates.toml",
        "assets/qa_pairs.tsv",
        "assets/news.tsv",
        "assets/cities.txt",
        "assets/devices.txt",
    ] + glob.glob("testdata/dialogs/*.txt", root_dir=ROOT)
    for rel in sources:
        text = open(os.path.join(ROOT, rel), encoding="utf-8").read()
        text = "\n".join(l for l in text.splitlines() if not l.lstrip().startswith("#"))
        vocab.update(words_in(text))
    out = sys.stdout
    out.write("# Starter pronunciation lexicon (CMUdict-derived, stress removed).\n")
    out.write("# Format: word PH1 PH2 ...\n")
    kept = 0
    for word in sorted(vocab):
        pron = cmu.get(word)
        if not pron or (len(word) == 1 and word not in ("a", "i")):
            continue
        if any(a == b for a, b in zip(pron, pron[1:])):
            print(f"skip {word}: repeated phoneme", file=sys.stderr)
            continue
        out.write(f"{word} {' '.join(pron)}\n")
        kept += 1
    print(f"{kept} words", file=sys.stderr)


if __name__ == "__main__":
    main()
