#!/usr/bin/env python3
"""Regenerates data/languages.tsv, data/aliases.tsv and data/equivalences.tsv.

ISO 639-1 codes and names come from the iso-codes package. The x-sil-*
entries are a fixed fixture set: a handful of named languages plus a few
hundred synthetic ones with generated names.
"""
import json
import random
import sys
from pathlib import Path

ISO_JSON = Path("/usr/share/iso-codes/json/iso_639-2.json")
OUT = Path(__file__).resolve().parent.parent / "data"

NAMED = [
    ("BAN", "Balinese", []),
    ("LLU", "Lau", []),
    ("FIA", "Fadicca", ["Fadicha", "Fedija", "Fadija", "Fiadidja", "Fiyadikkya", "Fedicca"]),
    ("MGE", "Mango", []),
    ("STC", "Santa Cruz", []),
]

# ISO 639-1 codes paired with an extension code for the same language.
EQUIVALENT = [
    ("en", "ENG", "English"), ("fr", "FRN", "French"), ("de", "GER", "German"),
    ("es", "SPN", "Spanish"), ("ru", "RUS", "Russian"), ("pt", "POR", "Portuguese"),
    ("ja", "JPN", "Japanese"), ("it", "ITN", "Italian"), ("nl", "DUT", "Dutch"),
    ("ko", "KKN", "Korean"), ("sv", "SWD", "Swedish"), ("fi", "FIN", "Finnish"),
]

ONSETS = ["b", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s", "t", "v", "w", "y", "z",
          "ch", "sh", "ng", "kw", "tl"]
VOWELS = ["a", "e", "i", "o", "u", "ai", "au", "ia"]
CODAS = ["", "", "", "n", "r", "k", "m"]


def synth_name(rng):
    n = rng.choice([2, 2, 3])
    word = "".join(rng.choice(ONSETS) + rng.choice(VOWELS) + rng.choice(CODAS) for _ in range(n))
    return word.capitalize()


def main():
    iso = [x for x in json.loads(ISO_JSON.read_text())["639-2"] if "alpha_2" in x]
    rng = random.Random(1033)

    languages = []  # (code, name)
    aliases = []  # (name, code)
    seen_names = set()

    def add_alias(name, code):
        key = " ".join(name.lower().split())
        if key in seen_names:
            return
        seen_names.add(key)
        aliases.append((name, code))

    for x in sorted(iso, key=lambda e: e["alpha_2"]):
        names = [n.strip() for n in x["name"].split(";")]
        languages.append((x["alpha_2"], names[0]))
        for n in names:
            add_alias(n, x["alpha_2"])

    used = set()
    for code, name, variants in NAMED:
        used.add(code)
        languages.append(("x-sil-" + code, name))
        add_alias(name, "x-sil-" + code)
        for v in variants:
            add_alias(v, "x-sil-" + code)

    for _, code, name in EQUIVALENT:
        used.add(code)
        languages.append(("x-sil-" + code, name))

    synthetic = 0
    while synthetic < 300:
        code = "".join(rng.choice("ABCDEFGHIJKLMNOPRSTUVWXYZ") for _ in range(3))
        if code in used:
            continue
        name = synth_name(rng)
        if " ".join(name.lower().split()) in seen_names or len(name) < 4:
            continue
        used.add(code)
        languages.append(("x-sil-" + code, name))
        add_alias(name, "x-sil-" + code)
        synthetic += 1

    with open(OUT / "languages.tsv", "w") as f:
        f.write("# Known language codes: code<TAB>name\n")
        for code, name in languages:
            f.write(f"{code}\t{name}\n")
    with open(OUT / "aliases.tsv", "w") as f:
        f.write("# Language name aliases: name<TAB>code\n")
        for name, code in aliases:
            f.write(f"{name}\t{code}\n")
    with open(OUT / "equivalences.tsv", "w") as f:
        f.write("# ISO 639-1 code<TAB>equivalent extension code\n")
        for iso_code, code, _ in EQUIVALENT:
            f.write(f"{iso_code}\tx-sil-{code}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
