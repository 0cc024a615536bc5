#!/usr/bin/env python3
"""Run the golden corpus through the full pipeline and diff against
the expected outcomes stored alongside the demo lexicon.

Exit status is 0 when every sentence reproduces its recorded outcome,
readings, and coercion provenance, 1 otherwise.
"""

import argparse
import json
import pathlib
import sys
import time

from lambeksem import (
    UNICODE,
    ComposeOptions,
    analyze,
    load_lexicon_file,
    parse_category,
    render,
    to_formula,
)

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def check_sentence(entry, lexicon, goal, options):
    words = entry["sentence"].split()
    result = analyze(words, lexicon, goal, options)
    problems = []
    if result.outcome != entry["outcome"]:
        problems.append(
            "outcome %s != expected %s" % (result.outcome, entry["outcome"])
        )
    if result.parse_count != entry["parse_count"]:
        problems.append(
            "parse count %d != expected %d"
            % (result.parse_count, entry["parse_count"])
        )
    got = [render(to_formula(r.formula_term), UNICODE) for r in result.readings]
    want = [r["formula_unicode"] for r in entry["readings"]]
    if got != want:
        problems.append("readings %r != expected %r" % (got, want))
    for reading, expected in zip(result.readings, entry["readings"]):
        used = [[c.name, c.source.name, c.target.name]
                for c in reading.coercions_used()]
        if used != expected["coercions"]:
            problems.append(
                "coercions %r != expected %r" % (used, expected["coercions"])
            )
    return result, problems


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lexicon", default=str(DATA / "demo_lexicon.json"))
    ap.add_argument("--corpus", default=str(DATA / "golden_corpus.json"))
    ap.add_argument("--no-coercions", action="store_true")
    args = ap.parse_args()

    lexicon, _ = load_lexicon_file(args.lexicon)
    corpus = json.loads(pathlib.Path(args.corpus).read_text())
    goal = parse_category(corpus["goal"], lexicon.bases)
    options = ComposeOptions(coercions_enabled=not args.no_coercions)

    failures = 0
    t0 = time.perf_counter()
    for entry in corpus["sentences"]:
        result, problems = check_sentence(entry, lexicon, goal, options)
        mark = "ok" if not problems else "FAIL"
        print("[%4s] %-55s %s" % (mark, entry["sentence"], result.outcome))
        for reading in result.readings:
            print("         %s" % render(to_formula(reading.formula_term), UNICODE))
        for p in problems:
            print("         !! %s" % p)
        failures += bool(problems)
    dt = time.perf_counter() - t0
    print(
        "%d/%d sentences match (%.2fs)"
        % (len(corpus["sentences"]) - failures, len(corpus["sentences"]), dt)
    )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
