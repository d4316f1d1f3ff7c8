#!/usr/bin/env python3
"""Fuzz the normal form against the randomized-order relation rewriter.

Random linear combinations of free words are reduced two ways: through the
structured product/normalization path, and by applying the defining relations
at randomly chosen positions until no rule applies.  Any disagreement would
contradict confluence of the rewriting system.
"""

import argparse
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

import oracles
from lpa import algebra, corpus, fields


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--iterations", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-word-len", type=int, default=4)
    ap.add_argument("--mode", choices=("leavitt", "cohn", "both"), default="both")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    Q = fields.rationals()
    names = list(corpus.NAMES)
    modes = {
        "leavitt": [algebra.LEAVITT],
        "cohn": [algebra.COHN],
        "both": [algebra.LEAVITT, algebra.COHN],
    }[args.mode]
    for i in range(args.iterations):
        g = corpus.load(names[i % len(names)])
        mode = modes[i % len(modes)]
        combo = {}
        for _ in range(rng.randint(1, 4)):
            w = oracles.random_free_word(rng, g, args.max_word_len)
            combo[w] = combo.get(w, 0) + rng.choice([-2, -1, 1, 2, 3])
        structured = algebra.zero(g, Q, mode)
        for w, c in combo.items():
            structured = structured + oracles.word_to_element(g, Q, w, mode).scale(
                fields.from_int(Q, c)
            )
        fix = oracles.rewrite_to_fixpoint(
            g, combo, rng, leavitt=(mode == algebra.LEAVITT)
        )
        oracle_elem = oracles.combo_to_element(g, Q, fix, mode)
        if oracle_elem != structured:
            print(f"MISMATCH at iteration {i} on {g.name} ({mode})")
            print("  input:", combo)
            print("  structured:", structured)
            print("  oracle:    ", oracle_elem)
            return 1
        if (i + 1) % 100 == 0:
            print(f"{i + 1} inputs agree")
    print(f"confluence fuzzing passed: {args.iterations} inputs, seed {args.seed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
