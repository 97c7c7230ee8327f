#!/usr/bin/env python3
"""Brute-force rotation-class counts for vertex deletions of the Z_n McKay quiver.

For every proper nonempty V of Z_n, scan the complement for a run of four
cyclically consecutive residues, then quotient by rotation. Writes the pinned
counts consumed by the acceptance suite.
"""
import itertools
import json
import sys


def has_run(n, V, length):
    comp = [v not in V for v in range(n)]
    if sum(comp) < length:
        return False
    return any(all(comp[(s + k) % n] for k in range(length)) for s in range(n))


def canonical(n, V):
    return min(tuple(sorted((v + r) % n for v in V)) for r in range(n))


def counts(n):
    subsets = [frozenset(c) for r in range(1, n) for c in itertools.combinations(range(n), r)]
    classes = {}
    for V in subsets:
        classes.setdefault(canonical(n, V), V)
    eligible = sorted(k for k, V in classes.items() if not has_run(n, V, 4))
    ineligible = sorted(k for k, V in classes.items() if has_run(n, V, 4))
    return {
        "n": n,
        "weights": [1, 1, n - 2],
        "subsets": len(subsets),
        "classes": len(classes),
        "eligible_classes": len(eligible),
        "ineligible_classes": len(ineligible),
        "eligible": [list(k) for k in eligible],
        "ineligible": [list(k) for k in ineligible],
    }


if __name__ == "__main__":
    out = {"version": 1, "catalogues": [counts(5), counts(7)]}
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
