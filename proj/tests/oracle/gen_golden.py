#!/usr/bin/env python3
"""Brute-force reference for golden files.

Builds every function induced by a term of depth <= D over z1..zk (k <= K)
by plain breadth-first application of the operation tables, then decides
a:b::c:z by comparing the Jus sets of all candidates pairwise. Shares no code
with the C++ library.

usage: gen_golden.py OUT_DIR
"""

import itertools
import json
import sys

import numpy as np

UNDEF = -1


def int_algebra(lo, hi, ops, consts):
    carrier = list(range(lo, hi + 1))
    n = len(carrier)
    index = {v: i for i, v in enumerate(carrier)}
    tables = []
    for op in ops:
        t = np.full((n, n), UNDEF, dtype=np.int64)
        for i, x in enumerate(carrier):
            for j, y in enumerate(carrier):
                if op == "*":
                    v = x * y
                elif op == "+":
                    v = x + y
                elif op == "-":
                    v = x - y
                else:
                    raise ValueError(op)
                t[i, j] = index.get(v, UNDEF)
        tables.append(t)
    return carrier, tables, [index[c] for c in consts]


def apply2(table, f, g):
    out = np.full(f.shape, UNDEF, dtype=np.int64)
    ok = (f != UNDEF) & (g != UNDEF)
    out[ok] = table[f[ok], g[ok]]
    return out


def functions(n, tables, consts, k, depth):
    """Distinct value vectors over carrier^k of terms of depth <= depth."""
    points = np.array(list(itertools.product(range(n), repeat=k)), dtype=np.int64).reshape(n**k, k)
    level = [points[:, i].copy() for i in range(k)]
    level += [np.full(len(points), c, dtype=np.int64) for c in consts]
    seen = {}
    for f in level:
        seen.setdefault(f.tobytes(), f)
    frontier = list(seen.values())
    for _ in range(depth):
        everything = list(seen.values())
        fresh = []
        for table in tables:
            for f in everything:
                for g in everything:
                    h = apply2(table, f, g)
                    key = h.tobytes()
                    if key not in seen:
                        seen[key] = h
                        fresh.append(h)
        frontier = fresh
        if not frontier:
            break
    return list(seen.values())


def solve(n, tables, consts, a, b, c, max_arity, depth):
    jus = [set() for _ in range(n)]
    for k in range(max_arity + 1):
        fns = functions(n, tables, consts, k, depth)
        for si, s in enumerate(fns):
            es = s == a
            fs = s == c
            if not es.any() or not fs.any():
                continue
            for ti, t in enumerate(fns):
                if not (t[es] == b).any():
                    continue
                for d in set(t[fs].tolist()):
                    if d != UNDEF:
                        jus[d].add((k, si, ti))
    if all(not j for j in jus):
        return list(range(n)), True
    sols = [d for d in range(n) if not any(jus[d] < jus[e] for e in range(n))]
    return sols, False


def main():
    out_dir = sys.argv[1]
    carrier, tables, consts = int_algebra(-9, 9, ["*"], [1])
    n = len(carrier)
    idx = {v: i for i, v in enumerate(carrier)}
    runs = []
    for max_arity, depth in [(1, 4), (2, 4)]:
        sols, degenerate = solve(n, tables, consts, idx[1], idx[1], idx[-1], max_arity, depth)
        runs.append({
            "max_arity": max_arity,
            "max_depth": depth,
            "degenerate": degenerate,
            "solutions": [carrier[d] for d in sols],
        })
    doc = {
        "algebra": "int_interval -9..9, ops *, consts one:1",
        "query": "1:1::-1:z",
        "runs": runs,
    }
    with open(f"{out_dir}/strong_determinism_int_mul9.json", "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
