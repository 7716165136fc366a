#!/usr/bin/env python3
"""Regenerate data/groups115.edges, the bundled 115-node test network.

Layout: 12 planted groups (8 of size 10, 3 of size 9, 1 of size 8) wired as
intra-group cliques (496 edges; the size-8 group pins the minimum degree at
7) plus 117 seeded random inter-group edges, 613 edges in total, so the mean
degree is 2*613/115 = 10.6609. The script asserts connectivity, the degree
floor and the exact edge count before writing.
"""

import random
import sys

SIZES = [10] * 8 + [9] * 3 + [8]
INTER_EDGES = 117
SEED = 715


def main() -> None:
    assert sum(SIZES) == 115
    rng = random.Random(SEED)

    group_of = []
    for gi, size in enumerate(SIZES):
        group_of.extend([gi] * size)
    n = len(group_of)

    edges = set()
    start = 0
    for size in SIZES:
        members = range(start, start + size)
        for a in members:
            for b in members:
                if a < b:
                    edges.add((a, b))
        start += size
    assert len(edges) == 496

    cross = [(a, b) for a in range(n) for b in range(a + 1, n)
             if group_of[a] != group_of[b]]
    rng.shuffle(cross)
    for pair in cross:
        if len(edges) == 496 + INTER_EDGES:
            break
        edges.add(pair)
    assert len(edges) == 613

    deg = [0] * n
    adj = [[] for _ in range(n)]
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    assert min(deg) >= 7, min(deg)

    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 0
    while stack:
        v = stack.pop()
        count += 1
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    assert count == n, "not connected"

    out = sys.argv[1] if len(sys.argv) > 1 else "data/groups115.edges"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("# 115 nodes, 12 planted groups, 613 edges, <k>=10.6609, min degree 7\n")
        for a, b in sorted(edges):
            fh.write(f"n{a} n{b}\n")
    print(f"wrote {out}: {n} nodes, {len(edges)} edges, <k>={2 * len(edges) / n:.4f}, "
          f"min degree {min(deg)}")


if __name__ == "__main__":
    main()
