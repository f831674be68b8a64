"""GREAD on a random line demand, and the merge tree behind its cost bound."""

import math
import random

from linelab import Gread, MergeTree, random_line_demand
from linelab.gread import relocation_cost_bound

# the sequence of the merge-tree figure, with v1..v8 as nodes 0..7
sigma = [(0, 1), (2, 3), (4, 2), (5, 6), (0, 4), (3, 6), (7, 1)]
tree = MergeTree.from_sequence(8, sigma)
for u in tree.internal_nodes():
    print(f"node {u}: children {tree.left[u]},{tree.right[u]} weights "
          f"{tree.weight[tree.left[u]]}+{tree.weight[tree.right[u]]}")
print("sum of min child weights:", tree.sum_min())

g = Gread(8)
for u, v in sigma:
    g.request(u, v)
print("final line:", g.config.order(), "swaps", g.ledger.migration, "bound", relocation_cost_bound(g.tree, 8))

# a bigger run: swaps stay under n * sum_min, and that under n k log2 k
n = 128
rng = random.Random(3)
g = Gread(n)
for u, v in random_line_demand(n, 10 * n, rng):
    g.request(u, v)
k = len(g.merges)
print(f"n={n} merges={k} swaps={g.ledger.migration} n*sum_min={relocation_cost_bound(g.tree, n)} "
      f"n*k*log2(k)={n * k * math.log2(k):.0f}")
print("largest single merge:", max(g.merges, key=lambda r: r.swaps))
