"""Message-passing GREAD: the same line as the centralized algorithm, plus message costs."""

import io
import random

from linelab import Gread, random_line_demand, run_distributed_gread

rng = random.Random(5)
n = 16
sigma = random_line_demand(n, 60, rng)

sim = run_distributed_gread(n, sigma, seed=1, record=True)
central = Gread(n)
for u, v in sigma:
    central.request(u, v)

print("same final line:", sim.config == central.config)
print("swaps distributed/centralized:", sim.ledger.migration, central.ledger.migration)
print("messages:", sim.ledger.messages)
print("first routes (distance, probe hops):", sim.first_routes[:6])
print("worst hops per unit distance:", max(h / d for d, h in sim.first_routes))

buf = io.StringIO()
sim.loop.write_trace(buf)
print("first lines of the message trace:")
print("\n".join(buf.getvalue().splitlines()[:8]))
