"""Move-to-front against the exact offline optimum on small lists."""

import random

from linelab.classic import inversion_bits, mtf_trace, optimal_list_update, random_trace

rng = random.Random(1)

# one access at depth 2 costs 2 walks + 2 swaps
states, cost = mtf_trace([0, 1, 2], [2])
print("after accessing 2:", states[-1], "cost", cost)

# MTF never pays more than 4x the optimum; look at the worst of a few hundred lists
worst = (0, None)
for _ in range(300):
    n = rng.randint(2, 4)
    tau = [rng.randrange(n) for _ in range(rng.randint(1, 6))]
    _, mtf = mtf_trace(list(range(n)), tau)
    opt = optimal_list_update(n, tau)
    if opt and mtf / opt > worst[0]:
        worst = (mtf / opt, (n, tau, mtf, opt))
print("worst MTF/OPT seen:", round(worst[0], 3), "on", worst[1])

# juxtapose MTF with an arbitrary algorithm on the pair (1, 3)
tau = [3, 1, 3, 2, 0]
mtf, _ = mtf_trace([0, 1, 2, 3], tau)
other = random_trace([0, 1, 2, 3], tau, rng)
bits = inversion_bits(mtf, other, 1, 3)
print("inversion bits b1a1..b5a5:", bits, "checked steps", bits.checked, "observation holds:", bits.observation_holds)
