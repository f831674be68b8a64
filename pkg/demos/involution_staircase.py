"""Random pairings capture a Theta(1/k) share of x * y."""

import random
from fractions import Fraction

from linelab.analysis import (
    InvolutionInstance,
    average_involution_weight,
    ratio_R,
    staircase_constant,
    telephone,
)

print("telephone numbers:", [telephone(k) for k in range(10)])

rng = random.Random(2)
for k in range(2, 9):
    inst = InvolutionInstance.of([rng.randint(0, 9) for _ in range(k)], [rng.randint(0, 9) for _ in range(k)])
    avg = average_involution_weight(inst)
    share = avg / (inst.x_sum * inst.y_sum) if inst.x_sum * inst.y_sum else Fraction(0)
    print(f"k={k} average={float(avg):8.3f} share={float(share):.4f} guaranteed={float(staircase_constant(k)):.4f}")

for n in (10, 100, 10**4, 10**6):
    print(f"R({n}) = {ratio_R(n):.4f}, sqrt(n) = {n ** 0.5:.4f}")
