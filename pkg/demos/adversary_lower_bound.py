"""The adaptive adversary pushes GREAD's ratio up with n; a static line fares far worse."""

from fractions import Fraction

from linelab import Gread, NeverSwap, adversary_run, offline_line_baseline

for n in (32, 64, 128, 256):
    row = [n]
    for player in (Gread(n), NeverSwap(n)):
        res = adversary_run(n, Fraction(1, 2), player, seed=0)
        off = offline_line_baseline(n, res.sequence).total
        on = player.ledger.serving + player.ledger.migration
        row.append(round(on / off, 2))
    print("n={} gread ratio={} never-swap ratio={}".format(*row))

# a look inside one run: distortion right after each reveal and at the end of the phase
res = adversary_run(64, Fraction(1, 2), Gread(64), seed=0)
for p in res.phases:
    print(p)
