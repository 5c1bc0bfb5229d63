"""How many lines of the full grid are rich in lattice points?

The closed-form census counts, per primitive direction (a, b), the
grid points that start a run of t collinear points:
N_t = max(0, n-(t-1)a) * max(0, n-(t-1)b); lines with >= j points number
N_j - N_{j+1}.  For j well below n the total tracks (6/pi^2) n^4 / j^3.
"""

from math import pi

from nkline import census, richness_bound

n = 200
print(f"rich secants of the {n} x {n} grid")
print(f"{'j':>4} {'count':>10} {'(6/pi^2)n^4/j^3':>16} {'ratio':>7}")
for j in (5, 10, 20, 40, 80):
    row = census(n, j)
    ref = (6 / pi**2) * n**4 / j**3
    print(f"{j:>4} {row.count:>10} {ref:>16.0f} {row.count / ref:>7.3f}")

# the bound profile used by the probabilistic analysis
print()
for kappa in (20, 50, 100):
    print(
        f"L*n^4/kappa^3 at kappa={kappa}: {richness_bound(n, kappa):.0f} "
        f"(actual > kappa count: {census(n, kappa + 1).count})"
    )
