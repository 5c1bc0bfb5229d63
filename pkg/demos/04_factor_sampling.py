"""Random r-factors via the 2x2 switch chain, and their decomposition
into perfect matchings.

The chain starts from the circulant factor and swaps checkerboards of
two present cells when the opposite corners are free; every state keeps
all row and column degrees at r.
"""

from nkline import derive_seed, matching_containment_probability, one_factorize, sample_r_factor

m, r = 40, 12

# single-cell marginal: should approach r/m
samples = 400
hits = sum(1 for i in range(samples) if (1, 1) in sample_r_factor(m, r, derive_seed(1, i)).cells)
print(f"cell (1,1) frequency over {samples} samples: {hits / samples:.3f} (r/m = {r / m})")

# containment of a fixed 2-matching: should stay near (r/m)^2
p = matching_containment_probability(20, 6, 2, trials=1000, seed=2)
print(f"2-matching containment at m=20 r=6: {p:.4f} ((r/m)^2 = {(6 / 20) ** 2})")

# decompose one sample into r disjoint permutations
f = sample_r_factor(10, 4, seed=5)
fac = one_factorize(f)
print(f"one 4-factor on 10+10 vertices splits into {len(fac.factors)} matchings:")
for t, perm in enumerate(fac.factors):
    print(f"  matching {t}: {perm}")
assert fac.all_cells() == set(f.cells)
