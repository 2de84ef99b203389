"""Searching for functions with large ||f(T)|| / ||f||.

On the two-disk domain the piecewise-constant search recovers 1 + sqrt 2.  On
disks around W(T) the ratios of random matrices stay below 2.
"""
# %%
from specset import CalculusContext, FamilyConfig, SearchConfig, estimate_constant
from specset.lemma import SHARP_T, two_disk_domain
from specset.optimize import random_ensemble_sweep

ctx = CalculusContext(SHARP_T, two_disk_domain())
res = estimate_constant(ctx, FamilyConfig(0), SearchConfig(restarts=8, seed=7))
print("two-disk lower bound:", res.k_lower)
print(res.to_json())

# %%
for n in (2, 3):
    s = random_ensemble_sweep(n, 10, seed=5, family=FamilyConfig(2))
    print(f"n={n}: max {s['max']:.4f} (trial seed {s['argmax_seed']}), mean {s['mean']:.4f}")
