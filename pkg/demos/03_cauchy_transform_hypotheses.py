"""Both hypotheses of the lemma on a disk around W(T), with g = C(conj f).

On a disk, the Cauchy transform of conj(f) for a polynomial f is just the
conjugated value at the center, so g is constant and ||g|| <= ||f|| is clear.
The operator-valued measure has positive real part at every node.
"""
# %%
import numpy as np

from specset import CalculusContext, PiecewiseHolo, realpart_measure_check, verify_conditions
from specset.lemma import cauchy_alpha
from specset.optimize import enclosing_disk_domain, random_matrix

T = random_matrix(4, seed=2024)
dom = enclosing_disk_domain(T, margin=0.1)
ctx = CalculusContext(T, dom)
print("domain:", dom.components[0], " nodes/component:", ctx.nodes_per_component)
print("min eigenvalue of M_j + M_j^*:", realpart_measure_check(ctx))

# %%
alpha = cauchy_alpha(dom)
rng = np.random.default_rng(1)
for _ in range(5):
    f = PiecewiseHolo.polynomials([rng.standard_normal(5) + 1j * rng.standard_normal(5)])
    rep = verify_conditions(ctx, f, alpha(f))
    print(f"ratio {rep.ratio:.4f}  ||f(T)+g(T)^*||/||f|| {rep.norm_fT_plus_gTstar / rep.sup_f:.4f}"
          f"  conditions {rep.cond1_ok and rep.cond2_ok}  identity residual "
          f"{rep.proof_identity_residual:.1e}")
