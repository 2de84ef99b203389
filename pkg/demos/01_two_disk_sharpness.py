"""The two-disk example where ||f(T)|| reaches (1 + sqrt 2) ||f||.

T = [[1, 1], [0, 0]] has eigenvalues 0 and 1; the domain is two disks of
radius 1/4 around them.  Any f on this domain acts on T through f(0) and f(1)
only.
"""
# %%
import numpy as np

from specset import CalculusContext, PiecewiseHolo, func_of_matrix, sharpness_demo
from specset.lemma import SHARP_T, closed_form_fT_two_disk, two_disk_domain, two_disk_g, two_disk_h
from specset.linalg import operator_norm

dom = two_disk_domain()
ctx = CalculusContext(SHARP_T, dom)
print("calibration residuals:", ctx.res_identity, ctx.res_T)

# %% f(T) from the contour integral agrees with the 2x2 closed form
f = PiecewiseHolo.polynomials([[0.5, 1j, 2.0], [1.0, -1.0]])
print(np.round(func_of_matrix(ctx, f), 12))
print(closed_form_fT_two_disk(f))

# %% h = -1 near 0 and +1 near 1; g = -conj(f) evaluated at the eigenvalues
h = two_disk_h()
g = two_disk_g(h)
H, G = func_of_matrix(ctx, h), func_of_matrix(ctx, g)
print("h(T) =", np.round(H.real, 12).tolist())
print("||h(T) + g(T)^*|| =", operator_norm(H + G.conj().T))
print("||h(T)||          =", operator_norm(H), " vs 1 + sqrt 2 =", 1 + np.sqrt(2))

# %% the same numbers, packaged
print(sharpness_demo().to_dict())
