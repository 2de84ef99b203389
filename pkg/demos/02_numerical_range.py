"""Numerical range boundaries and the smallest disk around them.

For a 2x2 matrix W(T) is an ellipse with foci at the eigenvalues; for a normal
matrix it is the convex hull of the spectrum.  Pass ``--plot out.png`` to
draw both (needs matplotlib).
"""
# %%
import sys

import numpy as np

from specset import enclosing_disk, numerical_range_boundary

T = np.array([[1, 1], [0, 0]], dtype=complex)
bd = numerical_range_boundary(T, 720)
lam = np.linalg.eigvals(T)
focal = np.abs(bd.points - lam[0]) + np.abs(bd.points - lam[1])
print("focal sums (constant on an ellipse):", focal.min(), focal.max())
disk = enclosing_disk(bd, 1e-3)
print("enclosing disk:", disk)

# %% a random normal matrix: support function of W equals that of the eigenvalue hull
rng = np.random.default_rng(0)
Q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
mu = rng.standard_normal(5) + 1j * rng.standard_normal(5)
N = Q @ np.diag(mu) @ Q.conj().T
bn = numerical_range_boundary(N, 720)
hull = np.max(np.real(np.exp(1j * bn.theta)[:, None] * mu), axis=1)
print("max support gap vs hull:", np.abs(bn.support - hull).max())

# %%
if "--plot" in sys.argv:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for ax, b, ev in ((axes[0], bd, lam), (axes[1], bn, mu)):
        ax.plot(b.points.real, b.points.imag, "-")
        ax.plot(ev.real, ev.imag, "k.")
        ax.set_aspect("equal")
    t = np.linspace(0, 2 * np.pi, 200)
    c = disk.center + disk.radius * np.exp(1j * t)
    axes[0].plot(c.real, c.imag, "--")
    fig.savefig(sys.argv[sys.argv.index("--plot") + 1], dpi=120)
