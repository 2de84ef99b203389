"""Heuristic lower bounds on the spectral-set constant K(T, domain).

``K = sup ||f(T)|| / ||f||`` over A(domain); here the sup is searched over
piecewise polynomials of fixed degree with seeded random restarts and
Nelder-Mead refinement.  Any candidate gives a valid lower bound.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from .calculus import CalculusContext, func_of_matrix
from .funcspace import Piece, PiecewiseHolo
from .geometry import DEFAULT_SUP_SAMPLES, Domain, boundary_samples, sup_norm
from .linalg import operator_norm
from .numrange import default_margin, enclosing_disk, numerical_range_boundary


@dataclass(frozen=True)
class FamilyConfig:
    degree_per_component: int = 4
    coefficient_box: float = 4.0

    def __post_init__(self):
        if self.degree_per_component < 0 or not self.coefficient_box > 0:
            raise ValueError("need degree >= 0 and a positive coefficient box")


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 32
    max_evals_per_restart: int = 2000
    seed: int = 0
    shrink_tolerance: float = 1e-9

    def __post_init__(self):
        if self.restarts <= 0 or self.max_evals_per_restart <= 0 or not self.shrink_tolerance > 0:
            raise ValueError("search settings must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class OptResult:
    k_lower: float
    best_f: PiecewiseHolo
    evals_used: int
    seed: int

    def to_dict(self) -> dict:
        return {"k_lower": self.k_lower, "best_f": self.best_f.to_json(),
                "seed": self.seed, "evals": self.evals_used}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class RatioObjective:
    """``||f(T)|| / ||f||`` as a function of stacked real coefficient vectors.

    ``f(T)`` is linear in the coefficients, so the contour sums against each
    monomial ``(z - c_k)^m`` are precomputed once.
    """

    def __init__(self, ctx: CalculusContext, degree: int,
                 samples_per_component: int = DEFAULT_SUP_SAMPLES):
        ctx.require_trusted()
        self.ctx = ctx
        self.degree = degree
        dom = ctx.domain
        q = ctx.quadrature
        powers = np.arange(degree + 1)
        basis, vander = [], []
        for k, comp in enumerate(dom.components):
            mask = q.component == k
            w = q.nodes[mask] - comp.center
            basis.append(np.tensordot(w[None, :] ** powers[:, None],
                                      ctx.weighted_resolvents[mask], axes=1))
        for k, pts in boundary_samples(dom, samples_per_component):
            vander.append((pts - dom.components[k].center)[:, None] ** powers[None, :])
        self.basis = np.concatenate(basis)
        self.vander = vander
        self.n_complex = len(dom) * (degree + 1)

    def coefficients(self, x: np.ndarray) -> np.ndarray:
        return x[: self.n_complex] + 1j * x[self.n_complex:]

    def __call__(self, x: np.ndarray) -> float:
        a = self.coefficients(np.asarray(x, dtype=float))
        d = self.degree + 1
        sup = max(float(np.abs(V @ a[k * d:(k + 1) * d]).max())
                  for k, V in enumerate(self.vander))
        if sup == 0.0:
            return 0.0
        return operator_norm(np.tensordot(a, self.basis, axes=1)) / sup

    def function(self, x: np.ndarray) -> PiecewiseHolo:
        a = self.coefficients(np.asarray(x, dtype=float))
        d = self.degree + 1
        pieces = []
        for k in range(len(self.ctx.domain)):
            c = a[k * d:(k + 1) * d]
            pieces.append(Piece.constant(k, c[0]) if d == 1 else Piece.polynomial(k, c))
        return PiecewiseHolo(tuple(pieces))

    def params_for(self, f: PiecewiseHolo) -> np.ndarray:
        """Coefficient vector of a lower-degree polynomial ``f`` in this family."""
        d = self.degree + 1
        a = np.zeros(self.n_complex, dtype=np.complex128)
        for k, p in enumerate(f.pieces):
            if p.kind == "rational" or len(p.coeffs) > d:
                raise ValueError("function is not in this family")
            a[k * d:k * d + len(p.coeffs)] = p.coeffs
        return np.concatenate([a.real, a.imag])


def estimate_constant(ctx: CalculusContext, family: FamilyConfig = FamilyConfig(),
                      search: SearchConfig = SearchConfig(),
                      warm_start: PiecewiseHolo | None = None) -> OptResult:
    """Seeded multistart Nelder-Mead maximisation of ``||f(T)|| / ||f||``.

    ``warm_start`` (e.g. the best function of a lower-degree run) replaces the
    random start of restart 0, which makes results monotone in the degree.
    Without one, a short piecewise-constant search supplies it, so degree-0
    extremals such as the constant 1 are never missed.
    """
    evals = 0
    if warm_start is None and family.degree_per_component > 0:
        pre = estimate_constant(ctx, replace(family, degree_per_component=0),
                                replace(search, restarts=min(search.restarts, 4)))
        warm_start, evals = pre.best_f, pre.evals_used
    obj = RatioObjective(ctx, family.degree_per_component)
    box = family.coefficient_box
    dim = 2 * obj.n_complex

    def neg(x):
        return -obj(np.clip(x, -box, box))

    streams = np.random.SeedSequence(search.seed).spawn(search.restarts)
    best_val, best_x = -1.0, None
    for r, ss in enumerate(streams):
        rng = np.random.Generator(np.random.Philox(ss))
        x0 = rng.uniform(-box, box, dim)
        if r == 0 and warm_start is not None:
            x0 = np.clip(obj.params_for(warm_start), -box, box)
        budget = search.max_evals_per_restart
        x, val = x0, -neg(x0)
        evals += 1
        budget -= 1
        # re-seed the simplex at the incumbent until a restart stops paying off
        while budget > dim + 1:
            res = minimize(neg, x, method="Nelder-Mead",
                           options={"maxfev": budget, "xatol": search.shrink_tolerance,
                                    "fatol": search.shrink_tolerance})
            budget -= res.nfev
            evals += res.nfev
            gain = -res.fun - val
            if -res.fun > val:
                x, val = np.clip(res.x, -box, box), -res.fun
            if gain <= search.shrink_tolerance:
                break
        if val > best_val:
            best_val, best_x = val, x
    best_f = obj.function(best_x)
    s = sup_norm(best_f, ctx.domain)
    k_lower = operator_norm(func_of_matrix(ctx, best_f)) / s if s > 0 else 0.0
    return OptResult(k_lower, best_f, evals, search.seed)


def random_matrix(n: int, seed: int) -> np.ndarray:
    """Standard complex Gaussian entries scaled by 1/sqrt(n), Philox stream ``seed``."""
    rng = np.random.Generator(np.random.Philox(seed))
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return Z / np.sqrt(2.0 * n)


def enclosing_disk_domain(T, margin: float | None = None, n_angles: int = 720) -> Domain:
    if margin is None:
        margin = default_margin(T)
    return Domain((enclosing_disk(numerical_range_boundary(T, n_angles), margin),))


SWEEP_SEARCH = SearchConfig(restarts=6, max_evals_per_restart=600)


def random_ensemble_sweep(n: int, trials: int, seed: int,
                          family: FamilyConfig = FamilyConfig(),
                          search: SearchConfig = SWEEP_SEARCH,
                          margin: float | None = None) -> dict:
    """Run :func:`estimate_constant` on ``trials`` random ``n x n`` matrices.

    Trial ``t`` uses the integer seed ``SeedSequence(seed).generate_state(trials)[t]``
    for both the matrix and the search, so any trial can be replayed alone.
    """
    if not 1 <= n <= 16 or not 1 <= trials <= 10_000:
        raise ValueError("need 1 <= n <= 16 and 1 <= trials <= 10000")
    trial_seeds = [int(s) for s in np.random.SeedSequence(seed).generate_state(trials)]
    ratios = []
    for s in trial_seeds:
        T = random_matrix(n, s)
        m = default_margin(T) if margin is None else margin
        for _ in range(4):
            ctx = CalculusContext(T, enclosing_disk_domain(T, m))
            if ctx.trusted:
                break
            # an eigenvalue hugs the boundary of W(T): back the contour off
            m *= 10
        ctx.require_trusted()
        ratios.append(estimate_constant(ctx, family, replace(search, seed=s)).k_lower)
    ratios = np.array(ratios)
    i = int(np.argmax(ratios))
    return {"n": n, "trials": trials, "seed": seed, "max": float(ratios[i]),
            "mean": float(ratios.mean()), "argmax_trial": i, "argmax_seed": trial_seeds[i],
            "ratios": [float(r) for r in ratios]}
