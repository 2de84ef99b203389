"""Contour-integral functional calculus and the Cauchy transform.

``f(T) = (1/2 pi i) oint f(zeta) (zeta I - T)^{-1} dzeta`` is discretised with
the boundary trapezoid rule.  A context caches the weighted resolvents
``w_j / (2 pi i) * (zeta_j I - T)^{-1}`` so every function reuses them.
"""
from __future__ import annotations

import warnings

import numpy as np

from .errors import (ContainmentWarning, DimensionError, NodeOnSpectrumError,
                     SingularMatrixError, TooCloseToBoundaryError, UncalibratedError)
from .funcspace import Piece, PiecewiseHolo, require_valid
from .geometry import BoundaryQuadrature, Domain, boundary_quadrature
from .linalg import as_cmatrix, lu_solve_batched, operator_norm
from .numrange import convex_domain_contains_W, numerical_range_boundary

TRUST_TOL = 1e-8
DEFAULT_NODES = 256
MAX_RESOLVENT_ENTRIES = 2**25


class CalculusContext:
    """Quadrature nodes plus cached resolvents for one ``(T, domain)`` pair.

    With ``adaptive=True`` the node count per component is doubled, starting at
    ``nodes_per_component``, until both calibration residuals drop below
    ``1e-13 * (1 + ||T||)`` or stop improving.  The context is trusted when
    both residuals are at most :data:`TRUST_TOL`.
    """

    def __init__(self, T, domain: Domain, nodes_per_component: int = DEFAULT_NODES, *,
                 adaptive: bool = True, max_nodes_per_component: int = 1 << 15):
        self.T = as_cmatrix(T, "T")
        if self.T.shape[0] != self.T.shape[1]:
            raise DimensionError("T must be square")
        self.domain = domain
        n = self.T.shape[0]
        cap = max(nodes_per_component,
                  min(max_nodes_per_component, MAX_RESOLVENT_ENTRIES // (n * n * len(domain))))
        target = 1e-13 * (1.0 + operator_norm(self.T))

        N = int(nodes_per_component)
        prev = np.inf
        while True:
            self._build(N)
            worst = max(self.res_identity, self.res_T)
            if not adaptive or worst <= target or 2 * N > cap or worst > 0.5 * prev:
                break
            prev = worst
            N *= 2
        self.nodes_per_component = N

    def _build(self, N: int) -> None:
        quad = boundary_quadrature(self.domain, N)
        n = self.T.shape[0]
        eye = np.eye(n, dtype=np.complex128)
        shifted = quad.nodes[:, None, None] * eye - self.T[None]
        try:
            R = lu_solve_batched(shifted, np.broadcast_to(eye, shifted.shape))
        except SingularMatrixError as exc:
            z = quad.nodes[exc.index]
            raise NodeOnSpectrumError(f"quadrature node {z:.6g} hits the spectrum of T") from exc
        self.quadrature: BoundaryQuadrature = quad
        self.resolvents = R
        self._weighted = (quad.weights / (2j * np.pi))[:, None, None] * R
        self.res_identity = operator_norm(self._apply(np.ones(len(quad))) - eye)
        self.res_T = operator_norm(self._apply(quad.nodes) - self.T)

    @property
    def trusted(self) -> bool:
        return self.res_identity <= TRUST_TOL and self.res_T <= TRUST_TOL

    def _apply(self, values: np.ndarray) -> np.ndarray:
        return np.tensordot(values, self._weighted, axes=1)

    def require_trusted(self) -> None:
        if not self.trusted:
            raise UncalibratedError(
                f"calibration residuals {self.res_identity:.3e}, {self.res_T:.3e} exceed "
                f"{TRUST_TOL:g}; the domain may miss part of the spectrum")

    def node_values(self, f: PiecewiseHolo) -> np.ndarray:
        """``f(zeta_j)`` at every quadrature node."""
        return _node_values(f, self.domain, self.quadrature)

    @property
    def weighted_resolvents(self) -> np.ndarray:
        """``M_j = w_j / (2 pi i) (zeta_j I - T)^{-1}``, shape ``(nodes, n, n)``."""
        return self._weighted


def calibrate(ctx: CalculusContext) -> tuple[float, float]:
    """``(||quad(1) - I||, ||quad(z) - T||)`` for the context's quadrature."""
    return ctx.res_identity, ctx.res_T


def func_of_matrix(ctx: CalculusContext, f: PiecewiseHolo) -> np.ndarray:
    ctx.require_trusted()
    require_valid(f, ctx.domain)
    return ctx._apply(ctx.node_values(f))


def cauchy_transform_of_matrix(ctx: CalculusContext, f: PiecewiseHolo) -> np.ndarray:
    """(C conj f)(T), with the resolvent substituted for the Cauchy kernel."""
    ctx.require_trusted()
    require_valid(f, ctx.domain)
    return ctx._apply(np.conj(ctx.node_values(f)))


def _node_values(f: PiecewiseHolo, domain: Domain, quad: BoundaryQuadrature) -> np.ndarray:
    out = np.empty(len(quad), dtype=np.complex128)
    for k, piece in enumerate(f.pieces):
        mask = quad.component == k
        out[mask] = piece(quad.nodes[mask], domain.components[k].center)
    return out


def cauchy_transform_eval(f: PiecewiseHolo, domain: Domain, quadrature: BoundaryQuadrature,
                          z: complex) -> complex:
    """``(1/2 pi i) oint conj(f(zeta)) / (zeta - z) dzeta`` at an interior point."""
    require_valid(f, domain)
    z = complex(z)
    inside = False
    for k, comp in enumerate(domain.components):
        d = comp.boundary_distance(z)
        if abs(d) < 10 * quadrature.spacing(k):
            raise TooCloseToBoundaryError(
                f"{z} is within 10 node spacings of component {k}'s boundary")
        inside = inside or d > 0
    if not inside:
        raise TooCloseToBoundaryError(f"{z} is not interior to the domain")
    vals = np.conj(_node_values(f, domain, quadrature))
    return complex(np.sum(quadrature.weights * vals / (quadrature.nodes - z)) / (2j * np.pi))


def cauchy_transform_taylor(f: PiecewiseHolo, domain: Domain, quadrature: BoundaryQuadrature,
                            degree: int = 8) -> PiecewiseHolo:
    """Polynomial approximation of C(conj f) on each component.

    Coefficient ``m`` on the component centered at ``c`` is the Taylor
    coefficient ``(1/2 pi i) oint conj(f(zeta)) (zeta - c)^{-m-1} dzeta``.  For a
    disk and polynomial ``f`` the result is exact (a constant).
    """
    require_valid(f, domain)
    vals = np.conj(_node_values(f, domain, quadrature))
    pieces = []
    for k, comp in enumerate(domain.components):
        u = 1.0 / (quadrature.nodes - comp.center)
        powers = u[None, :] ** np.arange(1, degree + 2)[:, None]
        coeffs = (powers * (quadrature.weights * vals)[None, :]).sum(axis=1) / (2j * np.pi)
        # drop rounding-level tails so constants come back as constants
        scaled = np.abs(coeffs) * comp.reach ** np.arange(degree + 1)
        coeffs = np.where(scaled <= 1e-14 * max(1.0, scaled.max()), 0.0, coeffs)
        coeffs = np.trim_zeros(coeffs, "b")
        if len(coeffs) <= 1:
            pieces.append(Piece.constant(k, coeffs[0] if len(coeffs) else 0.0))
        else:
            pieces.append(Piece.polynomial(k, coeffs))
    return PiecewiseHolo(tuple(pieces))


def realpart_measure_check(ctx: CalculusContext) -> float:
    """Smallest eigenvalue of ``M_j + M_j^*`` over the quadrature nodes.

    Nonnegative (up to rounding) when the single convex component contains the
    closed numerical range.  A :class:`ContainmentWarning` is issued when that
    precondition fails.
    """
    ctx.require_trusted()
    ok = len(ctx.domain) == 1 and convex_domain_contains_W(
        ctx.domain, numerical_range_boundary(ctx.T, 720), 0.0)
    if not ok:
        warnings.warn("domain does not contain the numerical range; positivity is not "
                      "expected", ContainmentWarning, stacklevel=2)
    M = ctx.weighted_resolvents
    H = M + np.conj(np.swapaxes(M, 1, 2))
    return float(np.linalg.eigvalsh(H)[:, 0].min())
