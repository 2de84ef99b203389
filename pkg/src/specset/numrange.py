"""Numerical range (field of values) by the rotating Hermitian-part sweep."""
from __future__ import annotations

import io
import random
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .geometry import Disk, Domain
from .linalg import as_cmatrix, hermitian_extreme_eig, operator_norm


@dataclass(frozen=True)
class NRBoundary:
    """Support values and supporting points of W(T) on a uniform angle grid.

    ``support[k] = max_{w in W(T)} Re(exp(i theta[k]) w)`` and ``points[k]`` attains it.
    """

    theta: np.ndarray
    support: np.ndarray
    points: np.ndarray

    def __len__(self):
        return len(self.theta)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("theta,support,re,im\n")
        for t, s, p in zip(self.theta, self.support, self.points):
            buf.write(f"{float(t)!r},{float(s)!r},{float(p.real)!r},{float(p.imag)!r}\n")
        return buf.getvalue()


def support_point(T, theta: float) -> tuple[float, complex]:
    T = as_cmatrix(T, "T")
    if T.shape[0] != T.shape[1]:
        raise DimensionError("T must be square")
    R = np.exp(1j * theta) * T
    lam, x = hermitian_extreme_eig(0.5 * (R + R.conj().T))
    return lam, complex(np.vdot(x, T @ x))


def numerical_range_boundary(T, n_angles: int = 720) -> NRBoundary:
    if n_angles < 8:
        raise ValueError("need at least 8 angles")
    T = as_cmatrix(T, "T")
    if T.shape[0] != T.shape[1]:
        raise DimensionError("T must be square")
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    # batched form of support_point over all angles
    R = np.exp(1j * theta)[:, None, None] * T[None]
    H = 0.5 * (R + np.conj(np.swapaxes(R, 1, 2)))
    w, V = np.linalg.eigh(H)
    x = V[:, :, -1]
    points = np.einsum("ki,ij,kj->k", x.conj(), T, x)
    return NRBoundary(theta, w[:, -1].copy(), points)


def _circle2(a, b):
    c = 0.5 * (a + b)
    return c, abs(a - c)


def _circle3(a, b, c):
    # circumcircle; collinear triples fall back to the widest pair
    d = 2 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
    if abs(d) < 1e-300:
        pairs = [(a, b), (a, c), (b, c)]
        return max((_circle2(p, q) for p, q in pairs), key=lambda t: t[1])
    aa, bb, cc = abs(a) ** 2, abs(b) ** 2, abs(c) ** 2
    ux = (aa * (b.imag - c.imag) + bb * (c.imag - a.imag) + cc * (a.imag - b.imag)) / d
    uy = (aa * (c.real - b.real) + bb * (a.real - c.real) + cc * (b.real - a.real)) / d
    center = complex(ux, uy)
    return center, max(abs(a - center), abs(b - center), abs(c - center))


def minimal_enclosing_circle(points, seed: int = 0) -> tuple[complex, float]:
    """Smallest circle containing ``points`` (randomised incremental Welzl)."""
    pts = [complex(p) for p in np.unique(np.round(np.asarray(points, dtype=complex), 15))]
    random.Random(seed).shuffle(pts)

    def inside(c, r, p):
        return abs(p - c) <= r * (1 + 1e-12) + 1e-15

    c, r = pts[0], 0.0
    for i, p in enumerate(pts):
        if inside(c, r, p):
            continue
        c, r = p, 0.0
        for j in range(i):
            q = pts[j]
            if inside(c, r, q):
                continue
            c, r = _circle2(p, q)
            for k in range(j):
                s = pts[k]
                if not inside(c, r, s):
                    c, r = _circle3(p, q, s)
    return c, r


def enclosing_disk(boundary: NRBoundary, margin: float) -> Disk:
    """Minimal disk around the stored boundary points, radius grown by ``margin``.

    The radius is re-measured from the final center so every point keeps a
    clearance of at least ``margin``.  A zero total radius (single point, no
    margin) is bumped to the smallest positive float.
    """
    if len(boundary) == 0:
        raise ValueError("empty boundary")
    c, _ = minimal_enclosing_circle(boundary.points)
    r = float(np.abs(boundary.points - c).max()) + margin
    return Disk(c, max(r, 5e-324))


def default_margin(T) -> float:
    return 1e-3 * (1.0 + operator_norm(T))


def convex_domain_contains_W(domain: Domain, boundary: NRBoundary, margin: float = 0.0) -> bool:
    """Whether every sampled boundary point of W(T) sits inside the single component."""
    if len(domain) != 1:
        raise ValueError("containment of the convex set W(T) needs a one-component domain")
    comp = domain.components[0]
    return all(comp.boundary_distance(p) >= max(margin, 0.0) and comp.boundary_distance(p) > 0
               for p in boundary.points)


def hausdorff_support(h1: np.ndarray, h2: np.ndarray) -> float:
    """Hausdorff distance of two convex sets from support values on a shared grid."""
    return float(np.max(np.abs(np.asarray(h1) - np.asarray(h2))))


__all__ = [
    "NRBoundary", "support_point", "numerical_range_boundary", "enclosing_disk",
    "minimal_enclosing_circle", "convex_domain_contains_W", "default_margin",
    "hausdorff_support",
]
