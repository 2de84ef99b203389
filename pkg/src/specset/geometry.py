"""Domains built from disks and ellipses, and their boundary quadrature."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import OverlapError

GAP_TOL = 1e-9
DEFAULT_SUP_SAMPLES = 2048
_GRID = 1440


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"disk radius must be positive, got {self.radius}")
        if not np.isfinite(self.center):
            raise ValueError("disk center must be finite")

    @property
    def reach(self) -> float:
        """Largest distance from the center to the boundary."""
        return self.radius

    @property
    def area(self) -> float:
        return math.pi * self.radius**2

    def point(self, t):
        return self.center + self.radius * np.exp(1j * np.asarray(t))

    def tangent(self, t):
        return 1j * self.radius * np.exp(1j * np.asarray(t))

    def support(self, u):
        """max over the closed disk of Re(conj(u) p), for unit complex ``u``."""
        u = np.asarray(u)
        return np.real(np.conj(u) * self.center) + self.radius * np.abs(u)

    def boundary_distance(self, z: complex) -> float:
        """Signed distance to the boundary, positive inside."""
        return self.radius - abs(complex(z) - self.center)

    def inflated(self, eps: float) -> "Disk":
        return Disk(self.center, self.radius + eps)

    def to_json(self) -> dict:
        return {"type": "disk", "center": [self.center.real, self.center.imag],
                "radius": self.radius}


@dataclass(frozen=True)
class Ellipse:
    center: complex
    semi_major: float
    semi_minor: float
    rotation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "semi_major", float(self.semi_major))
        object.__setattr__(self, "semi_minor", float(self.semi_minor))
        object.__setattr__(self, "rotation", float(self.rotation))
        if not (self.semi_major >= self.semi_minor > 0):
            raise ValueError("ellipse needs semi_major >= semi_minor > 0")
        if not (np.isfinite(self.center) and math.isfinite(self.semi_major)
                and math.isfinite(self.rotation)):
            raise ValueError("ellipse parameters must be finite")

    @property
    def reach(self) -> float:
        return self.semi_major

    @property
    def area(self) -> float:
        return math.pi * self.semi_major * self.semi_minor

    @property
    def _rot(self) -> complex:
        return complex(np.exp(1j * self.rotation))

    def point(self, t):
        t = np.asarray(t)
        return self.center + self._rot * (self.semi_major * np.cos(t)
                                          + 1j * self.semi_minor * np.sin(t))

    def tangent(self, t):
        t = np.asarray(t)
        return self._rot * (-self.semi_major * np.sin(t) + 1j * self.semi_minor * np.cos(t))

    def support(self, u):
        u = np.asarray(u)
        v = np.conj(u) * self._rot
        return (np.real(np.conj(u) * self.center)
                + np.hypot(v.real * self.semi_major, v.imag * self.semi_minor))

    def boundary_distance(self, z: complex) -> float:
        a, b = self.semi_major, self.semi_minor
        w = (complex(z) - self.center) / self._rot
        inside = (w.real / a) ** 2 + (w.imag / b) ** 2 < 1.0

        def dist(t):
            return abs(w - (a * math.cos(t) + 1j * b * math.sin(t)))

        ts = np.linspace(0.0, 2 * math.pi, _GRID, endpoint=False)
        d = np.abs(w - (a * np.cos(ts) + 1j * b * np.sin(ts)))
        k = int(np.argmin(d))
        h = 2 * math.pi / _GRID
        res = minimize_scalar(dist, bounds=(ts[k] - h, ts[k] + h), method="bounded",
                              options={"xatol": 1e-13})
        best = min(float(res.fun), float(d[k]))
        return best if inside else -best

    def inflated(self, eps: float) -> "Ellipse":
        factor = 1.0 + eps / self.semi_minor
        return Ellipse(self.center, self.semi_major * factor, self.semi_minor * factor,
                       self.rotation)

    def to_json(self) -> dict:
        return {"type": "ellipse", "center": [self.center.real, self.center.imag],
                "semi_major": self.semi_major, "semi_minor": self.semi_minor,
                "rotation": self.rotation}


Shape = Union[Disk, Ellipse]


def _max_over_directions(fun) -> float:
    """Maximise ``fun(angle)`` over the circle: dense grid, then local refinement."""
    ts = np.linspace(0.0, 2 * math.pi, _GRID, endpoint=False)
    vals = fun(ts)
    k = int(np.argmax(vals))
    h = 2 * math.pi / _GRID
    res = minimize_scalar(lambda t: -float(fun(np.array([t]))[0]), bounds=(ts[k] - h, ts[k] + h),
                          method="bounded", options={"xatol": 1e-13})
    return max(float(vals[k]), -float(res.fun))


def separation(A: Shape, B: Shape) -> float:
    """Distance between two closed convex components (negative if they overlap)."""
    if isinstance(A, Disk) and isinstance(B, Disk):
        return abs(A.center - B.center) - A.radius - B.radius
    return _max_over_directions(
        lambda t: -A.support(np.exp(1j * t)) - B.support(-np.exp(1j * t)))


def _pair_diameter(A: Shape, B: Shape) -> float:
    if isinstance(A, Disk) and isinstance(B, Disk):
        return abs(A.center - B.center) + A.radius + B.radius
    if A is B and isinstance(A, Ellipse):
        return 2.0 * A.semi_major
    return _max_over_directions(
        lambda t: A.support(np.exp(1j * t)) + B.support(-np.exp(1j * t)))


@dataclass(frozen=True)
class Domain:
    """Finite union of disks/ellipses with pairwise disjoint closures."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a domain needs at least one component")
        for c in comps:
            if not isinstance(c, (Disk, Ellipse)):
                raise TypeError(f"unsupported component {c!r}")
        object.__setattr__(self, "components", comps)
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                gap = separation(comps[i], comps[j])
                if gap < GAP_TOL:
                    raise OverlapError(
                        f"components {i} and {j} are not separated (gap {gap:.3g})")

    def __len__(self):
        return len(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def component_of(self, z: complex, tol: float = 0.0):
        """Index of the component whose closure (grown by ``tol``) holds ``z``, else None."""
        for k, c in enumerate(self.components):
            if c.boundary_distance(z) >= -tol:
                return k
        return None

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self.components]}


def domain_from_json(obj: dict) -> Domain:
    comps = []
    for item in obj["components"]:
        kind = item["type"]
        center = complex(*item["center"])
        if kind == "disk":
            comps.append(Disk(center, item["radius"]))
        elif kind == "ellipse":
            comps.append(Ellipse(center, item["semi_major"], item["semi_minor"],
                                 item.get("rotation", 0.0)))
        else:
            raise ValueError(f"unknown component type {kind!r}")
    return Domain(tuple(comps))


@dataclass(frozen=True)
class BoundaryQuadrature:
    """Trapezoid nodes on each component boundary: ``sum w_j phi(z_j) ~ oint phi dz``."""

    nodes: np.ndarray
    weights: np.ndarray
    component: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def select(self, k: int):
        mask = self.component == k
        return self.nodes[mask], self.weights[mask]

    def spacing(self, k: int) -> float:
        return float(np.abs(self.select(k)[1]).max())


def boundary_quadrature(domain: Domain, nodes_per_component: int = 256) -> BoundaryQuadrature:
    N = int(nodes_per_component)
    if N < 16:
        raise ValueError("need at least 16 nodes per component")
    t = 2 * np.pi * np.arange(N) / N
    dt = 2 * np.pi / N
    nodes, weights, comp = [], [], []
    for k, c in enumerate(domain.components):
        nodes.append(c.point(t))
        weights.append(c.tangent(t) * dt)
        comp.append(np.full(N, k))
    return BoundaryQuadrature(np.concatenate(nodes), np.concatenate(weights),
                              np.concatenate(comp))


def contains(domain: Domain, z: complex, margin: float = 0.0) -> bool:
    """True iff ``z`` lies in an open component at distance >= ``margin`` from its boundary."""
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    for c in domain.components:
        d = c.boundary_distance(z)
        if d > 0 and d >= margin:
            return True
    return False


def diameter(domain: Domain) -> float:
    comps = domain.components
    return max(_pair_diameter(comps[i], comps[j])
               for i in range(len(comps)) for j in range(i, len(comps)))


def area(domain: Domain) -> float:
    return float(sum(c.area for c in domain.components))


def inflate(domain: Domain, epsilon: float) -> Domain:
    """Enlarge every component so the result contains the epsilon-neighbourhood.

    Raises :class:`OverlapError` if inflated components are no longer separated.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return Domain(tuple(c.inflated(epsilon) for c in domain.components))


def boundary_samples(domain: Domain, per_component: int = DEFAULT_SUP_SAMPLES):
    """Yield ``(k, points)`` with equispaced boundary samples of each component."""
    t = 2 * np.pi * np.arange(per_component) / per_component
    for k, c in enumerate(domain.components):
        yield k, c.point(t)


def sup_norm(f, domain: Domain, samples_per_component: int = DEFAULT_SUP_SAMPLES) -> float:
    """Max of |f| over the closure of the domain, sampled on the boundary.

    By the maximum-modulus principle the boundary suffices.
    """
    from .funcspace import require_valid

    require_valid(f, domain)
    best = 0.0
    for k, pts in boundary_samples(domain, samples_per_component):
        vals = f.pieces[k](pts, domain.components[k].center)
        best = max(best, float(np.abs(vals).max()))
    return best
