"""Checks of the (1+sqrt 2) lemma: hypotheses, conclusion, proof identity and
the two-disk example showing the constant cannot be improved.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .calculus import CalculusContext, cauchy_transform_taylor, func_of_matrix
from .errors import ContainmentError, MalformedSampleError, WrongDomainError
from .funcspace import PiecewiseHolo, evaluate, multiply, require_valid
from .geometry import (Disk, Domain, area, boundary_quadrature, boundary_samples, diameter,
                       sup_norm)
from .linalg import as_cmatrix, operator_norm
from .numrange import convex_domain_contains_W, enclosing_disk, numerical_range_boundary

CROUZEIX_PALENCIA = 1.0 + math.sqrt(2.0)
CROUZEIX_2007 = 11.08
OKUBO_ANDO = 2.0
CONJECTURE = 2.0
GATE_RTOL = 1e-7

SHARP_T = np.array([[1, 1], [0, 0]], dtype=np.complex128)


def two_disk_domain() -> Domain:
    """Two disjoint disks of radius 1/4 centered at 0 and 1."""
    return Domain((Disk(0, 0.25), Disk(1, 0.25)))


def two_disk_h() -> PiecewiseHolo:
    """-1 on the disk around 0, +1 on the disk around 1."""
    return PiecewiseHolo.constants([-1.0, 1.0])


@dataclass
class LemmaReport:
    sup_f: float
    sup_g: float
    norm_fT: float
    norm_fT_plus_gTstar: float
    cond1_ok: bool
    cond2_ok: bool
    ratio: float
    k_bound: float
    proof_identity_residual: float
    tolerance: float = 0.0

    @property
    def conclusion_ok(self) -> bool:
        """``ratio <= k_bound`` (within tolerance) whenever both hypotheses hold."""
        if not (self.cond1_ok and self.cond2_ok):
            return True
        return self.ratio <= self.k_bound + self.tolerance

    def to_dict(self) -> dict:
        d = asdict(self)
        d["conclusion_ok"] = self.conclusion_ok
        return d


@dataclass(frozen=True)
class ConstantLedger:
    delyon: float
    crouzeix_palencia: float = CROUZEIX_PALENCIA
    crouzeix_2007: float = CROUZEIX_2007
    okubo_ando_disk: float = OKUBO_ANDO
    conjecture: float = CONJECTURE

    def to_dict(self) -> dict:
        return asdict(self)


def k_bound(a: float, b: float) -> float:
    """Largest K with ``K**2 <= a*K + b``."""
    if a < 0 or b < 0 or a + b <= 0:
        raise ValueError("k_bound needs a, b >= 0 with a + b > 0")
    return (a + math.sqrt(a * a + 4.0 * b)) / 2.0


def delyon_bound(domain: Domain) -> float:
    return (2 * math.pi * diameter(domain) ** 2 / area(domain)) ** 3 + 3


def constant_ledger(domain: Domain) -> ConstantLedger:
    return ConstantLedger(delyon=delyon_bound(domain))


def proof_identity_residual(ctx: CalculusContext, f: PiecewiseHolo, g: PiecewiseHolo) -> float:
    """Norm of ``F F* F F* - [F (F + G*)* F F* - (fgf)(T) F*]``."""
    F = func_of_matrix(ctx, f)
    G = func_of_matrix(ctx, g)
    FgF = func_of_matrix(ctx, multiply(multiply(f, g), f))
    Fs = F.conj().T
    lhs = F @ Fs @ F @ Fs
    rhs = F @ (F + G.conj().T).conj().T @ F @ Fs - FgF @ Fs
    return operator_norm(lhs - rhs)


def verify_conditions(ctx: CalculusContext, f: PiecewiseHolo, g: PiecewiseHolo,
                      samples: int = 2048, identity_residual: bool = True) -> LemmaReport:
    """Measure both hypotheses of the lemma for one ``(f, g)`` pair."""
    F = func_of_matrix(ctx, f)
    G = func_of_matrix(ctx, g)
    sup_f = sup_norm(f, ctx.domain, samples)
    sup_g = sup_norm(g, ctx.domain, samples)
    norm_fT = operator_norm(F)
    norm_sum = operator_norm(F + G.conj().T)
    tol = GATE_RTOL * (1.0 + sup_f)
    resid = proof_identity_residual(ctx, f, g) if identity_residual else float("nan")
    return LemmaReport(
        sup_f=sup_f,
        sup_g=sup_g,
        norm_fT=norm_fT,
        norm_fT_plus_gTstar=norm_sum,
        cond1_ok=bool(sup_g <= sup_f + tol),
        cond2_ok=bool(norm_sum <= 2 * sup_f + tol),
        ratio=norm_fT / sup_f if sup_f > 0 else 0.0,
        k_bound=k_bound(2.0, 1.0),
        proof_identity_residual=resid,
        tolerance=GATE_RTOL * (1.0 + CROUZEIX_PALENCIA),
    )


def _two_disk_values(f: PiecewiseHolo) -> tuple[complex, complex]:
    dom = two_disk_domain()
    if len(f.pieces) != 2:
        raise WrongDomainError("expected a function on the two-disk domain")
    require_valid(f, dom)
    return evaluate(f, dom, 0.0), evaluate(f, dom, 1.0)


def two_disk_g(f: PiecewiseHolo) -> PiecewiseHolo:
    """Piecewise constant ``-conj f(0)`` near 0 and ``-conj f(1)`` near 1."""
    f0, f1 = _two_disk_values(f)
    return PiecewiseHolo.constants([-np.conj(f0), -np.conj(f1)])


def closed_form_fT_two_disk(f: PiecewiseHolo) -> np.ndarray:
    """f(T) for T = [[1, 1], [0, 0]] from the values f(0), f(1)."""
    f0, f1 = _two_disk_values(f)
    return np.array([[f1, f1 - f0], [0, f0]], dtype=np.complex128)


def sharpness_demo(nodes_per_component: int = 256) -> LemmaReport:
    """Rebuild the two-disk example where the lemma's constant is attained."""
    dom = two_disk_domain()
    ctx = CalculusContext(SHARP_T, dom, nodes_per_component)
    h = two_disk_h()
    report = verify_conditions(ctx, h, two_disk_g(h))

    # the g-family: ||f(T) + g(T)^*|| collapses to |f(1) - f(0)|
    family = [h, PiecewiseHolo.polynomials([[0, 1], [1, 1]]),
              PiecewiseHolo.constants([2 - 1j, 0.5j]), PiecewiseHolo.constant_on(dom, 1.0)]
    for f in family:
        F = func_of_matrix(ctx, f)
        G = func_of_matrix(ctx, two_disk_g(f))
        f0, f1 = _two_disk_values(f)
        if abs(operator_norm(F + G.conj().T) - abs(f1 - f0)) > 1e-9 * (1 + abs(f1 - f0)):
            raise RuntimeError("g-family identity failed; quadrature is not resolving f(T)")
        if operator_norm(F - closed_form_fT_two_disk(f)) > 1e-9 * (1 + operator_norm(F)):
            raise RuntimeError("contour f(T) disagrees with the closed form")
    return report


class SpectralCheck(NamedTuple):
    ratio: float
    bound: float

    @property
    def ok(self) -> bool:
        return self.ratio <= self.bound + 1e-6


def _enclosing_domain(T, margin: float) -> Domain:
    return Domain((enclosing_disk(numerical_range_boundary(T, 720), margin),))


def _spectral_ratio(T, f, margin, domain, nodes, bound, disks_only) -> SpectralCheck:
    T = as_cmatrix(T, "T")
    if domain is None:
        domain = _enclosing_domain(T, margin)
    if len(domain) != 1:
        raise ContainmentError("a convex one-component domain is required")
    if disks_only and not isinstance(domain.components[0], Disk):
        raise ContainmentError("the disk bound needs a disk domain")
    if not convex_domain_contains_W(domain, numerical_range_boundary(T, 720), 0.0):
        raise ContainmentError("domain does not contain the numerical range")
    ctx = CalculusContext(T, domain, nodes)
    s = sup_norm(f, domain)
    r = operator_norm(func_of_matrix(ctx, f)) / s if s > 0 else 0.0
    return SpectralCheck(r, bound)


def crouzeix_palencia_check(T, f: PiecewiseHolo, margin: float, domain: Domain | None = None,
                            nodes_per_component: int = 256) -> SpectralCheck:
    """``||f(T)|| / ||f||`` on a convex domain around W(T), against 1 + sqrt 2.

    Without ``domain`` the minimal enclosing disk of W(T) grown by ``margin`` is
    used; ``f``'s coefficients are then read relative to that disk's center.
    """
    return _spectral_ratio(T, f, margin, domain, nodes_per_component, CROUZEIX_PALENCIA, False)


def okubo_ando_check(T, f: PiecewiseHolo, margin: float, domain: Domain | None = None,
                     nodes_per_component: int = 256) -> SpectralCheck:
    """As :func:`crouzeix_palencia_check` on a disk, against the bound 2."""
    return _spectral_ratio(T, f, margin, domain, nodes_per_component, OKUBO_ANDO, True)


@dataclass
class AuditReport:
    unital: bool
    antilinear: bool
    contractive: bool
    details: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def _boundary_values(f: PiecewiseHolo, domain: Domain, per_component: int) -> np.ndarray:
    return np.concatenate([f.values_on(domain, k, pts)
                           for k, pts in boundary_samples(domain, per_component)])


def unital_antilinear_audit(samples: Sequence[tuple], witnesses: Sequence[tuple],
                            domain: Domain, per_component: int = 512) -> AuditReport:
    """Test a map ``alpha`` known only through sampled pairs ``(f, alpha(f))``.

    ``witnesses`` are tuples ``(a, i, j, k)`` asserting that sample ``k``'s
    input equals ``a * f_i + f_j``; for each, ``alpha(f_k) = conj(a) alpha(f_i)
    + alpha(f_j)`` is checked.  Unitality is read off any sample whose input is
    the constant 1.
    """
    if not samples:
        raise MalformedSampleError("no samples")
    vals = []
    for idx, pair in enumerate(samples):
        if len(pair) != 2:
            raise MalformedSampleError(f"sample {idx} is not an (f, g) pair")
        f, g = pair
        try:
            require_valid(f, domain)
            require_valid(g, domain)
        except Exception as exc:
            raise MalformedSampleError(f"sample {idx}: {exc}") from exc
        vals.append((_boundary_values(f, domain, per_component),
                     _boundary_values(g, domain, per_component)))

    details = []
    units = [i for i, (fv, _) in enumerate(vals) if np.abs(fv - 1).max() <= 1e-12]
    if not units:
        raise MalformedSampleError("no sample has f = 1, unitality cannot be tested")
    unital = True
    for i in units:
        err = float(np.abs(vals[i][1] - 1).max())
        if err > 1e-9:
            unital = False
            details.append(f"unital: alpha(1) differs from 1 by {err:.3g} (sample {i})")

    antilinear = True
    for w in witnesses:
        try:
            a, i, j, k = w
            fi, gi = vals[i]
            fj, gj = vals[j]
            fk, gk = vals[k]
        except (ValueError, IndexError, TypeError) as exc:
            raise MalformedSampleError(f"bad witness {w!r}") from exc
        a = complex(a)
        scale_f = 1.0 + np.abs(a * fi).max() + np.abs(fj).max()
        if np.abs(fk - (a * fi + fj)).max() > 1e-9 * scale_f:
            raise MalformedSampleError(f"witness {w!r}: f_k is not a*f_i + f_j")
        expect = np.conj(a) * gi + gj
        err = float(np.abs(gk - expect).max())
        if err > 1e-9 * (1.0 + np.abs(expect).max()):
            antilinear = False
            details.append(f"antilinear: witness {w!r} off by {err:.3g}")

    contractive = True
    for idx, (fv, gv) in enumerate(vals):
        sf, sg = float(np.abs(fv).max()), float(np.abs(gv).max())
        if sg > sf + 1e-7:
            contractive = False
            details.append(f"contractive: sample {idx} has sup g {sg:.6g} > sup f {sf:.6g}")
    return AuditReport(unital, antilinear, contractive, details)


def cauchy_alpha(domain: Domain, nodes_per_component: int = 256, degree: int = 8):
    """The Cauchy-transform map ``f -> C(conj f)`` as a polynomial fit on each component."""
    quad = boundary_quadrature(domain, nodes_per_component)
    return lambda f: cauchy_transform_taylor(f, domain, quad, degree)
