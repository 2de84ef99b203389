"""Piecewise-holomorphic functions on a :class:`~specset.geometry.Domain`.

Each domain component carries one :class:`Piece`: a constant, a polynomial in
powers of ``(z - center)``, or a rational function whose numerator and
denominator are also expanded about the component center.  This is the finite
stand-in for the algebra A(Omega).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import InvalidFunctionError, OutsideDomainError, UnsupportedOperationError
from .geometry import Domain

POLE_CLEARANCE = 1e-6
MAX_RATIONAL_DEGREE = 32
CLOSURE_TOL = 1e-12

KINDS = ("constant", "polynomial", "rational")


def _carr(x) -> np.ndarray:
    a = np.atleast_1d(np.asarray(x, dtype=np.complex128)).copy()
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Piece:
    component_index: int
    kind: str
    coeffs: np.ndarray = field(default_factory=lambda: _carr([0.0]))
    den: np.ndarray | None = None
    poles: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidFunctionError(f"unknown piece kind {self.kind!r}")
        object.__setattr__(self, "component_index", int(self.component_index))
        object.__setattr__(self, "coeffs", _carr(self.coeffs))
        if self.kind == "constant" and len(self.coeffs) != 1:
            raise InvalidFunctionError("constant piece takes exactly one value")
        if self.kind == "rational":
            if self.den is None:
                raise InvalidFunctionError("rational piece needs a denominator")
            object.__setattr__(self, "den", _carr(self.den))
            object.__setattr__(self, "poles", _carr([] if self.poles is None else self.poles))

    @classmethod
    def constant(cls, k: int, value) -> "Piece":
        return cls(k, "constant", [value])

    @classmethod
    def polynomial(cls, k: int, coeffs) -> "Piece":
        return cls(k, "polynomial", coeffs)

    @classmethod
    def rational(cls, k: int, num, den, poles) -> "Piece":
        return cls(k, "rational", num, den, poles)

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        if self.kind == "rational":
            d += len(self.den) - 1
        return d

    def __call__(self, z, center: complex):
        """Evaluate at ``z`` given the owning component's center."""
        w = np.asarray(z, dtype=np.complex128) - center
        if self.kind == "constant":
            return np.full(w.shape, self.coeffs[0]) if w.ndim else self.coeffs[0]
        num = P.polyval(w, self.coeffs)
        if self.kind == "polynomial":
            return num
        return num / P.polyval(w, self.den)

    def _as_fraction(self):
        if self.kind == "rational":
            return self.coeffs, self.den, self.poles
        return self.coeffs, np.ones(1, dtype=np.complex128), np.zeros(0, dtype=np.complex128)

    def to_json(self) -> dict:
        pairs = lambda a: [[float(c.real), float(c.imag)] for c in a]  # noqa: E731
        out = {"component": self.component_index, "kind": self.kind}
        if self.kind == "constant":
            out["value"] = pairs(self.coeffs)[0]
        elif self.kind == "polynomial":
            out["coeffs"] = pairs(self.coeffs)
        else:
            out.update(num=pairs(self.coeffs), den=pairs(self.den), poles=pairs(self.poles))
        return out


def _make(k, num, den=None, poles=None) -> Piece:
    """Build the simplest piece kind that represents ``num / den``."""
    num = np.trim_zeros(np.asarray(num, dtype=np.complex128), "b")
    if num.size == 0:
        num = np.zeros(1, dtype=np.complex128)
    if den is not None:
        den = np.trim_zeros(np.asarray(den, dtype=np.complex128), "b")
        if len(den) > 1:
            if len(num) - 1 + len(den) - 1 > MAX_RATIONAL_DEGREE:
                raise UnsupportedOperationError(
                    f"rational result exceeds total degree {MAX_RATIONAL_DEGREE}")
            return Piece.rational(k, num, den, poles)
        num = num / den[0]
    if len(num) == 1:
        return Piece.constant(k, num[0])
    return Piece.polynomial(k, num)


@dataclass(frozen=True)
class PiecewiseHolo:
    """One :class:`Piece` per domain component, ordered by component index."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces",
                           tuple(sorted(self.pieces, key=lambda p: p.component_index)))

    @classmethod
    def constants(cls, values: Sequence) -> "PiecewiseHolo":
        return cls(tuple(Piece.constant(k, v) for k, v in enumerate(values)))

    @classmethod
    def polynomials(cls, coeff_lists: Sequence) -> "PiecewiseHolo":
        return cls(tuple(Piece.polynomial(k, c) for k, c in enumerate(coeff_lists)))

    @classmethod
    def constant_on(cls, domain: Domain, value) -> "PiecewiseHolo":
        return cls.constants([value] * len(domain))

    def __len__(self):
        return len(self.pieces)

    def values_on(self, domain: Domain, k: int, z):
        return self.pieces[k](z, domain.components[k].center)

    def to_json(self) -> dict:
        return {"pieces": [p.to_json() for p in self.pieces]}


def _cval(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    return complex(pair[0], pair[1])


def function_from_json(obj: dict) -> PiecewiseHolo:
    pieces = []
    for pos, item in enumerate(obj["pieces"]):
        k = item.get("component", pos)
        kind = item["kind"]
        if kind == "constant":
            pieces.append(Piece.constant(k, _cval(item["value"])))
        elif kind == "polynomial":
            pieces.append(Piece.polynomial(k, [_cval(c) for c in item["coeffs"]]))
        elif kind == "rational":
            pieces.append(Piece.rational(k, [_cval(c) for c in item["num"]],
                                         [_cval(c) for c in item["den"]],
                                         [_cval(c) for c in item.get("poles", [])]))
        else:
            raise InvalidFunctionError(f"unknown piece kind {kind!r}")
    return PiecewiseHolo(tuple(pieces))


def validation_errors(f: PiecewiseHolo, domain: Domain) -> list[str]:
    """Reasons why ``f`` is not a valid element of A(domain); empty when valid."""
    errs = []
    if len(f.pieces) != len(domain):
        errs.append(f"{len(f.pieces)} pieces for {len(domain)} components")
        return errs
    for k, p in enumerate(f.pieces):
        if p.component_index != k:
            errs.append(f"piece for component {p.component_index} found at position {k}")
            continue
        if not np.all(np.isfinite(p.coeffs)):
            errs.append(f"component {k}: non-finite coefficients")
        if p.kind != "rational":
            continue
        comp = domain.components[k]
        limit = comp.reach + POLE_CLEARANCE
        if not np.any(p.den):
            errs.append(f"component {k}: zero denominator")
            continue
        den = np.trim_zeros(p.den, "b")
        roots = comp.center + P.polyroots(den) if len(den) > 1 else np.zeros(0)
        for pole in np.concatenate([p.poles, roots]):
            if abs(pole - comp.center) < limit:
                errs.append(f"component {k}: pole {pole:.6g} too close to the component")
    return errs


def validate(f: PiecewiseHolo, domain: Domain) -> bool:
    return not validation_errors(f, domain)


def require_valid(f: PiecewiseHolo, domain: Domain) -> None:
    errs = validation_errors(f, domain)
    if errs:
        raise InvalidFunctionError("; ".join(errs))


def evaluate(f: PiecewiseHolo, domain: Domain, z: complex) -> complex:
    k = domain.component_of(z, tol=CLOSURE_TOL * (1.0 + abs(z)))
    if k is None:
        raise OutsideDomainError(f"{z} is not in the closure of the domain")
    return complex(f.values_on(domain, k, z))


def _check_pair(f: PiecewiseHolo, g: PiecewiseHolo) -> None:
    if len(f.pieces) != len(g.pieces) or any(
            a.component_index != b.component_index for a, b in zip(f.pieces, g.pieces)):
        raise ValueError("functions live on different domains")


def multiply(f: PiecewiseHolo, g: PiecewiseHolo) -> PiecewiseHolo:
    _check_pair(f, g)
    out = []
    for a, b in zip(f.pieces, g.pieces):
        k = a.component_index
        if a.kind != "rational" and b.kind != "rational":
            out.append(_make(k, P.polymul(a.coeffs, b.coeffs)))
            continue
        na, da, pa = a._as_fraction()
        nb, db, pb = b._as_fraction()
        out.append(_make(k, P.polymul(na, nb), P.polymul(da, db), np.concatenate([pa, pb])))
    return PiecewiseHolo(tuple(out))


def add(f: PiecewiseHolo, g: PiecewiseHolo) -> PiecewiseHolo:
    _check_pair(f, g)
    out = []
    for a, b in zip(f.pieces, g.pieces):
        k = a.component_index
        if a.kind != "rational" and b.kind != "rational":
            out.append(_make(k, P.polyadd(a.coeffs, b.coeffs)))
            continue
        na, da, pa = a._as_fraction()
        nb, db, pb = b._as_fraction()
        num = P.polyadd(P.polymul(na, db), P.polymul(nb, da))
        out.append(_make(k, num, P.polymul(da, db), np.concatenate([pa, pb])))
    return PiecewiseHolo(tuple(out))


def scale(c: complex, f: PiecewiseHolo) -> PiecewiseHolo:
    c = complex(c)
    out = []
    for p in f.pieces:
        if p.kind == "rational":
            out.append(Piece.rational(p.component_index, c * p.coeffs, p.den, p.poles))
        else:
            out.append(Piece(p.component_index, p.kind, c * p.coeffs))
    return PiecewiseHolo(tuple(out))
