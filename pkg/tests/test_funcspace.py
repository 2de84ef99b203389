import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specset.errors import OutsideDomainError, UnsupportedOperationError
from specset.funcspace import (Piece, PiecewiseHolo, add, evaluate, function_from_json, multiply,
                               scale, validate, validation_errors)
from specset.geometry import Disk, Domain, Ellipse
from specset.lemma import two_disk_domain, two_disk_g, two_disk_h

UNIT = Domain((Disk(0, 1),))


def test_evaluate_two_disk_h():
    dom = two_disk_domain()
    h = two_disk_h()
    assert evaluate(h, dom, 1.1) == 1
    assert evaluate(h, dom, 0) == -1
    assert evaluate(h, dom, 1.25) == 1  # closure
    with pytest.raises(OutsideDomainError):
        evaluate(h, dom, 0.5)


def test_polynomials_are_centered():
    dom = two_disk_domain()
    f = PiecewiseHolo.polynomials([[0, 1], [0, 1]])
    # second piece is (z - 1)
    assert evaluate(f, dom, 1.2) == pytest.approx(0.2)
    assert evaluate(f, dom, 0.2) == pytest.approx(0.2)


def test_validate_examples():
    dom = two_disk_domain()
    assert validate(two_disk_h(), dom)
    bad = PiecewiseHolo((Piece.rational(0, [1], [-0.1, 1], [0.1]), Piece.constant(1, 1)))
    assert not validate(bad, dom)
    assert validation_errors(bad, dom)
    assert not validate(PiecewiseHolo.constants([1, 2]), UNIT)


def test_validate_pole_clearance():
    # pole exactly at reach + 2e-6 is fine, at reach + 5e-7 it is not
    ok = PiecewiseHolo((Piece.rational(0, [1], [-(1 + 2e-6), 1], [1 + 2e-6]),))
    bad = PiecewiseHolo((Piece.rational(0, [1], [-(1 + 5e-7), 1], [1 + 5e-7]),))
    assert validate(ok, UNIT)
    assert not validate(bad, UNIT)
    # the denominator's own roots are checked even if the pole list lies
    liar = PiecewiseHolo((Piece.rational(0, [1], [-0.5, 1], [3.0]),))
    assert not validate(liar, UNIT)


def test_ellipse_pole_uses_semi_major():
    dom = Domain((Ellipse(0, 2, 1),))
    f = PiecewiseHolo((Piece.rational(0, [1], [-1.5j, 1], [1.5j]),))
    assert not validate(f, dom)


def test_algebra_examples():
    dom = two_disk_domain()
    h = two_disk_h()
    hh = multiply(h, h)
    assert all(p.kind == "constant" and p.coeffs[0] == 1 for p in hh.pieces)

    z = PiecewiseHolo.polynomials([[0, 1]])
    assert np.array_equal(multiply(z, z).pieces[0].coeffs, [0, 0, 1])

    g = two_disk_g(h)
    hgh = multiply(multiply(h, g), h)
    # pointwise oracle: h^2 = 1 so hgh == g
    for pt in (0.1, -0.2j, 1.0, 1.1 + 0.1j):
        assert evaluate(hgh, dom, pt) == evaluate(g, dom, pt)
        assert evaluate(g, dom, pt) == (1 if abs(pt) < 0.5 else -1)


def test_multiply_by_one_is_identity():
    f = PiecewiseHolo.polynomials([[1, 2j, 3], [0.5, -1]])
    one = PiecewiseHolo.constants([1, 1])
    prod = multiply(f, one)
    for a, b in zip(prod.pieces, f.pieces):
        assert np.array_equal(a.coeffs, b.coeffs)


def test_rational_algebra():
    dom = UNIT
    r = PiecewiseHolo((Piece.rational(0, [1], [-2, 1], [2]),))  # 1/(z - 2)
    z = PiecewiseHolo.polynomials([[0, 1]])
    s = add(multiply(r, z), scale(3, r))
    for pt in (0.3, -0.5j, 0.7 + 0.2j):
        assert evaluate(s, dom, pt) == pytest.approx((pt + 3) / (pt - 2), rel=1e-14)
    big = PiecewiseHolo((Piece.rational(0, np.ones(10), np.r_[np.ones(9), 3.0], [5]),))
    with pytest.raises(UnsupportedOperationError):
        multiply(big, big)


def test_domain_mismatch():
    with pytest.raises(ValueError):
        add(PiecewiseHolo.constants([1]), PiecewiseHolo.constants([1, 2]))


def test_json_roundtrip():
    f = PiecewiseHolo((Piece.polynomial(0, [1, 2j]),
                       Piece.rational(1, [1], [-3, 1], [3]),
                       Piece.constant(2, -1j)))
    g = function_from_json(f.to_json())
    for a, b in zip(f.pieces, g.pieces):
        assert a.kind == b.kind
        assert np.array_equal(a.coeffs, b.coeffs)


coeff = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=5), st.lists(coeff, min_size=1, max_size=5),
       st.integers(0, 2**32 - 1))
def test_pointwise_algebra(a, b, seed):
    dom = Domain((Disk(0.3, 0.7), Ellipse(3 + 1j, 1.0, 0.6, 0.5)))
    f = PiecewiseHolo.polynomials([a, b])
    g = PiecewiseHolo.polynomials([b, a])
    fg = multiply(f, g)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        k = int(rng.integers(2))
        comp = dom.components[k]
        pt = comp.point(rng.uniform(0, 2 * np.pi))
        pt = comp.center + rng.uniform(0, 1) * (pt - comp.center)
        fv, gv = evaluate(f, dom, pt), evaluate(g, dom, pt)
        assert abs(evaluate(fg, dom, pt) - fv * gv) <= 1e-12 * (1 + abs(fv) * abs(gv))
        assert abs(evaluate(add(f, g), dom, pt) - (fv + gv)) <= 1e-12 * (1 + abs(fv) + abs(gv))
