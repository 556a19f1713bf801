import math

import mpmath
import numpy as np
import pytest
import sympy

from picardscan import zeros

from picardscan.errors import DomainError, ZeroNearContour
from picardscan.families import get_family, make_discrete_exceptional_family
from picardscan.zeros import (
    FP_SIGN,
    JITTER,
    ExceedsSearchBound,
    Finite,
    ZeroInventory,
    count_zeros,
    detection_functional,
    first_zero_radius,
    functional_from_zeros,
    locate_zeros,
)

OMEGA = float(mpmath.lambertw(1).real)

ex1 = get_family("example1")
quad = get_family("quadratic")


def test_jitter_schedule():
    assert len(JITTER) == 8
    assert all(abs(f - 1) <= 1e-3 + 1e-15 for f in JITTER)
    assert len(set(JITTER)) == 8


@pytest.mark.parametrize(
    "key,w,R,want",
    [("example1", 0, 10, 0), ("example1", 1, 1, 1), ("quadratic", 4, 3, 2), ("example2", 1, 7, 3)],
)
def test_count_examples(key, w, R, want):
    res = count_zeros(get_family(key), w, R)
    assert res.count == want
    assert res.residual <= 1e-6
    assert abs(res.radius_used / R - 1) <= 1e-3


def test_count_jitters_around_contour_zero():
    # roots at +-2 sit exactly on |z| = 2
    res = count_zeros(quad, 4, 2.0)
    assert res.radius_used != 2.0
    assert res.count == (2 if res.radius_used > 2 else 0)


def test_count_reports_zero_near_contour(monkeypatch):
    # without retries, a root sitting on a quadrature node cannot be avoided
    monkeypatch.setattr(zeros, "JITTER", ())
    with pytest.raises(ZeroNearContour):
        count_zeros(quad, 4, 2.0)


def test_count_rejects_bad_radius():
    with pytest.raises(DomainError):
        count_zeros(get_family("linear"), 0, 0.0)


def test_count_with_shift():
    # e^z = 1 at 2 pi i k
    assert count_zeros(get_family("example1"), 0, 1.0, shift=1.0).count == 1
    assert count_zeros(get_family("example1"), 0, 5.0, shift=1.0).count == 1
    assert count_zeros(get_family("example1"), 0, 7.0, shift=1.0).count == 3


def test_first_zero_radius_examples():
    assert first_zero_radius(quad, 4) == Finite(2.0)
    r = first_zero_radius(ex1, 1)
    assert isinstance(r, Finite) and abs(r.value - OMEGA) <= 1e-8 * OMEGA
    assert first_zero_radius(ex1, 0) == ExceedsSearchBound(64)
    assert first_zero_radius(get_family("example2"), 1) == Finite(0.0)


def test_first_zero_radius_bound_is_respected():
    # zeros of e^z + w z for tiny w sit near log(1/|w|)
    assert first_zero_radius(ex1, 1e-6, R_max=5) == ExceedsSearchBound(5)
    r = first_zero_radius(ex1, 1e-6, R_max=64)
    assert isinstance(r, Finite) and 10 < r.value < 20


def mp_zero(w, seed):
    return complex(mpmath.findroot(lambda z: mpmath.exp(z) + w * z, mpmath.mpc(seed)))


@pytest.mark.parametrize("w", [1, 0.5 + 0.5j, -2, 3j, 0.05])
def test_first_zero_radius_against_mpmath(w):
    inv = locate_zeros(ex1, w, 30)
    # polish each located zero independently and take the smallest modulus
    want = min(abs(mp_zero(w, z)) for z, _ in inv.zeros)
    got = first_zero_radius(ex1, w)
    assert abs(got.value - want) <= 1e-8 * want


@pytest.mark.parametrize("w", [1, 0.3 - 0.8j, 2j])
def test_r_consistency(w):
    r = first_zero_radius(ex1, w).value
    assert count_zeros(ex1, w, 0.99 * r).count == 0
    assert count_zeros(ex1, w, 1.01 * r).count >= 1


def test_r_continuity_at_one():
    r0 = first_zero_radius(ex1, 1).value
    for k in range(8):
        h = 1e-3 * np.exp(2j * np.pi * k / 8)
        assert abs(first_zero_radius(ex1, 1 + h).value - r0) <= 10 * abs(h)


def test_locate_quadratic():
    inv = locate_zeros(quad, 1, 2)
    assert inv.validated
    locs = sorted(z.real for z, _ in inv.zeros)
    assert np.allclose(locs, [-1, 1]) and all(m == 1 for _, m in inv.zeros)


def test_locate_double_root():
    inv = locate_zeros(quad, 0, 1)
    assert inv.validated and len(inv.zeros) == 1
    z, m = inv.zeros[0]
    assert m == 2 and abs(z) < 1e-6


def test_locate_example1():
    inv = locate_zeros(ex1, 1, 8)
    assert inv.validated
    assert inv.total_count == count_zeros(ex1, 1, 8).count
    locs = [z for z, _ in inv.zeros]
    assert min(abs(z + OMEGA) for z in locs) < 1e-12
    pair = mp_zero(1, 1.5 + 4.4j)
    assert min(abs(z - pair) for z in locs) < 1e-10
    assert min(abs(z - pair.conjugate()) for z in locs) < 1e-10
    # residual invariant
    ring = 8 * np.exp(2j * np.pi * np.arange(256) / 256)
    scale = 1 + np.max(np.abs(ex1.eval(ring, 1)))
    assert all(abs(ex1.eval(z, 1)) <= 1e-8 * scale for z in locs)


def test_locate_multiple_root_in_discrete_family():
    # at w = 0 the fiber e^z is zero-free; shift by 1 to get simple zeros 2 pi i k
    fam = make_discrete_exceptional_family([(0, 1)])
    inv = locate_zeros(fam, 0, 20, shift=1.0)
    assert inv.validated
    assert sorted(round(z.imag / (2 * math.pi)) for z, _ in inv.zeros) == [-3, -2, -1, 0, 1, 2, 3]


def symbolic_fp(p):
    z = sympy.symbols("z")
    g = sympy.diff(z**2 - 1, z) / (z**2 - 1)
    return float(sympy.diff(g, z, p).subs(z, 0))


def test_sign_convention_pinned_by_symbolic_oracle():
    assert symbolic_fp(1) == -2.0 and symbolic_fp(3) == -12.0
    inv = ZeroInventory(zeros=[(1 + 0j, 1), (-1 + 0j, 1)], search_radius=2, total_count=2, validated=True)
    assert functional_from_zeros(inv, 1) == FP_SIGN * 2
    assert functional_from_zeros(inv, 1) == symbolic_fp(1)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_detection_quadratic(p):
    val = detection_functional(quad, 1, p)
    assert abs(val.value - symbolic_fp(p)) <= 1e-8 * max(1, abs(symbolic_fp(p)))
    assert val.origin_shift == 0 and val.contour_radius == 0.5


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_detection_vanishes_on_zero_free_fiber(p):
    val = detection_functional(ex1, 0, p)
    assert abs(val.value) <= 1e-9 and val.contour_radius == 1.0


def test_detection_recentres_when_origin_is_zero():
    val = detection_functional(get_family("example2"), 1, 2)
    assert val.origin_shift != 0 and abs(val.origin_shift) == 0.5
    # direct: the log-derivative is e^z / (e^z - 1); derivatives of it at the shifted origin
    c = val.origin_shift
    with mpmath.workdps(30):
        want = mpmath.diff(lambda z: mpmath.exp(z) / (mpmath.exp(z) - 1), mpmath.mpc(c), 2)
    assert abs(val.value - complex(want)) < 1e-8 * abs(complex(want))


def test_detection_rejects_bad_order():
    with pytest.raises(DomainError):
        detection_functional(quad, 1, 0)


def test_functional_from_zeros_edge_cases():
    inv = ZeroInventory(zeros=[(1 + 0j, 1), (-1 + 0j, 1)], search_radius=2, total_count=2, validated=True)
    assert functional_from_zeros(inv, 2) == 0
    empty = ZeroInventory(zeros=[], search_radius=1, total_count=0, validated=True)
    assert functional_from_zeros(empty, 3) == 0
    with pytest.raises(DomainError):
        functional_from_zeros(ZeroInventory([(0j, 1)], 1, 1, True), 1)
    with pytest.raises(DomainError):
        functional_from_zeros(ZeroInventory([(1 + 0j, 1)], 1, 2, False), 1)


def test_cross_check_example1():
    inv = locate_zeros(ex1, 1, 50)
    assert inv.validated
    direct = detection_functional(ex1, 1, 3).value
    assert abs(direct - functional_from_zeros(inv, 3)) <= 1e-4


def test_zero_free_fibers_vanish_above_order():
    fams = [get_family("example1"), get_family("example3"), make_discrete_exceptional_family([(2j, 2)])]
    for fam, w in zip(fams, (0, 0, 2j)):
        assert isinstance(first_zero_radius(fam, w), ExceedsSearchBound)
        lam = math.floor(fam.order_bound)
        for p in range(lam + 1, lam + 5):
            assert abs(detection_functional(fam, w, p).value) <= 1e-9, (fam.key, p)
