import math

import numpy as np
import pytest

from picardscan.contour import CircleContour, adaptive_means, cauchy_coeff, circle_integral, circle_moments
from picardscan.errors import IntegrandBlowUp, NonConvergence


def test_contour_validation():
    with pytest.raises(ValueError):
        CircleContour(0, 0.0)
    with pytest.raises(ValueError):
        CircleContour(0, 1.0, nodes=100)
    with pytest.raises(ValueError):
        CircleContour(0, math.inf)


def test_integral_of_inverse():
    val = circle_integral(lambda z: 1 / z, CircleContour(0, 2.0))
    assert abs(val - 2j * math.pi) < 1e-13
    # centered away from the pole
    assert abs(circle_integral(lambda z: 1 / z, CircleContour(5, 1.0))) < 1e-13


def test_integral_of_polynomial_vanishes():
    assert abs(circle_integral(lambda z: z**3 + 2 * z, CircleContour(0.3j, 1.5))) < 1e-12


@pytest.mark.parametrize("p", range(6))
def test_cauchy_coefficients_of_exp(p):
    # every derivative of e^z at 1 is e
    assert abs(cauchy_coeff(np.exp, 1.0, 0.7, p) - math.e) < 1e-11 * math.factorial(p)


def test_cauchy_rejects_negative_order():
    with pytest.raises(ValueError):
        cauchy_coeff(np.exp, 0, 1, -1)


def test_moments_are_power_sums():
    zeros = np.array([0.2, -0.5j, 0.3 + 0.3j])
    g = lambda z: np.sum(1.0 / (z[None, :] - zeros[:, None]), axis=0)
    s, _ = circle_moments(g, 0, 1.0, 4)
    for k in range(5):
        assert abs(s[k] - np.sum(zeros**k)) < 1e-12


@pytest.mark.filterwarnings("ignore:divide by zero")
def test_blowup_is_reported():
    with pytest.raises(IntegrandBlowUp):
        circle_integral(lambda z: 1 / (z - 1), CircleContour(0, 1.0, nodes=16))


def test_nonconvergence_is_reported():
    # a pole just outside the circle needs far more nodes than allowed
    with pytest.raises(NonConvergence):
        circle_integral(lambda z: 1 / (z - 1.0001), CircleContour(0, 1.0), max_nodes=1024)


def test_adaptive_reports_node_count():
    mean, n = adaptive_means(lambda z, u: np.exp(z), 0, 1.0, nodes=16)
    assert abs(mean[0] - 1) < 1e-13 and n >= 32
    mean, n = adaptive_means(lambda z, u: np.exp(z), 0, 1.0, nodes=16, adaptive=False)
    assert n == 16
