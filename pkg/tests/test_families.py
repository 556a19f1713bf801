import math
import pickle

import mpmath
import numpy as np
import pytest

from picardscan import families
from picardscan.errors import DomainError, UnknownFamily
from picardscan.families import get_family, make_discrete_exceptional_family
from picardscan.sphere import INFINITY

SQ2PI = math.sqrt(2 * math.pi)


def mp_example3(z, w):
    with mpmath.workdps(30):
        z, w = mpmath.mpc(z), mpmath.mpc(w)
        return complex(-mpmath.exp(-z * z / 2) + w * mpmath.sqrt(mpmath.pi / 2) * (1 + mpmath.erf(z / mpmath.sqrt(2))))


def test_catalog_keys():
    assert sorted(families.CATALOG) == [
        "discrete_exceptional",
        "example1",
        "example2",
        "example3",
        "example4",
        "linear",
        "quadratic",
    ]


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        get_family("example5")


def test_parameterless_families_reject_params():
    with pytest.raises(DomainError):
        get_family("example1", {"a": 1})


@pytest.mark.parametrize(
    "key,z,w,want",
    [
        ("example1", 1.0, 0.0, math.e),
        ("example1", 0.5j, 2.0, complex(np.exp(0.5j)) + 1j),
        ("example2", 1.0, 0.0, 1.0),
        ("example2", 2.0, 0.5, (math.e - 1) / 0.5),
        ("example4", 0.0, 1.0, math.e - 1),
        ("example4", 1.0, 0.0, math.e),
        ("linear", 3.0, 1.0, 2.0),
        ("quadratic", 3.0, 1.0, 8.0),
    ],
)
def test_closed_values(key, z, w, want):
    assert abs(families.eval(key, z, w) - want) <= 1e-14 * max(1, abs(want))


def test_removable_parameter_is_continuous():
    fam = get_family("example2")
    z = 1.3 - 0.7j
    for w in (1e-3, 1e-8, 1e-14):
        assert abs(fam.eval(z, w) - (np.exp(w * z) - 1) / w) < 1e-6 or w < 1e-6
        assert abs(fam.eval(z, w) - fam.eval(z, 0)) < 10 * abs(w)
    fam4 = get_family("example4")
    assert abs(fam4.eval(z, 1e-12) - np.exp(z)) < 1e-10


@pytest.mark.parametrize("w", [0.5, 1 + 1j, 2.0, -0.3j])
def test_example3_closed_form_against_mpmath(w):
    fam = get_family("example3")
    for z in (0, 1.5, -2 + 1j, 3j, -6, 6 - 2j):
        want = mp_example3(z, w)
        assert abs(fam.eval(z, w) - want) <= 1e-12 * max(1, abs(want))


@pytest.mark.parametrize("w", [0.5, 1 + 1j, 2.0])
def test_example3_asymptotic_values(w):
    fam = get_family("example3")
    assert abs(fam.eval(-8.0, w)) <= 1e-6
    assert abs(fam.eval(8.0, w) - SQ2PI * w) <= 1e-6
    assert abs(fam.eval_dz(-w, w)) <= 1e-10


def test_example3_has_order_two_growth():
    # log log M(r) / log r approaches 2 along the imaginary axis
    fam = get_family("example3")
    ratios = [math.log(math.log(abs(fam.eval(1j * r, 1.0)))) / math.log(r) for r in (10.0, 20.0)]
    assert 1.5 < ratios[0] < ratios[1] < 2.0


def test_derivatives_match_finite_differences():
    h = 1e-6
    for key in ("example1", "example2", "example3", "example4", "quadratic"):
        fam = get_family(key)
        for z, w in ((0.3 + 0.2j, 0.7 - 0.1j), (-1.1j, 1.5)):
            fd = (fam.eval(z + h, w) - fam.eval(z - h, w)) / (2 * h)
            assert abs(fam.eval_dz(z, w) - fd) <= 1e-7 * max(1, abs(fd)), key


def test_log_derivative_consistency():
    z = np.array([0.4 + 0.1j, -1.3 + 2j, 2.5 - 0.5j])
    for key in ("example1", "example2", "example3", "example4", "linear", "quadratic"):
        fam = get_family(key)
        for w, a in ((0.8 + 0.3j, 0j), (1.2, 0.5 - 1j)):
            direct = fam.eval_dz(z, w) / (fam.eval(z, w) - a)
            assert np.allclose(fam.log_derivative(z, w, a), direct, rtol=1e-12), key


def test_non_finite_arguments_rejected():
    with pytest.raises(DomainError):
        families.eval("example1", float("nan"), 0)


def test_discrete_constructor():
    fam = make_discrete_exceptional_family([(1, 1), (-1, 2)])
    assert fam.params == {"p0": 1 + 0j, "m0": 1, "p1": -1 + 0j, "m1": 2}
    z = 0.7 + 0.2j
    w = 0.3 + 0.4j
    assert abs(fam.eval(z, w) - (np.exp(z) + z * (w - 1) * (w + 1) ** 2)) < 1e-14
    assert fam.known_exceptional(1) == 0 and fam.known_exceptional(0.5) is INFINITY
    with pytest.raises(DomainError):
        make_discrete_exceptional_family([(1, 1), (1, 1)])
    with pytest.raises(DomainError):
        make_discrete_exceptional_family([(1, 0)])


def test_discrete_from_json_params_roundtrip():
    fam = get_family("discrete_exceptional", {"p0": [1, 0], "p1": [-1, 0]})
    spec = families.family_to_spec(fam)
    assert spec == {"key": "discrete_exceptional", "params": {"p0": [1.0, 0.0], "m0": 1, "p1": [-1.0, 0.0], "m1": 1}}
    assert families.family_from_spec(spec) == fam
    with pytest.raises(DomainError):
        get_family("discrete_exceptional", {"q0": 1})
    with pytest.raises(DomainError):
        get_family("discrete_exceptional", {"m3": 2})


def test_example1_is_the_single_point_construction():
    e1 = get_family("example1")
    d = make_discrete_exceptional_family([(0, 1)])
    z = np.array([0.1, 2j, -3 + 1j])
    for w in (0, 0.4 - 1j):
        assert np.allclose(e1.eval(z, w), d.eval(z, w))


def test_exceptional_metadata():
    assert get_family("example2").known_exceptional(2) == -0.5
    assert get_family("example2").known_exceptional(0) is INFINITY
    assert get_family("example4").known_exceptional(0) == 0
    assert get_family("example4").known_exceptional(-4) == 0.25
    assert get_family("example1").exceptional_set_at(0) == [0j, INFINITY]
    assert get_family("example1").exceptional_set_at(1) == [INFINITY]
    assert get_family("linear").exceptional_set_at(3) == [INFINITY]


def test_order_labels():
    assert get_family("example4").order_label == "unknown"
    assert get_family("example3").order_label == "2"
    assert get_family("linear").order_label == "0"


def test_complex_erf_public():
    assert abs(families.complex_erf(1.0) - math.erf(1.0)) < 1e-15


def test_families_pickle():
    fam = get_family("quadratic")
    back = pickle.loads(pickle.dumps(fam))
    assert back == fam
