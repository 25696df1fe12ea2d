import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hmtk import HarmonicPolynomial

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
coeffs = st.lists(cplx, min_size=1, max_size=7)
maps = st.builds(HarmonicPolynomial, coeffs, coeffs)


@st.composite
def disk_points(draw, rmax=0.999):
    r = draw(st.floats(0.0, rmax))
    t = draw(st.floats(0.0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


def random_poly(rng, degree=6, holomorphic=False):
    c = lambda: rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)
    return HarmonicPolynomial(c(), [0] if holomorphic else c())


@pytest.fixture
def ext_z():
    return HarmonicPolynomial.c_z_plus_zbar(1.0)


@pytest.fixture
def ident():
    return HarmonicPolynomial.identity()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
