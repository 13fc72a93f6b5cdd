import numpy as np
import pytest

from oracles import fock_tmsv_max_schmidt, williamson_spectrum


@pytest.mark.parametrize("r", [0.0, 0.3, 1.0, 2.0])
def test_fock_oracle_against_closed_form(r):
    # Schmidt coefficients of the TMSV are (1 - tanh^2 r) tanh^(2k) r
    assert fock_tmsv_max_schmidt(r) == pytest.approx(1 - np.tanh(r) ** 2, abs=1e-12)


def test_williamson_oracle_thermal():
    sigma = np.diag([3.0, 1.5, 3.0, 1.5])
    assert np.allclose(williamson_spectrum(sigma), [3.0, 1.5])
