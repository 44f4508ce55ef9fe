from __future__ import annotations

import pytest

from asymser import AssociatedSeries, arctan_assoc_coeff, arctan_coeffs, associated


@pytest.fixture(scope="session")
def arctan_32():
    return arctan_coeffs(32)


@pytest.fixture(scope="session")
def arctan_assoc_32(arctan_32):
    return associated(arctan_32)


@pytest.fixture(scope="session")
def arctan_assoc_701():
    """Companion coefficients of arctan through the real transform (not the
    closed form), shared by the continuation-heavy tests."""
    return associated(arctan_coeffs(701))


@pytest.fixture(scope="session")
def arctan_assoc_10001_closed_form():
    return AssociatedSeries(tuple(arctan_assoc_coeff(n) for n in range(10001)))
