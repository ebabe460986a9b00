from fractions import Fraction
from unittest.mock import MagicMock

import pytest

from proximity_lab.database import get_db
from proximity_lab.expression import parse_polynomial
from proximity_lab.main import app

mock_session = MagicMock()


def override_get_db():
    try:
        yield mock_session
    finally:
        pass


app.dependency_overrides[get_db] = override_get_db


@pytest.fixture
def mock_db_session():
    mock_session.reset_mock()
    return mock_session


@pytest.fixture
def poly():
    """Parse polynomial text over the given variables (default x, y, z)."""
    def build(text, variables=("x", "y", "z")):
        return parse_polynomial(text, variables).polynomial
    return build


@pytest.fixture
def circle_points():
    """Rational points of the unit circle from t = p/q, both signs of y."""
    def build(count):
        points = set()
        t = 1
        while len(points) < count:
            for q in range(1, t + 1):
                s = Fraction(t, q)
                x, y = (1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)
                points.update({(x, y), (x, -y), (-x, y), (-x, -y)})
            t += 1
        return sorted(points)[:count]
    return build
