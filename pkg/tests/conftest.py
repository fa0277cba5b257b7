import os
import sys

import pytest

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from helpers import FIBONACCI_FIGURE_SIZES, NATURAL_SIZES, cobweb_of


@pytest.fixture
def naturals_cobweb():
    return cobweb_of(*NATURAL_SIZES)


@pytest.fixture
def fibonacci_cobweb():
    return cobweb_of(*FIBONACCI_FIGURE_SIZES)
