#!/usr/bin/env python3

import sys

import pytest

# Add the project root to Python path
sys.path.append('.')

from core.registry_loader import golden_pair
from services.generate_random import make_rng


@pytest.fixture
def rng():
    return make_rng(20240101)


@pytest.fixture
def example1():
    return golden_pair("example1")


@pytest.fixture
def han_park():
    return golden_pair("han_park")
