"""Shared fixtures: charts and constructed forms, built once per session."""

import pytest

from metaline.omega_builder import build_omega
from metaline.varieties import builtin_chart


@pytest.fixture(scope="session")
def fixture_cache():
    """name -> (chart, omega, construction-or-None), constructed lazily."""
    cache = {}

    def get(name):
        if name not in cache:
            chart, explicit = builtin_chart(name)
            if explicit is None:
                construction = build_omega(chart, seed=42)
                cache[name] = (chart, construction.omega, construction)
            else:
                cache[name] = (chart, explicit, None)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def twisted_cubic(fixture_cache):
    return fixture_cache("veronese-2-3")


@pytest.fixture(scope="session")
def quartic(fixture_cache):
    return fixture_cache("veronese-2-4")


@pytest.fixture(scope="session")
def veronese33(fixture_cache):
    return fixture_cache("veronese-3-3")


@pytest.fixture(scope="session")
def flat_conic(fixture_cache):
    return fixture_cache("flat-conic")


@pytest.fixture(scope="session")
def flat_linear(fixture_cache):
    return fixture_cache("flat-linear")


@pytest.fixture(scope="session")
def adversarial(fixture_cache):
    return fixture_cache("nonisotropic-cubic")
