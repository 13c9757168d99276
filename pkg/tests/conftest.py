from functools import lru_cache

import pytest

from skewrank.fields import ExtensionContext


@lru_cache(maxsize=None)
def _ctx(p: int, n: int) -> ExtensionContext:
    return ExtensionContext(p, n)


@pytest.fixture
def ctx():
    """Cached context factory: ctx(p, n) with the default modulus."""
    return _ctx
