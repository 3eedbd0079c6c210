from functools import lru_cache

import pytest

from leftorders.groups import parse_group_spec
from leftorders.orderspace import build_tree

FIXTURE_GROUPS = ["1", "C2", "C3", "S3", "Z", "Z^2", "F2", "KB", "H3"]
INFINITE_GROUPS = ["Z", "Z^2", "F2", "KB", "H3"]


@lru_cache(maxsize=None)
def group(spec):
    return parse_group_spec(spec)


@lru_cache(maxsize=None)
def tree(spec, radius):
    return build_tree(group(spec), radius)


@pytest.fixture
def ctx_of():
    return group


@pytest.fixture
def tree_of():
    return tree
