import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cmtorus.groups import GroupSpec, make_group  # noqa: E402

FIXTURES = Path(__file__).parent.parent / "fixtures"


def small_catalog() -> list[GroupSpec]:
    """Catalog groups of order at most 16."""
    specs = [GroupSpec("cyclic", n=n) for n in range(1, 17)]
    specs += [GroupSpec("dihedral", n=n) for n in range(1, 9)]
    specs += [
        GroupSpec("unit_group_mod", n=n)
        for n in range(3, 41)
        if sum(math.gcd(a, n) == 1 for a in range(n)) <= 16
    ]
    c2, c4 = GroupSpec("cyclic", n=2), GroupSpec("cyclic", n=4)
    specs += [
        GroupSpec("product", factors=(c2, c2)),
        GroupSpec("product", factors=(c2, c4)),
        GroupSpec("product", factors=(c2, c2, c2)),
        GroupSpec("product", factors=(c4, c4)),
        GroupSpec("product", factors=(c2, c2, c4)),
        GroupSpec("product", factors=(GroupSpec("dihedral", n=4), c2)),
    ]
    return specs


@pytest.fixture
def klein():
    c2 = GroupSpec("cyclic", n=2)
    return make_group(GroupSpec("product", factors=(c2, c2)))


@pytest.fixture
def z9():
    return make_group(GroupSpec("unit_group_mod", n=9))


@pytest.fixture
def d6():
    return make_group(GroupSpec("dihedral", n=6))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
