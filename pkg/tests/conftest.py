from functools import lru_cache

import pytest

from rootcone.arrangement import intersection_lattice, reflection_arrangement
from rootcone.cli import parse_type
from rootcone.roots import generate_group, root_system


@lru_cache(maxsize=None)
def system(name):
    fam, rank, m = parse_type(name)
    return root_system(fam, rank, m)


@lru_cache(maxsize=None)
def group(name):
    return generate_group(system(name))


@lru_cache(maxsize=None)
def lattice(name):
    return intersection_lattice(reflection_arrangement(system(name)))


@pytest.fixture
def rs_of():
    return system


@pytest.fixture
def group_of():
    return group


@pytest.fixture
def lattice_of():
    return lattice
