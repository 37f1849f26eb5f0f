import pytest

from scmm.census import census_records

CENSUS_CLASSES = [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3), (6, 4)]


@pytest.fixture(scope="session")
def census():
    """Fully supported gcd-1 matroidal ideals for every desk-scale class."""
    return {nd: census_records(*nd) for nd in CENSUS_CLASSES}


@pytest.fixture(scope="session")
def census_ideals(census):
    return [rec.report for recs in census.values() for rec in recs]
