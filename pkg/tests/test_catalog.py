import pytest

from drgmotion import catalog
from drgmotion.params import feasibility_report

EXPECTED = {"petersen", "johnson-5-2", "johnson-8-3", "johnson-30-3", "hamming-2-3", "hamming-3-3", "cube",
            "heawood", "icosahedron", "octagon", "cocktail-party-3", "k44-minus-matching"}


def test_contents():
    assert set(catalog.CATALOG) == EXPECTED
    assert catalog.get("johnson-30-3").build() is None


def test_every_entry_feasible():
    for e in catalog.entries():
        assert feasibility_report(e.array) == []


def test_builders_small():
    for e in catalog.entries(with_builder=True):
        assert e.build().n <= 64


def test_unknown_id():
    with pytest.raises(KeyError, match="unknown catalog id"):
        catalog.get("nope")
