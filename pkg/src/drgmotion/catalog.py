"""Built-in arrays with optional concrete-graph builders."""
from __future__ import annotations

from dataclasses import dataclass

from .params import IntersectionArray, cocktail_party_array, hamming_array, johnson_array


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    array: IntersectionArray
    builder: tuple | None  # arguments for oracle.build_named
    note: str

    def build(self):
        from .oracle import build_named
        if self.builder is None:
            return None
        return build_named(*self.builder)


def _ia(b, c) -> IntersectionArray:
    return IntersectionArray(tuple(b), tuple(c))


CATALOG: dict[str, CatalogEntry] = {e.id: e for e in [
    CatalogEntry("petersen", _ia([3, 2], [1, 1]), ("petersen",), "Kneser graph K(5,2)"),
    CatalogEntry("johnson-5-2", johnson_array(5, 2), ("johnson", 5, 2), "triangular graph T(5)"),
    CatalogEntry("johnson-8-3", johnson_array(8, 3), ("johnson", 8, 3), "3-subsets of an 8-set"),
    CatalogEntry("johnson-30-3", johnson_array(30, 3), None, "array only, n = 4060"),
    CatalogEntry("hamming-2-3", hamming_array(2, 3), ("hamming", 2, 3), "3x3 rook's graph"),
    CatalogEntry("hamming-3-3", hamming_array(3, 3), ("hamming", 3, 3), "ternary 3-cube"),
    CatalogEntry("cube", hamming_array(3, 2), ("cube",), "H(3,2)"),
    CatalogEntry("heawood", _ia([3, 2, 2], [1, 1, 3]), ("heawood",), "incidence graph of the Fano plane"),
    CatalogEntry("icosahedron", _ia([5, 2, 1], [1, 2, 5]), ("icosahedron",), "antipodal 2-cover of K_6"),
    CatalogEntry("octagon", _ia([2, 1, 1, 1], [1, 1, 1, 2]), ("cycle", 8), "8-cycle"),
    CatalogEntry("cocktail-party-3", cocktail_party_array(3), ("cocktail_party", 3), "K_{3x2}, the octahedron"),
    CatalogEntry("k44-minus-matching", _ia([3, 2, 1], [1, 2, 3]), ("k_mm_minus_matching", 4),
                 "K_{4,4} minus a perfect matching (isomorphic to the cube)"),
]}


def get(entry_id: str) -> CatalogEntry:
    try:
        return CATALOG[entry_id]
    except KeyError:
        raise KeyError(f"unknown catalog id {entry_id!r}; known: {', '.join(CATALOG)}") from None


def entries(with_builder: bool = False) -> list[CatalogEntry]:
    return [e for e in CATALOG.values() if e.builder is not None or not with_builder]

