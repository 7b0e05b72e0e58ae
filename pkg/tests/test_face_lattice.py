# tests/test_face_lattice.py

from fractions import Fraction

import pytest

from analysis.face_lattice import (
    cyclic_facets_gale,
    enumerate_facial_sets,
    face_lattice,
    facet_census,
    facet_table,
    facial_closure,
)
from analysis.face_oracle import is_facial
from analysis.model_builder import SufficientStatistics
from analysis.sample_space import SampleSpace
from utils.errors import CapacityError, DomainError


def test_cube_lattice_f_vector(cube3_e1):
    lattice = face_lattice(cube3_e1)
    assert len(lattice.facets) == 6
    census = facet_census(lattice)
    assert census["f_vector"] == {"0": 8, "1": 12, "2": 6, "3": 1}
    assert census["facet_vertex_counts"] == {"4": 6}
    assert census["simplex_facets"] == 0
    assert len(lattice.maximal_ssets()) == 12


def test_lattice_matches_lp_oracle_on_every_subset(cube3, cube3_e1):
    lattice = face_lattice(cube3_e1)
    for mask in range(1, 1 << cube3.size):
        assert lattice.contains(mask) == is_facial(cube3_e1, cube3.subset_from_mask(mask)).is_facial


def test_facial_closure(cube3, cube3_e1):
    lattice = face_lattice(cube3_e1)
    diagonal = cube3.subset_from_strings(["000", "011"])
    assert facial_closure(lattice, diagonal).to_strings() == ["000", "001", "010", "011"]
    assert facial_closure(lattice, cube3.subset_from_strings(["000", "111"])) == cube3.full()
    with pytest.raises(DomainError):
        facial_closure(lattice, cube3.subset([]))


def test_pentagon_lattice(pentagon_lattice):
    assert len(pentagon_lattice.facets) == 5
    assert len(pentagon_lattice) == 11
    edges = [pentagon_lattice.subset(m).to_strings() for m in pentagon_lattice.maximal_ssets()]
    assert sorted(edges) == [["0", "1"], ["0", "4"], ["1", "2"], ["2", "3"], ["3", "4"]]
    assert pentagon_lattice.maximal_facial_subsets(0b10101) == [0b10001, 0b00100]


def test_collinear_points_hide_the_middle():
    space = SampleSpace((3,))
    A = SufficientStatistics(space, ((1, 1, 1), (0, 1, 2)), ("1", "t"))
    lattice = enumerate_facial_sets(A)
    assert sorted(lattice.faces()) == [0b001, 0b100, 0b111]
    assert lattice.sset_masks() == [0b001, 0b100]


def test_census_of_pair_interactions_on_four_bits(cube4_e2_lattice):
    census = facet_census(cube4_e2_lattice)
    assert census["facet_count"] == 56
    assert census["simplex_facets"] == 16
    assert census["simplex_facet_vertex_counts"] == {"10": 16}
    assert census["facet_vertex_counts"].get("12") == 40
    assert census["simplex_facets_by_even_count"].get("6") == 8
    assert census["simplex_facets_by_odd_count"].get("6") == 8
    assert census["dimension"] == 10


def test_facet_table_columns(cube3_e1):
    table = facet_table(face_lattice(cube3_e1))
    assert list(table.columns) == ["facet", "size", "dimension", "simplex", "even", "odd"]
    assert (table["dimension"] == 2).all()
    assert ((table["even"] == 2) & (table["odd"] == 2)).all()


def test_facet_normals_support_their_facets(cube3_e1):
    lattice = face_lattice(cube3_e1)
    for mask, normal in zip(lattice.facets, lattice.normals):
        values = [sum((c * v for c, v in zip(normal, cube3_e1.column(x))), Fraction(0)) for x in range(8)]
        assert all((values[x] == 0) == bool((mask >> x) & 1) for x in range(8))
        assert all(v >= 0 for v in values)


def test_enumeration_guard(cube3_e1):
    with pytest.raises(CapacityError):
        enumerate_facial_sets(cube3_e1, guard=7)


@pytest.mark.parametrize("v, d, expected", [(5, 2, 5), (6, 3, 8), (4, 2, 4), (8, 6, 16), (16, 14, 64)])
def test_cyclic_polytope_facets_by_gale_evenness(v, d, expected):
    assert len(cyclic_facets_gale(v, d)) == expected


def test_gale_rejects_degenerate_parameters():
    with pytest.raises(DomainError):
        cyclic_facets_gale(3, 3)
