"""
Unit tests for the simplicial complex service.

Tests cover:
- Construction, void and empty complexes, face lattice and f-vectors
- Links, stars, deletions, joins and rank selection
- Boundary complexes and pseudomanifold errors
- Colorings, flag vectors and the complex file round trip
"""

import pytest

from balkit.exceptions import (
    EmptyComplexError,
    ImproperColoringError,
    InputError,
    NotAFaceError,
    NotAPseudomanifoldError,
    PreconditionError,
)
from balkit.services.complex import (
    Coloring,
    SimplicialComplex,
    boundary_complex,
    class_labels,
    delete,
    euler_characteristic,
    f_vector,
    face_of,
    flag_vectors,
    from_facets,
    from_file,
    h_from_f,
    induced_subcomplex,
    intersection,
    join,
    link,
    missing_edges,
    rank_selected,
    relabel,
    star,
    to_file,
    union,
    vertex_degrees,
    vertices_of,
)
from balkit.services.construct import cycle


class TestConstruction:
    """Tests for building complexes."""

    def test_dominated_faces_are_dropped(self):
        """Test that faces contained in other facets are not kept as facets."""
        K = from_facets([[0, 1, 2], [0, 1], [2]])
        assert K.facet_lists() == [[0, 1, 2]]

    def test_empty_facet_list_raises(self):
        """Test that an empty facet list is rejected."""
        with pytest.raises(EmptyComplexError):
            from_facets([])

    def test_repeated_vertex_raises(self):
        """Test that a face listing a vertex twice is rejected."""
        with pytest.raises(InputError):
            from_facets([[0, 0, 1]])

    def test_repeated_label_raises(self):
        """Test that two vertices of one complex cannot share a label."""
        with pytest.raises(InputError):
            from_facets([[0, 1], [1, 2]], labels={0: "u1", 1: "v1", 2: "u1"})

    def test_labels_of_unused_vertices_are_ignored(self):
        """Test that a label map may name vertices outside the facets."""
        K = from_facets([[0, 1]], labels={0: "u1", 1: "v1", 2: "v1"})
        assert K.labels == {0: "u1", 1: "v1"}

    def test_void_and_empty_differ(self):
        """Test that the void complex and {∅} have different dimensions."""
        assert SimplicialComplex.void().dim == -2
        assert SimplicialComplex.empty().dim == -1
        assert SimplicialComplex.empty().f == (1,)

    def test_octahedron_f_vector(self, octahedron):
        """Test the f-vector of the octahedral 2-sphere."""
        assert octahedron.f == (1, 6, 12, 8)
        assert f_vector(octahedron).h == (1, 3, 3, 1)

    def test_h_from_f_of_simplex_boundary(self):
        """Test the h-vector of the boundary of a tetrahedron."""
        assert h_from_f((1, 4, 6, 4)) == (1, 1, 1, 1)

    def test_euler_characteristic(self, torus, octahedron):
        """Test the unreduced Euler characteristic of a torus and a sphere."""
        assert euler_characteristic(torus) == 0
        assert euler_characteristic(octahedron) == 2

    def test_iter_faces_starts_with_empty_face(self, square):
        """Test that faces are listed by dimension, starting with ∅."""
        faces = list(square.iter_faces())
        assert faces[0] == 0
        assert [f.bit_count() for f in faces] == sorted(f.bit_count() for f in faces)

    def test_vertex_by_label(self, octahedron):
        """Test that vertices are found by label, numeric strings included."""
        assert octahedron.vertex_by_label(octahedron.label(3)) == 3
        with pytest.raises(InputError):
            octahedron.vertex_by_label("nope")


class TestFaceOperations:
    """Tests for link, star, deletion and join."""

    def test_link_of_octahedron_vertex_is_square(self, octahedron):
        """Test that a vertex link of the octahedron is a 4-cycle."""
        lk = link(octahedron, [0])
        assert lk.f == (1, 4, 4)

    def test_link_of_empty_face_is_complex(self, octahedron):
        """Test that lk(∅) is the complex itself."""
        assert link(octahedron, []) == octahedron

    def test_link_of_non_face_raises(self, octahedron):
        """Test that antipodal vertices have no link."""
        with pytest.raises(NotAFaceError):
            link(octahedron, [0, 1])

    def test_star_contains_face(self, octahedron):
        """Test that the closed star of a vertex has its four triangles."""
        assert len(star(octahedron, [0]).facets) == 4

    def test_delete_every_vertex_raises(self, square):
        """Test that deleting all vertices is an error."""
        with pytest.raises(EmptyComplexError):
            delete(square, square.vertices)

    def test_delete_vertex_of_square_leaves_path(self, square):
        """Test that deleting one vertex of a 4-cycle leaves a path with two edges."""
        assert delete(square, [0]).f == (1, 3, 2)

    def test_induced_subcomplex(self, octahedron):
        """Test that an induced subcomplex on antipodal vertices is two points."""
        assert induced_subcomplex(octahedron, [0, 1]).f == (1, 2)

    def test_join_of_two_point_sets(self):
        """Test that joining three 0-spheres gives the octahedron."""
        pt = from_facets([[0], [1]])
        K = join(join(pt, pt), pt)
        assert K.f == (1, 6, 12, 8)

    def test_join_shifts_colors(self):
        """Test that joined colored complexes get disjoint colors."""
        J = join(cycle(4), cycle(4))
        assert sorted(set(J.colors.values())) == [1, 2, 3, 4]
        assert J.coloring.is_proper(J)

    def test_intersection_and_union(self, octahedron):
        """Test that two stars of adjacent vertices meet in an edge star."""
        a, b = star(octahedron, [0]), star(octahedron, [2])
        meet = intersection(a, b)
        assert meet.dim == 2
        assert len(meet.facets) == 2
        assert len(union(a, b).facets) == 6

    def test_relabel_must_be_injective(self, square):
        """Test that a non-injective relabeling is rejected."""
        with pytest.raises(InputError):
            relabel(square, {v: 0 for v in square.vertices})


class TestBoundary:
    """Tests for boundary_complex."""

    def test_closed_complex_has_void_boundary(self, octahedron):
        """Test that a sphere has no boundary."""
        assert boundary_complex(octahedron).is_void

    def test_disc_boundary_is_cycle(self):
        """Test that a triangulated square has its rim as boundary."""
        disc = from_facets([[0, 1, 2], [0, 2, 3]])
        assert boundary_complex(disc).f == (1, 4, 4)

    def test_three_facets_on_a_ridge_raise(self):
        """Test that an edge in three triangles is not a pseudomanifold."""
        K = from_facets([[0, 1, 2], [0, 1, 3], [0, 1, 4]])
        with pytest.raises(NotAPseudomanifoldError) as exc:
            boundary_complex(K)
        assert exc.value.count == 3

    def test_non_pure_raises(self, dangling_edge):
        """Test that a non-pure complex has no boundary complex."""
        with pytest.raises(PreconditionError):
            boundary_complex(dangling_edge)


class TestColoring:
    """Tests for colorings, rank selection and flag vectors."""

    def test_class_labels_layout(self):
        """Test that ids run class by class with letter labels."""
        labels, colors = class_labels([2, 3])
        assert labels == {0: "u1", 1: "u2", 2: "v1", 3: "v2", 4: "v3"}
        assert colors == {0: 1, 1: 1, 2: 2, 3: 2, 4: 2}

    def test_improper_coloring_detected(self, square):
        """Test that a monochromatic edge is reported."""
        kappa = Coloring({0: 1, 1: 1, 2: 2, 3: 2}, 2)
        with pytest.raises(ImproperColoringError):
            kappa.check_proper(square)

    def test_color_outside_range(self):
        """Test that colors must lie in [d]."""
        with pytest.raises(InputError):
            Coloring({0: 3}, 2)

    def test_rank_selection_of_octahedron(self, octahedron):
        """Test that two colors of the octahedron select a 4-cycle."""
        L = rank_selected(octahedron, octahedron.coloring, [1, 2])
        assert L.f == (1, 4, 4)

    def test_rank_selection_bad_colors(self, octahedron):
        """Test that colors outside [d] are rejected."""
        with pytest.raises(InputError):
            rank_selected(octahedron, octahedron.coloring, [4])

    def test_flag_vector_of_octahedron(self, octahedron):
        """Test flag f and h numbers of the octahedron."""
        flags = flag_vectors(octahedron, octahedron.coloring)
        assert flags.f([1, 2, 3]) == 8
        assert flags.f([1]) == 2
        assert all(flags.h(S) == 1 for S in flags.subsets())

    def test_missing_edges_of_cross_polytope(self, cross4):
        """Test that the cross-polytope misses no bicolored edge."""
        assert missing_edges(cross4, cross4.coloring) == []

    def test_vertex_degrees_of_cycle(self):
        """Test that every vertex of a cycle has degree 2."""
        assert set(vertex_degrees(cycle(6)).values()) == {2}


class TestComplexFile:
    """Tests for the interchange format."""

    def test_round_trip_keeps_labels_and_colors(self, octahedron):
        """Test that to_file and from_file preserve facets, labels and colors."""
        back = from_file(to_file(octahedron))
        assert back == octahedron
        assert back.labels == octahedron.labels
        assert back.colors == octahedron.colors

    def test_ids_become_dense(self):
        """Test that sparse ids are renumbered from 0 in order."""
        K = from_facets([[3, 7], [7, 10]])
        data = to_file(K)
        assert [v.id for v in data.vertices] == [0, 1, 2]
        assert data.facets == [[0, 1], [1, 2]]

    def test_bitmask_helpers(self):
        """Test the face bitmask conversions."""
        assert face_of([0, 2, 5]) == 0b100101
        assert vertices_of(0b100101) == (0, 2, 5)
