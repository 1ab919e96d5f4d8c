"""
Unit tests for the recognition predicates.

Tests cover:
- Proper colorings and balanced neighborliness with witnesses
- Homology spheres, balls and closed manifolds
- Flag Dehn-Sommerville, Alexander duality and face-number identities
- Link intersections and the Heegaard profile on the lens space
- Link memoization by canonical form
"""

import pytest

from balkit.exceptions import InputError, PreconditionError
from balkit.models import Verdict
from balkit.services.complex import Coloring, from_facets, relabel
from balkit.services.construct import cycle, gamma16, lens16, sigma
from balkit.services.verify import (
    LinkMemo,
    alexander_duality,
    degree_profile,
    dehn_sommerville_flag,
    equal_color_sizes,
    find_proper_coloring,
    heegaard_profile,
    homological_boundary,
    is_balanced,
    is_closed_homology_manifold,
    is_homology_ball,
    is_homology_sphere,
    is_k_neighborly,
    link_intersection_profile,
    link_memo,
    rank_selection_face_identity,
)


class TestColoring:
    """Tests for proper colorings and balancedness."""

    def test_cross_polytope_is_balanced(self, cross4):
        """Test that the 4-cross-polytope has a proper 4-coloring."""
        kappa = find_proper_coloring(cross4, 4)
        assert kappa is not None
        assert kappa.is_proper(cross4)

    def test_torus_is_not_balanced(self, torus):
        """Test that the 7-vertex torus (complete graph) is not 3-colorable."""
        report = is_balanced(torus, 3)
        assert report.verdict == Verdict.FAIL
        assert len(report.witness) == 7

    def test_wrong_dimension_raises(self, octahedron):
        """Test that d must match the dimension."""
        with pytest.raises(InputError):
            find_proper_coloring(octahedron, 4)

    def test_cross_polytope_fully_neighborly(self, cross4):
        """Test that the cross-polytope is balanced 4-neighborly."""
        for k in range(1, 5):
            assert is_k_neighborly(cross4, cross4.coloring, k).passed

    def test_hexagon_not_two_neighborly(self):
        """Test that a 6-cycle misses three bicolored pairs."""
        K = cycle(6)
        report = is_k_neighborly(K, K.coloring, 2)
        assert not report.passed
        assert report.check == "neighborly[2]"
        assert report.data["missing"] == 3
        assert len(report.witness) == 2

    def test_improper_coloring_is_precondition(self, square):
        """Test that an improper coloring is a precondition error."""
        with pytest.raises(PreconditionError):
            is_k_neighborly(square, Coloring({0: 1, 1: 1, 2: 2, 3: 2}, 2), 1)


class TestSpheresAndBalls:
    """Tests for sphere, ball and manifold recognition."""

    def test_octahedron_is_sphere(self, octahedron):
        """Test that the octahedron is a homology 2-sphere."""
        report = is_homology_sphere(octahedron)
        assert report.passed
        assert report.data["dimension"] == 2

    def test_torus_is_not_sphere(self, torus):
        """Test that the torus fails at the empty face."""
        report = is_homology_sphere(torus)
        assert not report.passed
        assert report.witness == []

    def test_projective_plane_fails_over_integers_only(self, projective_plane):
        """Test that RP^2 is not a sphere over the integers or over Z/2."""
        assert not is_homology_sphere(projective_plane).passed
        assert not is_homology_sphere(projective_plane, 2).passed

    def test_non_pure_raises(self, dangling_edge):
        """Test that sphere recognition needs a pure complex."""
        with pytest.raises(PreconditionError):
            is_homology_sphere(dangling_edge)

    def test_disc_is_ball(self):
        """Test that a triangulated square is a homology 2-ball with a 4-cycle boundary."""
        disc = from_facets([[0, 1, 2], [0, 2, 3]])
        report = is_homology_ball(disc)
        assert report.passed
        assert len(report.data["boundary"]) == 4

    def test_sphere_is_not_ball(self, octahedron):
        """Test that a sphere is not acyclic."""
        assert not is_homology_ball(octahedron).passed

    def test_homological_boundary_of_sphere_is_void(self, octahedron):
        """Test that no link of a sphere is acyclic."""
        assert homological_boundary(octahedron).is_void

    def test_surfaces_are_manifolds(self, torus, projective_plane):
        """Test that closed surfaces pass the manifold check."""
        assert is_closed_homology_manifold(torus).passed
        assert is_closed_homology_manifold(projective_plane).passed

    def test_two_spheres_are_not_connected(self, octahedron):
        """Test that a disjoint union fails with one witness per component."""
        shifted = [[v + 6 for v in f] for f in octahedron.facet_lists()]
        K = from_facets(octahedron.facet_lists() + shifted)
        report = is_closed_homology_manifold(K)
        assert not report.passed
        assert len(report.witness) == 2


class TestIdentities:
    """Tests for face-number identities."""

    def test_dehn_sommerville_on_spheres(self, sphere_fixtures):
        """Test flag Dehn-Sommerville on every small sphere fixture."""
        for K in sphere_fixtures:
            assert dehn_sommerville_flag(K, K.coloring).passed

    def test_dehn_sommerville_needs_matching_colors(self, octahedron):
        """Test that d must equal dim + 1."""
        kappa = Coloring(octahedron.colors, 4)
        with pytest.raises(PreconditionError):
            dehn_sommerville_flag(octahedron, kappa)

    def test_alexander_duality_on_spheres(self, sphere_fixtures):
        """Test Alexander duality across all rank selections."""
        for K in sphere_fixtures:
            report = alexander_duality(K, K.coloring)
            assert report.passed
            assert report.data["subsets"] == 2 ** K.coloring.d

    def test_equal_color_sizes(self, cross4):
        """Test that the 2-neighborly 3-sphere has equal color classes."""
        report = equal_color_sizes(cross4, cross4.coloring, 2)
        assert report.passed
        assert report.data["size"] == 2

    def test_rank_three_face_count(self):
        """Test that f_2 of the rank-3 selection of the 16-vertex sphere is 48 - 12 + 4."""
        K = gamma16()
        report = rank_selection_face_identity(K, K.coloring, [1, 2, 3])
        assert report.passed
        assert report.data["actual"] == 40
        assert report.data["betti"] == [0, 0, 3]

    def test_degree_profile_of_suspended_hexagon(self):
        """Test the degree multiset of the suspension of a 6-cycle."""
        report = degree_profile(sigma(2))
        assert report.data["degrees"] == {4: 6, 6: 2}
        assert report.data["edges"] == 18


class TestLinkIntersections:
    """Tests for link intersections and the Heegaard profile."""

    def test_octahedron_antipodal_links_agree(self, octahedron):
        """Test that antipodal vertices of the octahedron share their link."""
        profile = link_intersection_profile(octahedron, octahedron.coloring, 1)
        assert [p.components for p in profile.pairs] == [1]

    def test_pair_intersections_are_balls(self):
        """Test the ball/sphere verdicts on the suspended hexagon's 3-class."""
        K = sigma(2)
        color = next(c for c, vs in K.coloring.classes.items() if len(vs) == 3)
        profile = link_intersection_profile(K, K.coloring, color, with_homology=True)
        assert len(profile.pairs) == 3
        assert all(p.is_ball for p in profile.pairs)
        assert all(t.is_sphere for t in profile.triples)

    def test_unknown_color_raises(self, octahedron):
        """Test that colors outside [d] are rejected."""
        with pytest.raises(InputError):
            link_intersection_profile(octahedron, octahedron.coloring, 9)

    def test_heegaard_needs_dimension_three(self, octahedron):
        """Test that the Heegaard profile refuses a 2-sphere."""
        with pytest.raises(PreconditionError):
            heegaard_profile(octahedron, octahedron.coloring, ((0, 1), (2, 3)))

    def test_heegaard_needs_a_color_class(self):
        """Test that the four vertices must form one color class."""
        K = gamma16()
        with pytest.raises(PreconditionError):
            heegaard_profile(K, K.coloring, ((0, 1), (2, 4)))

    def test_heegaard_splitting_of_lens_space(self):
        """Test that z1, z2 against z3, z4 splits the lens space into two solid tori."""
        K = lens16()
        z1, z2, z3, z4 = (K.vertex_by_label(f"z{i}") for i in range(1, 5))
        report = heegaard_profile(K, K.coloring, ((z1, z2), (z3, z4)))
        assert report.passed
        assert report.data["euler"] == 0

    def test_mixed_split_is_not_a_splitting(self):
        """Test that pairing z1 with z3 leaves A without solid-torus homology."""
        K = lens16()
        z1, z2, z3, z4 = (K.vertex_by_label(f"z{i}") for i in range(1, 5))
        report = heegaard_profile(K, K.coloring, ((z1, z3), (z2, z4)))
        assert report.verdict == Verdict.FAIL

    def test_lens_space_link_components(self):
        """Test two components for the paired z links and three for the mixed ones."""
        K = lens16()
        profile = link_intersection_profile(K, K.coloring, 4)
        counts = {tuple(p.vertices): p.components for p in profile.pairs}
        assert counts[("z1", "z2")] == 2
        assert counts[("z3", "z4")] == 2
        assert sorted(counts.values()) == [2, 2, 3, 3, 3, 3]


class TestLinkMemo:
    """Tests for link memoization by canonical form."""

    def test_relabeled_link_is_a_hit(self):
        """Test that an isomorphic copy under other ids reuses the stored homology."""
        memo = LinkMemo()
        C = cycle(5)
        first = memo.homology(C)
        again = memo.homology(relabel(C, {v: v + 10 for v in C.vertices}))
        assert again == first
        assert memo.hits == 1

    def test_sphere_verdict_reused(self, octahedron):
        """Test that the second of two isomorphic sphere checks is answered from the memo."""
        memo = LinkMemo()
        assert memo.is_sphere(octahedron)
        before = memo.hits
        assert memo.is_sphere(relabel(octahedron, {v: 20 - v for v in octahedron.vertices}))
        assert memo.hits == before + 1

    def test_non_sphere_verdict_is_remembered(self, torus):
        """Test that a failing verdict is stored as well."""
        memo = LinkMemo()
        assert not memo.is_sphere(torus)
        assert not memo.is_sphere(torus)
        assert memo.hits == 1

    def test_non_isomorphic_links_are_kept_apart(self):
        """Test that a hexagon and two triangles never share an entry."""
        memo = LinkMemo()
        two_triangles = from_facets([[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]])
        assert memo.homology(cycle(6)).betti == [0, 1]
        assert memo.homology(two_triangles).betti == [1, 2]
        assert memo.hits == 0

    def test_manifold_check_memoizes_vertex_links(self, torus):
        """Test that the seven isomorphic vertex links of the torus are checked once."""
        link_memo.clear()
        assert is_closed_homology_manifold(torus).passed
        assert link_memo.hits >= 6
