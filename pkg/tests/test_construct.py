"""
Unit tests for the named constructions.

Tests cover:
- Cross-polytopes, cycles, suspensions, joins and balanced connected sums
- Chorded polygon validation and triangulation
- The 16-vertex sphere, its discs and its rank-3 selection
- The census-backed spheres and the name registry
- The shipped lens space, its links and its search fallback
"""

import pytest

from balkit.exceptions import BuilderUnavailable, ConstructionDataError, InputError
from balkit.services import construct
from balkit.services.complex import boundary_complex, link, to_file
from balkit.services.construct import (
    GAMMA_IDS,
    NAMED_BUILDERS,
    ChordedPolygon,
    balanced_connected_sum,
    build,
    cross_polytope,
    cycle,
    gamma16,
    gamma16_discs,
    gamma16_rank3,
    lens16,
    lens16_certificate,
    lens16_links,
    s1,
    s2,
    search_lens16,
    sigma,
    suspension,
    triangulate_polygon,
)
from balkit.services.homology import homology
from balkit.services.verify import (
    is_balanced,
    is_closed_homology_manifold,
    is_homology_ball,
    is_homology_sphere,
    is_k_neighborly,
)


class TestStandardConstructions:
    """Tests for the generic builders."""

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
    def test_cross_polytope(self, d):
        """Test that the d-cross-polytope is a balanced (d-1)-sphere with 2^d facets."""
        K = cross_polytope(d)
        assert len(K.facets) == 2 ** d
        assert K.coloring.is_proper(K)
        assert is_homology_sphere(K).passed

    def test_cross_polytope_rejects_zero(self):
        """Test that the dimension must be positive."""
        with pytest.raises(InputError):
            cross_polytope(0)

    def test_odd_cycle_is_uncolored(self):
        """Test that odd cycles carry no coloring."""
        assert cycle(5).coloring is None
        assert cycle(6).coloring is not None

    def test_short_cycle_raises(self):
        """Test that a cycle needs three vertices."""
        with pytest.raises(InputError):
            cycle(2)

    def test_suspension_adds_a_color(self):
        """Test that suspending a colored 6-cycle gives a balanced 2-sphere."""
        K = suspension(cycle(6))
        assert K.f == (1, 8, 18, 12)
        assert K.coloring.d == 3
        assert is_homology_sphere(K).passed

    def test_connected_sum_removes_two_facets(self, cross4):
        """Test that gluing two cross-polytopes keeps a sphere with 12 vertices."""
        K = balanced_connected_sum(cross4, cross4)
        assert K.f[1] == 12
        assert len(K.facets) == 30
        assert K.coloring.is_proper(K)
        assert is_homology_sphere(K).passed

    def test_connected_sum_needs_colors(self):
        """Test that uncolored complexes cannot be summed."""
        with pytest.raises(InputError):
            balanced_connected_sum(cycle(5), cycle(5))

    def test_connected_sum_color_mismatch(self, octahedron):
        """Test that the pairing must respect colors."""
        with pytest.raises(InputError):
            balanced_connected_sum(octahedron, octahedron, pairing={0: 2, 2: 0, 4: 4})


class TestChordedPolygons:
    """Tests for ChordedPolygon and triangulate_polygon."""

    def test_fan_triangulation(self):
        """Test that a fan of chords gives a disc bounded by the polygon."""
        disc = triangulate_polygon(ChordedPolygon(boundary=(0, 1, 2, 3, 4), chords=((0, 2), (0, 3))))
        assert len(disc.facets) == 3
        assert is_homology_ball(disc).passed
        assert boundary_complex(disc).f == (1, 5, 5)

    @pytest.mark.parametrize("boundary,chords", [
        ((0, 1, 2, 3), ()),
        ((0, 1, 2, 3), ((0, 1),)),
        ((0, 1, 2, 3, 4, 5), ((0, 3), (1, 4), (2, 5))),
        ((0, 1, 2, 3), ((0, 9),)),
        ((0, 0, 1), ()),
    ])
    def test_invalid_chords(self, boundary, chords):
        """Test wrong counts, sides, crossings, foreign vertices and repeats."""
        with pytest.raises(ConstructionDataError):
            ChordedPolygon(boundary=boundary, chords=chords).validate()


class TestSixteenVertexSphere:
    """Tests for the 16-vertex sphere and its parts."""

    def test_f_vector(self):
        """Test the face numbers of the 2-neighborly sphere."""
        assert gamma16().f == (1, 16, 96, 160, 80)

    def test_is_balanced_neighborly_sphere(self):
        """Test that it is a balanced 2-neighborly homology 3-sphere."""
        K = gamma16()
        assert is_balanced(K, 4).passed
        assert is_k_neighborly(K, K.coloring, 2).passed
        assert is_homology_sphere(K).passed

    def test_discs_are_balls(self):
        """Test that each of the six chorded discs is a 2-ball."""
        discs = gamma16_discs()
        assert sorted(discs) == sorted(["A", "B", "C", "D", "A'", "B'"])
        assert all(is_homology_ball(disc).passed for disc in discs.values())

    def test_z_links_are_unions_of_discs(self):
        """Test that the link of z1 is the union of discs A and C."""
        K = gamma16()
        discs = gamma16_discs()
        lk = link(K, [GAMMA_IDS["z1"]])
        assert set(lk.facets) == set(discs["A"].facets) | set(discs["C"].facets)

    def test_rank_three_selection(self):
        """Test the rank-3 selection has three top homology classes."""
        L = gamma16_rank3()
        assert L.f[3] == 40
        assert homology(L).betti == [0, 0, 3]


class TestNamedSpheres:
    """Tests for the census-backed spheres and the registry."""

    def test_sigma_two(self):
        """Test the suspended hexagon."""
        assert sigma(2).f == (1, 8, 18, 12)

    def test_sigma_three_is_nine_vertex_sphere(self, reset_store):
        """Test that sigma3 is the unique census sphere on 3+3+3 vertices."""
        K = sigma(3)
        assert K.f[1] == 9
        assert is_homology_sphere(K).passed

    def test_sigma_index_range(self):
        """Test that only indices 1-3 exist."""
        with pytest.raises(InputError):
            sigma(4)

    def test_s1_and_s2_edge_counts(self):
        """Test the edge counts 42 and 48 of the two explicit 12-vertex spheres."""
        assert s1().f[2] == 42
        assert s2().f[2] == 48
        assert is_homology_sphere(s2()).passed

    def test_build_renames(self):
        """Test that build returns the complex under its registry name."""
        assert build("octahedron").name == "octahedron"
        assert "lens16" in NAMED_BUILDERS

    def test_build_unknown_raises(self):
        """Test that unknown names are input errors."""
        with pytest.raises(InputError):
            build("klein-bottle")


class TestLensSpace:
    """Tests for the shipped 16-vertex lens space and its fallbacks."""

    def test_links_are_capped_cylinders(self):
        """Test that each z link is a 2-sphere with 12 vertices and 20 triangles."""
        links = lens16_links()
        assert sorted(links) == ["z1", "z2", "z3", "z4"]
        assert all(lk.f == (1, 12, 30, 20) for lk in links.values())

    def test_paired_links_share_their_caps(self):
        """Test that paired links share both caps and mixed links share three rhombi."""
        links = {z: set(lk.facets) for z, lk in lens16_links().items()}
        assert len(links["z1"] & links["z2"]) == 8
        assert len(links["z3"] & links["z4"]) == 8
        assert len(links["z1"] & links["z3"]) == 6
        assert len(links["z2"] & links["z4"]) == 6

    def test_certificate_reverifies_without_search(self, reset_store):
        """Test the shipped lens space: balanced, 2-neighborly, a manifold with H_1 = Z/3."""
        K = lens16()
        profile = homology(K)
        assert K.f == (1, 16, 96, 160, 80)
        assert K.coloring.class_sizes == (4, 4, 4, 4)
        assert is_balanced(K, 4).passed
        assert is_k_neighborly(K, K.coloring, 2).passed
        assert is_closed_homology_manifold(K).passed
        assert not is_homology_sphere(K).passed
        assert profile.betti == [0, 0, 0, 1]
        assert profile.torsion == {1: [3]}
        assert reset_store.load_complex("lens16") is None

    def test_stored_certificate_used_when_shipped_one_breaks(self, reset_store, monkeypatch):
        """Test that a stored certificate is re-verified and returned before any search."""
        reset_store.save_complex("lens16", to_file(lens16_certificate()))

        def broken():
            raise ConstructionDataError("lens16", "tables damaged")

        monkeypatch.setattr(construct, "lens16_certificate", broken)
        assert lens16(budget=1).f == (1, 16, 96, 160, 80)

    def test_search_fallback_is_undecided_on_tiny_budget(self, reset_store, monkeypatch):
        """Test that with no usable certificate a one-node search gives BuilderUnavailable."""
        def broken():
            raise ConstructionDataError("lens16", "tables damaged")

        monkeypatch.setattr(construct, "lens16_certificate", broken)
        with pytest.raises(BuilderUnavailable):
            lens16(budget=1)

    @pytest.mark.slow
    def test_search_rediscovers_a_lens_space(self, reset_store):
        """Test that the symmetric search finds and stores a complex with the same invariants."""
        K = search_lens16()
        assert K.coloring.class_sizes == (4, 4, 4, 4)
        assert is_k_neighborly(K, K.coloring, 2).passed
        assert is_closed_homology_manifold(K).passed
        assert homology(K).torsion == {1: [3]}
        assert reset_store.load_complex("lens16") is not None
