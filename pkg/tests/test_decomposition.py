"""
Unit tests for ear decompositions and shellings.

Tests cover:
- Literal validation of ear decompositions, including the rank-3 witness
- Exhaustive ear search: found, none and budget exhaustion
- Shelling validation and search, including the 16-vertex sphere
- Input and precondition errors
"""

import pytest

from balkit.exceptions import InputError, PreconditionError
from balkit.models import SearchStatus, Verdict
from balkit.services.complex import delete, face_of, from_facets, star, union
from balkit.services.construct import gamma16, gamma16_discs, gamma16_rank3
from balkit.services.decomposition import (
    facet_indices,
    find_ear_decomposition,
    find_shelling,
    rank_selection_ear_report,
    validate_ear_decomposition,
    validate_shelling,
)


class TestEarValidation:
    """Tests for validate_ear_decomposition."""

    def test_sphere_is_a_single_piece(self, octahedron):
        """Test that a sphere alone is an ear decomposition with one piece."""
        report = validate_ear_decomposition(octahedron, [octahedron])
        assert report.passed
        assert report.data["pieces"] == 1

    def test_first_piece_must_be_sphere(self, octahedron):
        """Test that a disc cannot start a decomposition."""
        report = validate_ear_decomposition(octahedron, [star(octahedron, [0])])
        assert report.verdict == Verdict.FAIL
        assert report.witness == {"piece": 0}

    def test_uncovered_facets_fail(self, square):
        """Test that pieces must cover every facet."""
        report = validate_ear_decomposition(square, [[0, 1]])
        assert not report.passed

    def test_foreign_facet_raises(self, octahedron):
        """Test that a piece using a non-facet is an input error."""
        with pytest.raises(InputError):
            validate_ear_decomposition(octahedron, [from_facets([[0, 1, 2]])])

    def test_index_out_of_range_raises(self, octahedron):
        """Test that facet indices must exist."""
        with pytest.raises(InputError):
            facet_indices(octahedron, [0, 99])

    def test_no_pieces_fail(self, octahedron):
        """Test that an empty piece list fails."""
        assert not validate_ear_decomposition(octahedron, []).passed

    def test_rank_three_witness(self):
        """Test the three-piece decomposition of the rank-3 selection built from its discs."""
        L = gamma16_rank3()
        discs = gamma16_discs()
        pieces = [union(discs["A"], discs["B"]), discs["C"], discs["D"]]
        report = validate_ear_decomposition(L, pieces)
        assert report.passed
        assert report.data["pieces"] == 3

    def test_pieces_in_wrong_order_fail(self):
        """Test that a disc cannot come first in the rank-3 witness."""
        L = gamma16_rank3()
        discs = gamma16_discs()
        pieces = [discs["C"], union(discs["A"], discs["B"]), discs["D"]]
        assert not validate_ear_decomposition(L, pieces).passed


class TestEarSearch:
    """Tests for find_ear_decomposition."""

    def test_sphere_found(self, octahedron):
        """Test that a sphere has the trivial decomposition."""
        outcome = find_ear_decomposition(octahedron)
        assert outcome.status == SearchStatus.FOUND
        assert outcome.witness == [list(range(len(octahedron.facets)))]

    def test_cycle_found(self, square):
        """Test that a 1-sphere is its own decomposition."""
        outcome = find_ear_decomposition(square)
        assert outcome.status == SearchStatus.FOUND
        assert validate_ear_decomposition(square, outcome.witness).passed

    def test_torus_has_none(self, torus):
        """Test that the torus (one top class, not a sphere) has no decomposition."""
        outcome = find_ear_decomposition(torus)
        assert outcome.status == SearchStatus.NONE

    def test_disc_has_none(self):
        """Test that an acyclic complex has no sphere to start from."""
        outcome = find_ear_decomposition(from_facets([[0, 1, 2], [0, 2, 3]]))
        assert outcome.status == SearchStatus.NONE

    def test_budget_gives_undecided(self, torus):
        """Test that running out of nodes never reports NONE."""
        outcome = find_ear_decomposition(torus, budget=1)
        assert outcome.status == SearchStatus.UNDECIDED
        assert outcome.witness is None

    def test_non_pure_raises(self, dangling_edge):
        """Test that the search needs a pure complex."""
        with pytest.raises(PreconditionError):
            find_ear_decomposition(dangling_edge)

    def test_unknown_color_raises(self):
        """Test that the rank-selection report checks the color."""
        K = gamma16()
        with pytest.raises(InputError):
            rank_selection_ear_report(K, K.coloring, 9)

    @pytest.mark.slow
    def test_rank_three_search(self):
        """Test that the search finds a validated three-piece decomposition."""
        K = gamma16()
        outcome = rank_selection_ear_report(K, K.coloring, 4)
        assert outcome.status == SearchStatus.FOUND
        assert outcome.detail.startswith("pieces needed: 3")
        L = delete(K, K.coloring.classes[4])
        assert validate_ear_decomposition(L, outcome.witness).passed


class TestShelling:
    """Tests for shelling validation and search."""

    def test_octahedron_is_shellable(self, octahedron):
        """Test that a shelling of the octahedron is found and validates."""
        outcome = find_shelling(octahedron)
        assert outcome.status == SearchStatus.FOUND
        assert validate_shelling(octahedron, outcome.witness[0]).passed

    def test_cross_polytope_is_shellable(self, cross4):
        """Test that the 4-cross-polytope is shellable."""
        outcome = find_shelling(cross4)
        assert outcome.status == SearchStatus.FOUND
        assert len(outcome.witness[0]) == 16

    def test_opposite_facets_do_not_shell(self, octahedron):
        """Test that two disjoint triangles are not a shelling prefix."""
        first = octahedron.facets.index(face_of([0, 2, 4]))
        second = octahedron.facets.index(face_of([1, 3, 5]))
        report = validate_shelling(octahedron, [first, second], complete=False)
        assert not report.passed
        assert report.witness["position"] == 1

    def test_prefix_passes_only_when_partial(self, octahedron):
        """Test that a prefix passes with complete=False and fails otherwise."""
        order = find_shelling(octahedron).witness[0][:3]
        assert validate_shelling(octahedron, order, complete=False).passed
        assert not validate_shelling(octahedron, order).passed

    def test_repeated_index_raises(self, octahedron):
        """Test that an order must list distinct facets."""
        with pytest.raises(InputError):
            validate_shelling(octahedron, [0, 0])

    def test_torus_not_shellable(self, torus):
        """Test that the torus has no shelling."""
        assert find_shelling(torus).status == SearchStatus.NONE

    def test_shelling_budget(self, torus):
        """Test that a tiny budget leaves the question open."""
        assert find_shelling(torus, budget=3).status == SearchStatus.UNDECIDED

    @pytest.mark.slow
    def test_sixteen_vertex_sphere_is_shellable(self):
        """Test that the 16-vertex 2-neighborly sphere has a shelling that validates."""
        K = gamma16()
        outcome = find_shelling(K)
        assert outcome.status == SearchStatus.FOUND
        assert len(outcome.witness[0]) == len(K.facets)
        assert validate_shelling(K, outcome.witness[0]).passed

    def test_non_pure_raises(self, dangling_edge):
        """Test that shellings need a pure complex."""
        with pytest.raises(PreconditionError):
            find_shelling(dangling_edge)
