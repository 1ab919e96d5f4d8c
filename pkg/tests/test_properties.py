"""
Randomized property tests.

Tests cover:
- Chain complex and Euler-Poincare identities on random complexes
- Engine Betti numbers against dense numpy ranks
- Canonical forms under random relabeling
- Links of links and h-vectors of joins
"""

import numpy as np
import pytest

from balkit.services.complex import f_vector, from_facets, join, link, relabel, vertices_of
from balkit.services.construct import cross_polytope, cycle
from balkit.services.homology import boundary_matrices, euler_poincare_holds, homology
from balkit.services.symmetry import automorphisms, canonical_form, is_automorphism

CASES = 200
SEED = 20240917


def random_complex(rng, max_vertices=7):
    """A random complex on at most max_vertices vertices with up to 7 facets of size 1-4."""
    n = int(rng.integers(3, max_vertices + 1))
    facets = []
    for _ in range(int(rng.integers(1, 8))):
        size = int(rng.integers(1, 5))
        facets.append(sorted(rng.choice(n, size=min(size, n), replace=False).tolist()))
    return from_facets(facets)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


class TestChainProperties:
    """Identities of the chain complex."""

    def test_boundary_squares_to_zero(self, rng):
        """Test that consecutive boundary matrices multiply to zero."""
        for _ in range(CASES):
            ms = boundary_matrices(random_complex(rng))
            for lower, upper in zip(ms, ms[1:]):
                if min(lower.shape) and min(upper.shape):
                    assert not np.any(lower.to_dense() @ upper.to_dense())

    def test_euler_poincare(self, rng):
        """Test that alternating sums of face numbers and Betti numbers agree."""
        for _ in range(CASES):
            K = random_complex(rng)
            assert euler_poincare_holds(K, homology(K, "rational"))

    def test_betti_matches_dense_ranks(self, rng):
        """Test rational Betti numbers against numpy matrix ranks."""
        for _ in range(CASES):
            K = random_complex(rng)
            ranks = [
                int(np.linalg.matrix_rank(m.to_dense())) if min(m.shape) else 0
                for m in boundary_matrices(K)
            ]
            ranks.append(0)
            expected = [K.f[k + 1] - ranks[k] - ranks[k + 1] for k in range(K.dim + 1)]
            assert homology(K, "rational").betti == expected

    def test_integer_free_rank_is_rational_rank(self, rng):
        """Test that integer Betti numbers count free summands only."""
        for _ in range(CASES):
            K = random_complex(rng)
            assert homology(K).betti == homology(K, "rational").betti


class TestSymmetryProperties:
    """Canonical forms and automorphisms on random complexes."""

    def test_canonical_form_is_relabeling_invariant(self, rng):
        """Test that a random relabeling never changes the canonical facets."""
        for _ in range(CASES):
            K = random_complex(rng)
            image = (rng.permutation(K.n_vertices) + 3).tolist()
            L = relabel(K, dict(zip(K.vertices, image)))
            assert canonical_form(L).facets == canonical_form(K).facets

    def test_generators_preserve_facets(self, rng):
        """Test that every returned automorphism generator is an automorphism."""
        for _ in range(CASES):
            K = random_complex(rng)
            assert all(is_automorphism(K, g) for g in automorphisms(K))


class TestFaceProperties:
    """Links and joins."""

    def test_link_of_link(self, rng):
        """Test lk(lk(K, F), G) = lk(K, F + G) for disjoint faces F, G of a facet."""
        for _ in range(CASES):
            K = random_complex(rng)
            facet = vertices_of(K.facets[int(rng.integers(len(K.facets)))])
            side = rng.integers(0, 3, size=len(facet))
            F = [v for v, s in zip(facet, side) if s == 0]
            G = [v for v, s in zip(facet, side) if s == 1]
            assert link(link(K, F), G) == link(K, F + G)

    def test_join_multiplies_h_polynomials(self, rng):
        """Test that the h-vector of a join is the convolution of the h-vectors."""
        pool = [cross_polytope(1), cross_polytope(2), cross_polytope(3), cycle(4), cycle(5), cycle(6)]
        for _ in range(CASES):
            a, b = (pool[int(i)] for i in rng.integers(0, len(pool), size=2))
            h = f_vector(join(a, b)).h
            expected = np.convolve(f_vector(a).h, f_vector(b).h)
            assert list(h) == expected.tolist()
