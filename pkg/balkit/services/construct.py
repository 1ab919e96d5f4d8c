"""
Construction Service.

Builders for the standard complexes (cross-polytopes, cycles, suspensions,
balanced connected sums, chorded polygons) and for every named complex of
the toolkit: the 16-vertex balanced 2-neighborly 3-sphere assembled from
chorded discs, the 16-vertex lens space (shipped as a certificate and
rediscoverable by symmetric search), the 2- and 3-spheres used for the
12-vertex census, and the small surfaces used as negative examples.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from balkit.config import COLOR_LETTERS
from balkit.exceptions import (
    BuilderUnavailable,
    ConstructionDataError,
    InputError,
)
from balkit.models import EnumerationSpec, SearchStatus
from balkit.services.complex import (
    Coloring,
    SimplicialComplex,
    boundary_complex,
    class_labels,
    face_of,
    from_file,
    from_facets,
    join,
    missing_edges,
    rank_selected,
    to_file,
    vertices_of,
)
from balkit.services.disc_data import (
    DISC_BOUNDARY,
    DISC_CHORDS,
    LENS_BANDS,
    LENS_CAPS,
    LENS_LINKS,
    LENS_ROTATION,
    LENS_SWAPS,
    LINK_DISCS,
)
from balkit.services.enumeration import enumerate_balanced_spheres, search_symmetric
from balkit.services.homology import homology
from balkit.services.verify import (
    is_closed_homology_manifold,
    is_homology_ball,
    is_homology_sphere,
    is_k_neighborly,
)
from balkit.store import store

logger = logging.getLogger(__name__)


# ==================== Standard Constructions ====================

def cross_polytope(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope: the join of d two-point sets."""
    if d < 1:
        raise InputError(f"cross-polytope dimension must be positive, got {d}")
    labels, colors = class_labels([2] * d)
    facets = [[2 * c + side for c, side in enumerate(choice)] for choice in itertools.product((0, 1), repeat=d)]
    return from_facets(facets, labels=labels, colors=colors, name=f"cross{d}")


def cycle(n: int, letters: str = "uv") -> SimplicialComplex:
    """
    The n-cycle on ids 0..n-1. Even cycles are 2-colored with labels
    taken from `letters`.
    """
    if n < 3:
        raise InputError(f"a cycle needs at least 3 vertices, got {n}")
    facets = [[i, (i + 1) % n] for i in range(n)]
    if n % 2:
        return from_facets(facets, name=f"cycle{n}")
    labels = {i: f"{letters[i % 2]}{i // 2 + 1}" for i in range(n)}
    colors = {i: i % 2 + 1 for i in range(n)}
    return from_facets(facets, labels=labels, colors=colors, name=f"cycle{n}")


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    """Join with two new apex vertices; a colored K gives apexes a new color."""
    top = max(K.vertices) if K.vertices else -1
    north, south = top + 1, top + 2
    facets = [f | (1 << north) for f in K.facets] + [f | (1 << south) for f in K.facets]
    labels = dict(K.labels)
    colors = dict(K.colors)
    kappa = K.coloring
    if kappa is not None:
        letter = COLOR_LETTERS[kappa.d]
        labels.update({north: f"{letter}1", south: f"{letter}2"})
        colors.update({north: kappa.d + 1, south: kappa.d + 1})
    elif K.labels:
        labels.update({north: "n", south: "s"})
    return SimplicialComplex(facets, labels=labels, colors=colors, name=f"susp({K.name})")


def balanced_connected_sum(
    K1: SimplicialComplex,
    K2: SimplicialComplex,
    pairing: Optional[Mapping[int, int]] = None,
    name: str = "",
) -> SimplicialComplex:
    """
    Remove one facet from each complex and glue along the facet boundaries.

    Args:
        K1, K2: Colored complexes of equal dimension
        pairing: Vertex bijection from a facet of K1 onto a facet of K2;
            by default the last facet of K1 is matched by color to the first of K2

    Raises:
        InputError: If the pairing is not a color-compatible bijection between two facets
    """
    kappa1, kappa2 = K1.coloring, K2.coloring
    if kappa1 is None or kappa2 is None:
        raise InputError("balanced connected sum needs two colored complexes")
    if K1.dim != K2.dim:
        raise InputError(f"dimensions differ: {K1.dim} and {K2.dim}")
    if pairing is None:
        F1, F2 = K1.facets[-1], K2.facets[0]
        by_color = {kappa2[w]: w for w in vertices_of(F2)}
        pairing = {v: by_color.get(kappa1[v], -1) for v in vertices_of(F1)}
    F1 = face_of(pairing.keys())
    F2 = face_of(w for w in pairing.values() if w >= 0)
    if F1 not in K1.facets or F2 not in K2.facets or len(set(pairing.values())) != len(pairing):
        raise InputError("pairing must be a bijection between a facet of each complex")
    for v, w in pairing.items():
        if kappa1[v] != kappa2[w]:
            raise InputError(f"pairing sends {K1.label(v)} (color {kappa1[v]}) to {K2.label(w)} (color {kappa2[w]})")

    back = {w: v for v, w in pairing.items()}
    fresh = max(K1.vertices) + 1
    mapping: Dict[int, int] = {}
    labels = dict(K1.labels)
    colors = dict(K1.colors)
    used = {c: sum(1 for x in K1.vertices if kappa1[x] == c) for c in range(1, kappa1.d + 1)}
    for w in K2.vertices:
        if w in back:
            mapping[w] = back[w]
            continue
        mapping[w] = fresh
        c = kappa2[w]
        used[c] = used.get(c, 0) + 1
        labels[fresh] = f"{COLOR_LETTERS[c - 1]}{used[c]}"
        colors[fresh] = c
        fresh += 1
    glued = [f for f in K1.facets if f != F1]
    glued += [face_of(mapping[w] for w in vertices_of(f)) for f in K2.facets if f != F2]
    return SimplicialComplex(glued, labels=labels, colors=colors, name=name or f"{K1.name}#{K2.name}")


# ==================== Chorded Polygons ====================

@dataclass(frozen=True)
class ChordedPolygon:
    """A polygon (cyclic vertex list) with chords drawn inside it."""
    boundary: Tuple[int, ...]
    chords: Tuple[Tuple[int, int], ...]
    name: str = "polygon"

    def validate(self) -> None:
        """
        Raises:
            ConstructionDataError: On repeated vertices, a wrong chord count,
                a chord that is a side or leaves the polygon, or crossing chords
        """
        n = len(self.boundary)
        position = {v: i for i, v in enumerate(self.boundary)}
        if n < 3 or len(position) != n:
            raise ConstructionDataError(self.name, "boundary must list at least 3 distinct vertices")
        if len(self.chords) != n - 3:
            raise ConstructionDataError(self.name, f"{len(self.chords)} chords for a {n}-gon, expected {n - 3}")
        spans = []
        for a, b in self.chords:
            if a not in position or b not in position:
                raise ConstructionDataError(self.name, f"chord ({a}, {b}) leaves the polygon")
            i, j = sorted((position[a], position[b]))
            if j - i in (0, 1) or (i, j) == (0, n - 1):
                raise ConstructionDataError(self.name, f"chord ({a}, {b}) is a side or a point")
            spans.append((i, j))
        if len(set(spans)) != len(spans):
            raise ConstructionDataError(self.name, "a chord is listed twice")
        for (i, j), (k, l) in itertools.combinations(spans, 2):
            if len({i, j, k, l}) == 4 and (i < k < j) != (i < l < j):
                raise ConstructionDataError(
                    self.name, f"chords ({self.boundary[i]}, {self.boundary[j]}) and "
                               f"({self.boundary[k]}, {self.boundary[l]}) cross",
                )


def triangulate_polygon(
    p: ChordedPolygon,
    labels: Optional[Mapping[int, str]] = None,
    colors: Optional[Mapping[int, int]] = None,
) -> SimplicialComplex:
    """
    The disc cut out by the chords.

    In a fully chorded polygon the regions are exactly the triangles of the
    edge graph, so they are read off as 3-cliques and then checked to form a
    homology ball bounded by the polygon.

    Raises:
        ConstructionDataError: If the chords are invalid or the result is not the expected ball
    """
    p.validate()
    n = len(p.boundary)
    edges = {frozenset((p.boundary[i], p.boundary[(i + 1) % n])) for i in range(n)}
    edges |= {frozenset(c) for c in p.chords}
    triangles = [
        t for t in itertools.combinations(sorted(p.boundary), 3)
        if all(frozenset(pair) in edges for pair in itertools.combinations(t, 2))
    ]
    if len(triangles) != n - 2:
        raise ConstructionDataError(p.name, f"{len(triangles)} triangles, expected {n - 2}")
    disc = from_facets(triangles, labels=labels, colors=colors, name=p.name)
    if not is_homology_ball(disc).passed:
        raise ConstructionDataError(p.name, "triangles do not form a disc")
    rim = {face_of((p.boundary[i], p.boundary[(i + 1) % n])) for i in range(n)}
    if set(boundary_complex(disc).facets) != rim:
        raise ConstructionDataError(p.name, "disc boundary is not the polygon")
    return disc


# ==================== The 16-vertex Sphere ====================

GAMMA_LABELS, GAMMA_COLORS = class_labels([4, 4, 4, 4])
GAMMA_IDS = {label: v for v, label in GAMMA_LABELS.items()}


def gamma16_discs() -> Dict[str, SimplicialComplex]:
    """The six chorded discs A, B, C, D, A', B' on the u, v, w vertices."""
    discs = {}
    for name, chords in DISC_CHORDS.items():
        polygon = ChordedPolygon(
            boundary=tuple(GAMMA_IDS[x] for x in DISC_BOUNDARY[name]),
            chords=tuple((GAMMA_IDS[a], GAMMA_IDS[b]) for a, b in chords),
            name=name,
        )
        discs[name] = triangulate_polygon(polygon, GAMMA_LABELS, GAMMA_COLORS)
    return discs


def gamma16() -> SimplicialComplex:
    """
    Balanced 2-neighborly 3-sphere on 16 vertices, four per color.

    Each z vertex is coned over the 2-sphere obtained by gluing two discs
    along their common 12-gon.

    Raises:
        ConstructionDataError: If the discs do not assemble as advertised
    """
    discs = gamma16_discs()
    rims = {name: boundary_complex(disc) for name, disc in discs.items()}
    for group in (("A", "B", "C"), ("D", "A'", "B'")):
        if len({rims[name] for name in group}) != 1:
            raise ConstructionDataError("/".join(group), "discs do not share one boundary cycle")

    top = SimplicialComplex(
        [f for name in ("A", "B", "C") for f in discs[name].facets],
        labels=GAMMA_LABELS, colors=GAMMA_COLORS,
    )
    absent = {face_of(e) for e in missing_edges(top, Coloring(top.colors, 3))}
    d_chords = {face_of((GAMMA_IDS[a], GAMMA_IDS[b])) for a, b in DISC_CHORDS["D"]}
    if absent != d_chords:
        raise ConstructionDataError("D", "chords are not the bicolored pairs missing from A, B and C")

    facets = []
    for z, (first, second) in LINK_DISCS.items():
        lk = SimplicialComplex(discs[first].facets + discs[second].facets, labels=GAMMA_LABELS)
        if not is_homology_sphere(lk).passed:
            raise ConstructionDataError(f"lk {z}", f"{first} and {second} do not glue to a 2-sphere")
        facets.extend(f | (1 << GAMMA_IDS[z]) for f in lk.facets)
    return SimplicialComplex(facets, labels=GAMMA_LABELS, colors=GAMMA_COLORS, name="gamma16")


def gamma16_rank3() -> SimplicialComplex:
    """Rank selection of the 16-vertex sphere to colors u, v, w."""
    K = gamma16()
    return rank_selected(K, K.coloring, [1, 2, 3]).renamed("gamma16-rank3")


# ==================== The 16-vertex Lens Space ====================

def lens_spec(generators: Sequence[str]) -> EnumerationSpec:
    return EnumerationSpec(
        dimension=3,
        sizes=[4, 4, 4, 4],
        neighborly=2,
        generators=list(generators),
        target_betti=[0, 0, 0, 1],
        target_torsion={1: [3]},
        manifold=True,
        first_only=True,
    )


def _lens_certified(K: SimplicialComplex) -> bool:
    kappa = K.coloring
    if kappa is None or kappa.class_sizes != (4, 4, 4, 4):
        return False
    profile = homology(K)
    return (
        is_k_neighborly(K, kappa, 2).passed
        and is_closed_homology_manifold(K).passed
        and [profile.betti_at(i) for i in range(-1, 4)] == [0, 0, 0, 0, 1]
        and profile.torsion == {1: [3]}
    )


def lens16_links() -> Dict[str, SimplicialComplex]:
    """
    The four z links: a band of the shared torus capped by two hexagons.

    Raises:
        ConstructionDataError: If a cap is not a disc or a link is not a 2-sphere
    """
    caps = {}
    for name, (rim, chords) in LENS_CAPS.items():
        polygon = ChordedPolygon(
            boundary=tuple(GAMMA_IDS[x] for x in rim),
            chords=tuple((GAMMA_IDS[a], GAMMA_IDS[b]) for a, b in chords),
            name=name,
        )
        caps[name] = triangulate_polygon(polygon, GAMMA_LABELS, GAMMA_COLORS)
    links = {}
    for z, (top, band, bottom) in LENS_LINKS.items():
        strip = [face_of(GAMMA_IDS[x] for x in t.split()) for t in LENS_BANDS[band]]
        lk = SimplicialComplex(caps[top].facets + tuple(strip) + caps[bottom].facets, labels=GAMMA_LABELS)
        if len(lk.facets) != 20 or not is_homology_sphere(lk).passed:
            raise ConstructionDataError(f"lk {z}", f"{top}, {band} and {bottom} do not glue to a 2-sphere")
        links[z] = lk
    return links


def lens16_certificate() -> SimplicialComplex:
    """The shipped 16-vertex lens space, coned together from its four z links."""
    facets = [
        f | (1 << GAMMA_IDS[z])
        for z, lk in lens16_links().items()
        for f in lk.facets
    ]
    return SimplicialComplex(facets, labels=GAMMA_LABELS, colors=GAMMA_COLORS, name="lens16")


def search_lens16(budget: Optional[int] = None) -> SimplicialComplex:
    """
    Rediscover the lens space by symmetric search, first under the rotation
    together with the link-exchanging involutions and, failing that, under
    the rotation alone. The first hit is stored.

    Raises:
        BuilderUnavailable: If the search finds nothing in budget
    """
    statuses = []
    for generators in ((LENS_ROTATION,) + LENS_SWAPS, (LENS_ROTATION,)):
        census = search_symmetric(lens_spec(generators), budget=budget)
        statuses.append(census.status)
        if census.entries:
            K = from_file(census.entries[0].complex_file).renamed("lens16")
            store.save_complex("lens16", to_file(K))
            return K
    reason = "search undecided within budget" if SearchStatus.UNDECIDED in statuses else "search found no complex"
    raise BuilderUnavailable("lens16", reason)


def lens16(budget: Optional[int] = None) -> SimplicialComplex:
    """
    Balanced 2-neighborly 16-vertex triangulation with the homology of L(3,1).

    The shipped certificate is re-verified and returned. Should it fail, a
    stored search result is tried, and only then a fresh search.

    Raises:
        BuilderUnavailable: If nothing verifies and the search finds nothing in budget
    """
    try:
        K = lens16_certificate()
        if _lens_certified(K):
            return K
        logger.warning("shipped lens16 certificate failed re-verification")
    except ConstructionDataError as e:
        logger.warning("shipped lens16 certificate is broken: %s", e.message)

    cached = store.load_complex("lens16")
    if cached is not None:
        K = from_file(cached)
        if _lens_certified(K):
            return K.renamed("lens16")
        logger.warning("stored lens16 certificate failed re-verification; searching again")
    return search_lens16(budget)


# ==================== Census-backed Spheres ====================

def sigma(i: int) -> SimplicialComplex:
    """
    The three balanced 2-spheres with color classes of size at most 3:
    the octahedron, the suspension of a 6-cycle and the unique one on 9 vertices.
    """
    if i == 1:
        K = cross_polytope(3)
    elif i == 2:
        K = suspension(cycle(6))
    elif i == 3:
        census = enumerate_balanced_spheres(EnumerationSpec(dimension=2, sizes=[3, 3, 3]))
        if len(census.entries) != 1:
            raise ConstructionDataError("sigma3", f"census holds {len(census.entries)} spheres, expected 1")
        K = from_file(census.entries[0].complex_file)
    else:
        raise InputError(f"sigma index must be 1, 2 or 3, got {i}")
    return K.renamed(f"sigma{i}")


def s1() -> SimplicialComplex:
    """Balanced connected sum of two 4-cross-polytope boundaries (42 edges)."""
    return balanced_connected_sum(cross_polytope(4), cross_polytope(4), name="s1")


def s2() -> SimplicialComplex:
    """Join of two 6-cycles (48 edges)."""
    return join(cycle(6), cycle(6, letters="wz"), name="s2")


def s3() -> SimplicialComplex:
    """
    The census sphere with 46 edges among balanced 3-spheres with color
    classes of size 3.

    Raises:
        ConstructionDataError: If the census does not hold exactly one such sphere
    """
    census = enumerate_balanced_spheres(EnumerationSpec(dimension=3, sizes=[3, 3, 3, 3], max_edges=50))
    matches = [e for e in census.entries if e.f_vector[2] == 46]
    if len(matches) != 1:
        raise ConstructionDataError("s3", f"census holds {len(matches)} spheres with 46 edges, expected 1")
    return from_file(matches[0].complex_file).renamed("s3")


def lemma_spheres() -> Tuple[SimplicialComplex, SimplicialComplex, SimplicialComplex]:
    """The three balanced 3-spheres with color classes of size 3 and at most 50 edges."""
    return s1(), s2(), s3()


# ==================== Small Surfaces ====================

def torus7() -> SimplicialComplex:
    """The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    facets = [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    facets += [[i, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    return from_facets(facets, name="torus7")


def rp2_6() -> SimplicialComplex:
    """The 6-vertex real projective plane."""
    triangles = ["124", "125", "134", "136", "156", "235", "236", "245", "346", "456"]
    return from_facets([[int(x) - 1 for x in t] for t in triangles], name="rp2-6")


NAMED_BUILDERS: Dict[str, Callable[[], SimplicialComplex]] = {
    "cross4": lambda: cross_polytope(4),
    "octahedron": lambda: cross_polytope(3),
    "sigma1": lambda: sigma(1),
    "sigma2": lambda: sigma(2),
    "sigma3": lambda: sigma(3),
    "s1": s1,
    "s2": s2,
    "s3": s3,
    "gamma16": gamma16,
    "gamma16-rank3": gamma16_rank3,
    "lens16": lens16,
    "torus7": torus7,
    "rp2-6": rp2_6,
}


def build(name: str) -> SimplicialComplex:
    """
    Build a named complex.

    Raises:
        InputError: If the name is unknown
    """
    builder = NAMED_BUILDERS.get(name)
    if builder is None:
        raise InputError(f"unknown complex '{name}'; choose from {', '.join(NAMED_BUILDERS)}")
    return builder().renamed(name)
