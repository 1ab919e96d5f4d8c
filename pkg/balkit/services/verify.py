"""
Verification Service.

Recognition predicates for balanced complexes: colorability,
neighborliness, homology spheres, balls and closed manifolds, flag
Dehn-Sommerville symmetry, the equal-color-size law, link intersections,
Alexander duality and the homological Heegaard profile.

Every predicate returns a PredicateReport. A failed precondition raises
PreconditionError instead, so it can never be mistaken for a fail verdict.
"""

import itertools
import logging
import threading
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from balkit.config import MAX_VERTICES
from balkit.exceptions import (
    BalkitError,
    ImproperColoringError,
    InputError,
    NotAPseudomanifoldError,
    PreconditionError,
)
from balkit.models import (
    HomologyProfile,
    LinkIntersectionProfile,
    PairIntersection,
    PredicateReport,
    TripleIntersection,
    Verdict,
)
from balkit.services.complex import (
    Coloring,
    Face,
    SimplicialComplex,
    boundary_complex,
    euler_characteristic,
    face_of,
    flag_vectors,
    intersection,
    link_mask,
    rank_selected,
    star,
    union,
    vertex_degrees,
    vertices_of,
)
from balkit.services.homology import Coefficients, homology, normalize_coefficients
from balkit.services.symmetry import canonical_form

logger = logging.getLogger(__name__)


def _passed(check: str, detail: str = "", **data) -> PredicateReport:
    return PredicateReport(check=check, verdict=Verdict.PASS, detail=detail, data=data)


def _failed(check: str, witness, detail: str, **data) -> PredicateReport:
    return PredicateReport(check=check, verdict=Verdict.FAIL, witness=witness, detail=detail, data=data)


def _require_pure(K: SimplicialComplex, check: str) -> None:
    if K.is_void:
        raise PreconditionError(check, "complex is void")
    if not K.is_pure:
        raise PreconditionError(check, "complex is not pure")


def _require_proper(K: SimplicialComplex, kappa: Coloring, check: str) -> None:
    try:
        kappa.check_proper(K)
    except (ImproperColoringError, InputError) as e:
        raise PreconditionError(check, e.message)


# ==================== Link Memo ====================

class LinkMemo:
    """
    Homology of links keyed by canonical form, so isomorphic links met
    under different labels are computed once. Links without vertices or
    too large for a canonical form go straight to the homology engine.
    """

    MAX_ENTRIES = 100_000

    def __init__(self):
        self._profiles: Dict[Tuple, HomologyProfile] = {}
        self._spheres: Dict[Tuple, bool] = {}
        self._lock = threading.RLock()
        self.hits = 0

    def clear(self) -> None:
        with self._lock:
            self._profiles.clear()
            self._spheres.clear()
            self.hits = 0

    def _key(self, L: SimplicialComplex, coefficients: Coefficients) -> Optional[Tuple]:
        if not L.vertices or L.n_vertices > MAX_VERTICES:
            return None
        return (canonical_form(L).key,) + normalize_coefficients(coefficients)

    def _lookup(self, table: Dict[Tuple, object], key: Optional[Tuple]):
        if key is None:
            return None
        with self._lock:
            value = table.get(key)
            if value is not None:
                self.hits += 1
            return value

    def _remember(self, table: Dict[Tuple, object], key: Optional[Tuple], value) -> None:
        if key is None:
            return
        with self._lock:
            if len(table) < self.MAX_ENTRIES:
                table[key] = value

    def homology(self, L: SimplicialComplex, coefficients: Coefficients = "integer") -> HomologyProfile:
        key = self._key(L, coefficients)
        profile = self._lookup(self._profiles, key)
        if profile is None:
            profile = homology(L, coefficients)
            self._remember(self._profiles, key, profile)
        return profile

    def is_sphere(self, L: SimplicialComplex, coefficients: Coefficients = "integer") -> bool:
        """Whether every link of L, the empty face included, has sphere homology."""
        key = self._key(L, coefficients)
        verdict = self._lookup(self._spheres, key)
        if verdict is None:
            verdict = _sphere_failure(L, coefficients) is None
            self._remember(self._spheres, key, verdict)
        return verdict


link_memo = LinkMemo()


# ==================== Coloring ====================

def find_proper_coloring(K: SimplicialComplex, d: int) -> Optional[Coloring]:
    """
    Exact search for a proper d-coloring of the 1-skeleton.

    Vertices are colored in breadth-first order from a highest-degree
    vertex; a new color is only opened once all smaller ones are in use.

    Raises:
        InputError: If K does not have dimension d - 1
    """
    if K.dim != d - 1:
        raise InputError(f"a {d}-coloring is balanced only for dimension {d - 1}, got {K.dim}")
    g = K.graph
    order: List[int] = []
    for component in sorted(nx.connected_components(g), key=min):
        root = max(sorted(component), key=g.degree)
        order.extend(nx.bfs_tree(g, root))
    colors: Dict[int, int] = {}

    def assign(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        forbidden = {colors[u] for u in g[v] if u in colors}
        for c in range(1, min(used + 1, d) + 1):
            if c in forbidden:
                continue
            colors[v] = c
            if assign(i + 1, max(used, c)):
                return True
            del colors[v]
        return False

    if not assign(0, 0):
        return None
    return Coloring(colors, d)


def is_balanced(K: SimplicialComplex, d: int) -> PredicateReport:
    kappa = find_proper_coloring(K, d)
    if kappa is None:
        clique = max(nx.find_cliques(K.graph), key=len)
        return _failed(
            "balanced", [K.label(v) for v in sorted(clique)],
            f"1-skeleton has no proper {d}-coloring (largest clique shown)",
        )
    return _passed("balanced", coloring={K.label(v): c for v, c in sorted(kappa.as_dict().items())})


def is_k_neighborly(K: SimplicialComplex, kappa: Coloring, k: int) -> PredicateReport:
    """
    Balanced k-neighborliness: every set of at most k differently colored vertices is a face.

    The fail witness is the lexicographically least missing set.
    """
    check = f"neighborly[{k}]"
    _require_proper(K, kappa, check)
    missing: List[Tuple[int, ...]] = []
    for j in range(1, k + 1):
        faces = K.faces(j - 1)
        for colors in itertools.combinations(range(1, kappa.d + 1), j):
            for choice in itertools.product(*(kappa.classes[c] for c in colors)):
                if face_of(choice) not in faces:
                    missing.append(tuple(sorted(choice)))
    if missing:
        worst = min(missing)
        return _failed(
            check, [K.label(v) for v in worst],
            f"{len(missing)} rainbow sets of size <= {k} are not faces",
            missing=len(missing),
        )
    return _passed(check)


# ==================== Spheres, Balls, Manifolds ====================

def _sphere_failure(K: SimplicialComplex, coefficients: Coefficients) -> Optional[Tuple[Face, HomologyProfile, int]]:
    """First face (by dimension, then lexicographic) whose link is not a homology sphere."""
    top = K.dim
    for face in K.iter_faces():
        target = top - face.bit_count()
        profile = link_memo.homology(link_mask(K, face), coefficients)
        if not profile.is_sphere(target):
            return face, profile, target
    return None


def is_homology_sphere(K: SimplicialComplex, coefficients: Coefficients = "integer") -> PredicateReport:
    """
    Every link (the empty face included) has the homology of the sphere of the right dimension.

    Raises:
        PreconditionError: If K is void or not pure
    """
    _require_pure(K, "homology_sphere")
    failure = _sphere_failure(K, coefficients)
    if failure is not None:
        face, profile, target = failure
        return _failed(
            "homology_sphere", K.face_labels(face),
            f"link is not a homology {target}-sphere",
            link_homology=profile.model_dump(),
        )
    return _passed("homology_sphere", dimension=K.dim)


def homological_boundary(K: SimplicialComplex, coefficients: Coefficients = "integer") -> SimplicialComplex:
    """Subcomplex of faces whose links are acyclic."""
    acyclic = [face for face in K.iter_faces() if link_memo.homology(link_mask(K, face), coefficients).is_acyclic()]
    return K.derive(acyclic) if acyclic else SimplicialComplex.void()


def is_homology_ball(K: SimplicialComplex, coefficients: Coefficients = "integer") -> PredicateReport:
    """
    Homology d-ball: (i) acyclic, (ii) every link has ball or sphere homology,
    (iii) the faces with acyclic links form a homology (d-1)-sphere.

    Raises:
        PreconditionError: If K is void or not pure
    """
    _require_pure(K, "homology_ball")
    d = K.dim
    whole = homology(K, coefficients)
    if not whole.is_acyclic():
        return _failed("homology_ball", [], "complex is not acyclic", homology=whole.model_dump())
    boundary_faces = []
    for face in K.iter_faces():
        profile = link_memo.homology(link_mask(K, face), coefficients)
        if profile.is_acyclic():
            boundary_faces.append(face)
        elif not profile.is_sphere(d - face.bit_count()):
            return _failed(
                "homology_ball", K.face_labels(face),
                "link has neither ball nor sphere homology",
                link_homology=profile.model_dump(),
            )
    boundary_set = set(boundary_faces)
    for face in boundary_faces:
        for v in vertices_of(face):
            if face & ~(1 << v) not in boundary_set:
                return _failed("homology_ball", K.face_labels(face), "boundary faces are not closed under inclusion")
    boundary = K.derive(boundary_faces)
    boundary_data = [boundary.face_labels(f) for f in boundary.facets]
    if boundary.dim != d - 1 or not boundary.is_pure:
        return _failed("homology_ball", boundary_data, f"boundary is not a pure {d - 1}-complex")
    report = is_homology_sphere(boundary, coefficients)
    if not report.passed:
        return _failed(
            "homology_ball", report.witness,
            f"boundary is not a homology {d - 1}-sphere", boundary=boundary_data,
        )
    return _passed("homology_ball", dimension=d, boundary=boundary_data)


def is_closed_homology_manifold(K: SimplicialComplex, coefficients: Coefficients = "integer") -> PredicateReport:
    """
    Connected, and every vertex link is a homology sphere of dimension dim - 1.

    Raises:
        PreconditionError: If K is void or not pure
    """
    _require_pure(K, "closed_manifold")
    if not nx.is_connected(K.graph):
        parts = sorted(nx.connected_components(K.graph), key=min)
        return _failed(
            "closed_manifold", [K.label(min(p)) for p in parts],
            f"complex has {len(parts)} connected components",
        )
    for v in K.vertices:
        lk = link_mask(K, 1 << v)
        if lk.is_void or not lk.is_pure:
            return _failed("closed_manifold", [K.label(v)], "vertex link is not pure")
        if lk.dim != K.dim - 1 or not link_memo.is_sphere(lk, coefficients):
            return _failed(
                "closed_manifold", [K.label(v)],
                f"vertex link is not a homology {K.dim - 1}-sphere",
            )
    return _passed("closed_manifold", dimension=K.dim)


# ==================== Face-number Identities ====================

def dehn_sommerville_flag(K: SimplicialComplex, kappa: Coloring) -> PredicateReport:
    """
    h_S = h_{[d] - S} for every color subset S.

    Raises:
        PreconditionError: If kappa is improper, d != dim + 1, or K is not a homology sphere
    """
    check = "dehn_sommerville_flag"
    _require_proper(K, kappa, check)
    if kappa.d != K.dim + 1:
        raise PreconditionError(check, f"{kappa.d} colors on a {K.dim}-dimensional complex")
    if not is_homology_sphere(K).passed:
        raise PreconditionError(check, "complex is not a homology sphere")
    flags = flag_vectors(K, kappa)
    full = (1 << kappa.d) - 1
    for S in range(1 << kappa.d):
        if flags.h_masks[S] != flags.h_masks[full & ~S]:
            colors = [c + 1 for c in range(kappa.d) if S >> c & 1]
            return _failed(
                check, colors, "h_S differs from its complement",
                h_S=flags.h_masks[S], h_complement=flags.h_masks[full & ~S],
            )
    return _passed(check, h={"".join(map(str, S)) or "-": flags.h(S) for S in flags.subsets()})


def equal_color_sizes(K: SimplicialComplex, kappa: Coloring, k: int) -> PredicateReport:
    """
    A balanced k-neighborly homology (2k-1)-sphere has equal color classes.

    Raises:
        PreconditionError: If K is not a balanced k-neighborly homology (2k-1)-sphere
    """
    check = "equal_color_sizes"
    if K.dim != 2 * k - 1 or kappa.d != 2 * k:
        raise PreconditionError(check, f"need a {2 * k - 1}-sphere with {2 * k} colors")
    if not is_k_neighborly(K, kappa, k).passed:
        raise PreconditionError(check, f"complex is not balanced {k}-neighborly")
    if not is_homology_sphere(K).passed:
        raise PreconditionError(check, "complex is not a homology sphere")
    sizes = list(kappa.class_sizes)
    if len(set(sizes)) != 1:
        return _failed(check, sizes, "color classes differ in size")
    return _passed(check, size=sizes[0], f0=sum(sizes))


def alexander_duality(
    K: SimplicialComplex,
    kappa: Coloring,
    coefficients: Coefficients = "rational",
) -> PredicateReport:
    """β̃_i(K_S) = β̃_{d-2-i}(K_{[d]-S}) for every color subset S and every i."""
    check = "alexander_duality"
    _require_proper(K, kappa, check)
    d = kappa.d
    if d != K.dim + 1:
        raise PreconditionError(check, f"{d} colors on a {K.dim}-dimensional complex")
    colors = range(1, d + 1)
    profiles: Dict[Tuple[int, ...], HomologyProfile] = {}
    for r in range(d + 1):
        for S in itertools.combinations(colors, r):
            profiles[S] = homology(rank_selected(K, kappa, S), coefficients)
    for S, profile in profiles.items():
        complement = tuple(c for c in colors if c not in S)
        other = profiles[complement]
        for i in range(-1, d):
            if profile.betti_at(i) != other.betti_at(d - 2 - i):
                return _failed(
                    check, {"S": list(S), "i": i},
                    f"β̃_{i}(K_S) = {profile.betti_at(i)} but "
                    f"β̃_{d - 2 - i}(K_complement) = {other.betti_at(d - 2 - i)}",
                )
    return _passed(check, subsets=len(profiles))


def rank_selection_face_identity(K: SimplicialComplex, kappa: Coloring, S: Sequence[int]) -> PredicateReport:
    """
    Top face count of K_S predicted from its lower face numbers and Betti numbers.

    With χ = Σ_i (-1)^i f_i and χ = 1 + Σ_i (-1)^i β̃_i, the top count is
    determined by everything below it.
    """
    L = rank_selected(K, kappa, S)
    profile = homology(L, "rational")
    top = L.dim
    chi = 1 + profile.reduced_euler()
    lower = sum((-1) ** i * L.f[i + 1] for i in range(top))
    predicted = (-1) ** top * (chi - lower)
    actual = L.f[top + 1]
    data = dict(predicted=predicted, actual=actual, betti=profile.betti, euler=chi)
    if predicted != actual:
        return _failed("rank_selection_face_identity", list(S), "face count disagrees with homology", **data)
    return _passed("rank_selection_face_identity", **data)


def degree_profile(K: SimplicialComplex) -> PredicateReport:
    """Vertex-degree multiset with the handshake identity Σ deg = 2 f_1."""
    degrees = vertex_degrees(K)
    counts: Dict[int, int] = {}
    for deg in degrees.values():
        counts[deg] = counts.get(deg, 0) + 1
    edges = len(K.faces(1))
    if sum(degrees.values()) != 2 * edges:
        return _failed("degree_profile", sorted(counts.items()), "degree sum is not twice the edge count")
    return _passed("degree_profile", degrees=dict(sorted(counts.items())), edges=edges)


# ==================== Link Intersections ====================

def _components(L: SimplicialComplex) -> int:
    if L.is_void or not L.vertices:
        return 0
    return nx.number_connected_components(L.graph)


def _ball_verdict(L: SimplicialComplex) -> bool:
    try:
        return is_homology_ball(L).passed
    except BalkitError:
        return False


def link_intersection_profile(
    K: SimplicialComplex,
    kappa: Coloring,
    color: int,
    with_homology: bool = False,
) -> LinkIntersectionProfile:
    """
    For each pair of vertices of one color, the number of connected components
    of the intersection of their links. With `with_homology`, also whether each
    pairwise intersection is a homology (d-2)-ball and each triple intersection
    a homology (d-3)-sphere.
    """
    if color not in kappa.classes:
        raise InputError(f"color {color} is not in [1, {kappa.d}]")
    members = [v for v in kappa.classes[color] if v in K.vertices]
    links = {v: link_mask(K, 1 << v) for v in members}
    profile = LinkIntersectionProfile(color=color)
    for a, b in itertools.combinations(members, 2):
        meet = intersection(links[a], links[b])
        pair = PairIntersection(vertices=[K.label(a), K.label(b)], components=_components(meet))
        if with_homology:
            pair.homology = homology(meet)
            pair.is_ball = _ball_verdict(meet)
        profile.pairs.append(pair)
    if with_homology:
        for a, b, c in itertools.combinations(members, 3):
            meet = intersection(intersection(links[a], links[b]), links[c])
            try:
                is_sphere = is_homology_sphere(meet).passed
            except BalkitError:
                is_sphere = False
            profile.triples.append(TripleIntersection(
                vertices=[K.label(a), K.label(b), K.label(c)],
                homology=homology(meet),
                is_sphere=is_sphere,
            ))
    return profile


# ==================== Heegaard Profile ====================

def _is_solid_torus_homology(profile: HomologyProfile) -> bool:
    return not any(profile.torsion.values()) and [profile.betti_at(i) for i in range(-1, 4)] == [0, 0, 1, 0, 0]


def heegaard_profile(
    K: SimplicialComplex,
    kappa: Coloring,
    partition: Tuple[Sequence[int], Sequence[int]],
) -> PredicateReport:
    """
    Homological check of a genus-one splitting along one color class.

    A = st(a) ∪ st(b) and B = st(c) ∪ st(d) must both have solid-torus
    homology, and A ∩ B must be a closed surface with torus homology and
    Euler characteristic 0.

    Raises:
        PreconditionError: If K is not a closed 3-manifold, or the four
            vertices do not form a color class of size 4
    """
    check = "heegaard_profile"
    (a, b), (c, d) = partition
    quad = [a, b, c, d]
    if K.dim != 3:
        raise PreconditionError(check, "complex is not 3-dimensional")
    if len(set(quad)) != 4 or any(v not in K.vertices for v in quad):
        raise PreconditionError(check, "partition needs four distinct vertices of the complex")
    _require_proper(K, kappa, check)
    colors = {kappa[v] for v in quad}
    if len(colors) != 1 or len(kappa.classes[colors.pop()]) != 4:
        raise PreconditionError(check, "partition must be a color class of size 4")
    if not is_closed_homology_manifold(K).passed:
        raise PreconditionError(check, "complex is not a closed homology 3-manifold")

    A = union(star(K, [a]), star(K, [b]))
    B = union(star(K, [c]), star(K, [d]))
    AB = intersection(A, B)
    hA, hB, hAB = homology(A), homology(B), homology(AB)
    data = dict(A=hA.model_dump(), B=hB.model_dump(), intersection=hAB.model_dump(), euler=euler_characteristic(AB))
    if not _is_solid_torus_homology(hA):
        return _failed(check, [K.label(a), K.label(b)], "A lacks solid-torus homology", **data)
    if not _is_solid_torus_homology(hB):
        return _failed(check, [K.label(c), K.label(d)], "B lacks solid-torus homology", **data)
    try:
        closed = AB.dim == 2 and AB.is_pure and boundary_complex(AB).is_void
    except NotAPseudomanifoldError:
        closed = False
    torus = (
        not any(hAB.torsion.values())
        and [hAB.betti_at(i) for i in range(-1, 3)] == [0, 0, 2, 1]
        and euler_characteristic(AB) == 0
    )
    if not (closed and torus):
        return _failed(check, "A∩B", "A ∩ B is not a closed surface with torus homology", **data)
    return _passed(check, **data)
