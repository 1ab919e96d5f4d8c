"""
Simplicial Complex Service.

Immutable simplicial-complex data model with face-level operations (link,
star, deletion, join, rank selection, boundary) and the face-counting
vectors of balanced complexes.

Faces are stored as integer bitmasks over vertex ids, so a face with
vertices {0, 2, 5} is the integer 0b100101. Public operations accept plain
vertex-id iterables and convert at the boundary.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from balkit.config import COLOR_LETTERS
from balkit.exceptions import (
    EmptyComplexError,
    ImproperColoringError,
    InputError,
    NotAFaceError,
    NotAPseudomanifoldError,
    PreconditionError,
)
from balkit.models import ComplexFile, VertexRecord

logger = logging.getLogger(__name__)

Face = int


# ==================== Bitmask Helpers ====================

def face_of(vertices: Iterable[int]) -> Face:
    """Bitmask of a vertex-id iterable."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(face: Face) -> Tuple[int, ...]:
    """Sorted vertex ids of a bitmask."""
    out = []
    while face:
        low = face & -face
        out.append(low.bit_length() - 1)
        face ^= low
    return tuple(out)


def face_size(face: Face) -> int:
    return face.bit_count()


def maximal_faces(faces: Iterable[Face]) -> List[Face]:
    """Inclusion-maximal members of a face collection, duplicates removed."""
    kept: List[Face] = []
    for f in sorted(set(faces), key=lambda g: -g.bit_count()):
        if not any(f & g == f for g in kept):
            kept.append(f)
    return kept


def _lex_key(face: Face) -> Tuple[int, ...]:
    return vertices_of(face)


# ==================== Coloring ====================

class Coloring:
    """
    Vertex -> color map with colors in [d] = {1, ..., d}.

    Color sets of faces are handled as bitmasks too: color c is bit c-1.
    """

    def __init__(self, colors: Mapping[int, int], d: int):
        if d < 1:
            raise InputError(f"number of colors must be positive, got {d}")
        bad = {v: c for v, c in colors.items() if not 1 <= c <= d}
        if bad:
            raise InputError(f"colors outside [1, {d}]: {bad}")
        self._colors: Dict[int, int] = dict(colors)
        self.d = d

    def __getitem__(self, vertex: int) -> int:
        return self._colors[vertex]

    def __contains__(self, vertex: int) -> bool:
        return vertex in self._colors

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Coloring) and self.d == other.d and self._colors == other._colors

    def __repr__(self) -> str:
        return f"Coloring(d={self.d}, sizes={self.class_sizes})"

    def as_dict(self) -> Dict[int, int]:
        return dict(self._colors)

    @cached_property
    def classes(self) -> Dict[int, Tuple[int, ...]]:
        """Color class V_i for every i in [d] (possibly empty)."""
        out: Dict[int, List[int]] = {c: [] for c in range(1, self.d + 1)}
        for v in sorted(self._colors):
            out[self._colors[v]].append(v)
        return {c: tuple(vs) for c, vs in out.items()}

    @property
    def class_sizes(self) -> Tuple[int, ...]:
        return tuple(len(self.classes[c]) for c in range(1, self.d + 1))

    def class_mask(self, color: int) -> Face:
        return face_of(self.classes.get(color, ()))

    def color_mask(self, face: Face) -> int:
        """Bitmask of the colors used by a face."""
        mask = 0
        for v in vertices_of(face):
            mask |= 1 << (self._colors[v] - 1)
        return mask

    def vertices_with_colors(self, colors: Iterable[int]) -> Face:
        wanted = set(colors)
        return face_of(v for v, c in self._colors.items() if c in wanted)

    def check_proper(self, K: "SimplicialComplex") -> None:
        """Raise ImproperColoringError on the first monochromatic edge of K."""
        missing = [v for v in K.vertices if v not in self._colors]
        if missing:
            raise InputError(f"coloring does not cover vertices {[K.label(v) for v in missing]}")
        for edge in sorted(K.faces(1), key=_lex_key):
            a, b = vertices_of(edge)
            if self._colors[a] == self._colors[b]:
                raise ImproperColoringError(K.face_labels(edge), self._colors[a])

    def is_proper(self, K: "SimplicialComplex") -> bool:
        try:
            self.check_proper(K)
        except (ImproperColoringError, InputError):
            return False
        return True


# ==================== Face Vectors ====================

@dataclass(frozen=True)
class FaceVector:
    """f-vector f_{-1}..f_{dim} and h-vector h_0..h_{dim+1}."""
    f: Tuple[int, ...]
    h: Tuple[int, ...]

    def f_at(self, i: int) -> int:
        """f_i, with f_{-1} at index 0."""
        return self.f[i + 1] if 0 <= i + 1 < len(self.f) else 0


@dataclass(frozen=True)
class FlagVector:
    """Flag f- and h-numbers indexed by color subsets S of [d] (as bitmasks)."""
    d: int
    f_masks: Dict[int, int] = field(default_factory=dict)
    h_masks: Dict[int, int] = field(default_factory=dict)

    @staticmethod
    def _mask(colors: Iterable[int]) -> int:
        mask = 0
        for c in colors:
            mask |= 1 << (c - 1)
        return mask

    def f(self, colors: Iterable[int]) -> int:
        return self.f_masks.get(self._mask(colors), 0)

    def h(self, colors: Iterable[int]) -> int:
        return self.h_masks.get(self._mask(colors), 0)

    def subsets(self) -> Iterator[Tuple[int, ...]]:
        """All S subset of [d], as sorted color tuples, smallest first."""
        for r in range(self.d + 1):
            yield from itertools.combinations(range(1, self.d + 1), r)


# ==================== Simplicial Complex ====================

class SimplicialComplex:
    """
    Finite abstract simplicial complex given by its facets.

    The void complex has no faces at all; the empty complex {∅} has exactly
    the empty face. Instances are never mutated after construction.
    """

    def __init__(
        self,
        facets: Iterable[Face],
        labels: Optional[Mapping[int, str]] = None,
        colors: Optional[Mapping[int, int]] = None,
        name: str = "",
        metadata: Optional[Mapping[str, object]] = None,
    ):
        self.facets: Tuple[Face, ...] = tuple(sorted(maximal_faces(facets), key=_lex_key))
        support = 0
        for f in self.facets:
            support |= f
        self.vertex_mask: Face = support
        self.vertices: Tuple[int, ...] = vertices_of(support)
        self.labels: Dict[int, str] = {v: labels[v] for v in self.vertices if labels and v in labels}
        self.colors: Dict[int, int] = {v: colors[v] for v in self.vertices if colors and v in colors}
        self.name = name
        self.metadata: Dict[str, object] = dict(metadata or {})

    # ---------- constructors ----------

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls([])

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        """The complex {∅}: only the empty face."""
        return cls([0])

    def derive(self, facets: Iterable[Face], name: str = "") -> "SimplicialComplex":
        """New complex on a subset of these vertices, inheriting labels and colors."""
        return SimplicialComplex(facets, labels=self.labels, colors=self.colors, name=name)

    def renamed(self, name: str) -> "SimplicialComplex":
        return SimplicialComplex(self.facets, labels=self.labels, colors=self.colors, name=name, metadata=self.metadata)

    # ---------- basic properties ----------

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def dim(self) -> int:
        """Dimension; -1 for {∅} and -2 for the void complex."""
        if not self.facets:
            return -2
        return max(f.bit_count() for f in self.facets) - 1

    @cached_property
    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) <= 1

    @cached_property
    def _lattice(self) -> Dict[int, FrozenSet[Face]]:
        by_dim: Dict[int, set] = {}
        for facet in self.facets:
            vs = vertices_of(facet)
            for k in range(len(vs) + 1):
                bucket = by_dim.setdefault(k - 1, set())
                for combo in itertools.combinations(vs, k):
                    bucket.add(face_of(combo))
        return {k: frozenset(v) for k, v in by_dim.items()}

    def faces(self, k: int) -> FrozenSet[Face]:
        """All k-dimensional faces (k = -1 gives {∅} for a non-void complex)."""
        return self._lattice.get(k, frozenset())

    def iter_faces(self) -> Iterator[Face]:
        """Every face, by dimension then lexicographically."""
        for k in range(-1, self.dim + 1):
            yield from sorted(self.faces(k), key=_lex_key)

    def contains(self, face: Face) -> bool:
        if self.is_void:
            return False
        return any(face & f == face for f in self.facets)

    def __contains__(self, face: Face) -> bool:
        return self.contains(face)

    @cached_property
    def f(self) -> Tuple[int, ...]:
        """f-numbers f_{-1}..f_{dim}."""
        return tuple(len(self.faces(k)) for k in range(-1, self.dim + 1))

    @cached_property
    def graph(self) -> nx.Graph:
        """1-skeleton, isolated vertices included."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(vertices_of(e) for e in self.faces(1))
        return g

    @property
    def coloring(self) -> Optional[Coloring]:
        """Stored coloring, when every vertex carries a color."""
        if not self.colors or len(self.colors) != self.n_vertices:
            return None
        return Coloring(self.colors, max(self.colors.values()))

    def facets_containing(self, face: Face) -> List[Face]:
        return [f for f in self.facets if f & face == face]

    # ---------- labels ----------

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def face_labels(self, face: Face) -> List[str]:
        return [self.label(v) for v in vertices_of(face)]

    def vertex_by_label(self, label: str) -> int:
        for v, text in self.labels.items():
            if text == label:
                return v
        if label.isdigit() and int(label) in self.vertices:
            return int(label)
        raise InputError(f"unknown vertex label '{label}'")

    def facet_lists(self) -> List[List[int]]:
        return [list(vertices_of(f)) for f in self.facets]

    # ---------- dunder ----------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        name = f"{self.name!r}, " if self.name else ""
        return f"SimplicialComplex({name}dim={self.dim}, f={self.f})"


# ==================== Color-class Layout ====================

def class_labels(
    sizes: Sequence[int],
    names: Optional[Sequence[Sequence[str]]] = None,
) -> Tuple[Dict[int, str], Dict[int, int]]:
    """
    Ids, labels and colors for color classes of the given sizes.

    Ids run class by class from 0. Class c is labeled "u1", "u2", ... with
    the c-th letter of COLOR_LETTERS unless explicit names are given.
    """
    if len(sizes) > len(COLOR_LETTERS) and names is None:
        raise InputError(f"at most {len(COLOR_LETTERS)} color classes can be labeled automatically")
    labels: Dict[int, str] = {}
    colors: Dict[int, int] = {}
    v = 0
    for c, size in enumerate(sizes, start=1):
        for i in range(size):
            labels[v] = names[c - 1][i] if names is not None else f"{COLOR_LETTERS[c - 1]}{i + 1}"
            colors[v] = c
            v += 1
    return labels, colors


# ==================== Construction ====================

def from_facets(
    facets: Sequence[Iterable[int]],
    labels: Optional[Mapping[int, str]] = None,
    colors: Optional[Mapping[int, int]] = None,
    name: str = "",
) -> SimplicialComplex:
    """
    Build a complex from facet vertex lists.

    Dominated and duplicate faces are dropped silently.

    Raises:
        EmptyComplexError: If no facets are given
        InputError: If a face repeats a vertex or uses a negative id, or two
            vertices share a label
    """
    facets = list(facets)
    if not facets:
        raise EmptyComplexError("from_facets")
    masks = []
    used = set()
    for raw in facets:
        vs = list(raw)
        if any((not isinstance(v, int)) or v < 0 for v in vs):
            raise InputError(f"face {vs} has ids that are not non-negative integers")
        if len(set(vs)) != len(vs):
            raise InputError(f"face {vs} repeats a vertex")
        masks.append(face_of(vs))
        used.update(vs)
    if labels:
        texts = [labels[v] for v in used if v in labels]
        if len(set(texts)) != len(texts):
            raise InputError("vertex labels must be distinct")
    return SimplicialComplex(masks, labels=labels, colors=colors, name=name)


def from_file(data: ComplexFile) -> SimplicialComplex:
    labels = {v.id: v.label for v in data.vertices if v.label is not None}
    colors = {v.id: v.color for v in data.vertices if v.color is not None}
    return from_facets(data.facets, labels=labels, colors=colors, name=data.name)


def to_file(K: SimplicialComplex, name: Optional[str] = None) -> ComplexFile:
    """Serialise with ids made dense from 0 (order preserving) and facets sorted."""
    dense = {v: i for i, v in enumerate(K.vertices)}
    vertices = [
        VertexRecord(id=dense[v], label=K.labels.get(v), color=K.colors.get(v))
        for v in K.vertices
    ]
    facets = sorted([dense[v] for v in vertices_of(f)] for f in K.facets)
    return ComplexFile(name=name if name is not None else K.name, vertices=vertices, facets=facets)


def relabel(K: SimplicialComplex, mapping: Mapping[int, int], name: str = "") -> SimplicialComplex:
    """Apply an injective vertex map; labels and colors travel with their vertices."""
    if len(set(mapping[v] for v in K.vertices)) != K.n_vertices:
        raise InputError("relabeling is not injective")
    facets = [face_of(mapping[v] for v in vertices_of(f)) for f in K.facets]
    labels = {mapping[v]: text for v, text in K.labels.items()}
    colors = {mapping[v]: c for v, c in K.colors.items()}
    return SimplicialComplex(facets, labels=labels, colors=colors, name=name or K.name)


# ==================== Face Operations ====================

def _require_face(K: SimplicialComplex, face: Face) -> None:
    if not K.contains(face):
        raise NotAFaceError([K.label(v) for v in vertices_of(face)])


def link_mask(K: SimplicialComplex, sigma: Face) -> SimplicialComplex:
    """Link of a face given as a bitmask."""
    _require_face(K, sigma)
    return K.derive([f & ~sigma for f in K.facets if f & sigma == sigma])


def link(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """
    Link {τ - σ : σ ⊆ τ ∈ K}.

    Raises:
        NotAFaceError: If σ is not a face of K
    """
    return link_mask(K, face_of(sigma))


def star(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """Closed star: the subcomplex generated by facets containing σ."""
    mask = face_of(sigma)
    _require_face(K, mask)
    return K.derive(K.facets_containing(mask))


def delete(K: SimplicialComplex, W: Iterable[int]) -> SimplicialComplex:
    """
    Deletion K \\ W: faces avoiding every vertex of W.

    Raises:
        EmptyComplexError: If W contains every vertex of K
    """
    removed = face_of(W)
    kept = [f & ~removed for f in K.facets]
    if not any(kept):
        raise EmptyComplexError("delete", "deletion removes every vertex")
    return K.derive(kept)


def induced_subcomplex(K: SimplicialComplex, W: Iterable[int]) -> SimplicialComplex:
    """Faces contained in W; {∅} when W misses every vertex."""
    keep = face_of(W)
    return K.derive([f & keep for f in K.facets])


def join(K1: SimplicialComplex, K2: SimplicialComplex, name: str = "") -> SimplicialComplex:
    """
    Join K1 * K2 with facets the pairwise unions of facets.

    Colliding vertex ids in K2 are shifted by max(K1 ids) + 1; the map used
    is stored in metadata["join_relabeling"]. Colors of K2 are shifted past
    the largest color of K1 when both complexes are colored.
    """
    mapping: Dict[int, int] = {}
    if K1.vertex_mask & K2.vertex_mask:
        offset = max(K1.vertices) + 1
        mapping = {v: v + offset for v in K2.vertices}
        K2 = relabel(K2, mapping)
    facets = [a | b for a in K1.facets for b in K2.facets]
    labels = dict(K1.labels)
    taken = set(labels.values())
    for v, text in K2.labels.items():
        while text in taken:
            text += "'"
        labels[v] = text
        taken.add(text)
    colors: Dict[int, int] = {}
    if K1.coloring is not None and K2.coloring is not None:
        shift = max(K1.colors.values())
        colors = dict(K1.colors)
        colors.update({v: c + shift for v, c in K2.colors.items()})
    return SimplicialComplex(
        facets, labels=labels, colors=colors, name=name,
        metadata={"join_relabeling": mapping},
    )


def intersection(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Faces common to both complexes."""
    if K1.is_void or K2.is_void:
        return SimplicialComplex.void()
    return K1.derive([a & b for a in K1.facets for b in K2.facets])


def union(K1: SimplicialComplex, K2: SimplicialComplex, name: str = "") -> SimplicialComplex:
    labels = {**K2.labels, **K1.labels}
    colors = {**K2.colors, **K1.colors}
    return SimplicialComplex(K1.facets + K2.facets, labels=labels, colors=colors, name=name)


def rank_selected(K: SimplicialComplex, kappa: Coloring, S: Iterable[int]) -> SimplicialComplex:
    """
    Rank-selected subcomplex K_S: faces whose colors lie in S.

    Raises:
        InputError: If S is not a subset of [d]
        ImproperColoringError: If kappa is not proper on K
    """
    S = set(S)
    outside = S - set(range(1, kappa.d + 1))
    if outside:
        raise InputError(f"colors {sorted(outside)} are not in [1, {kappa.d}]")
    kappa.check_proper(K)
    keep = kappa.vertices_with_colors(S) & K.vertex_mask
    return K.derive([f & keep for f in K.facets], name=f"{K.name}_{''.join(map(str, sorted(S)))}")


def ridge_counts(K: SimplicialComplex) -> Dict[Face, int]:
    """Number of facets containing each codimension-one face."""
    counts: Dict[Face, int] = {}
    for facet in K.facets:
        for v in vertices_of(facet):
            ridge = facet & ~(1 << v)
            counts[ridge] = counts.get(ridge, 0) + 1
    return counts


def boundary_complex(K: SimplicialComplex) -> SimplicialComplex:
    """
    Subcomplex generated by ridges lying in exactly one facet.

    Returns the void complex when K is closed (every ridge in two facets).

    Raises:
        PreconditionError: If K is not pure
        NotAPseudomanifoldError: If some ridge lies in three or more facets
    """
    if K.is_void:
        return SimplicialComplex.void()
    if not K.is_pure:
        raise PreconditionError("boundary_complex", "complex is not pure")
    counts = ridge_counts(K)
    for ridge in sorted(counts, key=_lex_key):
        if counts[ridge] > 2:
            raise NotAPseudomanifoldError(K.face_labels(ridge), counts[ridge])
    return K.derive([r for r, c in counts.items() if c == 1])


# ==================== Counting ====================

def h_from_f(f: Sequence[int]) -> Tuple[int, ...]:
    """h-vector from f_{-1}..f_{d-1} via h_k = Σ_i (-1)^{k-i} C(d-i, k-i) f_{i-1}."""
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def f_vector(K: SimplicialComplex) -> FaceVector:
    return FaceVector(f=K.f, h=h_from_f(K.f))


def euler_characteristic(K: SimplicialComplex) -> int:
    """Σ_{i>=0} (-1)^i f_i (the unreduced Euler characteristic)."""
    return sum((-1) ** i * n for i, n in enumerate(K.f[1:]))


def flag_vectors(K: SimplicialComplex, kappa: Coloring) -> FlagVector:
    """
    Flag f-vector f_S and flag h-vector h_S = Σ_{T⊆S} (-1)^{|S|-|T|} f_T.

    Raises:
        ImproperColoringError: If kappa is not proper on K
    """
    kappa.check_proper(K)
    d = kappa.d
    f_masks = {mask: 0 for mask in range(1 << d)}
    for k in range(-1, K.dim + 1):
        for face in K.faces(k):
            f_masks[kappa.color_mask(face)] += 1
    h_masks = {}
    for S in range(1 << d):
        total = 0
        T = S
        while True:
            total += (-1) ** ((S & ~T).bit_count()) * f_masks[T]
            if T == 0:
                break
            T = (T - 1) & S
        h_masks[S] = total
    return FlagVector(d=d, f_masks=f_masks, h_masks=h_masks)


def vertex_degrees(K: SimplicialComplex) -> Dict[int, int]:
    return dict(K.graph.degree())


def missing_edges(K: SimplicialComplex, kappa: Coloring) -> List[Tuple[int, int]]:
    """Pairs of differently colored vertices that do not span an edge."""
    edges = K.faces(1)
    out = []
    for a, b in itertools.combinations(K.vertices, 2):
        if kappa[a] != kappa[b] and face_of((a, b)) not in edges:
            out.append((a, b))
    return out
