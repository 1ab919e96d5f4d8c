"""
Symmetry Service.

Canonical labeling, isomorphism testing and automorphism groups of
simplicial complexes by partition refinement and individualization.
Automorphisms permute vertices and need not preserve colors unless asked.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from balkit.config import MAX_VERTICES
from balkit.exceptions import InputError
from balkit.models import GroupDescription, PredicateReport, Verdict
from balkit.services.complex import SimplicialComplex, face_of, vertices_of

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]

_CYCLE = re.compile(r"\(([^()]*)\)")
_TOKEN = re.compile(r"[A-Za-z]+'*_?\d+'*|\d+")


# ==================== Permutation Groups ====================

def _compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[x] for x in q)


def _inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


class StabilizerChain:
    """
    Deterministic Schreier-Sims on permutations of range(n).

    Level i holds the generators first needed there; the group at level i
    is generated by all generators at level i or deeper.
    """

    def __init__(self, n: int, generators: Iterable[Perm] = ()):
        self.n = n
        self.identity: Perm = tuple(range(n))
        self.base: List[int] = []
        self.levels: List[List[Perm]] = []
        self.transversals: List[Dict[int, Perm]] = []
        for g in generators:
            self._insert(tuple(g), 0)
        while self._close_once():
            pass

    def _level_generators(self, i: int) -> List[Perm]:
        return [g for j in range(i, len(self.base)) for g in self.levels[j]]

    def _orbit(self, i: int) -> None:
        b = self.base[i]
        gens = self._level_generators(i)
        table = {b: self.identity}
        queue = deque([b])
        while queue:
            p = queue.popleft()
            for s in gens:
                q = s[p]
                if q not in table:
                    table[q] = _compose(s, table[p])
                    queue.append(q)
        self.transversals[i] = table

    def strip(self, g: Perm, start: int = 0) -> Tuple[Perm, int]:
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            rep = self.transversals[i].get(x)
            if rep is None:
                return g, i
            g = _compose(_inverse(rep), g)
        return g, len(self.base)

    def _insert(self, g: Perm, start: int) -> bool:
        residue, level = self.strip(g, start)
        if residue == self.identity:
            return False
        if level == len(self.base):
            moved = next(x for x in range(self.n) if residue[x] != x)
            self.base.append(moved)
            self.levels.append([])
            self.transversals.append({})
        self.levels[level].append(residue)
        for i in range(level, -1, -1):
            self._orbit(i)
        return True

    def _close_once(self) -> bool:
        """Sift every Schreier generator once; True if something new was added."""
        for i in reversed(range(len(self.base))):
            self._orbit(i)
            table = self.transversals[i]
            for p, u in list(table.items()):
                for s in self._level_generators(i):
                    h = _compose(_inverse(table[s[p]]), _compose(s, u))
                    if self._insert(h, i + 1):
                        return True
        return False

    def order(self) -> int:
        total = 1
        for table in self.transversals:
            total *= len(table)
        return total

    def contains(self, g: Perm) -> bool:
        residue, _ = self.strip(tuple(g))
        return residue == self.identity


def orbits_of(n: int, generators: Sequence[Perm]) -> List[List[int]]:
    """Orbit partition of range(n), each orbit sorted, orbits by minimum."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return [groups[k] for k in sorted(groups)]


# ==================== Canonical Labeling ====================

@dataclass(frozen=True)
class CanonicalForm:
    """
    Relabeling-invariant normal form.

    `facets` uses canonical ids 0..n-1; `relabeling` maps original vertex
    ids to canonical ids.
    """
    facets: Tuple[Tuple[int, ...], ...]
    relabeling: Dict[int, int]

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return self.facets


class _Leaf:
    __slots__ = ("labels", "certificate", "path")

    def __init__(self, labels: Perm, certificate, path: Tuple[int, ...]):
        self.labels = labels
        self.certificate = certificate
        self.path = path


class _CanonicalSearch:
    """
    Individualization-refinement search over compact vertex indices.

    The minimum leaf certificate is the canonical form; leaves equivalent to
    the first or best leaf yield automorphisms, which prune sibling branches
    in the same orbit and let whole subtrees be abandoned.
    """

    def __init__(self, K: SimplicialComplex, color_preserving: bool = False):
        if K.n_vertices > MAX_VERTICES:
            raise InputError(f"{K.n_vertices} vertices exceeds the limit of {MAX_VERTICES}")
        self.K = K
        self.n = K.n_vertices
        index = {v: i for i, v in enumerate(K.vertices)}
        self.facets: List[Tuple[int, ...]] = [tuple(index[v] for v in vertices_of(f)) for f in K.facets]
        self.star: List[List[Tuple[int, ...]]] = [[] for _ in range(self.n)]
        for facet in self.facets:
            for x in facet:
                self.star[x].append(facet)

        incidence = [[0] * (K.dim + 1) for _ in range(self.n)]
        for k in range(0, K.dim + 1):
            for face in K.faces(k):
                for v in vertices_of(face):
                    incidence[index[v]][k] += 1
        keys = {}
        for v, i in index.items():
            color = K.colors.get(v, 0) if color_preserving else 0
            keys[i] = (color, tuple(incidence[i]))
        groups: Dict[tuple, List[int]] = {}
        for i in range(self.n):
            groups.setdefault(keys[i], []).append(i)
        self.initial = [groups[k] for k in sorted(groups)]

        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self.generators: List[Perm] = []
        self.nodes = 0

    def _signature(self, x: int, cell_of: List[int]) -> tuple:
        return tuple(sorted(
            tuple(sorted(cell_of[y] for y in facet if y != x)) for facet in self.star[x]
        ))

    def _refine(self, cells: List[List[int]]) -> List[List[int]]:
        while True:
            cell_of = [0] * self.n
            start = 0
            for cell in cells:
                for x in cell:
                    cell_of[x] = start
                start += len(cell)
            split: List[List[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    split.append(cell)
                    continue
                groups: Dict[tuple, List[int]] = {}
                for x in cell:
                    groups.setdefault(self._signature(x, cell_of), []).append(x)
                split.extend(groups[k] for k in sorted(groups))
            if len(split) == len(cells):
                return split
            cells = split

    def _certificate(self, labels: Perm):
        return tuple(sorted(tuple(sorted(labels[x] for x in facet)) for facet in self.facets))

    def _leaf(self, cells: List[List[int]], path: Tuple[int, ...]) -> Optional[int]:
        labels = [0] * self.n
        for position, cell in enumerate(cells):
            labels[cell[0]] = position
        labels = tuple(labels)
        cert = self._certificate(labels)
        if self.first is None:
            self.first = self.best = _Leaf(labels, cert, path)
            return None
        for target in (self.first, self.best):
            if cert == target.certificate:
                # x -> the vertex whose label here equals x's label at the target leaf
                g = _compose(_inverse(labels), target.labels)
                if g != tuple(range(self.n)):
                    self.generators.append(g)
                common = 0
                while path[common] == target.path[common]:
                    common += 1
                return common
        if cert < self.best.certificate:
            self.best = _Leaf(labels, cert, path)
        return None

    def _pruned(self, x: int, explored: List[int], path: Tuple[int, ...]) -> bool:
        fixing = [g for g in self.generators if all(g[p] == p for p in path)]
        if not fixing:
            return False
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in fixing:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return any(e in seen for e in explored)

    def _descend(self, cells: List[List[int]], path: Tuple[int, ...]) -> Optional[int]:
        self.nodes += 1
        sizes = [len(c) for c in cells if len(c) > 1]
        if not sizes:
            return self._leaf(cells, path)
        smallest = min(sizes)
        t = next(i for i, c in enumerate(cells) if len(c) == smallest)
        explored: List[int] = []
        for x in sorted(cells[t]):
            if explored and self._pruned(x, explored, path):
                continue
            explored.append(x)
            child = cells[:t] + [[x], [y for y in cells[t] if y != x]] + cells[t + 1:]
            jump = self._descend(self._refine(child), path + (x,))
            if jump is not None and jump < len(path):
                return jump
        return None

    def run(self) -> "_CanonicalSearch":
        if self.n:
            self._descend(self._refine(self.initial), ())
        logger.debug("canonical search on %d vertices: %d nodes, %d generators", self.n, self.nodes, len(self.generators))
        return self

    # ---------- results ----------

    def canonical(self) -> CanonicalForm:
        if self.best is None:
            return CanonicalForm(facets=((),) if self.K.facets == (0,) else (), relabeling={})
        relabeling = {v: self.best.labels[i] for i, v in enumerate(self.K.vertices)}
        return CanonicalForm(facets=self.best.certificate, relabeling=relabeling)

    def vertex_generators(self) -> List[Dict[int, int]]:
        vs = self.K.vertices
        return [{vs[i]: vs[g[i]] for i in range(self.n)} for g in self.generators]

    def order(self) -> int:
        return StabilizerChain(self.n, self.generators).order()


def canonical_form(K: SimplicialComplex) -> CanonicalForm:
    """
    Canonical facet list and relabeling; isomorphic complexes give identical facet lists.

    Raises:
        InputError: If K has more than MAX_VERTICES vertices
    """
    return _CanonicalSearch(K).run().canonical()


def automorphisms(K: SimplicialComplex, color_preserving: bool = False) -> List[Dict[int, int]]:
    """Generators of Aut(K) as vertex maps."""
    return _CanonicalSearch(K, color_preserving).run().vertex_generators()


def automorphism_group(K: SimplicialComplex, color_preserving: bool = False) -> GroupDescription:
    """
    Order, generators and vertex orbits of the automorphism group.

    Args:
        K: Complex with at most MAX_VERTICES vertices
        color_preserving: Restrict to automorphisms fixing every vertex color

    Returns:
        GroupDescription with generators in cycle notation over vertex labels
    """
    search = _CanonicalSearch(K, color_preserving).run()
    vs = K.vertices
    return GroupDescription(
        order=search.order(),
        generators=[format_cycles(g, K) for g in search.vertex_generators()],
        orbits=[[K.label(vs[i]) for i in orbit] for orbit in orbits_of(search.n, search.generators)],
        color_preserving=color_preserving,
    )


def are_isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> Optional[Dict[int, int]]:
    """A vertex bijection carrying the facets of K1 onto those of K2, or None."""
    if K1.f != K2.f:
        return None
    c1, c2 = canonical_form(K1), canonical_form(K2)
    if c1.facets != c2.facets:
        return None
    back = {label: v for v, label in c2.relabeling.items()}
    return {v: back[label] for v, label in c1.relabeling.items()}


def group_order(generators: Sequence[Mapping[int, int]], vertices: Sequence[int]) -> int:
    """Order of the permutation group generated by vertex maps on `vertices`."""
    index = {v: i for i, v in enumerate(vertices)}
    perms = [tuple(index[g.get(v, v)] for v in vertices) for g in generators]
    return StabilizerChain(len(vertices), perms).order()


# ==================== Cycle Notation ====================

def _resolve(K: Union[SimplicialComplex, Mapping[str, int]], label: str) -> int:
    if isinstance(K, SimplicialComplex):
        return K.vertex_by_label(label)
    if label not in K:
        raise InputError(f"unknown vertex label '{label}'")
    return K[label]


def is_automorphism(K: SimplicialComplex, perm: Mapping[int, int]) -> bool:
    """True when perm is a bijection of the vertices mapping the facet set onto itself."""
    image = [perm.get(v, v) for v in K.vertices]
    if sorted(image) != list(K.vertices):
        return False
    facets = set(K.facets)
    return all(face_of(perm.get(v, v) for v in vertices_of(f)) in facets for f in K.facets)


def parse_cycles(text: str, K: Union[SimplicialComplex, Mapping[str, int]]) -> Dict[int, int]:
    """
    Parse cycle notation over vertex labels, e.g. "(u1 u3 u2 u4)(v1 v2)".

    Labels are resolved through the complex, or through a label -> id map
    when no complex exists yet.

    Tokens may be separated by spaces or commas or run together, and an
    underscore before the index is ignored ("u_1" is "u1").

    Raises:
        InputError: If the text is malformed, names an unknown label or repeats a vertex
    """
    if _CYCLE.sub("", text).strip():
        raise InputError(f"'{text}' is not in cycle notation")
    perm: Dict[int, int] = {}
    for body in _CYCLE.findall(text):
        leftover = _TOKEN.sub("", body).replace(",", "").strip()
        if leftover:
            raise InputError(f"cannot read '{leftover}' in cycle '({body})'")
        cycle = [_resolve(K, token.replace("_", "")) for token in _TOKEN.findall(body)]
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if a in perm:
                raise InputError(f"vertex id {a} appears twice in '{text}'")
            perm[a] = b
    return perm


def format_cycles(perm: Mapping[int, int], K: SimplicialComplex) -> str:
    seen = set()
    parts = []
    for start in sorted(perm):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(K.label(v) for v in cycle) + ")")
    return "".join(parts) or "()"


def check_generators(K: SimplicialComplex, texts: Sequence[str]) -> List[PredicateReport]:
    """Check each permutation in cycle notation individually for membership in Aut(K)."""
    reports = []
    facets = set(K.facets)
    for text in texts:
        perm = parse_cycles(text, K)
        bad = next(
            (f for f in K.facets if face_of(perm.get(v, v) for v in vertices_of(f)) not in facets),
            None,
        )
        if bad is None:
            reports.append(PredicateReport(check="automorphism", verdict=Verdict.PASS, detail=text))
        else:
            image = face_of(perm.get(v, v) for v in vertices_of(bad))
            reports.append(PredicateReport(
                check="automorphism", verdict=Verdict.FAIL,
                witness=K.face_labels(bad),
                detail=f"{text} sends facet {K.face_labels(bad)} to non-facet {K.face_labels(image)}",
            ))
    return reports
