"""
Enumeration Service.

Exhaustive enumeration of small balanced spheres by star assembly, and
symmetric searches for balanced 2-neighborly complexes invariant under a
prescribed permutation group.

Star assembly builds a balanced (d-1)-sphere from the links of the
vertices of its last color: each link is a balanced (d-2)-sphere on the
remaining colors, and every facet of a link lies in exactly two links.
Links come from recursively built libraries of labeled lower spheres.
Results are deduplicated by canonical form, re-verified and cached in
the certificate store.
"""

import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from balkit.config import (
    CHECKPOINT_INTERVAL,
    DEFAULT_JOBS,
    DEFAULT_NODE_BUDGET,
    ENUMERATION_VERTEX_CEILING,
)
from balkit.exceptions import BudgetExhausted, InputError, RegimeError
from balkit.models import Census, CensusEntry, EnumerationSpec, SearchStatus
from balkit.services.complex import (
    Coloring,
    Face,
    SimplicialComplex,
    class_labels,
    face_of,
    to_file,
    vertices_of,
)
from balkit.services.homology import homology
from balkit.services.symmetry import automorphism_group, canonical_form, parse_cycles
from balkit.services.verify import (
    is_closed_homology_manifold,
    is_homology_sphere,
    is_k_neighborly,
)
from balkit.store import store

logger = logging.getLogger(__name__)

Link = FrozenSet[Face]

# Census statements whose proofs rely on case analysis this toolkit does not replay
UNVERIFIED_STATEMENTS = [
    "No balanced 2-neighborly homology 4-sphere has color classes of size 3 (15 vertices).",
    "The octahedral 5-sphere is the only balanced 3-neighborly homology 5-sphere on at most 18 vertices.",
]


# ==================== Shared Helpers ====================

def _largest_neighborliness(K: SimplicialComplex, kappa: Coloring) -> int:
    k = 0
    for j in range(1, kappa.d + 1):
        if not is_k_neighborly(K, kappa, j).passed:
            break
        k = j
    return k


def _edge_count(facets: Sequence[Face]) -> int:
    edges = set()
    for f in facets:
        edges.update(face_of(pair) for pair in itertools.combinations(vertices_of(f), 2))
    return len(edges)


def _entry(K: SimplicialComplex, name: str) -> CensusEntry:
    kappa = K.coloring
    return CensusEntry(
        name=name,
        complex_file=to_file(K, name),
        f_vector=list(K.f),
        aut_order=automorphism_group(K).order,
        homology=homology(K),
        neighborly=_largest_neighborliness(K, kappa),
    )


def _census_entries(complexes: Sequence[SimplicialComplex], prefix: str) -> List[CensusEntry]:
    """Deduplicate by canonical form and name the survivors in (f_1, canonical form) order."""
    representatives: Dict[Tuple, SimplicialComplex] = {}
    for K in complexes:
        representatives.setdefault(canonical_form(K).key, K)
    ordered = sorted(representatives.items(), key=lambda item: (item[1].f[2], item[0]))
    return [_entry(K, f"{prefix}-{i}") for i, (_, K) in enumerate(ordered, start=1)]


def explored_fraction(path: Sequence[Tuple[int, int]]) -> float:
    """
    Share of the search tree lying to the left of a branch path, assuming
    equal subtree sizes. Each step is (branch index, branch count).
    """
    fraction, weight = 0.0, 1.0
    for index, count in path:
        fraction += weight * index / count
        weight /= count
    return fraction


# ==================== Star Assembly ====================

class _StarAssembler:
    """
    Generates labeled candidate spheres for a color-class layout.

    library(k) holds every labeled balanced (k-1)-sphere on subsets of the
    first k color classes that uses all k colors.
    """

    def __init__(self, spec: EnumerationSpec, budget: int):
        self.spec = spec
        self.d = len(spec.sizes)
        self.labels, self.colors = class_labels(spec.sizes, spec.labels)
        self.classes: List[Tuple[int, ...]] = [
            tuple(v for v in sorted(self.colors) if self.colors[v] == c) for c in range(1, self.d + 1)
        ]
        self.all_vertices = face_of(self.colors)
        self.budget = budget
        self.nodes = 0
        self._libraries: Dict[int, List[Link]] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes, self.budget)

    def library(self, k: int) -> List[Link]:
        if k in self._libraries:
            return self._libraries[k]
        if k == 1:
            result = [
                frozenset({1 << a, 1 << b}) for a, b in itertools.combinations(self.classes[0], 2)
            ]
        else:
            links = self.library(k - 1)
            seen = set()
            result = []
            z_class = self.classes[k - 1]
            for size in range(2, len(z_class) + 1):
                for zs in itertools.combinations(z_class, size):
                    for sequence in self._link_sequences(links, size):
                        for order in sorted(set(itertools.permutations(sequence))):
                            self._tick()
                            facets = frozenset(
                                f | (1 << z) for z, i in zip(zs, order) for f in links[i]
                            )
                            if facets in seen:
                                continue
                            seen.add(facets)
                            if is_homology_sphere(SimplicialComplex(facets)).passed:
                                result.append(facets)
        logger.debug("library(%d) holds %d labeled spheres", k, len(result))
        self._libraries[k] = result
        return result

    def _link_sequences(
        self,
        links: List[Link],
        m: int,
        firsts: Optional[Sequence[int]] = None,
    ) -> Iterator[Tuple[int, ...]]:
        """
        Nondecreasing index sequences of m links in which every link facet
        is used exactly 0 or 2 times. The last link is forced.
        """
        index_of = {L: i for i, L in enumerate(links)}

        def extend(start: int, chosen: List[int], counts: Dict[Face, int]) -> Iterator[Tuple[int, ...]]:
            self._tick()
            if len(chosen) == m - 1:
                last = frozenset(r for r, c in counts.items() if c == 1)
                j = index_of.get(last)
                if j is not None and j >= chosen[-1]:
                    yield tuple(chosen) + (j,)
                return
            candidates = range(start, len(links))
            if not chosen and firsts is not None:
                candidates = firsts
            for i in candidates:
                L = links[i]
                if any(counts.get(r, 0) >= 2 for r in L):
                    continue
                for r in L:
                    counts[r] = counts.get(r, 0) + 1
                chosen.append(i)
                yield from extend(i, chosen, counts)
                chosen.pop()
                for r in L:
                    counts[r] -= 1
                    if not counts[r]:
                        del counts[r]

        yield from extend(0, [], {})

    def assemble(self, firsts: Optional[Sequence[int]] = None) -> Iterator[Tuple[Face, ...]]:
        """Candidate facet sets using every vertex; the last-color vertices are interchangeable."""
        if self.d == 1:
            if self.spec.sizes == [2]:
                yield (1, 2)
            return
        links = self.library(self.d - 1)
        zs = self.classes[-1]
        for sequence in self._link_sequences(links, len(zs), firsts):
            support = 0
            facets = []
            for z, i in zip(zs, sequence):
                for f in links[i]:
                    facets.append(f | (1 << z))
                    support |= f
            if support | face_of(zs) == self.all_vertices:
                yield tuple(sorted(facets))

    def top_links(self) -> int:
        return len(self.library(self.d - 1)) if self.d > 1 else 0


def _assemble_chunk(spec_json: str, firsts: List[int], budget: int) -> Tuple[List[Tuple[Face, ...]], int, bool]:
    """Process-pool worker: candidates whose first link index lies in `firsts`."""
    assembler = _StarAssembler(EnumerationSpec.model_validate_json(spec_json), budget)
    found: List[Tuple[Face, ...]] = []
    try:
        found.extend(assembler.assemble(firsts))
    except BudgetExhausted:
        return found, assembler.nodes, True
    return found, assembler.nodes, False


def _check_regime(spec: EnumerationSpec) -> None:
    d = len(spec.sizes)
    if d * max(spec.sizes) > ENUMERATION_VERTEX_CEILING:
        raise RegimeError(
            f"sizes={spec.sizes}",
            f"d * max(n_i) = {d * max(spec.sizes)} exceeds {ENUMERATION_VERTEX_CEILING}",
        )
    if spec.generators:
        raise InputError("exhaustive enumeration takes no generators; use a symmetric search")


def enumerate_balanced_spheres(
    spec: EnumerationSpec,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
    use_cache: bool = True,
) -> Census:
    """
    Every balanced homology (d-1)-sphere with the given color-class sizes,
    up to isomorphism, filtered by max_edges and neighborliness.

    Args:
        spec: Layout and filters; generators must be empty
        budget: Maximum explored nodes per worker (default DEFAULT_NODE_BUDGET)
        jobs: Worker processes for the top level (default DEFAULT_JOBS)
        use_cache: Return a stored complete census for the same spec

    Returns:
        Census sorted by (f_1, canonical form). Status FOUND or NONE when
        exhaustive, UNDECIDED when the budget ran out.

    Raises:
        RegimeError: If d * max(n_i) exceeds ENUMERATION_VERTEX_CEILING
        InputError: If the spec carries generators
    """
    _check_regime(spec)
    key = spec.spec_hash()
    if use_cache:
        cached = store.load_census(key)
        if cached is not None and cached.complete:
            logger.info("census %s loaded from store", key)
            return cached

    budget = budget or DEFAULT_NODE_BUDGET
    jobs = jobs or DEFAULT_JOBS
    assembler = _StarAssembler(spec, budget)
    candidates: List[Tuple[Face, ...]] = []
    exhausted = False
    try:
        if jobs > 1 and assembler.top_links() > 1:
            n = assembler.top_links()
            chunks = [list(range(i, n, jobs)) for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_assemble_chunk, spec.model_dump_json(), c, budget) for c in chunks if c]
                for future in futures:
                    found, nodes, hit = future.result()
                    candidates.extend(found)
                    assembler.nodes += nodes
                    exhausted = exhausted or hit
        else:
            candidates.extend(assembler.assemble())
    except BudgetExhausted as e:
        logger.info("enumeration %s undecided: %s", key, e.message)
        exhausted = True

    complexes = []
    for facets in candidates:
        if spec.max_edges is not None and _edge_count(facets) > spec.max_edges:
            continue
        complexes.append(SimplicialComplex(facets, labels=assembler.labels, colors=assembler.colors))

    representatives: Dict[Tuple, SimplicialComplex] = {}
    for K in complexes:
        representatives.setdefault(canonical_form(K).key, K)
    accepted = []
    for K in representatives.values():
        if not is_homology_sphere(K).passed:
            logger.debug("discarding assembled pseudomanifold %s", K)
            continue
        if spec.neighborly and not is_k_neighborly(K, K.coloring, spec.neighborly).passed:
            continue
        accepted.append(K)

    entries = _census_entries(accepted, "x".join(str(n) for n in spec.sizes))
    if exhausted:
        status = SearchStatus.UNDECIDED
    else:
        status = SearchStatus.FOUND if entries else SearchStatus.NONE
    census = Census(
        spec=spec,
        status=status,
        entries=entries,
        nodes=assembler.nodes,
        notes=[f"{len(candidates)} labeled candidates assembled", f"edge counts: {census_spectrum_of(entries)}"],
    )
    if census.complete:
        store.save_census(census)
    logger.info("enumeration %s: %s with %d spheres", key, status.value, len(entries))
    return census


# ==================== Symmetric Search ====================

def orbit_facets(kappa: Coloring, generators: Sequence[Mapping[int, int]]) -> List[List[Face]]:
    """
    Orbits of the rainbow d-sets under the group generated by vertex maps.

    Orbits are sorted internally and by their least member.

    Raises:
        InputError: If a generator sends a rainbow set to a non-rainbow set
    """
    full = (1 << kappa.d) - 1
    rainbow = [face_of(choice) for choice in itertools.product(*(kappa.classes[c] for c in range(1, kappa.d + 1)))]
    seen = set()
    orbits = []
    for start in sorted(rainbow, key=vertices_of):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            f = frontier.pop()
            for g in generators:
                image = face_of(g.get(v, v) for v in vertices_of(f))
                if kappa.color_mask(image) != full or image.bit_count() != kappa.d:
                    raise InputError(
                        f"generator does not preserve rainbow facets: {vertices_of(f)} -> {vertices_of(image)}"
                    )
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        seen |= orbit
        orbits.append(sorted(orbit, key=vertices_of))
    return orbits


class _Stop(Exception):
    pass


class _SymmetricSearch:
    """
    Backtracking over facet orbits.

    While some ridge lies in exactly one chosen facet, branch on the orbit
    that closes it, fewest options first; otherwise branch on covering the
    first uncovered rainbow set. Chosen facets never put a ridge in three
    facets.
    """

    def __init__(self, spec: EnumerationSpec, budget: int, resume: Optional[Dict] = None):
        self.spec = spec
        self.key = spec.spec_hash()
        self.labels, self.colors = class_labels(spec.sizes, spec.labels)
        self.kappa = Coloring(self.colors, len(spec.sizes))
        by_label = {label: v for v, label in self.labels.items()}
        self.generators = [parse_cycles(text, by_label) for text in spec.generators]
        self.orbits = orbit_facets(self.kappa, self.generators)

        self.orbit_ridges: List[Dict[Face, int]] = []
        self.ridge_orbits: Dict[Face, List[int]] = {}
        for o, orbit in enumerate(self.orbits):
            mult: Dict[Face, int] = {}
            for f in orbit:
                for v in vertices_of(f):
                    r = f & ~(1 << v)
                    mult[r] = mult.get(r, 0) + 1
            self.orbit_ridges.append(mult)
            for r in mult:
                self.ridge_orbits.setdefault(r, []).append(o)

        k = spec.neighborly or 1
        self.requirements: List[Face] = [
            face_of(choice)
            for colors in itertools.combinations(range(1, self.kappa.d + 1), k)
            for choice in itertools.product(*(self.kappa.classes[c] for c in colors))
        ]
        self.requirement_orbits: List[List[int]] = [
            [o for o, orbit in enumerate(self.orbits) if any(f & req == req for f in orbit)]
            for req in self.requirements
        ]
        self.orbit_requirements: List[List[int]] = [[] for _ in self.orbits]
        for j, owners in enumerate(self.requirement_orbits):
            for o in owners:
                self.orbit_requirements[o].append(j)

        # a closed 3-manifold has f_3 = f_1 - f_0
        self.facet_target: Optional[int] = None
        if spec.dimension == 3 and (spec.neighborly or 0) >= 2:
            f0 = sum(spec.sizes)
            f1 = sum(a * b for a, b in itertools.combinations(spec.sizes, 2))
            self.facet_target = f1 - f0

        self.state = [0] * len(self.orbits)
        for o, mult in enumerate(self.orbit_ridges):
            if any(m > 2 for m in mult.values()):
                self.state[o] = -1
        self.counts: Dict[Face, int] = {}
        self.open: set = set()
        self.covered = [0] * len(self.requirements)
        self.total = 0

        self.budget = budget
        self.nodes = 0
        self.prior_nodes = 0
        self.path: List[Tuple[int, int]] = []
        self.resume_path: List[int] = []
        self.following = False
        self.solutions: List[Tuple[Face, ...]] = []
        self.accepted: List[SimplicialComplex] = []
        self._seen = set()
        if resume:
            self.resume_path = list(resume.get("path", []))
            self.following = bool(self.resume_path)
            self.prior_nodes = int(resume.get("nodes", 0))
            for facets in resume.get("solutions", []):
                self._consider(tuple(facets))

    # ---------- bookkeeping ----------

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes % CHECKPOINT_INTERVAL == 0:
            self.checkpoint()
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes, self.budget)

    def checkpoint(self) -> None:
        store.save_checkpoint(self.key, {
            "path": [i for i, _ in self.path],
            "nodes": self.prior_nodes + self.nodes,
            "solutions": [list(s) for s in self.solutions],
        })

    def _addable(self, o: int) -> bool:
        if self.state[o] != 0:
            return False
        if self.facet_target is not None and self.total + len(self.orbits[o]) > self.facet_target:
            return False
        return all(self.counts.get(r, 0) + m <= 2 for r, m in self.orbit_ridges[o].items())

    def _include(self, o: int, undo: List[Tuple[str, int]]) -> None:
        self.state[o] = 1
        self.total += len(self.orbits[o])
        for r, m in self.orbit_ridges[o].items():
            c = self.counts.get(r, 0) + m
            self.counts[r] = c
            if c == 1:
                self.open.add(r)
            else:
                self.open.discard(r)
        for j in self.orbit_requirements[o]:
            self.covered[j] += 1
        undo.append(("in", o))

    def _exclude(self, o: int, undo: List[Tuple[str, int]]) -> None:
        if self.state[o] == 0:
            self.state[o] = -1
            undo.append(("out", o))

    def _revert(self, undo: List[Tuple[str, int]]) -> None:
        for kind, o in reversed(undo):
            self.state[o] = 0
            if kind == "out":
                continue
            self.total -= len(self.orbits[o])
            for r, m in self.orbit_ridges[o].items():
                c = self.counts[r] - m
                if c:
                    self.counts[r] = c
                else:
                    del self.counts[r]
                if c == 1:
                    self.open.add(r)
                else:
                    self.open.discard(r)
            for j in self.orbit_requirements[o]:
                self.covered[j] -= 1

    # ---------- search ----------

    def _branch_point(self) -> Tuple[str, List[int]]:
        if self.open:
            best: Optional[Tuple[int, Face, List[int]]] = None
            for r in self.open:
                options = [o for o in self.ridge_orbits.get(r, []) if self._addable(o)]
                if best is None or (len(options), r) < (len(best[2]), best[1]):
                    best = (len(options), r, options)
                    if not options:
                        break
            return "ridge", best[2]
        for j, count in enumerate(self.covered):
            if not count:
                return "cover", [o for o in self.requirement_orbits[j] if self._addable(o)]
        if self.facet_target is not None and self.total != self.facet_target:
            return "dead", []
        return "leaf", []

    def _dfs(self, depth: int) -> None:
        self._tick()
        if self.following and depth >= len(self.resume_path):
            self.following = False
        kind, options = self._branch_point()
        if kind == "leaf":
            self._record()
            return
        n = len(options)
        start = self.resume_path[depth] if self.following else 0
        for i in range(start, n):
            undo: List[Tuple[str, int]] = []
            if kind == "ridge":
                for o in options:
                    if o != options[i]:
                        self._exclude(o, undo)
            else:
                for o in options[:i]:
                    self._exclude(o, undo)
            self._include(options[i], undo)
            self.path.append((i, n))
            try:
                self._dfs(depth + 1)
            finally:
                self.path.pop()
                self._revert(undo)
            self.following = False

    def _record(self) -> None:
        facets = tuple(sorted(f for o, s in enumerate(self.state) if s == 1 for f in self.orbits[o]))
        if self._consider(facets):
            self.solutions.append(facets)
            if self.spec.first_only:
                raise _Stop()

    def _consider(self, facets: Tuple[Face, ...]) -> bool:
        K = SimplicialComplex(facets, labels=self.labels, colors=self.colors)
        key = canonical_form(K).key
        if key in self._seen or not self._accepts(K):
            return False
        self._seen.add(key)
        self.accepted.append(K)
        return True

    def _accepts(self, K: SimplicialComplex) -> bool:
        spec = self.spec
        if K.vertex_mask != face_of(self.colors):
            return False
        if spec.max_edges is not None and len(K.faces(1)) > spec.max_edges:
            return False
        if spec.neighborly and not is_k_neighborly(K, self.kappa, spec.neighborly).passed:
            return False
        if spec.manifold:
            if not is_closed_homology_manifold(K).passed:
                return False
        elif not is_homology_sphere(K).passed:
            return False
        if spec.target_betti is not None:
            profile = homology(K)
            width = max(len(spec.target_betti), K.dim + 1)
            target = list(spec.target_betti) + [0] * (width - len(spec.target_betti))
            if [profile.betti_at(i) for i in range(width)] != target:
                return False
            torsion = {i: sorted(t) for i, t in profile.torsion.items() if t}
            wanted = {int(i): sorted(t) for i, t in spec.target_torsion.items() if t}
            if torsion != wanted:
                return False
        return True

    def run(self) -> bool:
        """Search to completion; True when a first-only search stopped early."""
        try:
            self._dfs(0)
        except _Stop:
            return True
        return False


def search_symmetric(
    spec: EnumerationSpec,
    budget: Optional[int] = None,
    resume: bool = True,
) -> Census:
    """
    Complexes with the spec's color classes that are invariant under the
    group generated by spec.generators, meet the neighborliness and homology
    targets, and are spheres (or closed manifolds when spec.manifold is set).

    Args:
        spec: Layout, generators in cycle notation over the class labels, targets
        budget: Maximum explored nodes in this run (default DEFAULT_NODE_BUDGET)
        resume: Continue from a stored checkpoint of the same spec

    Returns:
        Census of pairwise non-isomorphic solutions. UNDECIDED when the
        budget ran out; the notes then give an estimate of the explored share.

    Raises:
        InputError: If a generator is malformed or does not preserve rainbow facets
    """
    key = spec.spec_hash()
    cached = store.load_census(key)
    if cached is not None and cached.complete:
        logger.info("symmetric search %s loaded from store", key)
        return cached

    saved = store.load_checkpoint(key) if resume else None
    if saved:
        logger.info("resuming symmetric search %s at %s nodes", key, saved.get("nodes"))
    search = _SymmetricSearch(spec, budget or DEFAULT_NODE_BUDGET, saved)
    logger.info(
        "symmetric search %s: %d facet orbits, %d requirements",
        key, len(search.orbits), len(search.requirements),
    )
    notes = [f"{len(search.orbits)} facet orbits under the generated group"]
    try:
        stopped = search.run()
    except BudgetExhausted as e:
        search.checkpoint()
        fraction = explored_fraction(search.path)
        logger.info("symmetric search %s undecided: %s", key, e.message)
        notes.append(f"budget exhausted; explored fraction ~ {fraction:.6f}")
        return Census(
            spec=spec,
            status=SearchStatus.UNDECIDED,
            entries=_census_entries(search.accepted, f"search-{key[:8]}"),
            nodes=search.prior_nodes + search.nodes,
            notes=notes,
        )

    store.clear_checkpoint(key)
    entries = _census_entries(search.accepted, f"search-{key[:8]}")
    census = Census(
        spec=spec,
        status=SearchStatus.FOUND if entries else SearchStatus.NONE,
        entries=entries,
        nodes=search.prior_nodes + search.nodes,
        notes=notes + (["stopped at the first solution"] if stopped else []),
    )
    if not spec.first_only:
        store.save_census(census)
    return census


# ==================== Census Reporting ====================

def census_spectrum_of(entries: Sequence[CensusEntry]) -> List[int]:
    return sorted({entry.f_vector[2] for entry in entries})


def census_spectrum(census: Census) -> List[int]:
    """Distinct edge counts f_1 found by a census."""
    return census_spectrum_of(census.entries)


def census_frame(census: Census) -> pd.DataFrame:
    """One row per census entry: f-numbers, automorphism order, neighborliness and Betti numbers."""
    rows = []
    for entry in census.entries:
        row = {"name": entry.name}
        row.update({f"f{i - 1}": n for i, n in enumerate(entry.f_vector) if i > 0})
        row["aut_order"] = entry.aut_order
        row["neighborly"] = entry.neighborly
        row["betti"] = tuple(entry.homology.betti)
        rows.append(row)
    if not rows:
        return pd.DataFrame(columns=["name", "aut_order", "neighborly", "betti"])
    return pd.DataFrame(rows)


def write_census(census: Census, directory: Path) -> Path:
    """
    Export a census as one complex file per entry plus index.json.

    The index also lists the census statements reported without a
    machine check.

    Returns:
        Path of index.json
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    index = {
        "spec": census.spec.model_dump(mode="json"),
        "status": census.status.value,
        "nodes": census.nodes,
        "notes": census.notes,
        "unverified": UNVERIFIED_STATEMENTS,
        "entries": [],
    }
    for entry in census.entries:
        path = directory / f"{entry.name}.json"
        path.write_text(entry.complex_file.model_dump_json(indent=2))
        index["entries"].append({
            "name": entry.name,
            "file": path.name,
            "f_vector": entry.f_vector,
            "aut_order": entry.aut_order,
            "neighborly": entry.neighborly,
            "betti": entry.homology.betti,
            "torsion": {str(k): v for k, v in entry.homology.torsion.items()},
        })
    out = directory / "index.json"
    out.write_text(json.dumps(index, indent=2))
    return out
