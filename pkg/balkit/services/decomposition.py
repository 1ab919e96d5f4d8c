"""
Decomposition Service.

Decision procedures with witnesses for ear decompositions (a sphere
followed by balls, each ball meeting the earlier union exactly in its
boundary) and shellings. Searches count explored nodes against a budget;
running out yields an UNDECIDED outcome, never a false NONE.
"""

import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Union

from balkit.config import DEFAULT_NODE_BUDGET
from balkit.exceptions import BudgetExhausted, InputError, PreconditionError
from balkit.models import PredicateReport, SearchOutcome, SearchStatus, Verdict
from balkit.services.complex import (
    Coloring,
    Face,
    SimplicialComplex,
    boundary_complex,
    delete,
    intersection,
    vertices_of,
)
from balkit.services.homology import homology
from balkit.services.verify import is_homology_ball, is_homology_sphere

logger = logging.getLogger(__name__)

Piece = Union[SimplicialComplex, Sequence[int]]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _ridges(face: Face) -> List[Face]:
    return [face & ~(1 << v) for v in vertices_of(face)]


def facet_indices(K: SimplicialComplex, piece: Piece) -> List[int]:
    """
    Indices into K.facets of a subcomplex or of an index list.

    Raises:
        InputError: If a facet of the piece is not a facet of K, or an index is out of range
    """
    if isinstance(piece, SimplicialComplex):
        position = {f: i for i, f in enumerate(K.facets)}
        out = []
        for f in piece.facets:
            if f not in position:
                raise InputError(f"{K.face_labels(f)} is not a facet of the complex")
            out.append(position[f])
        return sorted(out)
    out = sorted(set(piece))
    if any(not 0 <= i < len(K.facets) for i in out):
        raise InputError(f"facet indices {out} out of range for {len(K.facets)} facets")
    return out


def _subcomplex(K: SimplicialComplex, indices: Sequence[int]) -> SimplicialComplex:
    return K.derive([K.facets[i] for i in indices])


# ==================== Ear Decompositions ====================

def validate_ear_decomposition(K: SimplicialComplex, pieces: Sequence[Piece]) -> PredicateReport:
    """
    Check a candidate ear decomposition literally.

    The first piece must be a homology sphere and every later piece a
    homology ball of the same dimension as K, each later piece must meet the
    union of the earlier ones exactly in its boundary, and the pieces must
    cover K.

    Raises:
        InputError: If a piece uses a facet not in K
    """
    check = "ear_decomposition"
    if not pieces:
        return PredicateReport(check=check, verdict=Verdict.FAIL, witness=[], detail="no pieces given")
    index_lists = [facet_indices(K, piece) for piece in pieces]
    union_complex: Optional[SimplicialComplex] = None
    for j, indices in enumerate(index_lists):
        piece = _subcomplex(K, indices)

        def fail(reason: str) -> PredicateReport:
            return PredicateReport(check=check, verdict=Verdict.FAIL, witness={"piece": j}, detail=reason)

        if not indices or piece.dim != K.dim or not piece.is_pure:
            return fail(f"piece {j} is not a pure {K.dim}-complex")
        if j == 0:
            if not is_homology_sphere(piece).passed:
                return fail("first piece is not a homology sphere")
            union_complex = piece
            continue
        if not is_homology_ball(piece).passed:
            return fail(f"piece {j} is not a homology ball")
        if intersection(union_complex, piece) != boundary_complex(piece):
            return fail(f"piece {j} does not meet the earlier union exactly in its boundary")
        union_complex = SimplicialComplex(union_complex.facets + piece.facets)
    covered = set(i for indices in index_lists for i in indices)
    if len(covered) != len(K.facets):
        missing = sorted(set(range(len(K.facets))) - covered)
        return PredicateReport(
            check=check, verdict=Verdict.FAIL, witness=K.face_labels(K.facets[missing[0]]),
            detail=f"{len(missing)} facets are not covered by the pieces",
        )
    return PredicateReport(check=check, verdict=Verdict.PASS, data={"pieces": len(index_lists)})


class _EarSearch:
    """
    Exhaustive ear-decomposition search.

    The number of pieces of any ear decomposition equals the top reduced
    Betti number, which bounds the depth. Candidate pieces are facet sets
    in which every ridge outside the current union lies in 0 or 2 chosen
    facets and every ridge inside it in at most 1; each candidate is grown
    from its smallest facet by closing the open ridge with the fewest
    options. Remaining-facet sets known to fail are memoized.
    """

    def __init__(self, K: SimplicialComplex, budget: int):
        self.K = K
        self.budget = budget
        self.nodes = 0
        self.n = len(K.facets)
        self.full = (1 << self.n) - 1
        self.facet_ridges: List[List[Face]] = [_ridges(f) for f in K.facets]
        self.ridge_facets: Dict[Face, List[int]] = {}
        for i, rs in enumerate(self.facet_ridges):
            for r in rs:
                self.ridge_facets.setdefault(r, []).append(i)
        self.failed: set = set()
        self.pieces_needed = homology(K, "rational").betti_at(K.dim)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes, self.budget)

    def _grow(self, chosen: int, pool: int, in_union: Callable[[Face], bool]) -> Iterator[int]:
        self._tick()
        counts: Dict[Face, int] = {}
        for i in _bits(chosen):
            for r in self.facet_ridges[i]:
                counts[r] = counts.get(r, 0) + 1
        best: Optional[List[int]] = None
        for r, c in counts.items():
            if in_union(r):
                if c > 1:
                    return
                continue
            if c > 2:
                return
            if c == 1:
                options = [j for j in self.ridge_facets[r] if pool >> j & 1]
                if not options:
                    return
                if best is None or len(options) < len(best):
                    best = options
        if best is None:
            yield chosen
            return
        others = 0
        for j in best:
            others |= 1 << j
        for j in best:
            yield from self._grow(chosen | (1 << j), pool & ~others, in_union)

    def _candidates(self, allowed: int, in_union: Callable[[Face], bool], first_only: bool) -> Iterator[int]:
        for seed in _bits(allowed):
            if first_only and allowed & ((1 << seed) - 1):
                return
            above = allowed & ~((1 << (seed + 1)) - 1)
            yield from self._grow(1 << seed, above, in_union)

    def _extend(self, used: int, union_complex: Optional[SimplicialComplex], pieces: List[int]) -> Optional[List[int]]:
        if used == self.full:
            return pieces if len(pieces) == self.pieces_needed else None
        if len(pieces) >= self.pieces_needed:
            return None
        remaining = self.full & ~used
        if remaining in self.failed:
            return None
        last = len(pieces) + 1 == self.pieces_needed
        if union_complex is None:
            in_union: Callable[[Face], bool] = lambda r: False
        else:
            ridges = union_complex.faces(self.K.dim - 1)
            in_union = ridges.__contains__
        for S in self._candidates(remaining, in_union, first_only=last):
            if last and S != remaining:
                continue
            piece = _subcomplex(self.K, list(_bits(S)))
            if union_complex is None:
                if not is_homology_sphere(piece).passed:
                    continue
                grown = piece
            else:
                if not is_homology_ball(piece).passed:
                    continue
                if intersection(union_complex, piece) != boundary_complex(piece):
                    continue
                grown = SimplicialComplex(union_complex.facets + piece.facets)
            found = self._extend(used | S, grown, pieces + [S])
            if found is not None:
                return found
        self.failed.add(remaining)
        return None

    def run(self) -> Optional[List[List[int]]]:
        if self.pieces_needed == 0:
            return None
        found = self._extend(0, None, [])
        if found is None:
            return None
        return [list(_bits(S)) for S in found]


def find_ear_decomposition(K: SimplicialComplex, budget: Optional[int] = None) -> SearchOutcome:
    """
    Search for an ear decomposition.

    Args:
        K: Pure complex (dimension 2 is the intended use)
        budget: Maximum explored nodes (default DEFAULT_NODE_BUDGET)

    Returns:
        SearchOutcome with facet-index lists per piece when FOUND

    Raises:
        PreconditionError: If K is void or not pure
    """
    if K.is_void or not K.is_pure:
        raise PreconditionError("find_ear_decomposition", "complex must be pure and non-void")
    search = _EarSearch(K, budget or DEFAULT_NODE_BUDGET)
    try:
        witness = search.run()
    except BudgetExhausted as e:
        logger.info("ear search undecided after %d nodes", e.nodes)
        return SearchOutcome(check="ear_decomposition", status=SearchStatus.UNDECIDED, nodes=search.nodes, detail=e.message)
    if witness is None:
        return SearchOutcome(
            check="ear_decomposition", status=SearchStatus.NONE, nodes=search.nodes,
            detail=f"exhaustive search with {search.pieces_needed} pieces found nothing",
        )
    return SearchOutcome(check="ear_decomposition", status=SearchStatus.FOUND, witness=witness, nodes=search.nodes)


def rank_selection_ear_report(
    K: SimplicialComplex,
    kappa: Coloring,
    color: int,
    budget: Optional[int] = None,
) -> SearchOutcome:
    """
    Ear-decomposition search on K minus one color class.

    The detail records the piece count any decomposition would need, namely
    the top reduced Betti number of the deletion.
    """
    if color not in kappa.classes:
        raise InputError(f"color {color} is not in [1, {kappa.d}]")
    L = delete(K, kappa.classes[color])
    predicted = homology(L, "rational").betti_at(L.dim)
    outcome = find_ear_decomposition(L, budget)
    outcome.detail = f"pieces needed: {predicted}. {outcome.detail}".strip()
    return outcome


# ==================== Shellings ====================

def _shells_onto(facet: Face, previous: Sequence[Face], ridges_before: set) -> bool:
    """facet ∩ (previous union) is pure of codimension one in facet."""
    own = [r for r in _ridges(facet) if r in ridges_before]
    if not own:
        return False
    for g in previous:
        meet = facet & g
        if not any(meet & r == meet for r in own):
            return False
    return True


def validate_shelling(K: SimplicialComplex, order: Sequence[int], complete: bool = True) -> PredicateReport:
    """
    Check a facet order (indices into K.facets) is a shelling.

    With complete=False any prefix of a shelling passes.
    """
    check = "shelling"
    if len(set(order)) != len(order) or any(not 0 <= i < len(K.facets) for i in order):
        raise InputError("shelling order must list distinct facet indices")
    if complete and len(order) != len(K.facets):
        return PredicateReport(
            check=check, verdict=Verdict.FAIL, witness={"length": len(order)},
            detail=f"order lists {len(order)} of {len(K.facets)} facets",
        )
    previous: List[Face] = []
    ridges_before: set = set()
    for position, i in enumerate(order):
        facet = K.facets[i]
        if previous and not _shells_onto(facet, previous, ridges_before):
            return PredicateReport(
                check=check, verdict=Verdict.FAIL,
                witness={"position": position, "facet": K.face_labels(facet)},
                detail="facet meets the earlier facets in a non-pure or non-codimension-one complex",
            )
        previous.append(facet)
        ridges_before.update(_ridges(facet))
    return PredicateReport(check=check, verdict=Verdict.PASS, data={"facets": len(order)})


class _ShellingSearch:
    """Depth-first search over facet orders with a memo of failed used-facet sets."""

    def __init__(self, K: SimplicialComplex, budget: int):
        self.K = K
        self.budget = budget
        self.nodes = 0
        self.n = len(K.facets)
        self.full = (1 << self.n) - 1
        self.ridge_facets: Dict[Face, List[int]] = {}
        for i, f in enumerate(K.facets):
            for r in _ridges(f):
                self.ridge_facets.setdefault(r, []).append(i)
        self.failed: set = set()

    def _extend(self, used: int, order: List[int], ridges_before: set) -> Optional[List[int]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes, self.budget)
        if used == self.full:
            return order
        if used in self.failed:
            return None
        previous = [self.K.facets[i] for i in order]
        frontier = sorted({j for r in ridges_before for j in self.ridge_facets.get(r, ()) if not used >> j & 1})
        for j in frontier:
            facet = self.K.facets[j]
            if not _shells_onto(facet, previous, ridges_before):
                continue
            found = self._extend(used | (1 << j), order + [j], ridges_before | set(_ridges(facet)))
            if found is not None:
                return found
        self.failed.add(used)
        return None

    def run(self) -> Optional[List[int]]:
        for first in range(self.n):
            found = self._extend(1 << first, [first], set(_ridges(self.K.facets[first])))
            if found is not None:
                return found
        return None


def find_shelling(K: SimplicialComplex, budget: Optional[int] = None) -> SearchOutcome:
    """
    Search for a shelling order.

    Raises:
        PreconditionError: If K is void or not pure
    """
    if K.is_void or not K.is_pure:
        raise PreconditionError("find_shelling", "complex must be pure and non-void")
    search = _ShellingSearch(K, budget or DEFAULT_NODE_BUDGET)
    try:
        order = search.run()
    except BudgetExhausted as e:
        logger.info("shelling search undecided after %d nodes", e.nodes)
        return SearchOutcome(check="shelling", status=SearchStatus.UNDECIDED, nodes=search.nodes, detail=e.message)
    if order is None:
        return SearchOutcome(check="shelling", status=SearchStatus.NONE, nodes=search.nodes,
                             detail="every facet order was exhausted")
    return SearchOutcome(check="shelling", status=SearchStatus.FOUND, witness=[order], nodes=search.nodes)
