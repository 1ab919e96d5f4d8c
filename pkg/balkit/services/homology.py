"""
Homology Service.

Reduced simplicial homology over the integers (with torsion, via Smith
normal form on Python integers), the rationals, or a prime field.
The empty face is always a generator in dimension -1.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from balkit.exceptions import InputError, PreconditionError
from balkit.models import HomologyProfile
from balkit.services.complex import (
    Coloring,
    Face,
    SimplicialComplex,
    rank_selected,
    vertices_of,
)

logger = logging.getLogger(__name__)

Coefficients = Union[str, int]


# ==================== Boundary Matrices ====================

@dataclass(frozen=True)
class ChainBoundaryMatrix:
    """
    Sparse matrix of ∂_k : C_k -> C_{k-1}.

    Rows are the (k-1)-faces and columns the k-faces, both in lexicographic
    order. Removing the j-th smallest vertex of a face contributes (-1)^j.
    """
    dimension: int
    rows: Tuple[Face, ...]
    cols: Tuple[Face, ...]
    entries: Dict[Tuple[int, int], int]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for (r, c), v in self.entries.items():
            out[r, c] = v
        return out

    def compose_is_zero(self, lower: "ChainBoundaryMatrix") -> bool:
        """True when lower · self = 0, i.e. ∂_{k-1} ∂_k = 0."""
        if lower.shape[1] != self.shape[0]:
            return False
        return not np.any(lower.to_dense() @ self.to_dense())


def boundary_matrices(K: SimplicialComplex) -> List[ChainBoundaryMatrix]:
    """
    ∂_0 .. ∂_dim with ∂_0 mapping every vertex to the empty face.

    Raises:
        PreconditionError: If K is void
    """
    if K.is_void:
        raise PreconditionError("boundary_matrices", "void complex has no chain groups")
    ordered = {
        k: tuple(sorted(K.faces(k), key=vertices_of))
        for k in range(-1, K.dim + 1)
    }
    matrices = []
    for k in range(0, K.dim + 1):
        row_index = {face: i for i, face in enumerate(ordered[k - 1])}
        entries: Dict[Tuple[int, int], int] = {}
        for c, face in enumerate(ordered[k]):
            for j, v in enumerate(vertices_of(face)):
                entries[(row_index[face & ~(1 << v)], c)] = -1 if j % 2 else 1
        matrices.append(ChainBoundaryMatrix(k, ordered[k - 1], ordered[k], entries))
    return matrices


# ==================== Smith Normal Form ====================

def _unit_pivot(rows: Dict[int, Dict[int, int]], cols: Dict[int, set]) -> Optional[Tuple[int, int]]:
    """Unit entry with the smallest Markowitz cost."""
    best = None
    best_cost = 0
    for r, entries in rows.items():
        for c, v in entries.items():
            if v == 1 or v == -1:
                cost = (len(entries) - 1) * (len(cols[c]) - 1)
                if best is None or cost < best_cost:
                    best, best_cost = (r, c), cost
                    if cost == 0:
                        return best
    return best


def _eliminate_unit(rows: Dict[int, Dict[int, int]], cols: Dict[int, set], r: int, c: int) -> None:
    """Clear column c with row operations, then drop row r and column c."""
    pivot_row = rows.pop(r)
    p = pivot_row[c]
    for cc in pivot_row:
        cols[cc].discard(r)
    for r2 in list(cols[c]):
        row2 = rows[r2]
        factor = row2[c] * p
        for cc, v in pivot_row.items():
            new = row2.get(cc, 0) - factor * v
            if new:
                if cc not in row2:
                    cols[cc].add(r2)
                row2[cc] = new
            elif cc in row2:
                del row2[cc]
                cols[cc].discard(r2)
        if not row2:
            del rows[r2]
    cols.pop(c, None)


def _dense_smith(A: List[List[int]]) -> List[int]:
    """Nonzero invariant factors of a dense integer matrix."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag: List[int] = []
    t = 0
    while t < min(m, n):
        pos = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pos is None or abs(A[i][j]) < abs(A[pos[0]][pos[1]])):
                    pos = (i, j)
        if pos is None:
            break
        i, j = pos
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            settled = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        settled = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        settled = False
            if not settled:
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def smith_invariants(matrix: ChainBoundaryMatrix) -> List[int]:
    """
    Nonzero invariant factors of a boundary matrix, as a divisibility chain.

    Unit pivots are eliminated sparsely first; the residual block (usually
    tiny) goes through dense Smith normal form on arbitrary-precision ints.
    """
    rows: Dict[int, Dict[int, int]] = {}
    for (r, c), v in matrix.entries.items():
        rows.setdefault(r, {})[c] = v
    cols: Dict[int, set] = {}
    for r, entries in rows.items():
        for c in entries:
            cols.setdefault(c, set()).add(r)

    units = 0
    while True:
        pivot = _unit_pivot(rows, cols)
        if pivot is None:
            break
        _eliminate_unit(rows, cols, *pivot)
        units += 1

    residual_cols = sorted({c for entries in rows.values() for c in entries})
    residual = [[entries.get(c, 0) for c in residual_cols] for entries in rows.values()]
    if residual:
        logger.debug("dense Smith form on residual block %dx%d", len(residual), len(residual_cols))
    return [1] * units + _dense_smith(residual)


def rank_mod_p(matrix: ChainBoundaryMatrix, p: int) -> int:
    """Rank over the field with p elements (p prime, p < 2**31)."""
    A = matrix.to_dense() % p
    m, n = A.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = (A[rank] * inv) % p
        others = np.nonzero(A[:, col])[0]
        others = others[others != rank]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, col], A[rank])) % p
        rank += 1
    return rank


# ==================== Coefficients ====================

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


def normalize_coefficients(coefficients: Coefficients) -> Tuple[str, int]:
    """
    Parse a coefficient choice.

    Accepts "integer", "rational", a prime p, or the strings "p" / "mod p".

    Returns:
        (kind, p) with kind in {"integer", "rational", "mod"} and p = 0 unless kind is "mod"
    """
    if isinstance(coefficients, str):
        text = coefficients.strip().lower()
        if text in ("integer", "z", "int"):
            return "integer", 0
        if text in ("rational", "q"):
            return "rational", 0
        text = text.replace("mod", "").strip()
        if not text.isdigit():
            raise InputError(f"unknown coefficients '{coefficients}'")
        coefficients = int(text)
    p = int(coefficients)
    if not _is_prime(p) or p >= 2 ** 31:
        raise InputError(f"field coefficients need a prime below 2^31, got {p}")
    return "mod", p


def coefficient_name(kind: str, p: int) -> str:
    return f"mod {p}" if kind == "mod" else kind


# ==================== Homology Engine ====================

class HomologyEngine:
    """
    Computes reduced homology profiles.

    Results are cached by facet set and coefficient choice; labels do not
    affect homology so they are not part of the key.
    """

    MAX_CACHE_ENTRIES = 200_000

    def __init__(self):
        self._cache: Dict[Tuple[Tuple[Face, ...], str, int], HomologyProfile] = {}
        self._cache_lock = threading.RLock()

    def clear_cache(self) -> None:
        with self._cache_lock:
            self._cache.clear()

    def compute(self, K: SimplicialComplex, coefficients: Coefficients = "integer") -> HomologyProfile:
        """
        Reduced homology of K.

        Args:
            K: Non-void complex
            coefficients: "integer" (default), "rational", or a prime

        Returns:
            HomologyProfile; integer mode also reports torsion

        Raises:
            PreconditionError: If K is void
            InputError: If the coefficient choice is not understood
        """
        if K.is_void:
            raise PreconditionError("homology", "void complex has no chain groups")
        kind, p = normalize_coefficients(coefficients)
        key = (K.facets, kind, p)
        with self._cache_lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        ranks: Dict[int, int] = {}
        torsion: Dict[int, List[int]] = {}
        for matrix in boundary_matrices(K):
            k = matrix.dimension
            if kind == "mod":
                ranks[k] = rank_mod_p(matrix, p)
            else:
                factors = smith_invariants(matrix)
                ranks[k] = len(factors)
                big = [x for x in factors if x > 1]
                if kind == "integer" and big:
                    torsion[k - 1] = big

        def reduced_betti(k: int) -> int:
            return len(K.faces(k)) - ranks.get(k, 0) - ranks.get(k + 1, 0)

        profile = HomologyProfile(
            coefficients=coefficient_name(kind, p),
            betti=[reduced_betti(k) for k in range(0, K.dim + 1)],
            torsion=torsion,
            betti_empty=reduced_betti(-1),
        )
        with self._cache_lock:
            if len(self._cache) >= self.MAX_CACHE_ENTRIES:
                self._cache.clear()
            self._cache[key] = profile
        return profile


# Global engine instance
homology_engine = HomologyEngine()


def homology(K: SimplicialComplex, coefficients: Coefficients = "integer") -> HomologyProfile:
    return homology_engine.compute(K, coefficients)


def betti_of_rank_selection(
    K: SimplicialComplex,
    kappa: Coloring,
    S,
    coefficients: Coefficients = "integer",
) -> HomologyProfile:
    """Homology of the rank-selected subcomplex K_S."""
    return homology(rank_selected(K, kappa, S), coefficients)


def euler_poincare_holds(K: SimplicialComplex, profile: HomologyProfile) -> bool:
    """Σ_{i>=-1} (-1)^i f_i equals Σ_{i>=-1} (-1)^i β̃_i."""
    reduced_f = sum((-1) ** (i - 1) * n for i, n in enumerate(K.f))
    return reduced_f == profile.reduced_euler()
