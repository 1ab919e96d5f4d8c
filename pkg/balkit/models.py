"""
Pydantic models for files, reports and search specifications.
Defines all data structures that cross a module or process boundary.
"""

import hashlib
import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ==================== Enums ====================

class Verdict(str, Enum):
    """Outcome of a single predicate."""
    PASS = "pass"
    FAIL = "fail"


class SearchStatus(str, Enum):
    """Outcome of a budgeted decision procedure."""
    FOUND = "found"
    NONE = "none"
    UNDECIDED = "undecided"


# ==================== Complex File ====================

class VertexRecord(BaseModel):
    """One vertex of a complex file."""
    id: int = Field(..., ge=0, description="Vertex id, dense from 0 on output")
    label: Optional[str] = Field(default=None, description="Display label such as 'u3'")
    color: Optional[int] = Field(default=None, ge=1, description="Color in [d]")


class ComplexFile(BaseModel):
    """
    Interchange format consumed and produced by every CLI command.

    Facets are lists of vertex ids; on output they are sorted
    lexicographically and ids are dense from 0.
    """
    name: str = Field(default="", description="Complex name")
    vertices: List[VertexRecord] = Field(..., description="Vertex records")
    facets: List[List[int]] = Field(..., description="Facets as vertex id lists")

    model_config = ConfigDict(
        json_schema_extra={
            "examples": [
                {
                    "name": "square",
                    "vertices": [{"id": 0, "color": 1}, {"id": 1, "color": 2},
                                 {"id": 2, "color": 1}, {"id": 3, "color": 2}],
                    "facets": [[0, 1], [0, 3], [1, 2], [2, 3]],
                }
            ]
        }
    )

    @model_validator(mode="after")
    def _check_references(self) -> "ComplexFile":
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be distinct")
        labels = [v.label for v in self.vertices if v.label is not None]
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be distinct")
        known = set(ids)
        for facet in self.facets:
            unknown = set(facet) - known
            if unknown:
                raise ValueError(f"facet {facet} references unknown vertices {sorted(unknown)}")
        return self

    def digest(self) -> str:
        """Return the sha256 of the canonical JSON serialisation."""
        payload = self.model_dump_json(exclude={"name"})
        return hashlib.sha256(payload.encode()).hexdigest()


# ==================== Homology ====================

class HomologyProfile(BaseModel):
    """Reduced homology of a complex over one coefficient choice."""
    coefficients: str = Field(..., description="'integer', 'rational' or 'mod p'")
    betti: List[int] = Field(default_factory=list, description="Reduced Betti numbers for dimensions 0..dim")
    torsion: Dict[int, List[int]] = Field(
        default_factory=dict,
        description="Dimension -> invariant factors > 1 (integer coefficients only)"
    )
    betti_empty: int = Field(default=0, ge=0, description="Reduced Betti number in dimension -1")

    def betti_at(self, i: int) -> int:
        """Reduced Betti number in dimension i (any integer i)."""
        if i == -1:
            return self.betti_empty
        if 0 <= i < len(self.betti):
            return self.betti[i]
        return 0

    def torsion_at(self, i: int) -> List[int]:
        return list(self.torsion.get(i, []))

    def is_acyclic(self) -> bool:
        """True when all reduced homology vanishes, torsion included."""
        return self.betti_empty == 0 and not any(self.betti) and not any(self.torsion.values())

    def is_sphere(self, dim: int) -> bool:
        """True when this is the reduced homology of the dim-sphere (dim >= -1)."""
        if any(self.torsion.values()):
            return False
        top = max(len(self.betti) - 1, dim)
        return all(self.betti_at(i) == (1 if i == dim else 0) for i in range(-1, top + 1))

    def reduced_euler(self) -> int:
        """Alternating sum of reduced Betti numbers, starting at dimension -1."""
        return -self.betti_empty + sum((-1) ** i * b for i, b in enumerate(self.betti))


# ==================== Reports ====================

class PredicateReport(BaseModel):
    """
    Structured result of a recognition predicate.

    A fail verdict always carries a witness that can be checked on its own.
    """
    check: str = Field(..., description="Predicate name")
    verdict: Verdict = Field(..., description="pass or fail")
    witness: Optional[Any] = Field(default=None, description="Face, vertex set or value certifying failure")
    detail: str = Field(default="", description="Human readable explanation")
    data: Dict[str, Any] = Field(default_factory=dict, description="Computed quantities")

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    @model_validator(mode="after")
    def _fail_needs_witness(self) -> "PredicateReport":
        if self.verdict == Verdict.FAIL and self.witness is None:
            raise ValueError(f"{self.check}: fail verdict without witness")
        return self


class PairIntersection(BaseModel):
    """Intersection of the links of two same-colored vertices."""
    vertices: List[str]
    components: int = Field(..., ge=0, description="Connected components of the intersection")
    homology: Optional[HomologyProfile] = None
    is_ball: Optional[bool] = Field(default=None, description="Homology ball of dimension d-2")


class TripleIntersection(BaseModel):
    """Intersection of the links of three same-colored vertices."""
    vertices: List[str]
    homology: Optional[HomologyProfile] = None
    is_sphere: bool = Field(..., description="Homology sphere of dimension d-3")


class LinkIntersectionProfile(BaseModel):
    """Component counts (and optional homology) of pairwise link intersections in one color class."""
    color: int
    pairs: List[PairIntersection] = Field(default_factory=list)
    triples: List[TripleIntersection] = Field(default_factory=list)

    def component_counts(self) -> Dict[str, int]:
        return {",".join(p.vertices): p.components for p in self.pairs}


class GroupDescription(BaseModel):
    """Automorphism group summary."""
    order: int = Field(..., ge=1)
    generators: List[str] = Field(default_factory=list, description="Cycle notation over vertex labels")
    orbits: List[List[str]] = Field(default_factory=list, description="Vertex orbits")
    color_preserving: bool = False


# ==================== Search ====================

class EnumerationSpec(BaseModel):
    """
    Constraints for exhaustive enumeration or symmetric search.

    Color classes are numbered 1..d in the order of `sizes`.
    """
    dimension: int = Field(..., ge=0, description="Dimension d-1 of the spheres")
    sizes: List[int] = Field(..., description="Color-class sizes n_1..n_d")
    max_edges: Optional[int] = Field(default=None, ge=0, description="Upper bound on f_1")
    neighborly: Optional[int] = Field(default=None, ge=1, description="Required balanced neighborliness k")
    generators: List[str] = Field(default_factory=list, description="Symmetry generators in cycle notation")
    labels: Optional[List[List[str]]] = Field(default=None, description="Vertex labels per color class")
    target_betti: Optional[List[int]] = Field(default=None, description="Required reduced Betti numbers, dims 0..dim")
    target_torsion: Dict[int, List[int]] = Field(default_factory=dict, description="Required torsion")
    manifold: bool = Field(default=False, description="Accept closed homology manifolds instead of spheres only")
    first_only: bool = Field(default=False, description="Stop at the first solution")

    model_config = ConfigDict(
        json_schema_extra={
            "examples": [
                {"dimension": 3, "sizes": [3, 3, 3, 3], "max_edges": 50},
                {
                    "dimension": 3,
                    "sizes": [4, 4, 4, 4],
                    "neighborly": 2,
                    "generators": ["(u1 u3 u2 u4)(v1 v3 v2 v4)(w1 w3 w2 w4)(z1 z3 z2 z4)"],
                    "target_betti": [0, 0, 0, 1],
                    "target_torsion": {"1": [3]},
                    "manifold": True,
                },
            ]
        }
    )

    @field_validator("sizes")
    @classmethod
    def _sizes_at_least_two(cls, sizes: List[int]) -> List[int]:
        if any(n < 2 for n in sizes):
            raise ValueError("each color class of a balanced sphere needs at least 2 vertices")
        return sizes

    @model_validator(mode="after")
    def _consistent(self) -> "EnumerationSpec":
        if len(self.sizes) != self.dimension + 1:
            raise ValueError(f"{len(self.sizes)} color classes given for dimension {self.dimension}")
        if self.labels is not None:
            if [len(group) for group in self.labels] != self.sizes:
                raise ValueError("labels must match the color-class sizes")
        if self.neighborly is not None and self.neighborly > len(self.sizes):
            raise ValueError("neighborliness cannot exceed the number of colors")
        return self

    def spec_hash(self) -> str:
        """Stable key for caching results of this spec."""
        payload = json.dumps(self.model_dump(exclude={"first_only"}, mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


class CensusEntry(BaseModel):
    """One isomorphism class found by an enumeration."""
    name: str
    complex_file: ComplexFile
    f_vector: List[int]
    aut_order: int
    homology: HomologyProfile
    neighborly: int = Field(..., ge=0, description="Largest k with balanced k-neighborliness")


class Census(BaseModel):
    """Pairwise non-isomorphic complexes produced by one spec."""
    spec: EnumerationSpec
    status: SearchStatus
    entries: List[CensusEntry] = Field(default_factory=list)
    nodes: int = 0
    notes: List[str] = Field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status != SearchStatus.UNDECIDED

    def edge_counts(self) -> List[int]:
        return [entry.f_vector[2] for entry in self.entries]


class SearchOutcome(BaseModel):
    """Result of a find_* decision procedure."""
    check: str
    status: SearchStatus
    witness: Optional[List[List[int]]] = Field(
        default=None,
        description="Ordered facet-index lists (ear pieces) or a single shelling order"
    )
    nodes: int = 0
    detail: str = ""


class RunReport(BaseModel):
    """Machine-readable summary of one CLI run."""
    schema_version: str
    command: str
    input_digest: Optional[str] = None
    checks: List[PredicateReport] = Field(default_factory=list)
    outcomes: List[SearchOutcome] = Field(default_factory=list)
    wall_time: float = 0.0
    nodes: int = 0
    exit_code: int = 0
