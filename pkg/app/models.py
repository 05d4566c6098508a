"""
Pydantic models for request/response validation
"""
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

from app.charge import TSD
from app.quiver_core import classify_weights
from app.rationals import format_rational, parse_rational


UNIFORM_E6_EXAMPLE = {
    "weights": [2, 3, 3],
    "mu": {"1": ["1/2", "1/2"], "2": ["1/3", "1/3", "1/3"], "3": ["1/3", "1/3", "1/3"]},
    "z": {"re": "0", "im": "1"}
}


class ZValue(BaseModel):
    """Charge of the reference object"""

    re: str = Field(..., description="Real part as 'num/den'")
    im: str = Field(..., description="Imaginary part as 'num/den', non-negative")

    class Config:
        json_schema_extra = {"example": {"re": "-1/2", "im": "1"}}

    @field_validator("re", "im")
    @classmethod
    def validate_rational(cls, v):
        """Reject anything that is not an exact rational"""
        parse_rational(v)
        return v.strip()


class TsdDocument(BaseModel):
    """A totally semi-stable datum on the wire"""

    weights: List[int] = Field(..., min_length=1, description="Weight tuple, e.g. [2, 3, 3]")
    mu: Dict[str, List[str]] = Field(..., description="Branch index (1-based, into weights) -> parts 'num/den'")
    z: ZValue = Field(..., description="Z of the reference object")

    _tsd: Optional[TSD] = PrivateAttr(default=None)

    class Config:
        json_schema_extra = {"example": UNIFORM_E6_EXAMPLE}

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, v):
        """Weights are positive and tame"""
        if any(w < 1 for w in v):
            raise ValueError(f"Weights must be positive integers, got {v}")
        classify_weights(v)
        return v

    @model_validator(mode="after")
    def validate_datum(self):
        """Partitions match the weights and sum to 1; z is nonzero in the upper half plane"""
        self._tsd = self._build()
        return self

    def _build(self) -> TSD:
        data = classify_weights(self.weights)
        valid_keys = {str(k) for k in range(1, len(self.weights) + 1)}
        extra = sorted(set(self.mu) - valid_keys)
        if extra:
            raise ValueError(f"mu has branches {extra} outside 1..{len(self.weights)}")

        branches = []
        for index, w in enumerate(self.weights, start=1):
            raw = self.mu.get(str(index))
            if raw is None:
                if w == 1:
                    continue
                raise ValueError(f"mu is missing branch {index} (weight {w})")
            if len(raw) != w:
                raise ValueError(f"Branch {index} has {len(raw)} parts, weight is {w}")
            parts = [parse_rational(x) for x in raw]
            for j, part in enumerate(parts, start=1):
                if part <= 0:
                    raise ValueError(f"Branch {index} part {j} = {format_rational(part)} is not positive")
            total = sum(parts)
            if total != 1:
                raise ValueError(f"Branch {index} sums to {format_rational(total)}, expected 1")
            if w > 1:
                branches.append((w, index, parts))

        if data.family == "A":
            ordered = [parts for _, _, parts in branches]
        else:
            ordered = [parts for _, _, parts in sorted(branches, key=lambda b: (b[0], b[1]))]
        while len(ordered) < data.l:
            ordered.append([1])

        re, im = parse_rational(self.z.re), parse_rational(self.z.im)
        if im < 0:
            raise ValueError(f"Im z = {format_rational(im)} must be non-negative")
        if re == 0 and im == 0:
            raise ValueError("z must be nonzero")
        return TSD.create(data, ordered, re, im)

    def to_tsd(self) -> TSD:
        if self._tsd is None:
            self._tsd = self._build()
        return self._tsd

    @classmethod
    def from_tsd(cls, tsd: TSD) -> "TsdDocument":
        return cls(
            weights=list(tsd.weights.weights),
            mu={str(i): [format_rational(x) for x in parts] for i, parts in enumerate(tsd.mu, start=1)},
            z=ZValue(re=format_rational(tsd.z_re), im=format_rational(tsd.z_im)),
        )


class ViolationModel(BaseModel):
    """One failed inequality or arrow"""

    id: str = Field(..., description="Inequality id or 'arrow@k'")
    indices: Dict[str, Union[int, str]] = Field(default_factory=dict, description="Instantiated indices")
    lhs: str = Field(..., description="Left-hand side value")
    rhs: str = Field(..., description="Right-hand side value")

    class Config:
        json_schema_extra = {
            "example": {
                "id": "D4.L2.j=1.rep=1.sign=+",
                "indices": {"line": "L2", "j": 1, "rep": 1, "sign": "+"},
                "lhs": "4/5",
                "rhs": "1/2"
            }
        }


class MembershipReportModel(BaseModel):
    """Response model for check and oracle"""

    success: bool = Field(True, description="Whether the request was processed")
    type: str = Field(..., description="Euclidean type, e.g. E(6)")
    member: bool = Field(..., description="Datum passes every check")
    nondegenerate: bool = Field(..., description="No bundle has zero charge")
    violations: List[ViolationModel] = Field(default_factory=list, description="Failed checks")
    checked: int = Field(..., description="Number of inequalities or arrows evaluated")
    source: str = Field(..., description="'listed' or 'oracle'")

    class Config:
        json_schema_extra = {
            "example": {
                "success": True,
                "type": "E(6)",
                "member": True,
                "nondegenerate": True,
                "violations": [],
                "checked": 54,
                "source": "listed"
            }
        }


class HeartClassModel(BaseModel):
    """Heart classification"""

    success: bool = Field(True, description="Whether the request was processed")
    type: str = Field(..., description="Euclidean type")
    kind: str = Field(..., description="NonConcentrated or Concentrated")
    cut: Optional[Dict[str, int]] = Field(None, description="Section vertex -> chosen tau-shift")
    quiver_vertices: Optional[List[str]] = Field(None, description="Vertices 'label@shift' of the cut quiver")
    quiver_arrows: Optional[List[List[str]]] = Field(None, description="Arrows of the cut quiver")

    class Config:
        json_schema_extra = {
            "example": {
                "success": True,
                "type": "D(4)",
                "kind": "Concentrated",
                "cut": {"P0": 3, "X0": 3, "X1": 3, "P1^1": 3, "P2^1": 3},
                "quiver_vertices": ["P0@3", "X0@3", "X1@3", "P1^1@3", "P2^1@3"],
                "quiver_arrows": [["P0@3", "X1@3"], ["X0@3", "X1@3"], ["X1@3", "P1^1@3"], ["X1@3", "P2^1@3"]]
            }
        }


class InequalityModel(BaseModel):
    """An inequality coefficients . mu + constant >= 0 in the free variables"""

    id: str = Field(..., description="Provenance id")
    coefficients: List[int] = Field(..., description="Normalized integer coefficients over the free variables")
    constant: int = Field(..., description="Normalized integer constant")
    strict: bool = Field(False, description="Strict inequality")
    text: str = Field(..., description="Human-readable form in a/b/c notation")

    class Config:
        json_schema_extra = {
            "example": {
                "id": "P0->X1@0",
                "coefficients": [1, 1, 1],
                "constant": -1,
                "strict": False,
                "text": "a1 + b1 + c1 - 1 >= 0"
            }
        }


class DeriveReportModel(BaseModel):
    """Derived and listed systems of one type with their comparison"""

    success: bool = Field(True, description="Whether the request was processed")
    type: str = Field(..., description="Euclidean type")
    variables: List[str] = Field(..., description="Free variables in coefficient order")
    derived: List[InequalityModel] = Field(..., description="System derived from the mesh")
    listed: List[InequalityModel] = Field(..., description="Closed-form system")
    equivalent: bool = Field(..., description="Both systems cut out the same region")
    reading: str = Field(..., description="Frozen reading of the +- notation")
    readings: Dict[str, bool] = Field(default_factory=dict, description="Equivalence per +- reading")
    not_implied: List[str] = Field(default_factory=list, description="Ids not implied by the other system")
    witness: Optional[Dict[str, str]] = Field(None, description="Point separating the systems")
    redundant_listed: Optional[List[str]] = Field(None, description="Listed ids implied by the rest")

    class Config:
        json_schema_extra = {
            "example": {
                "success": True,
                "type": "A(3,2)",
                "variables": ["a1", "a2", "b1"],
                "derived": [],
                "listed": [],
                "equivalent": True,
                "reading": "coupled",
                "readings": {"coupled": True},
                "not_implied": [],
                "witness": None,
                "redundant_listed": None
            }
        }


class FlowRequest(BaseModel):
    """Request model for the contraction flow"""

    start: TsdDocument = Field(..., description="Base point, Im z > 0")
    end: TsdDocument = Field(..., description="Target datum")
    steps: int = Field(10, ge=1, description="Number of intervals between the endpoints")

    class Config:
        json_schema_extra = {
            "example": {
                "start": UNIFORM_E6_EXAMPLE,
                "end": UNIFORM_E6_EXAMPLE,
                "steps": 4
            }
        }


class FlowStepModel(BaseModel):
    """One point of the flow"""

    t: str = Field(..., description="Flow parameter")
    datum: TsdDocument = Field(..., description="Interpolated datum")
    member: bool = Field(..., description="Membership of the interpolant")
    nondegenerate: bool = Field(..., description="Non-degeneracy of the interpolant")


class FlowResponse(BaseModel):
    """Response model for the contraction flow"""

    success: bool = Field(True, description="Whether the request was processed")
    type: str = Field(..., description="Euclidean type")
    steps: List[FlowStepModel] = Field(..., description="Trajectory from t = 0 to t = 1")


class SampleResponse(BaseModel):
    """Seeded random data"""

    success: bool = Field(True, description="Whether the request was processed")
    type: str = Field(..., description="Euclidean type")
    seed: int = Field(..., description="Generator seed")
    count: int = Field(..., description="Number of documents")
    documents: List[TsdDocument] = Field(..., description="Sampled data")


class TypeInfo(BaseModel):
    """Invariants of one Euclidean type"""

    tag: str = Field(..., description="Type tag, e.g. E6")
    euclidean_type: str = Field(..., description="E(6)")
    weights: List[int] = Field(..., description="Normalized weights")
    rank: int = Field(..., description="Rank of the Grothendieck lattice")
    period: int = Field(..., description="lcm of the weights")
    kappa: int = Field(..., description="Phi^p = I + kappa delta r^T")
    delta: List[int] = Field(..., description="Imaginary root in section coordinates")
    rank_functional: List[str] = Field(..., description="r as a row over the section coordinates")
    section: List[str] = Field(..., description="Section vertex labels")

    class Config:
        json_schema_extra = {
            "example": {
                "tag": "E6",
                "euclidean_type": "E(6)",
                "weights": [2, 3, 3],
                "rank": 7,
                "period": 6,
                "kappa": -3,
                "delta": [3, 2, 2, 2, 1, 1, 1],
                "rank_functional": ["1", "-1/3", "-1/3", "-1/3", "-1/3", "-1/3", "-1/3"],
                "section": ["X0", "X1", "X2", "X3", "X4", "X5", "X6"]
            }
        }


class TypeListResponse(BaseModel):
    """Response for listing shipped types"""

    types: List[TypeInfo] = Field(..., description="Shipped types")
    count: int = Field(..., description="Number of types")


class ErrorResponse(BaseModel):
    """Error response model"""

    success: bool = Field(False, description="Always false for errors")
    error: str = Field(..., description="Error message")
    detail: Optional[Any] = Field(None, description="Detailed error information")

    class Config:
        json_schema_extra = {
            "example": {
                "success": False,
                "error": "Invalid datum",
                "detail": "Branch 2 sums to 9/10, expected 1"
            }
        }


class HealthResponse(BaseModel):
    """Health check response"""

    status: str = Field(..., description="Service status")
    version: str = Field(..., description="API version")
    types_cached: Dict[str, bool] = Field(..., description="Types with Coxeter data in memory")
    timestamp: str = Field(..., description="Current timestamp")

    class Config:
        json_schema_extra = {
            "example": {
                "status": "healthy",
                "version": "1.0.0",
                "types_cached": {"D4": True, "E6": False},
                "timestamp": "2024-01-15T10:30:00Z"
            }
        }


def error_payload(error: str, detail: Any = None) -> Dict[str, Any]:
    return ErrorResponse(error=error, detail=detail).model_dump()

