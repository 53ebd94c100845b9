from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from app.schemas.suite import DatumConfig


class ModuleRequest(DatumConfig):
    """Schema for constructing a distinguished module"""
    kind: str = Field(..., description="verma | levi-verma | phi | simple | levi-simple | q-levi | q-upper | xi | proj-cover")
    weight: List[int] = Field(..., description="Highest weight λ in X")
    seed: int = 0
    include_data: bool = Field(False, description="Return the full matrix dump")

    @field_validator("weight")
    @classmethod
    def non_empty(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("weight must not be empty")
        return v


class ModuleSummary(BaseModel):
    """Module summary response"""
    name: str
    dim: int
    rank: Optional[int] = None
    free: bool
    algebra: str
    spec: str
    grades: int
    data: Optional[dict] = None


class RootDatumResponse(BaseModel):
    """Root datum dump"""
    kind: str
    label: str
    p: int
    rank: int
    cartan: List[List[int]]
    simple_roots: List[List[int]]
    positive_roots: List[List[int]]
    coroots: List[List[int]]
    structure_constants: list
    rho: List[int]
    convention: str
    good_prime: bool
    I: Optional[List[int]] = None
    chi: Optional[list] = None


class StoredReport(BaseModel):
    """Identifier of a persisted report"""
    id: str
    ok: bool
