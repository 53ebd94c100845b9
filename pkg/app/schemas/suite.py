from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

SUITE_NAMES = (
    "conditions",
    "frobenius",
    "iso-criterion",
    "theta",
    "irreducible-regular",
    "levi-dim-formula",
    "zfilt",
    "qfilt",
    "ext-vanishing",
    "duality",
    "reciprocity",
    "blocks",
    "base-change",
    "oracle",
)

TABLE_KINDS = ("ZL", "QZ", "QQI")


class DatumConfig(BaseModel):
    """Root datum, prime, Levi set and coefficient algebra"""
    gl: Optional[int] = Field(None, ge=1, description="Rank of gl_n")
    cartan: Optional[str] = Field(None, description="Cartan type such as B2")
    p: int = 3
    levi: List[int] = Field(default_factory=list, description="Simple-root indices of I")
    base: Optional[str] = Field(None, description="field:q | dual:q | trunc:q:k")
    pi: str = Field("", description="Structure map, e.g. h1=t,h2=0")

    @model_validator(mode="after")
    def one_datum(self):
        if self.gl is None and self.cartan is None:
            self.gl = 2
        if self.gl is not None and self.cartan is not None:
            raise ValueError("give either gl or cartan, not both")
        return self

    @property
    def selector(self) -> str:
        return f"gl{self.gl}" if self.gl is not None else self.cartan

    @property
    def base_descriptor(self) -> str:
        return self.base or f"field:{self.p}"


class SuiteConfig(DatumConfig):
    """Datum, coefficients and window shared by every suite of one run"""
    window: Tuple[int, int] = Field((-1, 1), description="[a, b]^d; empty when a > b")
    suites: List[str] = Field(default_factory=list)
    seed: int = 0
    samples: int = Field(10, ge=1)
    out: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    timings: bool = False

    @field_validator("suites")
    @classmethod
    def known_suites(cls, v: List[str]) -> List[str]:
        unknown = [s for s in v if s not in SUITE_NAMES]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        return v


class CaseResult(BaseModel):
    key: str
    ok: bool
    skipped: bool = False
    detail: dict = Field(default_factory=dict)


class SuiteResult(BaseModel):
    name: str
    ok: bool
    passed: int
    failed: int
    skipped: int
    cases: List[CaseResult]
    seconds: Optional[float] = None


class VerificationReport(BaseModel):
    """Versioned report; timings appear only when requested"""
    schema_version: str
    datum_hash: str
    config: dict
    suites: List[SuiteResult]
    ok: bool
