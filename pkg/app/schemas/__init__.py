from app.schemas.health import HealthResponse
from app.schemas.suite import (
    CaseResult,
    DatumConfig,
    SuiteConfig,
    SuiteResult,
    VerificationReport
)
from app.schemas.module import (
    ModuleRequest,
    ModuleSummary,
    RootDatumResponse,
    StoredReport
)

__all__ = [
    "HealthResponse",
    "CaseResult",
    "DatumConfig",
    "SuiteConfig",
    "SuiteResult",
    "VerificationReport",
    "ModuleRequest",
    "ModuleSummary",
    "RootDatumResponse",
    "StoredReport"
]
