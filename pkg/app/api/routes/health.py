from fastapi import APIRouter
from app.core.config import get_settings
from app.schemas.health import HealthResponse
from app.schemas.suite import SUITE_NAMES, TABLE_KINDS

router = APIRouter()


@router.get("/", response_model=HealthResponse)
async def health_check() -> HealthResponse:
    """Health check endpoint. Returns: status, report schema version and available suites"""
    settings = get_settings()
    return HealthResponse(
        status_code=200,
        detail="ok",
        result=f"{settings.APP_NAME} schema {settings.SCHEMA_VERSION}",
        schema_version=settings.SCHEMA_VERSION,
        suites=list(SUITE_NAMES),
        table_kinds=list(TABLE_KINDS)
    )
