from fastapi import APIRouter, Depends, Path, Query, Response

from app.core.dependencies import datum_query, get_engine_service
from app.schemas.suite import DatumConfig, SuiteConfig
from app.services.engine_service import EngineService

router = APIRouter(prefix="/tables", tags=["Tables"])


@router.get("/{kind}")
async def get_table(
        kind: str = Path(..., pattern="^(ZL|QZ|QQI)$", description="ZL | QZ | QQI"),
        a: int = Query(-1, description="Window lower bound"),
        b: int = Query(1, description="Window upper bound"),
        format: str = Query("csv", pattern="^(json|csv)$", description="Export format: json or csv"),
        config: DatumConfig = Depends(datum_query),
        service: EngineService = Depends(get_engine_service)
):
    """Multiplicity table [Z:L], (Q:Z) or (Q:Q^I) on window orbit representatives"""
    suite_config = SuiteConfig(**config.model_dump(), window=(a, b))
    content, media_type = service.get_table(kind, suite_config, format)
    return Response(
        content=content,
        media_type=media_type,
        headers={"Content-Disposition": f"attachment; filename={kind}.{format}"}
    )
