from typing import List
from uuid import UUID

from fastapi import APIRouter, Depends, Query, Response, status

from app.core.dependencies import get_engine_service
from app.schemas.module import StoredReport
from app.schemas.suite import SuiteConfig, VerificationReport
from app.services.engine_service import EngineService

router = APIRouter(tags=["Verification"])


@router.post("/verify", response_model=StoredReport, status_code=status.HTTP_201_CREATED)
async def run_verification(
        config: SuiteConfig,
        service: EngineService = Depends(get_engine_service)
):
    """Run the requested suites and store the report"""
    return await service.verify(config)


@router.get("/reports", response_model=List[VerificationReport])
async def list_reports(
        skip: int = Query(0, ge=0),
        limit: int = Query(100, ge=1, le=100),
        service: EngineService = Depends(get_engine_service)
):
    """List stored reports"""
    return await service.list_reports(skip, limit)


@router.get("/reports/{report_id}")
async def get_report(
        report_id: UUID,
        format: str = Query("json", pattern="^(json|csv)$", description="Export format: json or csv"),
        service: EngineService = Depends(get_engine_service)
):
    """Download a stored report"""
    content, media_type = await service.get_report(report_id, format)
    return Response(
        content=content,
        media_type=media_type,
        headers={"Content-Disposition": f"attachment; filename=report_{report_id}.{format}"}
    )
