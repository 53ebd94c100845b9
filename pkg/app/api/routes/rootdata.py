from fastapi import APIRouter, Depends, Query, Response

from app.core.dependencies import datum_query, get_engine_service
from app.models.weyl import WeylGroup
from app.schemas.module import RootDatumResponse
from app.schemas.suite import DatumConfig
from app.services.engine_service import EngineService

router = APIRouter(tags=["Root data"])


@router.get("/rootdata", response_model=RootDatumResponse)
async def get_rootdata(
        config: DatumConfig = Depends(datum_query),
        service: EngineService = Depends(get_engine_service)
):
    """Chevalley datum with structure constants and the standard Levi character"""
    return service.get_rootdata(config)


@router.get("/orbits")
async def get_orbits(
        a: int = Query(-1, description="Window lower bound"),
        b: int = Query(1, description="Window upper bound"),
        group: WeylGroup = Query(WeylGroup.W_IP, description="W | Wp | WI | WIp"),
        format: str = Query("json", pattern="^(json|csv)$", description="Export format: json or csv"),
        config: DatumConfig = Depends(datum_query),
        service: EngineService = Depends(get_engine_service)
):
    """Dot-orbit table of the window [a, b]^d"""
    content, media_type = service.get_orbits(config, (a, b), group, format)
    return Response(
        content=content,
        media_type=media_type,
        headers={"Content-Disposition": f"attachment; filename=orbits.{format}"}
    )
