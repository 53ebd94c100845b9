from fastapi import APIRouter, Depends, status

from app.core.dependencies import get_engine_service
from app.schemas.module import ModuleRequest, ModuleSummary
from app.services.engine_service import EngineService

router = APIRouter(prefix="/modules", tags=["Modules"])


@router.post("", response_model=ModuleSummary, status_code=status.HTTP_201_CREATED)
async def build_module(
        request: ModuleRequest,
        service: EngineService = Depends(get_engine_service)
):
    """Construct a baby Verma, simple head, Levi cover, Q^I, Ξ^I or projective cover"""
    return service.build_module(request)
