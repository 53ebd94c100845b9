from typing import List, Optional

from fastapi import Depends, HTTPException, Query, status
from pydantic import ValidationError

from app.repositories.report import ReportRepository
from app.schemas.suite import DatumConfig
from app.services.engine_service import EngineService


def get_report_repository() -> ReportRepository:
    return ReportRepository()


def get_engine_service(repository: ReportRepository = Depends(get_report_repository)) -> EngineService:
    return EngineService(repository)


def datum_query(
        gl: Optional[int] = Query(None, ge=1, description="Rank of gl_n"),
        cartan: Optional[str] = Query(None, description="Cartan type such as B2"),
        p: int = Query(3, description="Prime"),
        levi: List[int] = Query([], description="Simple-root indices of I"),
        base: Optional[str] = Query(None, description="field:q | dual:q | trunc:q:k"),
        pi: str = Query("", description="Structure map, e.g. h1=t")
) -> DatumConfig:
    """Datum parameters shared by the GET endpoints"""
    try:
        return DatumConfig(gl=gl, cartan=cartan, p=p, levi=levi, base=base, pi=pi)
    except ValidationError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.errors(include_url=False, include_context=False))
