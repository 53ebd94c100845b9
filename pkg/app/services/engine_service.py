import logging
from typing import Any, Dict, List, Tuple
from uuid import UUID

from fastapi import HTTPException, status

from app.core.exceptions import EngineError
from app.models.weyl import WeylGroup, Window
from app.repositories.report import ReportRepository
from app.schemas.module import ModuleRequest, ModuleSummary, StoredReport
from app.schemas.suite import DatumConfig, SuiteConfig, VerificationReport
from app.services import coeff, gradedmod, rootdata, structure, verification, weyl
from app.services.export_service import ExportService

logger = logging.getLogger(__name__)


def _http_error(e: EngineError) -> HTTPException:
    code = status.HTTP_422_UNPROCESSABLE_ENTITY if e.input_error else status.HTTP_500_INTERNAL_SERVER_ERROR
    return HTTPException(status_code=code, detail=e.to_dict())


class EngineService:
    """Service behind the HTTP surface: builds data, runs suites, stores reports"""

    def __init__(self, repository: ReportRepository):
        self.report_repo = repository
        self.exporter = ExportService()

    @staticmethod
    def _ambient(config: DatumConfig):
        datum = rootdata.datum_for(config.selector, config.p)
        chi = rootdata.standard_levi_chi(datum, config.levi)
        algebra = coeff.make_base(config.base_descriptor, datum.d, config.p, config.pi)
        return gradedmod.make_ambient(datum, chi, algebra)

    def get_rootdata(self, config: DatumConfig) -> Dict[str, Any]:
        """Dump of the datum and the standard Levi character"""
        try:
            datum = rootdata.datum_for(config.selector, config.p)
            chi = rootdata.standard_levi_chi(datum, config.levi)
            return rootdata.datum_to_dict(datum, chi)
        except EngineError as e:
            raise _http_error(e)

    def get_orbits(self, config: DatumConfig, window: Tuple[int, int], group: WeylGroup,
                   format: str = "json") -> Tuple[str, str]:
        try:
            datum = rootdata.datum_for(config.selector, config.p)
            rows = weyl.orbit_table(datum, Window.cube(window[0], window[1], datum.d), group, config.levi)
            return self.exporter.export_orbits(rows, format)
        except EngineError as e:
            raise _http_error(e)

    def build_module(self, request: ModuleRequest) -> ModuleSummary:
        try:
            ambient = self._ambient(request)
            module = structure.construct(ambient, request.kind, request.weight, request.seed)
            summary = ModuleSummary(**structure.summarize(module))
            if request.include_data:
                summary.data = gradedmod.module_to_dict(module)
            logger.info(f"Built {module.name}: dim {module.dim}")
            return summary
        except EngineError as e:
            raise _http_error(e)
        except Exception as e:
            logger.error(f"Error building module: {str(e)}")
            raise HTTPException(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                detail="Failed to build module"
            )

    async def verify(self, config: SuiteConfig) -> StoredReport:
        """Run suites and persist the report"""
        try:
            report = verification.run_suites(config)
        except EngineError as e:
            raise _http_error(e)
        report_id = await self.report_repo.create(report)
        return StoredReport(id=str(report_id), ok=report.ok)

    async def get_report(self, report_id: UUID, format: str = "json") -> Tuple[str, str]:
        report = await self.report_repo.get_by_id(report_id)
        if not report:
            raise HTTPException(
                status_code=status.HTTP_404_NOT_FOUND,
                detail="Report not found"
            )
        return self.exporter.export_report(report, format)

    async def list_reports(self, skip: int = 0, limit: int = 100) -> List[VerificationReport]:
        return await self.report_repo.get_all(skip=skip, limit=limit)

    def get_table(self, kind: str, config: SuiteConfig, format: str = "csv") -> Tuple[str, str]:
        try:
            ambient = self._ambient(config)
            window = Window.cube(config.window[0], config.window[1], ambient.datum.d)
            table = structure.multiplicities(ambient, kind, window)
            return self.exporter.export_table(table, format)
        except EngineError as e:
            raise _http_error(e)
