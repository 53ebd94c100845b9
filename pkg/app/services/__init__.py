from app.services.export_service import ExportService
from app.services.engine_service import EngineService

__all__ = [
    "ExportService",
    "EngineService"
]
