from app.repositories.base import BaseRepository
from app.repositories.report import ReportRepository

__all__ = [
    "BaseRepository",
    "ReportRepository"
]
