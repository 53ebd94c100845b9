from typing import List, Optional
from uuid import UUID

from app.repositories.base import BaseRepository
from app.schemas.suite import VerificationReport


class ReportRepository(BaseRepository[VerificationReport]):
    """Repository for verification reports"""

    collection = "reports"

    def __init__(self, root=None):
        super().__init__(VerificationReport, root)

    async def get_failed(self, skip: int = 0, limit: int = 100) -> List[VerificationReport]:
        """Reports with at least one failing suite"""
        return await self.get_all(skip=skip, limit=limit, filters={"ok": False})

    async def get_for_datum(self, datum_hash: str) -> List[VerificationReport]:
        return await self.get_all(filters={"datum_hash": datum_hash})

    async def latest_id(self) -> Optional[UUID]:
        paths = sorted(self.root.glob("*.json"), key=lambda path: path.stat().st_mtime)
        return UUID(paths[-1].stem) if paths else None
