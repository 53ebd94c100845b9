from uuid import uuid4

import pytest

from app.repositories.report import ReportRepository
from app.schemas.suite import VerificationReport


def make_report(ok=True, datum_hash="abc"):
    return VerificationReport(schema_version="1.0", datum_hash=datum_hash, config={}, suites=[], ok=ok)


@pytest.mark.asyncio
class TestReportRepository:
    """Tests for ReportRepository"""

    async def test_create_and_get(self, tmp_path):
        """Test that a stored report loads back"""
        repo = ReportRepository(tmp_path)
        report_id = await repo.create(make_report())
        loaded = await repo.get_by_id(report_id)
        assert loaded == make_report()

    async def test_get_missing(self, tmp_path):
        """Test that unknown ids give None"""
        assert await ReportRepository(tmp_path).get_by_id(uuid4()) is None

    async def test_count_and_filters(self, tmp_path):
        """Test counting with and without filters"""
        repo = ReportRepository(tmp_path)
        await repo.create(make_report())
        await repo.create(make_report(ok=False))
        await repo.create(make_report(ok=False, datum_hash="def"))
        assert await repo.count() == 3
        assert len(await repo.get_failed()) == 2
        assert len(await repo.get_for_datum("def")) == 1

    async def test_pagination(self, tmp_path):
        """Test skip and limit"""
        repo = ReportRepository(tmp_path)
        for _ in range(3):
            await repo.create(make_report())
        assert len(await repo.get_all(skip=1, limit=1)) == 1
        assert len(await repo.get_all(skip=2)) == 1

    async def test_delete(self, tmp_path):
        """Test that delete removes the report once"""
        repo = ReportRepository(tmp_path)
        report_id = await repo.create(make_report())
        assert await repo.delete(report_id) is True
        assert await repo.delete(report_id) is False
        assert await repo.latest_id() is None
