import json

import pytest

from app.core.exceptions import InvalidInput
from app.models.module import MultiplicityTable
from app.schemas.suite import CaseResult, SuiteResult, VerificationReport
from app.services.export_service import ExportService


def make_report():
    cases = [CaseResult(key="a", ok=True, detail={"dims": [1, 2]}),
             CaseResult(key="b", ok=False, skipped=False, detail={})]
    suite = SuiteResult(name="conditions", ok=False, passed=1, failed=1, skipped=0, cases=cases)
    return VerificationReport(schema_version="1.0", datum_hash="abc", config={"p": 3}, suites=[suite], ok=False)


class TestExportService:
    """Tests for ExportService"""

    def test_json_keys_are_sorted(self):
        """Test that equal payloads give equal bytes regardless of key order"""
        first = ExportService._rows_to_json({"b": 1, "a": 2})
        second = ExportService._rows_to_json({"a": 2, "b": 1})
        assert first == second
        assert json.loads(first) == {"a": 2, "b": 1}

    def test_csv_list_cells(self):
        """Test that list cells are written as compact JSON"""
        result = ExportService._rows_to_csv([{"weight": [0, 1], "orbit_id": 0}], ["weight", "orbit_id"])
        lines = result.strip().split("\n")
        assert lines[0] == "weight,orbit_id"
        assert lines[1] == '"[0,1]",0'

    def test_csv_empty_rows(self):
        """Test that no rows give a header-only CSV"""
        result = ExportService._rows_to_csv([], ["kind", "row", "column", "value"])
        assert result == "kind,row,column,value\n"

    def test_export_report_csv(self):
        """Test one CSV row per case"""
        content, media_type = ExportService().export_report(make_report(), "csv")
        lines = content.strip().split("\n")
        assert media_type == "text/csv"
        assert len(lines) == 3
        assert lines[1].startswith("conditions,a,True")

    def test_export_report_json_drops_missing_timings(self):
        """Test that absent timings are left out of JSON"""
        content, media_type = ExportService().export_report(make_report(), "json")
        data = json.loads(content)
        assert media_type == "application/json"
        assert "seconds" not in data["suites"][0]
        assert data["datum_hash"] == "abc"

    def test_export_table(self):
        """Test rows for every (row, column) pair"""
        table = MultiplicityTable(kind="ZL", rows=[(0, 0)], columns=[(0, 0), (-1, 1)],
                                  entries={((0, 0), (0, 0)): 1})
        content, _ = ExportService().export_table(table, "csv")
        lines = content.strip().split("\n")
        assert len(lines) == 3
        assert lines[2].endswith(",0")

    def test_export_empty_table(self):
        """Test that an empty table exports a header only"""
        content, _ = ExportService().export_table(MultiplicityTable(kind="QZ"), "csv")
        assert content == "kind,row,column,value\n"

    def test_export_orbits(self):
        """Test orbit rows as JSON"""
        rows = [{"weight": [0, 0], "orbit_id": 0, "representative": [0, 0]}]
        content, _ = ExportService().export_orbits(rows, "json")
        assert json.loads(content) == rows

    def test_unknown_format(self):
        """Test that unknown formats raise InvalidInput"""
        with pytest.raises(InvalidInput):
            ExportService().export_orbits([], "xlsx")
