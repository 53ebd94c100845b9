import csv
import json
import logging
from io import StringIO
from typing import Any, Dict, List, Sequence, Tuple

from app.core.exceptions import InvalidInput
from app.models.module import MultiplicityTable
from app.schemas.suite import VerificationReport

logger = logging.getLogger(__name__)

REPORT_FIELDS = ["suite", "key", "ok", "skipped", "detail"]
TABLE_FIELDS = ["kind", "row", "column", "value"]
ORBIT_FIELDS = ["weight", "orbit_id", "representative"]


class ExportService:
    """Serialize reports, multiplicity tables and orbit tables as JSON or CSV"""

    @staticmethod
    def _rows_to_json(payload: Any) -> str:
        """Convert payload to a JSON string; keys sorted so equal inputs give equal bytes"""
        return json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"

    @staticmethod
    def _rows_to_csv(rows: List[Dict[str, Any]], fieldnames: Sequence[str]) -> str:
        """Convert rows to CSV; list and dict cells are written as compact JSON"""
        output = StringIO()
        writer = csv.DictWriter(output, fieldnames=list(fieldnames), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            row_copy = {}
            for name in fieldnames:
                value = row.get(name)
                if isinstance(value, (list, tuple, dict)):
                    value = json.dumps(value, sort_keys=True, separators=(",", ":"))
                row_copy[name] = value
            writer.writerow(row_copy)
        return output.getvalue()

    @staticmethod
    def _render(payload: Any, rows: List[Dict[str, Any]], fieldnames: Sequence[str], format: str) -> Tuple[str, str]:
        if format == "csv":
            return ExportService._rows_to_csv(rows, fieldnames), "text/csv"
        if format == "json":
            return ExportService._rows_to_json(payload), "application/json"
        raise InvalidInput(f"unknown export format '{format}'")

    def export_report(self, report: VerificationReport, format: str = "json") -> Tuple[str, str]:
        rows = [
            {"suite": suite.name, "key": case.key, "ok": case.ok, "skipped": case.skipped, "detail": case.detail}
            for suite in report.suites for case in suite.cases
        ]
        logger.debug(f"Exporting report with {len(report.suites)} suites as {format}")
        return self._render(report.model_dump(exclude_none=True), rows, REPORT_FIELDS, format)

    def export_table(self, table: MultiplicityTable, format: str = "csv") -> Tuple[str, str]:
        """Empty tables give a header-only CSV"""
        rows = table.as_rows()
        payload = {
            "kind": table.kind,
            "rows": [list(r) for r in table.rows],
            "columns": [list(c) for c in table.columns],
            "entries": rows,
        }
        return self._render(payload, rows, TABLE_FIELDS, format)

    def export_orbits(self, rows: List[Dict[str, Any]], format: str = "json") -> Tuple[str, str]:
        return self._render(rows, rows, ORBIT_FIELDS, format)
