import json

import pytest
from fastapi import FastAPI
from fastapi.testclient import TestClient

from app.core.dependencies import get_report_repository
from app.core.exceptions import Inconclusive, NotInOrbit
from app.core.middleware import setup_error_handlers
from app.main import app
from app.repositories.report import ReportRepository

client = TestClient(app)


@pytest.fixture
def report_dir(tmp_path):
    app.dependency_overrides[get_report_repository] = lambda: ReportRepository(tmp_path)
    yield tmp_path
    app.dependency_overrides.clear()


class TestRootDataEndpoints:
    """Tests for /rootdata and /orbits"""

    def test_gl2(self):
        """Test the gl2 datum with the regular nilpotent character"""
        response = client.get("/rootdata", params={"gl": 2, "p": 3, "levi": [0]})
        assert response.status_code == 200
        data = response.json()
        assert data["rank"] == 2
        assert data["positive_roots"] == [[1, -1]]
        assert data["I"] == [0]

    def test_cartan_b2(self):
        """Test that B2 has four positive roots"""
        response = client.get("/rootdata", params={"cartan": "B2", "p": 7})
        assert response.status_code == 200
        assert len(response.json()["positive_roots"]) == 4

    def test_bad_prime(self):
        """Test that p = 2 for gl2 is an input error"""
        response = client.get("/rootdata", params={"gl": 2, "p": 2})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "bad_prime"

    def test_gl_and_cartan(self):
        """Test that gl and cartan together are rejected"""
        response = client.get("/rootdata", params={"gl": 2, "cartan": "B2", "p": 7})
        assert response.status_code == 422

    def test_orbits_csv(self):
        """Test the orbit table of [-1, 1]^2 as CSV"""
        response = client.get("/orbits", params={"gl": 2, "p": 3, "a": -1, "b": 1, "format": "csv"})
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/csv")
        lines = response.text.strip().split("\n")
        assert lines[0] == "weight,orbit_id,representative"
        assert len(lines) == 10

    def test_orbits_unknown_format(self):
        """Test that unknown formats fail validation"""
        response = client.get("/orbits", params={"format": "xlsx"})
        assert response.status_code == 422


class TestModuleEndpoints:
    """Tests for /modules"""

    def test_build_verma(self):
        """Test that a baby Verma is built and summarized"""
        response = client.post("/modules", json={"gl": 2, "p": 3, "kind": "verma", "weight": [1, 0]})
        assert response.status_code == 201
        data = response.json()
        assert data["dim"] == 3
        assert data["free"] is True
        assert data["data"] is None

    def test_build_with_data(self):
        """Test that the matrix dump is returned on request"""
        response = client.post("/modules", json={"gl": 2, "p": 3, "kind": "simple", "weight": [1, 0],
                                                 "include_data": True})
        assert response.status_code == 201
        assert response.json()["data"] is not None

    def test_unknown_kind(self):
        """Test that unknown module kinds give 422"""
        response = client.post("/modules", json={"gl": 2, "p": 3, "kind": "tilting", "weight": [0, 0]})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "invalid_input"

    def test_empty_weight(self):
        """Test that an empty weight fails validation"""
        response = client.post("/modules", json={"gl": 2, "p": 3, "kind": "verma", "weight": []})
        assert response.status_code == 422


class TestTableEndpoints:
    """Tests for /tables"""

    def test_zl_table(self):
        """Test [Z : L] on a one-point window"""
        response = client.get("/tables/ZL", params={"gl": 2, "p": 3, "a": 0, "b": 0, "format": "json"})
        assert response.status_code == 200
        data = json.loads(response.text)
        assert data["kind"] == "ZL"
        assert data["rows"] == [[0, 0]]

    def test_empty_window_gives_header(self):
        """Test that an empty window gives a header-only CSV"""
        response = client.get("/tables/ZL", params={"gl": 2, "p": 3, "a": 1, "b": 0})
        assert response.status_code == 200
        assert response.text == "kind,row,column,value\n"

    def test_unknown_table(self):
        """Test that unknown table kinds fail validation"""
        response = client.get("/tables/XY")
        assert response.status_code == 422


class TestReportEndpoints:
    """Tests for /verify and /reports"""

    def test_verify_and_download(self, report_dir):
        """Test that a report is stored and can be downloaded as CSV"""
        response = client.post("/verify", json={"gl": 2, "p": 3, "window": [0, 1], "samples": 1,
                                                "suites": ["conditions"]})
        assert response.status_code == 201
        stored = response.json()
        assert stored["ok"] is True

        listed = client.get("/reports")
        assert listed.status_code == 200
        assert len(listed.json()) == 1

        download = client.get(f"/reports/{stored['id']}", params={"format": "csv"})
        assert download.status_code == 200
        assert download.text.startswith("suite,key,ok,skipped,detail")

    def test_missing_report(self, report_dir):
        """Test that unknown report ids give 404"""
        response = client.get("/reports/00000000-0000-0000-0000-000000000000")
        assert response.status_code == 404

    def test_unknown_suite(self, report_dir):
        """Test that unknown suite names give 422"""
        response = client.post("/verify", json={"suites": ["nonsense"]})
        assert response.status_code == 422


class TestErrorHandlers:
    """Tests for engine errors that reach the application"""

    def test_input_and_computation_errors(self):
        """Test 422 for input errors and 500 for failed computations"""
        local = FastAPI()
        setup_error_handlers(local)

        @local.get("/input")
        async def input_error():
            raise NotInOrbit("(1, 0) is not linked to (0, 0)")

        @local.get("/failure")
        async def failure():
            raise Inconclusive("search gave up")

        local_client = TestClient(local)
        response = local_client.get("/input")
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "not_in_orbit"
        assert local_client.get("/failure").status_code == 500
