from fastapi.testclient import TestClient

from app.core.config import get_settings
from app.main import app
from app.schemas.suite import SUITE_NAMES

client = TestClient(app)


def test_health_check():
    """Test health check endpoint"""
    response = client.get("/")

    assert response.status_code == 200

    json_response = response.json()
    settings = get_settings()
    assert json_response["status_code"] == 200
    assert json_response["detail"] == "ok"
    assert settings.APP_NAME in json_response["result"]
    assert json_response["schema_version"] == settings.SCHEMA_VERSION


def test_health_check_lists_capabilities():
    """Test that the suites and table kinds the engine can run are listed"""
    json_response = client.get("/").json()

    assert json_response["suites"] == list(SUITE_NAMES)
    assert "reciprocity" in json_response["suites"]
    assert json_response["table_kinds"] == ["ZL", "QZ", "QQI"]


def test_health_check_response_structure():
    """Test health check response has correct structure"""
    response = client.get("/")
    json_response = response.json()

    assert set(json_response) == {"status_code", "detail", "result", "schema_version", "suites", "table_kinds"}
