from typing import List

from pydantic import BaseModel


class HealthResponse(BaseModel):
    """Liveness plus what this engine build can run."""

    status_code: int
    detail: str
    result: str
    schema_version: str
    suites: List[str]
    table_kinds: List[str]
