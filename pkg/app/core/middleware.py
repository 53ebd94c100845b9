import logging

from fastapi import FastAPI, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.core.config import Settings
from app.core.exceptions import EngineError

logger = logging.getLogger(__name__)


def setup_cors(app: FastAPI, settings: Settings) -> None:
    """Configure CORS middleware."""
    origins = settings.CORS_ORIGINS.split(",") if settings.CORS_ORIGINS != "*" else ["*"]

    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_credentials=False,
        allow_methods=["GET", "POST"],
        allow_headers=["*"]
    )


def setup_error_handlers(app: FastAPI) -> None:
    """Engine errors that escape a service become 422 (bad input) or 500 (failed computation)."""

    @app.exception_handler(EngineError)
    async def engine_error_handler(request: Request, exc: EngineError) -> JSONResponse:
        code = status.HTTP_422_UNPROCESSABLE_ENTITY if exc.input_error else status.HTTP_500_INTERNAL_SERVER_ERROR
        if not exc.input_error:
            logger.error(f"{request.method} {request.url.path}: {exc.code}: {exc.detail}")
        return JSONResponse(status_code=code, content={"detail": exc.to_dict()})
