from fastapi import FastAPI
from app.api.routes import (
    health,
    rootdata,
    modules,
    reports,
    tables
)


def include_routers(app: FastAPI) -> None:
    """Include all API routers"""
    app.include_router(health.router, tags=["health"])
    app.include_router(rootdata.router)
    app.include_router(modules.router)
    app.include_router(reports.router)
    app.include_router(tables.router)
