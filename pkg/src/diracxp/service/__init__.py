"""FastAPI application factory for the compute service."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    ConfigurationError,
    DiracxpError,
    DomainError,
    TableError,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="diracxp",
        version=__version__,
        description=(
            "Spectral pipeline for the Dirac-type x.sigma.p model: radial "
            "special functions, cutoff-regularized eigenvalue enumeration, and "
            "comparison against the Riemann-von Mangoldt counting formula."
        ),
    )

    from .routes import router

    app.include_router(router)

    # input errors -> 400; any other package error is a numerical failure -> 500
    @app.exception_handler(DiracxpError)
    async def _domain_errors(request: Request, exc: DiracxpError) -> JSONResponse:
        kind = "configuration" if isinstance(
            exc, (ConfigurationError, DomainError, TableError)
        ) else "numerical"
        status = 400 if kind == "configuration" else 500
        return JSONResponse(
            status_code=status,
            content={"error": {"type": kind, "message": str(exc)}},
        )

    return app
