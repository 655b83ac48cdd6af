"""
Hilbert coefficient engine - HTTP surface
FastAPI application entry point; exposes the same commands as app.cli
"""

import logging
import sys
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

# Allow running as `python app/main.py` as well as `python -m app.main`
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from app import __version__
from app.config.settings import settings
from app.routers import analysis, chern
from app.services.theorems import THEOREM_IDS
from app.utils.exceptions import AppException
from app.utils.json_utils import exact_payload

logging.basicConfig(level=getattr(logging, settings.log_level, logging.INFO))
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log the active configuration on startup"""
    logger.info(f"[STARTUP] engine {__version__} ({settings.environment})")
    logger.info(f"[STARTUP] default char {settings.field_char}, max_n {settings.max_n}, "
                f"truncation cap {settings.truncation_cap}, workers {settings.workers}")
    yield
    logger.info("[SHUTDOWN] Application shutting down...")


app = FastAPI(
    title="Hilbert Coefficient Engine",
    description="Exact Hilbert coefficients and Chern numbers of filtrations in presented local rings",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)


@app.exception_handler(AppException)
async def app_exception_handler(request: Request, exc: AppException):
    """
    Render engine errors as {'error': message, 'details': {...}} with the error's status code
    """
    logger.warning(f"[API] {type(exc).__name__} on {request.url.path}: {exc.message}")
    return JSONResponse(
        status_code=exc.status_code,
        content={"error": exc.message, "details": exact_payload(exc.details)},
    )


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})


@app.get("/api/health")
async def health_check():
    """
    Health check endpoint for monitoring
    Time Complexity: O(1)
    Space Complexity: O(1)
    """
    return {
        "status": "healthy",
        "service": "Hilbert Coefficient Engine",
        "version": __version__,
        "theorems": list(THEOREM_IDS),
    }


app.include_router(analysis.router)
app.include_router(chern.router)


if __name__ == "__main__":
    import uvicorn

    server_host = "127.0.0.1" if settings.environment == "development" else "0.0.0.0"
    logger.info(f"[STARTUP] binding to {server_host}:{settings.backend_port}")
    uvicorn.run(
        app,
        host=server_host,
        port=settings.backend_port,
        log_level=settings.log_level.lower(),
    )
