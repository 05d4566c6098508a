"""
FastAPI Service - Main Application
Total Semi-Stability API
"""
from datetime import datetime
import logging

from fastapi import FastAPI, HTTPException, Query, status
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.config import settings
from app.models import (
    DeriveReportModel,
    ErrorResponse,
    FlowRequest,
    FlowResponse,
    HealthResponse,
    HeartClassModel,
    MembershipReportModel,
    SampleResponse,
    TsdDocument,
    TypeListResponse,
)
from app.quiver_core import shipped_types
from app.service import service

# Configure logging
logging.basicConfig(
    level=settings.log_level,
    format=settings.log_format
)
logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(
    title=settings.app_name,
    version=settings.version,
    description="Exact total semi-stability checks for tame weighted projective lines",
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_url="/openapi.json"
)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

ERROR_RESPONSES = {
    400: {"model": ErrorResponse},
    422: {"model": ErrorResponse},
    500: {"model": ErrorResponse}
}


@app.on_event("startup")
async def startup_event():
    """Run on application startup"""
    logger.info(f"Starting {settings.app_name} v{settings.version}")
    logger.info(f"Environment: {settings.environment}")
    logger.info(f"API Prefix: {settings.api_prefix}")
    logger.info(f"Elimination limit: {settings.fm_max_variables} variables")


@app.on_event("shutdown")
async def shutdown_event():
    """Run on application shutdown"""
    logger.info("Shutting down Total Semi-Stability Service")


@app.get("/", tags=["Root"])
async def root():
    """Root endpoint - API information"""
    return {
        "service": settings.app_name,
        "version": settings.version,
        "status": "running",
        "docs": "/docs",
        "health": f"{settings.api_prefix}/health",
        "types": f"{settings.api_prefix}/types",
        "check": f"{settings.api_prefix}/check",
        "oracle": f"{settings.api_prefix}/oracle",
        "derive": f"{settings.api_prefix}/derive/{{type_tag}}",
        "flow": f"{settings.api_prefix}/flow",
        "heart": f"{settings.api_prefix}/heart",
        "sample": f"{settings.api_prefix}/sample"
    }


@app.get(
    f"{settings.api_prefix}/health",
    response_model=HealthResponse,
    tags=["Health"]
)
async def health_check():
    """
    Health check endpoint

    Returns the service status and which types are already computed
    """
    return HealthResponse(
        status="healthy",
        version=settings.version,
        types_cached={w.tag: service.is_type_cached(w.tag) for w in shipped_types()},
        timestamp=datetime.utcnow().isoformat() + "Z"
    )


@app.get(
    f"{settings.api_prefix}/types",
    response_model=TypeListResponse,
    tags=["Types"]
)
def list_types():
    """
    List shipped types

    Returns rank, period, kappa and delta of every shipped Euclidean type
    """
    return service.list_types()


def _run(label: str, func, *args):
    """Map domain errors to 400 and anything else to 500"""
    try:
        return func(*args)
    except ValueError as e:
        logger.warning(f"{label} rejected: {e}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=f"{type(e).__name__}: {e}"
        )
    except Exception as e:
        logger.error(f"{label} error: {e}", exc_info=True)
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Internal server error: {str(e)}" if settings.debug else "Internal server error"
        )


@app.post(
    f"{settings.api_prefix}/check",
    response_model=MembershipReportModel,
    responses=ERROR_RESPONSES,
    tags=["Membership"]
)
def check(document: TsdDocument):
    """
    Closed-form membership of a datum

    **Body:** weights, mu (branch -> parts "num/den") and z {re, im}

    **Returns:** member flag, non-degeneracy and every failed inequality
    """
    logger.info(f"Check request for weights {document.weights}")
    return _run("check", service.check, document)


@app.post(
    f"{settings.api_prefix}/oracle",
    response_model=MembershipReportModel,
    responses=ERROR_RESPONSES,
    tags=["Membership"]
)
def oracle(document: TsdDocument, periods: int = Query(settings.oracle_periods, ge=1)):
    """
    Phase monotonicity along every arrow of the mesh window

    **Query Parameters:**
    - **periods**: number of tau-periods in the window
    """
    logger.info(f"Oracle request for weights {document.weights}, {periods} periods")
    return _run("oracle", service.oracle, document, periods)


@app.get(
    f"{settings.api_prefix}/derive/{{type_tag}}",
    response_model=DeriveReportModel,
    responses=ERROR_RESPONSES,
    tags=["Derivation"]
)
def derive(type_tag: str, redundancy: bool = False):
    """
    Derived and listed inequality systems of a type

    **Path Parameters:**
    - **type_tag**: A32, D6, E8, ...

    **Query Parameters:**
    - **redundancy**: also report redundant listed inequalities
    """
    logger.info(f"Derive request for {type_tag}")
    return _run("derive", service.derive, type_tag, redundancy)


@app.post(
    f"{settings.api_prefix}/flow",
    response_model=FlowResponse,
    responses=ERROR_RESPONSES,
    tags=["Flow"]
)
def flow(request: FlowRequest):
    """
    Contraction flow from a non-concentrated base point

    Returns the interpolants at t = 0, 1/steps, ..., 1 with their membership
    """
    logger.info(f"Flow request with {request.steps} steps")
    return _run("flow", service.flow, request.start, request.end, request.steps)


@app.post(
    f"{settings.api_prefix}/heart",
    response_model=HeartClassModel,
    responses=ERROR_RESPONSES,
    tags=["Membership"]
)
def heart(document: TsdDocument):
    """Classify the heart of a member datum"""
    logger.info(f"Heart request for weights {document.weights}")
    return _run("heart", service.heart, document)


@app.get(
    f"{settings.api_prefix}/sample",
    response_model=SampleResponse,
    responses=ERROR_RESPONSES,
    tags=["Sampling"]
)
def sample(
    type_tag: str,
    count: int = Query(settings.sample_count, ge=0, le=settings.max_sample_count),
    seed: int = settings.sample_seed,
    on_boundary: bool = False,
    real: bool = False,
    members: bool = False
):
    """
    Seeded random data of one type

    **Query Parameters:**
    - **type_tag**: A32, D6, E8, ...
    - **count**: number of documents
    - **seed**: generator seed
    - **on_boundary**: put each datum on exactly one listed inequality
    - **real**: sample Im z = 0
    - **members**: only members of the region
    """
    logger.info(f"Sample request: {count} x {type_tag} (seed {seed})")
    return _run("sample", service.sample, type_tag, count, seed, on_boundary, real, members)


@app.exception_handler(HTTPException)
async def http_exception_handler(request, exc):
    """Custom HTTP exception handler"""
    return JSONResponse(
        status_code=exc.status_code,
        content={
            "success": False,
            "error": exc.detail,
            "status_code": exc.status_code
        }
    )


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request, exc):
    """Schema errors in the same error shape"""
    detail = [
        {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
        for err in exc.errors()
    ]
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={
            "success": False,
            "error": "Invalid request",
            "detail": detail
        }
    )


@app.exception_handler(Exception)
async def general_exception_handler(request, exc):
    """General exception handler"""
    logger.error(f"Unhandled exception: {exc}", exc_info=True)
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={
            "success": False,
            "error": "Internal server error",
            "detail": str(exc) if settings.debug else "An unexpected error occurred"
        }
    )


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "app.main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug
    )
