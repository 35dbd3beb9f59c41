"""FastAPI application exposing the kernel operations."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from ..homs import BudgetExceeded
from . import handlers
from .models import (
    BuildRequest, CertifyRequest, CertifyResponse, CheckRequest,
    CheckResponse, CountRequest, CountResponse, ErrorBody, ExportRequest,
    ExportResponse, SliceRequest, SpaceResponse, VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="ssetkit",
                  description="Finite simplicial set kernel: joins, wide "
                              "joins, slices, fibration checks, anodyne "
                              "certificates and the verification suite.")

    @app.exception_handler(handlers.UsageError)
    async def usage_error(_, exc):
        return JSONResponse(status_code=400,
                            content=ErrorBody(error=str(exc),
                                              kind="usage").model_dump())

    @app.exception_handler(BudgetExceeded)
    async def budget_error(_, exc):
        return JSONResponse(status_code=422,
                            content=ErrorBody(error=str(exc),
                                              kind="budget").model_dump())

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/build", response_model=SpaceResponse)
    def build(req: BuildRequest):
        return handlers.build_space(req)

    @app.post("/count", response_model=CountResponse)
    def count(req: CountRequest):
        return handlers.count_simplices(req)

    @app.post("/check", response_model=CheckResponse)
    def check(req: CheckRequest):
        return handlers.check_map(req)

    @app.post("/certify", response_model=CertifyResponse)
    def certify(req: CertifyRequest):
        return handlers.certify_inclusion(req)

    @app.post("/slice", response_model=SpaceResponse)
    def slice_(req: SliceRequest):
        return handlers.slice_space(req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        return handlers.verify_claim(req)

    @app.post("/export", response_model=ExportResponse)
    def export(req: ExportRequest):
        return handlers.export_space(req)

    return app


app = create_app()
