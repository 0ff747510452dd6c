"""FastAPI service wrapping the algebra engine.

Every endpoint is a stateless computation; the CLI is a thin client of this
app (in-process by default, over HTTP with --url).  Domain errors map to a
uniform envelope: parse errors and usage errors return 400 with an ``error``
body whose ``kind`` distinguishes them; anything unexpected is ``internal``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..algebra import Multivector, gamma_eigen
from ..bench import run_bench
from ..config import AlgebraConfig, ScalarMode
from ..gamma import efb_to_gamma, gamma_product, gamma_to_efb
from ..matrix_rep import to_matrix
from ..parsing import (
    ExpressionError,
    format_efb,
    format_gamma,
    format_spinor,
    null_plane_json,
    parse_efb,
    parse_gamma,
    parse_spinor,
)
from ..selftest import run_selftest
from ..spinors import annihilator, totally_simple_plane
from . import schemas


def _config(m: int, mode: str) -> AlgebraConfig:
    scalar = ScalarMode.EXACT_RATIONAL if mode == "exact" else ScalarMode.FLOAT64
    return AlgebraConfig(m, scalar)


def _parse(expr: str, basis: str, config: AlgebraConfig):
    if basis == "gamma":
        return parse_gamma(expr, config)
    return parse_efb(expr, config)


def _as_efb(value, basis: str):
    return gamma_to_efb(value) if basis == "gamma" else value


def create_app() -> FastAPI:
    app = FastAPI(title="clifford-efb", version="0.1.0")

    @app.exception_handler(ExpressionError)
    async def _parse_error(_request: Request, exc: ExpressionError):
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "parse", "message": str(exc)}},
        )

    @app.exception_handler(ValueError)
    async def _usage_error(_request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "usage", "message": str(exc)}},
        )

    @app.exception_handler(Exception)
    async def _internal_error(_request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"error": {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"}},
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/product", response_model=schemas.ExpressionResponse)
    def product(req: schemas.ProductRequest):
        config = _config(req.m, req.mode)
        a = _parse(req.a, req.basis, config)
        b = _parse(req.b, req.basis, config)
        if req.basis == "gamma":
            expr = format_gamma(gamma_product(a, b))
        else:
            expr = format_efb(a * b)
        return schemas.ExpressionResponse(m=req.m, basis=req.basis, expr=expr)

    @app.post("/convert", response_model=schemas.ExpressionResponse)
    def convert(req: schemas.ConvertRequest):
        config = _config(req.m, req.mode)
        value = _parse(req.expr, req.basis, config)
        if req.basis == "gamma":
            return schemas.ExpressionResponse(
                m=req.m, basis="efb", expr=format_efb(gamma_to_efb(value))
            )
        return schemas.ExpressionResponse(
            m=req.m, basis="gamma", expr=format_gamma(efb_to_gamma(value))
        )

    @app.post("/matrix", response_model=schemas.MatrixResponse)
    def matrix(req: schemas.MatrixRequest):
        config = _config(req.m, req.mode)
        value = _as_efb(_parse(req.expr, req.basis, config), req.basis)
        return schemas.MatrixResponse(m=req.m, entries=to_matrix(value).to_strings())

    @app.post("/eigen", response_model=schemas.EigenResponse)
    def eigen(req: schemas.EigenRequest):
        config = _config(req.m, req.mode)
        value = _as_efb(_parse(req.expr, req.basis, config), req.basis)
        result = gamma_eigen(value)
        return schemas.EigenResponse(right=result.right, left=result.left)

    @app.post("/simple", response_model=schemas.SimpleResponse)
    def simple(req: schemas.SpinorRequest):
        config = AlgebraConfig(req.m)
        spinor = parse_spinor(req.expr, config)
        plane = annihilator(spinor)
        return schemas.SimpleResponse(
            simple=plane.dim == req.m,
            dim=plane.dim,
            tnp=null_plane_json(plane),
        )

    @app.post("/tnp", response_model=schemas.TnpResponse)
    def tnp(req: schemas.SpinorRequest):
        config = AlgebraConfig(req.m)
        spinor = parse_spinor(req.expr, config)
        plane = annihilator(spinor)
        return schemas.TnpResponse(dim=plane.dim, tnp=null_plane_json(plane))

    @app.post("/plane", response_model=schemas.PlaneResponse)
    def plane(req: schemas.PlaneRequest):
        config = AlgebraConfig(req.m)
        result = totally_simple_plane(config, req.k)
        exprs = [
            format_efb(Multivector.from_element(config, element))
            for element in result.spinors
        ]
        return schemas.PlaneResponse(
            spinors=exprs,
            alternating_sum=format_spinor(result.alternating_sum),
            tnp=null_plane_json(result.witness_tnp),
        )

    @app.post("/bench", response_model=schemas.BenchResponse)
    def bench(req: schemas.BenchRequest):
        reports = run_bench(
            req.m_values,
            req.density,
            trials=req.trials,
            seed=req.seed,
            algorithms=tuple(req.algorithms),
        )
        return schemas.BenchResponse(
            reports=[schemas.BenchReportModel(**r.json_obj()) for r in reports]
        )

    @app.post("/selftest", response_model=schemas.SelftestResponse)
    def selftest(req: schemas.SelftestRequest):
        results = run_selftest(max_m=req.max_m, seed=req.seed)
        checks = [
            schemas.SelftestCheck(name=r.name, ok=r.ok, detail=r.detail) for r in results
        ]
        failed = sum(1 for r in results if not r.ok)
        return schemas.SelftestResponse(
            passed=len(results) - failed, failed=failed, checks=checks
        )

    return app


app = create_app()
