"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Basis = Literal["efb", "gamma"]
Mode = Literal["exact", "float"]


class AlgebraParams(BaseModel):
    m: int = Field(ge=1, le=16)
    mode: Mode = "exact"


class ProductRequest(AlgebraParams):
    basis: Basis = "efb"
    a: str
    b: str


class ExpressionResponse(BaseModel):
    m: int
    basis: Basis
    expr: str


class ConvertRequest(AlgebraParams):
    basis: Basis = "efb"  # basis the expression is written in
    expr: str


class MatrixRequest(AlgebraParams):
    basis: Basis = "efb"
    expr: str


class MatrixResponse(BaseModel):
    m: int
    entries: list[list[str]]


class EigenRequest(AlgebraParams):
    basis: Basis = "efb"
    expr: str


class EigenResponse(BaseModel):
    right: Optional[int]
    left: Optional[int]


class SpinorRequest(BaseModel):
    m: int = Field(ge=1, le=16)
    expr: str


class WittVectorModel(BaseModel):
    p: list[str]
    q: list[str]


class SimpleResponse(BaseModel):
    simple: bool
    dim: int
    tnp: list[WittVectorModel]


class TnpResponse(BaseModel):
    dim: int
    tnp: list[WittVectorModel]


class PlaneRequest(BaseModel):
    m: int = Field(ge=1, le=16)
    k: int


class PlaneResponse(BaseModel):
    spinors: list[str]
    alternating_sum: str
    tnp: list[WittVectorModel]


class BenchRequest(BaseModel):
    m_values: list[int]
    density: float | list[float] = 1.0
    trials: int = 100
    seed: int = 0
    algorithms: list[str] = ["EfbSparse", "GammaBlade", "DenseMatrix"]


class BenchReportModel(BaseModel):
    m: int
    algo: str
    density: float
    ns: float
    pairs_visited: int
    seed: int
    speedup_vs_baseline: Optional[float]


class BenchResponse(BaseModel):
    reports: list[BenchReportModel]


class SelftestRequest(BaseModel):
    max_m: int = Field(default=4, ge=1, le=6)
    seed: int = 0


class SelftestCheck(BaseModel):
    name: str
    ok: bool
    detail: str


class SelftestResponse(BaseModel):
    passed: int
    failed: int
    checks: list[SelftestCheck]


class ErrorBody(BaseModel):
    kind: Literal["usage", "parse", "internal"]
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
