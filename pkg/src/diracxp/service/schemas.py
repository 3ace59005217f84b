"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ComplexNumber(BaseModel):
    re: float
    im: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexNumber":
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class HealthResponse(BaseModel):
    name: str
    version: str


class ErrorBody(BaseModel):
    type: str
    message: str


class EigenvaluesRequest(BaseModel):
    u0: float
    e_max: float
    e_min: float = 0.0
    variant: Literal["exact", "asymptotic"] = "asymptotic"
    tol_e: float = Field(default=1e-9, gt=0.0)
    scan_step: float = Field(default=0.05, gt=0.0)
    workers: int = Field(default=1, ge=1)


class EigenvalueOut(BaseModel):
    index: int
    energy: float
    residual: float
    variant: str


class EigenvaluesResponse(BaseModel):
    records: list[EigenvalueOut]
    tool_version: str


class CountingRequest(BaseModel):
    u0: float
    energy: float
    variant: Literal["exact", "asymptotic"] = "asymptotic"


class ScalarResponse(BaseModel):
    value: float


class ComplexResponse(BaseModel):
    value: ComplexNumber


class CompareRequest(BaseModel):
    ordinates: list[float]
    e_grid: list[float]
    source: str = "inline"
    u0: Optional[float] = None
    calibrate: Optional[int] = Field(default=None, ge=1)
    variant: Literal["exact", "asymptotic"] = "asymptotic"
    tol_e: float = Field(default=1e-9, gt=0.0)
    sanity_check: bool = True


class CountingSampleOut(BaseModel):
    energy: float
    n_model: float
    n_smooth: float
    s_fluct: float
    n_table: int


class CompareSummary(BaseModel):
    u0: float
    calibrated: bool
    n_points: int
    rms_model_vs_table: float
    rms_smooth_vs_table: float


class CompareResponse(BaseModel):
    samples: list[CountingSampleOut]
    summary: CompareSummary
    tool_version: str


class VerifyRequest(BaseModel):
    u0: float = 1e-3
    n_eigen: int = Field(default=5, ge=1)
    tol_scale: float = Field(default=1.0, gt=0.0)


class CheckOut(BaseModel):
    name: str
    residual: float
    tolerance: float
    passed: bool


class VerifyResponse(BaseModel):
    checks: list[CheckOut]
    passed: bool
    tool_version: str


class LogGammaRequest(BaseModel):
    z: ComplexNumber


class KummerRequest(BaseModel):
    a: ComplexNumber
    b: ComplexNumber
    u: float


class WhittakerRequest(BaseModel):
    k: ComplexNumber
    m: ComplexNumber
    u: float


class ThetaRequest(BaseModel):
    energy: float
