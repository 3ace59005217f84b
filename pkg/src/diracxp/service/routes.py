"""HTTP endpoints wrapping the core package."""

from __future__ import annotations

import math

from fastapi import APIRouter

from .. import __version__, checks, spectrum, zeta
from ..errors import ConfigurationError, TableError
from ..specfun import kummer_m, log_gamma, riemann_siegel_theta, whittaker_km
from . import schemas

router = APIRouter()


@router.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(name="diracxp", version=__version__)


@router.post("/eigenvalues", response_model=schemas.EigenvaluesResponse)
def eigenvalues(request: schemas.EigenvaluesRequest) -> schemas.EigenvaluesResponse:
    config = spectrum.SpectralConfig(
        u0=request.u0,
        e_max=request.e_max,
        e_min=request.e_min,
        tol_e=request.tol_e,
        variant=request.variant,
        scan_step=request.scan_step,
        workers=request.workers,
    )
    records = spectrum.eigenvalues(config)
    return schemas.EigenvaluesResponse(
        records=[
            schemas.EigenvalueOut(
                index=r.index,
                energy=r.energy,
                residual=r.residual,
                variant=r.variant.value,
            )
            for r in records
        ],
        tool_version=__version__,
    )


@router.post("/counting", response_model=schemas.ScalarResponse)
def counting(request: schemas.CountingRequest) -> schemas.ScalarResponse:
    config = spectrum.SpectralConfig(
        u0=request.u0, e_max=request.energy + 1.0, variant=request.variant
    )
    return schemas.ScalarResponse(
        value=spectrum.counting_model(request.energy, config)
    )


@router.post("/compare", response_model=schemas.CompareResponse)
def compare(request: schemas.CompareRequest) -> schemas.CompareResponse:
    table = zeta.ZeroTable(tuple(request.ordinates), source=request.source)
    if request.sanity_check and table.ordinates:
        if not 14.0 < table.ordinates[0] < 15.0:
            raise TableError(
                f"first ordinate {table.ordinates[0]!r} lies outside (14, 15); "
                "disable sanity_check for synthetic tables"
            )
    calibrated = request.calibrate is not None
    if calibrated:
        u0 = spectrum.calibrate_u0(table, request.calibrate, tol_e=request.tol_e)
    elif request.u0 is not None:
        u0 = request.u0
    else:
        raise ConfigurationError("either u0 or calibrate must be given")

    e_max = max(request.e_grid) + 1.0 if request.e_grid else 1.0
    config = spectrum.SpectralConfig(
        u0=u0, e_max=e_max, tol_e=request.tol_e, variant=request.variant
    )
    samples = zeta.compare_counting(config, table, request.e_grid)
    n = max(len(samples), 1)
    rms_model = math.sqrt(sum((s.n_model - s.n_table) ** 2 for s in samples) / n)
    rms_smooth = math.sqrt(
        sum((s.n_smooth + s.s_fluct - s.n_table) ** 2 for s in samples) / n
    )
    return schemas.CompareResponse(
        samples=[
            schemas.CountingSampleOut(
                energy=s.energy,
                n_model=s.n_model,
                n_smooth=s.n_smooth,
                s_fluct=s.s_fluct,
                n_table=s.n_table,
            )
            for s in samples
        ],
        summary=schemas.CompareSummary(
            u0=u0,
            calibrated=calibrated,
            n_points=len(samples),
            rms_model_vs_table=rms_model,
            rms_smooth_vs_table=rms_smooth,
        ),
        tool_version=__version__,
    )


@router.post("/verify", response_model=schemas.VerifyResponse)
def verify(request: schemas.VerifyRequest) -> schemas.VerifyResponse:
    results = checks.run_verification(
        u0=request.u0, n_eigen=request.n_eigen, tol_scale=request.tol_scale
    )
    return schemas.VerifyResponse(
        checks=[schemas.CheckOut(**r.to_dict()) for r in results],
        passed=all(r.passed for r in results),
        tool_version=__version__,
    )


@router.post("/specfun/loggamma", response_model=schemas.ComplexResponse)
def specfun_loggamma(request: schemas.LogGammaRequest) -> schemas.ComplexResponse:
    value = log_gamma(request.z.to_complex())
    return schemas.ComplexResponse(value=schemas.ComplexNumber.from_complex(value))


@router.post("/specfun/kummer", response_model=schemas.ComplexResponse)
def specfun_kummer(request: schemas.KummerRequest) -> schemas.ComplexResponse:
    value = kummer_m(request.a.to_complex(), request.b.to_complex(), request.u)
    return schemas.ComplexResponse(value=schemas.ComplexNumber.from_complex(value))


@router.post("/specfun/whittaker", response_model=schemas.ComplexResponse)
def specfun_whittaker(request: schemas.WhittakerRequest) -> schemas.ComplexResponse:
    value = whittaker_km(request.k.to_complex(), request.m.to_complex(), request.u)
    return schemas.ComplexResponse(value=schemas.ComplexNumber.from_complex(value))


@router.post("/specfun/theta", response_model=schemas.ScalarResponse)
def specfun_theta(request: schemas.ThetaRequest) -> schemas.ScalarResponse:
    return schemas.ScalarResponse(value=riemann_siegel_theta(request.energy))
