"""Command-line client for the compute service.

The CLI parses flags, ships each request to the HTTP API (an in-process
application instance by default, or a remote server via ``--server`` /
``DIRACXP_SERVER``), and writes CSV or JSON.  All numeric output uses full
round-trip decimal precision; identical invocations produce byte-identical
numeric output (manifests carry the only timestamp).

Exit codes: 0 success, 1 failed verification, 2 configuration/usage error,
3 numerical failure.
"""

from __future__ import annotations

import asyncio
import csv
import io
import json
import os
import sys
from importlib import resources

import click
import httpx

from . import __version__
from .errors import TableError
from .manifest import RunManifest
from .zeta import load_zero_table

_SERVER_ENV = "DIRACXP_SERVER"
_ZEROS_ENV = "DIRACXP_ZEROS"

EIGENVALUE_COLUMNS = ("index", "energy", "residual", "variant")
COMPARE_COLUMNS = ("energy", "n_model", "n_smooth", "s_fluct", "n_table")


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _request(server: str | None, path: str, payload: dict) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            response = client.post(path, json=payload)
    else:
        from .service import create_app

        async def _call():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://service", timeout=600.0
            ) as client:
                return await client.post(path, json=payload)

        response = asyncio.run(_call())

    if response.status_code == 200:
        return response.json()
    try:
        body = response.json()
    except ValueError:
        body = {}
    if response.status_code == 422:
        _fail(2, f"invalid request: {body.get('detail', response.text)}")
    error = body.get("error", {})
    message = error.get("message", response.text)
    if response.status_code == 400:
        _fail(2, message)
    _fail(3, f"numerical failure: {message}")


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _rows_to_csv(columns, rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_value(row[c]) for c in columns])
    return out.getvalue()


def _emit(
    fmt: str,
    out: str | None,
    columns,
    rows,
    manifest: RunManifest,
    extra: dict | None = None,
):
    if fmt == "csv":
        text = _rows_to_csv(columns, rows)
        if out and out != "-":
            with open(out, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            sidecar = {"manifest": manifest.to_dict()}
            if extra:
                sidecar.update(extra)
            with open(out + ".manifest.json", "w", encoding="utf-8") as handle:
                json.dump(sidecar, handle, indent=2)
                handle.write("\n")
        else:
            click.echo(text, nl=False)
    else:
        document = {"manifest": manifest.to_dict()}
        if extra:
            document.update(extra)
        document["rows"] = rows
        text = json.dumps(document, indent=2) + "\n"
        if out and out != "-":
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            click.echo(text, nl=False)


def _parse_grid(grid: str) -> list[float]:
    try:
        start_s, stop_s, step_s = grid.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError:
        raise click.UsageError(
            f"--e-grid wants start:stop:step, got {grid!r}"
        ) from None
    if step <= 0 or stop < start:
        raise click.UsageError(f"--e-grid needs step > 0 and stop >= start, got {grid!r}")
    values = []
    k = 0
    while True:
        value = start + k * step
        if value > stop * (1.0 + 1e-12):
            break
        values.append(value)
        k += 1
    return values


def _default_zeros_path() -> str:
    env = os.environ.get(_ZEROS_ENV)
    if env:
        return env
    return str(resources.files("diracxp").joinpath("data/zeros100.txt"))


server_option = click.option(
    "--server",
    envvar=_SERVER_ENV,
    default=None,
    help="Base URL of a running service; default runs the app in-process.",
)
seed_option = click.option(
    "--seed",
    type=int,
    default=None,
    help="Accepted for interface stability; a no-op (nothing here is stochastic).",
)


@click.group()
@click.version_option(version=__version__)
def main():
    """Spectral pipeline for the Dirac-type x.sigma.p model."""


@main.command()
@click.option("--u0", type=float, required=True, help="Cutoff u0, in (0, 8).")
@click.option("--e-max", type=float, required=True, help="Upper edge of the energy window.")
@click.option("--e-min", type=float, default=0.0, show_default=True)
@click.option(
    "--variant",
    type=click.Choice(["exact", "asymptotic"]),
    default="asymptotic",
    show_default=True,
)
@click.option("--tol", type=float, default=1e-9, show_default=True, help="Eigenvalue tolerance.")
@click.option("--scan-step", type=float, default=0.05, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", default="-", show_default=True, help="Output path, '-' for stdout.")
@server_option
@seed_option
def eigenvalues(u0, e_max, e_min, variant, tol, scan_step, threads, fmt, out, server, seed):
    """Enumerate eigenvalues in the window and write (index, energy, residual, variant)."""
    payload = {
        "u0": u0,
        "e_max": e_max,
        "e_min": e_min,
        "variant": variant,
        "tol_e": tol,
        "scan_step": scan_step,
        "workers": threads,
    }
    body = _request(server, "/eigenvalues", payload)
    manifest = RunManifest.create("eigenvalues", payload, body["tool_version"])
    _emit(fmt, out, EIGENVALUE_COLUMNS, body["records"], manifest)


@main.command()
@click.option("--zeros", "zeros_path", default=None, help=f"Zero-table path; defaults to ${_ZEROS_ENV} or the shipped 100-zero table.")
@click.option("--u0", type=float, default=None, help="Cutoff; omit when --calibrate is given.")
@click.option("--calibrate", type=int, default=None, help="Calibrate u0 against the first K ordinates.")
@click.option("--e-grid", default="10:100:10", show_default=True, help="Grid start:stop:step (inclusive).")
@click.option(
    "--variant",
    type=click.Choice(["exact", "asymptotic"]),
    default="asymptotic",
    show_default=True,
)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--no-table-check", is_flag=True, help="Skip the genuine-table sanity gate on the first ordinate.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", default="-", show_default=True)
@server_option
@seed_option
def compare(zeros_path, u0, calibrate, e_grid, variant, tol, no_table_check, fmt, out, server, seed):
    """Compare the model counting function against the counting formula and a zero table."""
    if u0 is None and calibrate is None:
        raise click.UsageError("pass --u0 or --calibrate")
    path = zeros_path or _default_zeros_path()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            table = load_zero_table(
                handle, source=path, sanity_check=not no_table_check
            )
    except OSError as exc:
        _fail(2, f"cannot read zeros table {path!r}: {exc}")
    except TableError as exc:
        _fail(2, f"bad zeros table {path!r}: {exc}")

    grid = _parse_grid(e_grid)
    payload = {
        "ordinates": list(table.ordinates),
        "e_grid": grid,
        "source": table.source,
        "u0": u0,
        "calibrate": calibrate,
        "variant": variant,
        "tol_e": tol,
        "sanity_check": not no_table_check,
    }
    body = _request(server, "/compare", payload)
    manifest_params = {k: v for k, v in payload.items() if k != "ordinates"}
    manifest_params["zeros"] = path
    manifest = RunManifest.create("compare", manifest_params, body["tool_version"])
    summary = body["summary"]
    for key in ("u0", "rms_model_vs_table", "rms_smooth_vs_table"):
        click.echo(f"{key}={_format_value(summary[key])}", err=True)
    _emit(fmt, out, COMPARE_COLUMNS, body["samples"], manifest, extra={"summary": summary})


@main.command()
@click.option("--u0", type=float, default=1e-3, show_default=True)
@click.option("--n-eigen", type=int, default=5, show_default=True)
@click.option("--tol-scale", type=float, default=1.0, show_default=True, help="Multiply every check tolerance (use to probe the failure path).")
@click.option("--out", default="-", show_default=True, help="Where to write the JSON report.")
@server_option
@seed_option
def verify(u0, n_eigen, tol_scale, out, server, seed):
    """Run the cross-validation suite; exit 0 iff every check passes."""
    payload = {"u0": u0, "n_eigen": n_eigen, "tol_scale": tol_scale}
    body = _request(server, "/verify", payload)
    for check in body["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        click.echo(
            f"{status} {check['name']}: residual={check['residual']!r} "
            f"tolerance={check['tolerance']!r}"
        )
    manifest = RunManifest.create("verify", payload, body["tool_version"])
    report = {"manifest": manifest.to_dict(), "checks": body["checks"], "passed": body["passed"]}
    text = json.dumps(report, indent=2) + "\n"
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    if not body["passed"]:
        failed = [c["name"] for c in body["checks"] if not c["passed"]]
        _fail(1, f"verification failed: {', '.join(failed)}")


@main.group()
def specfun():
    """Evaluate the special-function layer at given arguments (debugging aid)."""


def _echo_complex(body: dict, fmt: str):
    value = body["value"]
    if fmt == "json":
        click.echo(json.dumps(value))
    else:
        sign = "+" if value["im"] >= 0 else "-"
        click.echo(f"{value['re']!r}{sign}{abs(value['im'])!r}i")


@specfun.command()
@click.option("--e", "energy", type=float, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@server_option
def theta(energy, fmt, server):
    """Riemann-Siegel theta at E."""
    body = _request(server, "/specfun/theta", {"energy": energy})
    if fmt == "json":
        click.echo(json.dumps({"value": body["value"]}))
    else:
        click.echo(repr(body["value"]))


@specfun.command()
@click.option("--re", "re_part", type=float, required=True)
@click.option("--im", "im_part", type=float, default=0.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@server_option
def loggamma(re_part, im_part, fmt, server):
    """Principal-branch log-Gamma at re + i*im."""
    body = _request(server, "/specfun/loggamma", {"z": {"re": re_part, "im": im_part}})
    _echo_complex(body, fmt)


@specfun.command()
@click.option("--a", "a_re", type=float, required=True)
@click.option("--a-im", type=float, default=0.0, show_default=True)
@click.option("--b", "b_re", type=float, required=True)
@click.option("--b-im", type=float, default=0.0, show_default=True)
@click.option("--u", type=float, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@server_option
def kummer(a_re, a_im, b_re, b_im, u, fmt, server):
    """Kummer M(a, b; u)."""
    body = _request(
        server,
        "/specfun/kummer",
        {"a": {"re": a_re, "im": a_im}, "b": {"re": b_re, "im": b_im}, "u": u},
    )
    _echo_complex(body, fmt)


@specfun.command()
@click.option("--k", "k_re", type=float, required=True)
@click.option("--k-im", type=float, default=0.0, show_default=True)
@click.option("--m", "m_re", type=float, default=0.0, show_default=True)
@click.option("--m-im", type=float, default=0.0, show_default=True)
@click.option("--u", type=float, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@server_option
def whittaker(k_re, k_im, m_re, m_im, u, fmt, server):
    """Radial solution W_{k,m}(u)."""
    body = _request(
        server,
        "/specfun/whittaker",
        {"k": {"re": k_re, "im": k_im}, "m": {"re": m_re, "im": m_im}, "u": u},
    )
    _echo_complex(body, fmt)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
