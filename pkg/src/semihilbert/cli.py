"""Batch command-line front end.

The CLI is a thin client of the analysis service: requests go through the
FastAPI app in-process by default, or to a remote instance via --server.

Exit codes: 0 success, 1 property-suite failures, 2 validation or parse
errors, 3 operator not A-bounded (with the Douglas residual diagnostics).
"""

from __future__ import annotations

import asyncio
import json
import sys

import click

from . import __version__
from .analysis import samples_csv
from .schemas import RangeResponse

EXIT_OK = 0
EXIT_SUITE_FAILURES = 1
EXIT_VALIDATION = 2
EXIT_NOT_A_BOUNDED = 3


def _post(server: str | None, path: str, payload: dict):
    import httpx

    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            resp = client.post(path, json=payload)
            return resp.status_code, resp.json()

    from httpx import ASGITransport, AsyncClient

    from .service import app

    async def go():
        transport = ASGITransport(app=app)
        async with AsyncClient(transport=transport,
                               base_url="http://semihilbert.local") as client:
            return await client.post(path, json=payload)

    resp = asyncio.run(go())
    return resp.status_code, resp.json()


def _load_problem(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        click.echo(f"error: no such file: {path}", err=True)
        sys.exit(EXIT_VALIDATION)
    except json.JSONDecodeError as exc:
        click.echo(f"error: {path}: line {exc.lineno} column {exc.colno}: "
                   f"{exc.msg}", err=True)
        sys.exit(EXIT_VALIDATION)


def _apply_overrides(problem: dict, tol, seed, grid):
    opts = dict(problem.get("options") or {})
    if tol is not None:
        opts["tol"] = tol
    if seed is not None:
        opts["seed"] = seed
    if grid is not None:
        opts["grid"] = grid
    problem["options"] = opts
    return problem


def _fail(status: int, body: dict) -> int:
    detail = body.get("detail", body)
    if isinstance(detail, dict) and detail.get("code") == "not_a_bounded":
        click.echo("error: operator is not A-bounded", err=True)
        click.echo(f"  Douglas residual ||A T (I-P)||  = "
                   f"{detail.get('residual_seminorm'):.6e}", err=True)
        click.echo(f"  Douglas residual ||(I-P) T* A|| = "
                   f"{detail.get('residual_adjoint'):.6e}", err=True)
        return EXIT_NOT_A_BOUNDED
    click.echo(f"error ({status}): {json.dumps(detail)}", err=True)
    return EXIT_VALIDATION


def _write(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(version=__version__)
def main():
    """Operator geometry in semi-Hilbertian spaces."""


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--output", "-o", type=click.Path(), help="Report JSON path (default stdout).")
@click.option("--samples", type=click.Path(), help="Also write range samples CSV here.")
@click.option("--tol", type=float, default=None, help="Decision tolerance override.")
@click.option("--seed", type=int, default=None, help="Seed override.")
@click.option("--grid", type=int, default=None, help="Range sample grid override.")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def analyze(input_path, output, samples, tol, seed, grid, server):
    """Analyze one problem file and write the report."""
    problem = _apply_overrides(_load_problem(input_path), tol, seed, grid)
    status, body = _post(server, "/v1/analyze", problem)
    if status != 200:
        sys.exit(_fail(status, body))
    if samples:
        status2, body2 = _post(server, "/v1/range", problem)
        if status2 != 200:
            sys.exit(_fail(status2, body2))
        _write(samples_csv(RangeResponse(**body2)), samples)
        body["samples_path"] = samples
    _write(json.dumps(body, indent=2, sort_keys=True) + "\n", output)
    sys.exit(EXIT_OK)


@main.command("range")
@click.argument("input_path", type=click.Path())
@click.option("--output", "-o", type=click.Path(), help="CSV path (default stdout).")
@click.option("--grid", type=int, default=None, help="Number of boundary samples.")
@click.option("--tol", type=float, default=None, help="Decision tolerance override.")
@click.option("--seed", type=int, default=None, help="Seed override.")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def range_cmd(input_path, output, grid, tol, seed, server):
    """Sample the numerical-range boundary with its covering disc."""
    problem = _apply_overrides(_load_problem(input_path), tol, seed, grid)
    status, body = _post(server, "/v1/range", problem)
    if status != 200:
        sys.exit(_fail(status, body))
    _write(samples_csv(RangeResponse(**body)), output)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--sizes", default="2,3,4,5,6", show_default=True,
              help="Comma-separated matrix dimensions.")
@click.option("--grid-density", type=int, default=60, show_default=True)
@click.option("--tol", type=float, default=None, help="Decision tolerance override.")
@click.option("--output", "-o", type=click.Path(), help="Write the JSON report here.")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def suite(trials, seed, sizes, grid_density, tol, output, server):
    """Run the executable property suite; exit 0 only with zero failures."""
    try:
        size_list = [int(x) for x in sizes.split(",") if x.strip()]
    except ValueError:
        click.echo(f"error: bad --sizes value {sizes!r}", err=True)
        sys.exit(EXIT_VALIDATION)
    payload = {"trials": trials, "seed": seed, "sizes": size_list,
               "grid_density": grid_density}
    if tol is not None:
        payload["tol"] = tol
    status, body = _post(server, "/v1/suite", payload)
    if status != 200:
        sys.exit(_fail(status, body))
    scalars = body["scalars"]
    for prop in scalars["properties"]:
        tag = "PASS" if prop["failures"] == 0 else "FAIL"
        click.echo(f"{tag} {prop['name']:<24} trials={prop['trials']:<4} "
                   f"max_residual={prop['max_residual']:.3e}")
        for repro in prop["reproducers"]:
            click.echo(f"  reproducer: {json.dumps(repro, sort_keys=True)}")
    click.echo(f"failures_total={scalars['failures_total']} "
               f"wall_time_s={body['wall_time_s']:.2f}")
    if output:
        _write(json.dumps(body, indent=2, sort_keys=True) + "\n", output)
    sys.exit(EXIT_OK if scalars["failures_total"] == 0 else EXIT_SUITE_FAILURES)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the analysis service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
