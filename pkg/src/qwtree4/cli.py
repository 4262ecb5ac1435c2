"""Command-line front end.

A thin client over the HTTP service: every command builds a request, sends
it to a server (a remote one via --server, otherwise the app mounted
in-process), and formats the response.  No numeric logic lives here.

Exit codes: 0 success, 1 verification failure, 2 usage/validation error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

JSON_KW = {"indent": 2, "sort_keys": False}
_REQUEST_TIMEOUT = 900.0


def _inprocess_post(path: str, payload: dict) -> httpx.Response:
    """Mount the service in-process and speak HTTP to it over ASGI."""
    import asyncio

    from .service.app import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://qwtree4.local", timeout=_REQUEST_TIMEOUT
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _post(server: str | None, path: str, payload: dict) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=_REQUEST_TIMEOUT) as client:
            resp = client.post(path, json=payload)
    else:
        resp = _inprocess_post(path, payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(2)
    return resp.json()


def _load_params(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        click.echo(f"error: cannot read params file {path}: {e}", err=True)
        sys.exit(2)
    if not isinstance(doc, dict) or "q" not in doc or "a" not in doc:
        click.echo(f'error: params file {path} must be {{"q": [...], "a": [...]}}', err=True)
        sys.exit(2)
    return {"q": doc["q"], "a": doc["a"]}


def _parse_range(text: str | None, default: list[int], step_default: int = 1) -> list[int]:
    """RANGE syntax: 'a:b' (inclusive), 'a:b:s', or a comma list."""
    if text is None:
        return default
    text = text.strip()
    try:
        if ":" in text:
            parts = [int(v) for v in text.split(":")]
            lo, hi = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else step_default
            return list(range(lo, hi + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        click.echo(f"error: cannot parse range {text!r}", err=True)
        sys.exit(2)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="HTTP service base URL; defaults to an in-process instance.")
@click.pass_context
def cli(ctx: click.Context, server: str | None) -> None:
    """Quantum walks on diameter-4 trees: spectra, cospectral pairs, schedules."""
    ctx.obj = {"server": server}


@cli.command()
@click.option("--params", "params_file", required=True, type=click.Path(), metavar="FILE")
@click.pass_context
def info(ctx: click.Context, params_file: str) -> None:
    """Vertex count, degrees, full spectrum and strongly cospectral pairs."""
    doc = _post(ctx.obj["server"], "/v1/info", {"params": _load_params(params_file)})
    click.echo(json.dumps(doc, **JSON_KW))


@cli.command()
@click.option("--params", "params_file", required=True, type=click.Path(), metavar="FILE")
@click.option("--pair", default=None, metavar="KIND[:INDEX]",
              help="cospectral pair selector, e.g. C or A:1 (default: first pair).")
@click.option("--vertices", default=None, metavar="X,Y", help="explicit vertex pair.")
@click.option("--t0", default=0.0, show_default=True)
@click.option("--t1", default=10.0, show_default=True)
@click.option("--steps", default=200, show_default=True,
              help="grid intervals (steps+1 rows; 0 emits no rows).")
@click.option("--any-pair", is_flag=True, help="allow vertices that are not strongly cospectral.")
@click.option("--oracle-tree", is_flag=True,
              help="skip the diameter-4 validation (oracle test graphs such as P2/P3).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@click.pass_context
def scan(ctx, params_file, pair, vertices, t0, t1, steps, any_pair, oracle_tree, fmt) -> None:
    """Fidelity (and sensitivity, for cospectral pairs) over a time grid."""
    payload = {
        "params": _load_params(params_file),
        "pair": pair,
        "vertices": [int(v) for v in vertices.split(",")] if vertices else None,
        "t0": t0,
        "t1": t1,
        "steps": steps,
        "any_pair": any_pair,
        "oracle_tree": oracle_tree,
    }
    doc = _post(ctx.obj["server"], "/v1/scan", payload)
    if fmt == "json":
        click.echo(json.dumps(doc, **JSON_KW))
        return
    lines = ["time,fidelity,sensitivity"]
    for r in doc["results"]["records"]:
        sens = "" if r["sensitivity"] is None else repr(float(r["sensitivity"]))
        lines.append(f"{float(r['time'])!r},{float(r['fidelity'])!r},{sens}")
    click.echo("\n".join(lines))


@cli.command()
@click.option("--family", required=True,
              type=click.Choice(["type_c", "t3", "q_readout", "p5_leaf", "coupled_q2", "dist4"]))
@click.option("--params", "params_file", default=None, type=click.Path(), metavar="FILE",
              help="tree parameter document (alternative to the family flags).")
@click.option("--n", "n_range", default=None, metavar="RANGE",
              help="convergent indices, e.g. 1:9 or 1,3,5 (odd for type_c/t3).")
@click.option("--ell", "ell_range", default=None, metavar="RANGE",
              help="recurrence depths for q_readout/p5_leaf, e.g. 0:4.")
@click.option("--k", type=int, default=None, help="type_c: odd k > 1.")
@click.option("--k2", type=int, default=None, help="t3: smaller odd multiplier.")
@click.option("--k3", type=int, default=None, help="t3: larger odd multiplier.")
@click.option("--q3", type=int, default=None, help="t3: third leaf count (default: smallest valid).")
@click.option("--q", type=int, default=None, help="q_readout: leaf count of the twin stems.")
@click.option("--q2", type=int, default=None, help="dist4/coupled_q2: second leaf count.")
@click.option("--epsilon", type=float, default=0.1, show_default=True, help="dist4: target phase budget.")
@click.option("--r-max", type=int, default=10000, show_default=True, help="dist4: scan cap.")
@click.pass_context
def schedule(ctx, family, params_file, n_range, ell_range, k, k2, k3, q3, q, q2,
             epsilon, r_max) -> None:
    """Readout-time schedule with predicted and directly evaluated fidelity."""
    step = 2 if family in ("type_c", "t3") else 1
    payload = {
        "family": family,
        "params": _load_params(params_file) if params_file else None,
        "n": _parse_range(n_range, [], step_default=step) if n_range else None,
        "ell": _parse_range(ell_range, []) if ell_range else None,
        "k": k, "k2": k2, "k3": k3, "q3": q3, "q": q, "q2": q2,
        "epsilon": epsilon, "r_max": r_max,
    }
    doc = _post(ctx.obj["server"], "/v1/schedule", payload)
    click.echo(json.dumps(doc, **JSON_KW))


@cli.command()
@click.option("--scope", type=click.Choice(["quick", "full"]), default="quick", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@click.pass_context
def verify(ctx, scope, fmt) -> None:
    """Run the oracle-equivalence and invariant suites; exit 1 on any violation."""
    doc = _post(ctx.obj["server"], "/v1/verify", {"scope": scope})
    results = doc["results"]
    if fmt == "json":
        click.echo(json.dumps(doc, **JSON_KW))
    else:
        for check in results["checks"]:
            status = "ok  " if check["ok"] else "FAIL"
            click.echo(f"{status} {check['name']}: {check['detail']}")
    if not results["ok"]:
        sys.exit(1)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


def main() -> None:
    cli(prog_name="qwtree4")


if __name__ == "__main__":
    main()
