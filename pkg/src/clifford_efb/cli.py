"""Command-line front end: a thin client of the HTTP service.

By default every command talks to an in-process instance of the FastAPI app;
``--url`` points it at a running server instead.  Exit codes: 0 ok, 1 usage
error, 2 parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click
import httpx

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


def _post(url: str | None, path: str, payload: dict) -> httpx.Response:
    if url:
        with httpx.Client(base_url=url, timeout=600.0) as client:
            return client.post(path, json=payload)
    import asyncio

    from .service import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app(), raise_app_exceptions=False)
        async with httpx.AsyncClient(transport=transport, base_url="http://service.local") as client:
            return await client.post(path, json=payload, timeout=None)

    return asyncio.run(go())


def _run(url: str | None, path: str, payload: dict, fmt: str, render) -> dict:
    try:
        response = _post(url, path, payload)
    except httpx.HTTPError as exc:
        click.echo(f"error (usage): cannot reach service: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    try:
        data = response.json()
    except ValueError:
        data = None
    if response.status_code == 200:
        if fmt == "json":
            click.echo(json.dumps(data))
        else:
            for line in render(data):
                click.echo(line)
        return data
    if data and "error" in data:
        kind = data["error"].get("kind", "internal")
        message = data["error"].get("message", "")
    elif response.status_code == 422:
        kind = "usage"
        message = json.dumps(data.get("detail") if data else response.text)
        data = {"error": {"kind": kind, "message": message}}
    else:
        kind = "internal"
        message = response.text
        data = {"error": {"kind": kind, "message": message}}
    if fmt == "json":
        click.echo(json.dumps(data))
    else:
        click.echo(f"error ({kind}): {message}", err=True)
    sys.exit({"parse": EXIT_PARSE, "usage": EXIT_USAGE}.get(kind, EXIT_INTERNAL))


def _common(fn):
    fn = click.option("--url", default=None, help="Remote service URL (default: in-process).")(fn)
    fn = click.option(
        "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
        help="Output format.",
    )(fn)
    return fn


def _algebra(fn):
    fn = click.option("-m", "m", type=int, required=True, help="Number of Witt pairs.")(fn)
    fn = click.option(
        "--mode", type=click.Choice(["exact", "float"]), default="exact",
        help="Scalar arithmetic.",
    )(fn)
    fn = click.option(
        "--basis", type=click.Choice(["efb", "gamma"]), default="efb",
        help="Basis the expressions are written in.",
    )(fn)
    return fn


def _witt_lines(m: int, vectors: list[dict]) -> list[str]:
    from .config import AlgebraConfig
    from .parsing import format_witt_vector
    from .spinors import WittVector

    config = AlgebraConfig(m)
    lines = []
    for vec in vectors:
        v = WittVector(
            config,
            tuple(Fraction(x) for x in vec["p"]),
            tuple(Fraction(x) for x in vec["q"]),
        )
        lines.append(f"  {format_witt_vector(v)}")
    return lines


def _eigen_text(value) -> str:
    if value is None:
        return "none"
    return f"+{value}" if value > 0 else str(value)


@click.group()
def cli():
    """Clifford algebra engine for Cl(m,m) on the extended Fock basis."""


@cli.command()
@click.argument("a")
@click.argument("b")
@_algebra
@_common
def mul(a, b, m, mode, basis, fmt, url):
    """Clifford product of two expressions."""
    payload = {"m": m, "mode": mode, "basis": basis, "a": a, "b": b}
    _run(url, "/product", payload, fmt, lambda data: [data["expr"]])


@cli.command()
@click.argument("expr")
@_algebra
@_common
def convert(expr, m, mode, basis, fmt, url):
    """Convert an expression to the other basis (efb <-> gamma)."""
    payload = {"m": m, "mode": mode, "basis": basis, "expr": expr}
    _run(url, "/convert", payload, fmt, lambda data: [data["expr"]])


@cli.command()
@click.argument("expr")
@_algebra
@_common
def matrix(expr, m, mode, basis, fmt, url):
    """2^m x 2^m matrix image of an expression, as JSON."""
    payload = {"m": m, "mode": mode, "basis": basis, "expr": expr}
    _run(
        url,
        "/matrix",
        payload,
        fmt,
        lambda data: [json.dumps({"m": data["m"], "entries": data["entries"]})],
    )


@cli.command()
@click.argument("expr")
@_algebra
@_common
def eigen(expr, m, mode, basis, fmt, url):
    """Volume-element eigenvalues (left and right action)."""
    payload = {"m": m, "mode": mode, "basis": basis, "expr": expr}

    def render(data):
        if data["right"] is None and data["left"] is None:
            return ["not an eigenvector"]
        return [f"right={_eigen_text(data['right'])} left={_eigen_text(data['left'])}"]

    _run(url, "/eigen", payload, fmt, render)


@cli.command()
@click.argument("expr")
@click.option("-m", "m", type=int, required=True, help="Number of Witt pairs.")
@_common
def simple(expr, m, fmt, url):
    """Simplicity verdict and annihilating null plane of a spinor."""
    payload = {"m": m, "expr": expr}

    def render(data):
        lines = ["simple" if data["simple"] else f"not simple (tnp dim {data['dim']} < {m})"]
        lines.append(f"tnp dim {data['dim']}:")
        lines.extend(_witt_lines(m, data["tnp"]))
        return lines

    _run(url, "/simple", payload, fmt, render)


@cli.command()
@click.argument("expr")
@click.option("-m", "m", type=int, required=True, help="Number of Witt pairs.")
@_common
def tnp(expr, m, fmt, url):
    """Annihilating totally null plane of a spinor."""
    payload = {"m": m, "expr": expr}

    def render(data):
        return [f"tnp dim {data['dim']}:"] + _witt_lines(m, data["tnp"])

    _run(url, "/tnp", payload, fmt, render)


@cli.command()
@click.option("-m", "m", type=int, required=True, help="Number of Witt pairs.")
@click.option("-k", "k", type=int, required=True, help="Family size.")
@_common
def plane(m, k, fmt, url):
    """Totally simple plane: k basis spinors plus the witness null plane."""
    payload = {"m": m, "k": k}

    def render(data):
        lines = [f"spinor: {expr}" for expr in data["spinors"]]
        lines.append(f"alternating sum: {data['alternating_sum']}")
        lines.append("tnp:")
        lines.extend(_witt_lines(m, data["tnp"]))
        return lines

    _run(url, "/plane", payload, fmt, render)


@cli.command()
@click.option("-m", "max_m", type=int, required=True, help="Largest m to benchmark.")
@click.option("--density", type=float, default=1.0, help="Fraction of nonzero terms.")
@click.option("--trials", type=int, default=100, help="Products per timing (>= 100).")
@click.option("--seed", type=int, default=0, help="Random seed.")
@click.option(
    "--algos",
    default="EfbSparse,GammaBlade,DenseMatrix",
    help="Comma-separated algorithm list.",
)
@_common
def bench(max_m, density, trials, seed, algos, fmt, url):
    """Benchmark the product algorithms for m = 1..M (one JSON line per report)."""
    payload = {
        "m_values": list(range(1, max_m + 1)),
        "density": density,
        "trials": trials,
        "seed": seed,
        "algorithms": [name.strip() for name in algos.split(",") if name.strip()],
    }
    _run(
        url,
        "/bench",
        payload,
        fmt,
        lambda data: [json.dumps(report) for report in data["reports"]],
    )


@cli.command()
@click.option("-m", "max_m", type=int, default=4, help="Largest m exercised.")
@click.option("--seed", type=int, default=0, help="Random seed.")
@_common
def selftest(max_m, seed, fmt, url):
    """Run the built-in invariant suites; exit 0 only if everything passes."""
    payload = {"max_m": max_m, "seed": seed}

    def render(data):
        lines = [
            f"{'PASS' if check['ok'] else 'FAIL'} {check['name']}: {check['detail']}"
            for check in data["checks"]
        ]
        lines.append(f"passed {data['passed']} failed {data['failed']}")
        return lines

    data = _run(url, "/selftest", payload, fmt, render)
    if data["failed"]:
        sys.exit(EXIT_INTERNAL)


@cli.command()
@click.option("--host", default="127.0.0.1", help="Bind address.")
@click.option("--port", type=int, default=8000, help="Port.")
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    return 0


if __name__ == "__main__":
    main()
