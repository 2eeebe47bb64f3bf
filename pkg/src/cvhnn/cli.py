"""Command-line client for the network service.

Every subcommand talks to the HTTP API: by default an in-process
application instance (no sockets, nothing to start), or a remote server
when --server is given.  Outputs are pure functions of flags and input
files, so repeating an invocation reproduces every artifact byte for
byte.

Exit codes: 0 success, 1 bad input (unreadable or rejected files,
service errors), 2 usage errors (unknown or out-of-range flags),
3 validation verdict failure from the validate subcommand.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import __version__
from .activations import KINDS
from .harness import DEFAULT_RECT, DEFAULT_STATE_SEED, DEFAULT_WEIGHT_SEED

EXIT_VALIDATION = 3


class Client:
    """Minimal JSON-over-HTTP caller used by every subcommand."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server)
        else:
            import warnings

            with warnings.catch_warnings():
                # some starlette builds warn about their own test client
                warnings.simplefilter("ignore", DeprecationWarning)
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        try:
            response = self._client.post(path, json=payload)
        except Exception as exc:
            raise click.ClickException(f"service request failed: {exc}")
        if response.status_code != 200:
            raise click.ClickException(_error_detail(response))
        return response.json()


def _error_detail(response) -> str:
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = None
    if detail is None:
        detail = response.text
    if not isinstance(detail, str):
        detail = json.dumps(detail, sort_keys=True)
    return f"service rejected the request ({response.status_code}): {detail}"


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _read_json_file(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.ClickException(f"{path} is not valid JSON: {exc}")


def _trace_to_csv(trace: list[dict], trial: int = 0) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["trial", "update_index", "neuron", "energy"])
    for entry in trace:
        if entry["update"] == 0:
            neuron = ""
        elif entry["neuron"] is None:
            neuron = "all"
        else:
            neuron = entry["neuron"]
        writer.writerow([trial, entry["update"], neuron, entry["energy"]])
    return buffer.getvalue()


def _activation_options(defaulted: bool):
    """Shared --kind/--k/--q/--r/--boundary-epsilon flags.

    With defaulted=False every flag defaults to None so a command can tell
    "not given" apart from "given the stock value" (run uses this to leave
    the model file's activation alone unless overridden)."""

    def wrap(command):
        options = [
            click.option("--kind", type=click.Choice(KINDS),
                         default="coceil" if defaulted else None,
                         show_default=defaulted,
                         help="Activation family."),
            click.option("--k", type=click.IntRange(min=1),
                         default=4 if defaulted else None,
                         show_default=defaulted,
                         help="Phase sector count for csign/cosign."),
            click.option("--q", type=click.IntRange(min=1),
                         default=3 if defaulted else None,
                         show_default=defaulted,
                         help="Magnitude level count for coceil/cosign."),
            click.option("--r", type=click.FloatRange(min=0, min_open=True),
                         default=2.0 if defaulted else None,
                         show_default=defaulted,
                         help="Magnitude step width for coceil/cosign."),
            click.option("--boundary-epsilon",
                         type=click.FloatRange(min=0),
                         default=0.0 if defaulted else None,
                         show_default=defaulted,
                         help="Dead zone around csign sector boundaries."),
        ]
        for option in reversed(options):
            command = option(command)
        return command

    return wrap


def _activation_payload(kind, k, q, r, boundary_epsilon) -> dict:
    return {"kind": kind, "K": k, "Q": q, "R": r,
            "boundary_epsilon": boundary_epsilon}


@click.group()
@click.version_option(__version__, prog_name="cvhnn")
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; by default the service "
                   "runs in process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Complex-valued Hopfield networks: generate, run, measure, validate.

    Exit codes: 0 success, 1 bad input or service error, 2 usage error,
    3 failed validation.
    """
    ctx.obj = server


@main.command("gen-weights")
@click.option("--n", type=click.IntRange(min=1), default=10, show_default=True,
              help="Neuron count.")
@click.option("--seed", type=click.IntRange(min=0),
              default=DEFAULT_WEIGHT_SEED, show_default=True,
              help="Weight generator seed.")
@_activation_options(defaulted=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path),
              default=Path("model.json"), show_default=True,
              help="Output model file.")
@click.pass_context
def gen_weights(ctx, n, seed, kind, k, q, r, boundary_epsilon, out) -> None:
    """Write a random conjugate-symmetric network model file."""
    client = Client(ctx.obj)
    doc = client.post("/weights", {
        "n": n,
        "seed": seed,
        "activation": _activation_payload(kind, k, q, r, boundary_epsilon),
    })
    try:
        out.write_text(_dumps(doc))
    except OSError as exc:
        raise click.ClickException(f"cannot write {out}: {exc}")
    click.echo(f"wrote {out}")


@main.command("run")
@click.option("--model", "model_path", required=True,
              type=click.Path(dir_okay=False, path_type=Path),
              help="Network model JSON file.")
@_activation_options(defaulted=False)
@click.option("--mode", type=click.Choice(("serial", "parallel")),
              default="serial", show_default=True)
@click.option("--sweeps", type=click.IntRange(min=1), default=100,
              show_default=True, help="Budget: sweeps (serial) or steps (parallel).")
@click.option("--order", type=click.Choice(("cyclic", "random")),
              default="cyclic", show_default=True,
              help="Serial visiting order.")
@click.option("--order-seed", type=click.IntRange(min=0), default=0,
              show_default=True, help="Seed for --order random.")
@click.option("--init-state", default=None, metavar="JSON",
              help="Initial state as a JSON list of [re, im] pairs; "
                   "overrides --init-seed.")
@click.option("--init-seed", type=click.IntRange(min=0), default=0,
              show_default=True, help="Seed for the sampled initial state.")
@click.option("--rect-low", type=float, default=DEFAULT_RECT[0],
              show_default=True, help="Sampling square lower bound (coceil).")
@click.option("--rect-high", type=float, default=DEFAULT_RECT[1],
              show_default=True, help="Sampling square upper bound (coceil).")
@click.option("--disk-radius", type=click.FloatRange(min=0, min_open=True),
              default=None, help="Sampling disk radius (cosign); default Q*R.")
@click.option("--trace-csv", "trace_path",
              type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Also write the per-update energy trace CSV here.")
@click.pass_context
def run_cmd(ctx, model_path, kind, k, q, r, boundary_epsilon, mode, sweeps,
            order, order_seed, init_state, init_seed, rect_low, rect_high,
            disk_radius, trace_path) -> None:
    """Run the dynamics once on a model file and print the verdict."""
    doc = _read_json_file(model_path)
    overrides = {"kind": kind, "K": k, "Q": q, "R": r,
                 "boundary_epsilon": boundary_epsilon}
    given = {key: value for key, value in overrides.items() if value is not None}
    if given and isinstance(doc, dict) and isinstance(doc.get("activation"), dict):
        doc["activation"] = {**doc["activation"], **given}
    initial = None
    if init_state is not None:
        try:
            initial = json.loads(init_state)
        except json.JSONDecodeError as exc:
            raise click.ClickException(f"--init-state is not valid JSON: {exc}")
    client = Client(ctx.obj)
    result = client.post("/run", {
        "network": doc,
        "mode": mode,
        "sweeps": sweeps,
        "order": order,
        "order_seed": order_seed,
        "initial": initial,
        "init_seed": init_seed,
        "rect": [rect_low, rect_high],
        "disk_radius": disk_radius,
    })
    trace = result.pop("trace")
    click.echo(_dumps(result), nl=False)
    if trace_path is not None:
        try:
            trace_path.write_text(_trace_to_csv(trace))
        except OSError as exc:
            raise click.ClickException(f"cannot write {trace_path}: {exc}")


@main.command("experiment")
@_activation_options(defaulted=True)
@click.option("--n", type=click.IntRange(min=1), default=10, show_default=True,
              help="Neuron count.")
@click.option("--trials", type=click.IntRange(min=1), default=5,
              show_default=True)
@click.option("--sweeps", type=click.IntRange(min=1), default=5,
              show_default=True)
@click.option("--mode", type=click.Choice(("serial", "parallel")),
              default="serial", show_default=True)
@click.option("--weight-seed", type=click.IntRange(min=0),
              default=DEFAULT_WEIGHT_SEED, show_default=True)
@click.option("--state-seed", type=click.IntRange(min=0),
              default=DEFAULT_STATE_SEED, show_default=True)
@click.option("--rect-low", type=float, default=DEFAULT_RECT[0],
              show_default=True)
@click.option("--rect-high", type=float, default=DEFAULT_RECT[1],
              show_default=True)
@click.option("--disk-radius", type=click.FloatRange(min=0, min_open=True),
              default=None, help="Sampling disk radius (cosign); default Q*R.")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path),
              default=Path("experiment-out"), show_default=True,
              help="Directory for report.json, trace.csv, energy.svg.")
@click.pass_context
def experiment_cmd(ctx, kind, k, q, r, boundary_epsilon, n, trials, sweeps,
                   mode, weight_seed, state_seed, rect_low, rect_high,
                   disk_radius, out_dir) -> None:
    """Run a multi-trial experiment and write its three artifacts.

    Exits 0 even when trials end Unresolved; the verdicts live in the
    report."""
    client = Client(ctx.obj)
    result = client.post("/experiment", {
        "activation": _activation_payload(kind, k, q, r, boundary_epsilon),
        "n": n,
        "trials": trials,
        "sweeps": sweeps,
        "mode": mode,
        "weight_seed": weight_seed,
        "state_seed": state_seed,
        "rect": [rect_low, rect_high],
        "disk_radius": disk_radius,
    })
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.json").write_text(_dumps(result["report"]))
        (out_dir / "trace.csv").write_text(result["trace_csv"])
        (out_dir / "energy.svg").write_text(result["chart_svg"])
    except OSError as exc:
        raise click.ClickException(f"cannot write artifacts to {out_dir}: {exc}")
    click.echo(json.dumps(result["report"]["summary"], sort_keys=True))


@main.command("validate")
@click.option("--model", "model_path", required=True,
              type=click.Path(dir_okay=False, path_type=Path),
              help="Network model JSON file.")
@click.pass_context
def validate_cmd(ctx, model_path) -> None:
    """Check the stability conditions on a model file's weights.

    Exits 0 when the matrix is conjugate-symmetric with a real
    non-negative diagonal, 3 when it is not, 1 on unreadable input."""
    doc = _read_json_file(model_path)
    client = Client(ctx.obj)
    result = client.post("/validate", {"network": doc})
    click.echo(_dumps(result), nl=False)
    if not result["ok"]:
        sys.exit(EXIT_VALIDATION)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=click.IntRange(1, 65535), default=8000,
              show_default=True)
def serve_cmd(host: str, port: int) -> None:
    """Serve the HTTP API."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
