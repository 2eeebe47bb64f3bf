"""HTTP facade over the core package.

Every endpoint is a pure function of its request body, so responses are
as reproducible as the underlying library calls.  Core ``ValueError``s
(bad dimensions, off-image states, malformed documents) surface as 422s
with the original message.  Energies that come out non-finite (a run on
weights without conjugate symmetry) are encoded as JSON nulls.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from ..dynamics import NetworkModel, model_from_dict, model_to_dict, run
from ..harness import (
    ExperimentConfig,
    chart_svg,
    report_dict,
    run_experiment,
    sample_initial,
    trace_csv,
)
from ..weights import WeightGenConfig, random_hermitian, validate
from .schemas import (
    ExperimentRequest,
    ExperimentResponse,
    GenerateWeightsRequest,
    HealthResponse,
    NetworkModelDoc,
    RunRequest,
    RunResponse,
    TraceEntry,
    ValidateRequest,
    ValidationReport,
)


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _pairs(state: np.ndarray) -> list[tuple[float, float]]:
    return [(v.real, v.imag) for v in state]


def create_app() -> FastAPI:
    from .. import __version__

    app = FastAPI(title="cvhnn", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/weights", response_model=NetworkModelDoc)
    def generate_weights(req: GenerateWeightsRequest) -> NetworkModelDoc:
        try:
            weights = random_hermitian(WeightGenConfig(req.n, req.seed))
            model = NetworkModel(weights, np.zeros(req.n), req.activation.to_spec())
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return NetworkModelDoc(**model_to_dict(model))

    @app.post("/validate", response_model=ValidationReport)
    def validate_network(req: ValidateRequest) -> ValidationReport:
        try:
            model = model_from_dict(req.network.model_dump())
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        report = validate(model.weights)
        return ValidationReport(
            is_hermitian=report.is_hermitian,
            diagonal_real_nonneg=report.diagonal_real_nonneg,
            max_violation=report.max_violation,
            ok=report.is_hermitian and report.diagonal_real_nonneg,
        )

    @app.post("/run", response_model=RunResponse)
    def run_network(req: RunRequest) -> RunResponse:
        low, high = req.rect
        if not low < high:
            raise HTTPException(status_code=422,
                                detail="rect must be an increasing (low, high) pair")
        try:
            model = model_from_dict(req.network.model_dump())
            if req.initial is not None:
                initial = np.array([complex(a, b) for a, b in req.initial],
                                   dtype=complex)
            else:
                rng = np.random.default_rng(req.init_seed)
                initial = sample_initial(model.activation, model.n, rng,
                                         rect=(low, high),
                                         disk_radius=req.disk_radius)
            record = run(model, initial, mode=req.mode, max_sweeps=req.sweeps,
                         order=req.order, order_seed=req.order_seed)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        verdict = record.verdict
        return RunResponse(
            verdict=verdict.describe(),
            outcome=verdict.outcome,
            cycle_length=verdict.cycle_length,
            settled_at=verdict.settled_at,
            updates=len(record.steps) - 1,
            final_state=_pairs(record.final_state),
            final_energy=_finite_or_none(record.final_energy),
            trace=[TraceEntry(update=s.update, neuron=s.neuron,
                              energy=_finite_or_none(s.energy))
                   for s in record.steps],
        )

    @app.post("/experiment", response_model=ExperimentResponse)
    def experiment(req: ExperimentRequest) -> ExperimentResponse:
        try:
            config = ExperimentConfig(
                activation=req.activation.to_spec(),
                n=req.n,
                trials=req.trials,
                sweeps=req.sweeps,
                mode=req.mode,
                weight_seed=req.weight_seed,
                state_seed=req.state_seed,
                rect=tuple(req.rect),
                disk_radius=req.disk_radius,
            )
            report = run_experiment(config)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return ExperimentResponse(
            report=report_dict(report),
            trace_csv=trace_csv(report),
            chart_svg=chart_svg(report),
        )

    return app


app = create_app()
